// Command-line front end: classify / nu / testfn / radial / cyl / break.
// JSON config in, CSV out. Reruns with the same config are byte-identical.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "symbreak/cylindrical.hpp"
#include "symbreak/exponents.hpp"
#include "symbreak/nonlinearity.hpp"
#include "symbreak/radial.hpp"
#include "symbreak/testfn.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace symbreak;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitIo = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProblemParams problem{};
  // grids
  int radial_nodes = 2000;
  int cyl_nodes = 128;
  double r_min_ref = 1e-3;
  double r_max_ref = 60.0;
  // tolerances
  DescentOptions descent{};
  int quad_order = 64;
  // sweeps
  std::vector<double> A_list{2, 5, 10, 30, 100, 300};
  std::vector<int> K_list{2};
  // classify window
  double alpha_min = 0.25, alpha_max = 7.75;
  double p_min = 2.1, p_max = 12.0;
  int resolution = 16;
  // nu table range
  int N_min = 4, N_max = 12;
  // output
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int workers = 1;
};

NonlinearitySpec nonlin_spec_from_json(const json& j) {
  NonlinearitySpec s;
  s.kind = nonlin_kind_from_string(j.value("kind", "double_power_min"));
  s.p = j.value("p", s.p);
  s.p1 = j.value("p1", s.p1);
  s.p2 = j.value("p2", s.p2);
  s.M = j.value("M", s.M);
  s.mu = j.value("mu", s.p2);
  if (j.contains("s_star")) {
    if (j["s_star"].is_string())
      s.s_star = std::numeric_limits<double>::infinity();
    else
      s.s_star = j["s_star"].get<double>();
  } else {
    s.s_star = s.kind == NonlinKind::DoublePowerMin ? 1.0 : kInf;
  }
  s.sample_s = j.value("sample_s", std::vector<double>{});
  s.sample_f = j.value("sample_f", std::vector<double>{});
  return s;
}

json nonlin_spec_to_json(const NonlinearitySpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["p"] = s.p;
  j["p1"] = s.p1;
  j["p2"] = s.p2;
  j["M"] = s.M;
  j["mu"] = s.mu;
  if (std::isinf(s.s_star))
    j["s_star"] = "inf";
  else
    j["s_star"] = s.s_star;
  if (!s.sample_s.empty()) {
    j["sample_s"] = s.sample_s;
    j["sample_f"] = s.sample_f;
  }
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (j.contains("problem")) {
    const json& p = j["problem"];
    c.problem.N = p.value("N", c.problem.N);
    c.problem.alpha = p.value("alpha", c.problem.alpha);
    c.problem.A = p.value("A", c.problem.A);
    if (p.contains("nonlinearity"))
      c.problem.nonlin = Nonlinearity(nonlin_spec_from_json(p["nonlinearity"]));
  }
  if (j.contains("grids")) {
    const json& g = j["grids"];
    c.radial_nodes = g.value("radial_nodes", c.radial_nodes);
    c.cyl_nodes = g.value("cyl_nodes", c.cyl_nodes);
    c.r_min_ref = g.value("r_min_ref", c.r_min_ref);
    c.r_max_ref = g.value("r_max_ref", c.r_max_ref);
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    c.descent.step = t.value("descent_step", c.descent.step);
    c.descent.tol = t.value("descent_tol", c.descent.tol);
    c.descent.max_iterations =
        t.value("max_iterations", c.descent.max_iterations);
    c.quad_order = t.value("quad_order", c.quad_order);
  }
  c.A_list = j.value("A_list", c.A_list);
  c.K_list = j.value("K_list", c.K_list);
  if (j.contains("classify")) {
    const json& w = j["classify"];
    c.alpha_min = w.value("alpha_min", c.alpha_min);
    c.alpha_max = w.value("alpha_max", c.alpha_max);
    c.p_min = w.value("p_min", c.p_min);
    c.p_max = w.value("p_max", c.p_max);
    c.resolution = w.value("resolution", c.resolution);
  }
  if (j.contains("nu")) {
    const json& n = j["nu"];
    c.N_min = n.value("N_min", c.N_min);
    c.N_max = n.value("N_max", c.N_max);
  }
  if (j.contains("output")) c.out_dir = j["output"].value("dir", c.out_dir);
  c.seed = j.value("seed", c.seed);
  c.workers = j.value("workers", c.workers);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["problem"] = {{"N", c.problem.N},
                  {"alpha", c.problem.alpha},
                  {"A", c.problem.A},
                  {"nonlinearity", nonlin_spec_to_json(c.problem.nonlin.spec())}};
  j["grids"] = {{"radial_nodes", c.radial_nodes},
                {"cyl_nodes", c.cyl_nodes},
                {"r_min_ref", c.r_min_ref},
                {"r_max_ref", c.r_max_ref}};
  j["tolerances"] = {{"descent_step", c.descent.step},
                     {"descent_tol", c.descent.tol},
                     {"max_iterations", c.descent.max_iterations},
                     {"quad_order", c.quad_order}};
  j["A_list"] = c.A_list;
  j["K_list"] = c.K_list;
  j["classify"] = {{"alpha_min", c.alpha_min}, {"alpha_max", c.alpha_max},
                   {"p_min", c.p_min},         {"p_max", c.p_max},
                   {"resolution", c.resolution}};
  j["nu"] = {{"N_min", c.N_min}, {"N_max", c.N_max}};
  j["output"] = {{"dir", c.out_dir}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

// validation shared by the solver commands; classify/nu only need exponents
void validate_problem(const RunConfig& c) {
  if (c.problem.N < 3) throw ConfigError("N must be at least 3");
  if (!(c.problem.alpha > 0)) throw ConfigError("alpha must be positive");
  if (c.problem.alpha == 2.0)
    throw ConfigError("alpha = 2 is excluded (degenerate scaling)");
  for (int K : c.K_list)
    if (K < 2 || K > c.problem.N - 2)
      throw ConfigError("K outside [2, N-2]: " + std::to_string(K));
  if (c.A_list.empty()) throw ConfigError("A_list is empty");
  for (std::size_t i = 0; i + 1 < c.A_list.size(); ++i)
    if (!(c.A_list[i] < c.A_list[i + 1]))
      throw ConfigError("A_list must be strictly increasing");
  if (!(c.A_list.front() > 0)) throw ConfigError("A values must be positive");
  if (c.radial_nodes < 10 || c.cyl_nodes < 8)
    throw ConfigError("grid too coarse");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const RunConfig& c, const std::string& cmd)
      : path_(path) {
    out_.open(path);
    if (!out_) throw IoError("cannot open " + path.string());
    out_ << "# symbreak " << cmd << "\n# seed " << c.seed << "\n";
  }
  void header(const std::string& cols) { out_ << cols << "\n"; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  void comment(const std::string& line) { out_ << "# " << line << "\n"; }
  ~CsvWriter() { out_.close(); }

 private:
  fs::path path_;
  std::ofstream out_;
};

int cmd_classify(const RunConfig& c, const fs::path& out) {
  if (c.problem.N < 3) throw ConfigError("N must be at least 3");
  if (c.resolution < 1) throw ConfigError("resolution must be positive");
  if (!(c.alpha_min > 0) || !(c.p_min > 2))
    throw ConfigError("classify window requires alpha > 0, p > 2");
  CsvWriter csv(out / "classify.csv", c, "classify");
  csv.header("alpha,p,region,citations");
  for (int i = 0; i < c.resolution; ++i) {
    const double alpha =
        c.alpha_min + (c.alpha_max - c.alpha_min) * i /
                          std::max(1, c.resolution - 1);
    for (int k = 0; k < c.resolution; ++k) {
      const double p =
          c.p_min + (c.p_max - c.p_min) * k / std::max(1, c.resolution - 1);
      const RegionLabel lbl = classify_region(c.problem.N, alpha, p);
      std::string cites;
      for (std::size_t q = 0; q < lbl.citations.size(); ++q)
        cites += (q ? ";" : "") + lbl.citations[q];
      csv.row({fmt(alpha), fmt(p), to_string(lbl.region), cites});
    }
  }
  CsvWriter curve(out / "pstar_curve.csv", c, "classify");
  curve.header("alpha,p_star_alpha");
  for (int i = 0; i < c.resolution; ++i) {
    const double alpha =
        c.alpha_min + (c.alpha_max - c.alpha_min) * i /
                          std::max(1, c.resolution - 1);
    const ExponentSet e = exponent_set(c.problem.N, alpha);
    if (e.p_star_defined) curve.row({fmt(alpha), fmt(e.p_star_alpha)});
  }
  return kExitOk;
}

int cmd_nu(const RunConfig& c, const fs::path& out) {
  const auto& sp = c.problem.nonlin.spec();
  CsvWriter csv(out / "nu.csv", c, "nu");
  csv.header("N,nu,applicable,k_min,k_max,error");
  for (int N = c.N_min; N <= c.N_max; ++N) {
    try {
      const int v = nu(N, c.problem.alpha, sp.p1, sp.p2);
      const ApplicabilityReport rep =
          theorem_applicability({N, c.problem.alpha, sp.p1, sp.p2});
      csv.row({std::to_string(N), std::to_string(v),
               rep.applicable ? "1" : "0",
               rep.applicable ? std::to_string(rep.k_min) : "",
               rep.applicable ? std::to_string(rep.k_max) : "", ""});
    } catch (const std::exception& e) {
      csv.row({std::to_string(N), "", "0", "", "", e.what()});
    }
  }
  return kExitOk;
}

int cmd_testfn(const RunConfig& c, const fs::path& out) {
  validate_problem(c);
  const BumpSpec bump{c.problem.nonlin.spec().s_star == kInf
                          ? 1.0
                          : c.problem.nonlin.spec().s_star,
                      0.9};
  CsvWriter csv(out / "testfn.csv", c, "testfn");
  csv.header("A,K,grad2,pot2,Fint,ratio,lambda,energy,bound,discrepancy");
  CsvWriter sum(out / "testfn_summary.csv", c, "testfn");
  sum.header("K,A_K,ratio_slope,ratio_monotone");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int K : c.K_list) {
    std::vector<std::pair<double, double>> ratio_pts;
    const ThresholdResult thr =
        threshold_AK(bump, K, c.problem.N, c.problem.alpha, c.problem.nonlin,
                     c.A_list, c.quad_order);
    for (std::size_t i = 0; i < c.A_list.size(); ++i) {
      const double A = c.A_list[i];
      const TestFnIntegrals ti = integrals(bump, A, K, c.problem.N,
                                           c.problem.alpha, c.problem.nonlin,
                                           c.quad_order);
      double lambda = nan, energy = nan, bound = nan;
      if (ti.ratio > 1.0) {
        const EndpointResult ep =
            endpoint_ubar(bump, A, K, c.problem.N, c.problem.alpha,
                          c.problem.nonlin, c.quad_order);
        lambda = ep.lambda;
        energy = ep.energy;
        bound = ep.bound;
      }
      if (ti.ratio > 0) ratio_pts.push_back({A, ti.ratio});
      csv.row({fmt(A), std::to_string(K), fmt(ti.grad2), fmt(ti.pot2),
               fmt(ti.Fint), fmt(ti.ratio), fmt(lambda), fmt(energy),
               fmt(bound), fmt(ti.max_rel_discrepancy)});
    }
    const double slope =
        ratio_pts.size() >= 3 ? fit_level_scaling(ratio_pts) : nan;
    sum.row({std::to_string(K), fmt(thr.A_K), fmt(slope),
             thr.monotone ? "1" : "0"});
  }
  return kExitOk;
}

int cmd_radial(const RunConfig& c, const fs::path& out) {
  validate_problem(c);
  CsvWriter csv(out / "radial.csv", c, "radial");
  csv.header("A,level,iterations,residual,min_value");
  std::vector<std::pair<double, double>> pts;
  int failures = 0;
  for (double A : c.A_list) {
    ProblemParams params = c.problem;
    params.A = A;
    const RadialGrid grid =
        RadialGrid::scaled(params.N, params.alpha, A, c.radial_nodes,
                           c.r_min_ref, c.r_max_ref);
    const RadialOperator op(params, grid);
    auto [u, rep] = ground_state_radial(op, default_radial_init(grid),
                                        c.descent);
    if (rep.status != SolveStatus::Converged) ++failures;
    if (rep.level > 0) pts.push_back({A, rep.level});
    csv.row({fmt(A), fmt(rep.level), std::to_string(rep.iterations),
             fmt(rep.residual), fmt(rep.min_value)});
  }
  if (pts.size() >= 3)
    csv.comment("fitted level slope " + fmt(fit_level_scaling(pts)));
  return failures == static_cast<int>(c.A_list.size()) ? kExitSolver
                                                       : kExitOk;
}

BreakSweepOptions sweep_options(const RunConfig& c) {
  BreakSweepOptions opt;
  opt.radial_nodes = c.radial_nodes;
  opt.cyl_nodes = c.cyl_nodes;
  opt.r_min_ref = c.r_min_ref;
  opt.r_max_ref = c.r_max_ref;
  opt.descent = c.descent;
  opt.bump.s_star = c.problem.nonlin.spec().s_star == kInf
                        ? 1.0
                        : c.problem.nonlin.spec().s_star;
  opt.workers = c.workers;
  return opt;
}

int cmd_cyl(const RunConfig& c, const fs::path& out) {
  validate_problem(c);
  const BreakSweepOptions opt = sweep_options(c);
  CsvWriter csv(out / "cyl.csv", c, "cyl");
  csv.header("A,K,level,deviation,converged");
  int failures = 0, total = 0;
  for (int K : c.K_list) {
    const BreakSweepResult res = break_sweep(c.problem, K, c.A_list, opt);
    for (const auto& r : res.reports) {
      ++total;
      const bool ok = r.cyl_status == SolveStatus::Converged;
      if (!ok) ++failures;
      csv.row({fmt(r.A), std::to_string(K), fmt(r.c_AK), fmt(r.deviation),
               ok ? "1" : "0"});
    }
  }
  return failures == total ? kExitSolver : kExitOk;
}

int cmd_break(const RunConfig& c, const fs::path& out) {
  validate_problem(c);
  const auto& sp = c.problem.nonlin.spec();
  const ApplicabilityReport app =
      theorem_applicability({c.problem.N, c.problem.alpha, sp.p1, sp.p2});
  if (!app.applicable)
    std::fprintf(stderr,
                 "warning: hypotheses not satisfied for these parameters; "
                 "proceeding anyway\n");
  const BreakSweepOptions opt = sweep_options(c);
  CsvWriter csv(out / "break.csv", c, "break");
  csv.comment("deviation_threshold " + fmt(opt.deviation_threshold));
  csv.header("A,K,m_A,c_AK,deviation,broken");
  CsvWriter sum(out / "break_summary.csv", c, "break");
  sum.header("K,A_tilde");
  double A_star = 0;
  bool any_ok = false, all_reached = true;
  for (int K : c.K_list) {
    const BreakSweepResult res = break_sweep(c.problem, K, c.A_list, opt);
    for (const auto& r : res.reports) {
      if (r.cyl_status != SolveStatus::NoSignChange &&
          r.radial_status != SolveStatus::NoSignChange)
        any_ok = true;
      csv.row({fmt(r.A), std::to_string(K), fmt(r.m_A), fmt(r.c_AK),
               fmt(r.deviation), r.broken ? "1" : "0"});
    }
    sum.row({std::to_string(K), fmt(res.A_tilde)});
    if (std::isinf(res.A_tilde))
      all_reached = false;
    else
      A_star = std::max(A_star, res.A_tilde);
  }
  sum.comment(all_reached ? "A_star " + fmt(A_star) : "A_star not reached");
  return any_ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry-breaking suite for -Lu + A|x|^-a u = f(u)"};
  app.require_subcommand(1);
  std::string config_path, out_flag;
  std::optional<int> workers_flag;
  std::optional<std::uint64_t> seed_flag;
  for (const char* name :
       {"classify", "nu", "testfn", "radial", "cyl", "break"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--workers", workers_flag, "sweep parallelism");
    sub->add_option("--seed", seed_flag, "seed recorded in output headers");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", config_path.c_str());
        return kExitIo;
      }
      try {
        cfg = config_from_json(json::parse(in));
      } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
      }
    }
    if (!out_flag.empty()) cfg.out_dir = out_flag;
    if (const char* env = std::getenv("SYMBREAK_OUT_DIR"))
      if (*env) cfg.out_dir = env;
    if (workers_flag) cfg.workers = *workers_flag;
    if (seed_flag) cfg.seed = *seed_flag;

    const fs::path out(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
      std::fprintf(stderr, "error: cannot create %s\n", out.string().c_str());
      return kExitIo;
    }
    {
      // resolved config, for provenance and lossless round-tripping
      std::ofstream cj(out / "config.json");
      if (!cj) return kExitIo;
      cj << config_to_json(cfg).dump(2) << "\n";
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    int rc = kExitConfig;
    if (cmd == "classify") rc = cmd_classify(cfg, out);
    else if (cmd == "nu") rc = cmd_nu(cfg, out);
    else if (cmd == "testfn") rc = cmd_testfn(cfg, out);
    else if (cmd == "radial") rc = cmd_radial(cfg, out);
    else if (cmd == "cyl") rc = cmd_cyl(cfg, out);
    else if (cmd == "break") rc = cmd_break(cfg, out);
    return rc;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
}
