#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vorcov/sweep.hpp"
#include "vorcov/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitComparison = 3;

struct Options {
  double lambda = 1.0;
  double alpha = 4.0;
  double mu = 1.0;
  double sigma2 = 0.0;
  std::string gamma_spec = "-10:20:1";
  std::string metrics = "worst,worst-cs,typical";
  int realizations = 500;
  std::uint64_t seed = 1;
  double window_radius = 0.0;  // 0 = derive from lambda
  double guard = 0.0;          // 0 = derive from lambda
  std::size_t max_vertices = 0;
  unsigned threads = 0;
  std::string out_path;
  bool quick = false;
  bool spectral = false;
  bool inject_kappa_error = false;
};

vorcov::SweepSpec make_sweep_spec(const Options& o, vorcov::SweepMode mode) {
  vorcov::SweepSpec spec;
  spec.mode = mode;
  spec.spectral = o.spectral;

  std::vector<std::string> parts;
  std::stringstream gs(o.gamma_spec);
  for (std::string item; std::getline(gs, item, ':');) parts.push_back(item);
  try {
    if (parts.empty() || parts.size() > 3) throw std::invalid_argument("");
    spec.start_db = std::stod(parts[0]);
    spec.stop_db = parts.size() > 1 ? std::stod(parts[1]) : spec.start_db;
    spec.step_db = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
  } catch (const std::exception&) {
    throw std::invalid_argument("--gamma-db expects start[:stop[:step]] in dB: " +
                                o.gamma_spec);
  }

  spec.metrics.clear();
  std::stringstream ms(o.metrics);
  for (std::string item; std::getline(ms, item, ',');) {
    const auto m = vorcov::metric_from_name(item);
    if (!m) throw std::invalid_argument("unknown metric: " + item);
    spec.metrics.push_back(*m);
  }
  spec.validate();
  return spec;
}

vorcov::SimConfig make_sim_config(const Options& o) {
  vorcov::SimConfig cfg;
  cfg.params = {o.lambda, o.alpha, o.mu, o.sigma2};
  cfg.params.validate();
  cfg.window.radius =
      o.window_radius > 0.0 ? o.window_radius : vorcov::default_window_radius(o.lambda);
  cfg.window.guard = o.guard > 0.0 ? o.guard : vorcov::default_guard(o.lambda);
  cfg.window.validate();
  cfg.realizations = o.quick ? std::min(o.realizations, 100) : o.realizations;
  cfg.master_seed = o.seed;
  if (o.max_vertices > 0) cfg.max_vertices = o.max_vertices;
  return cfg;
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_analytic(const Options& o) {
  const auto spec = make_sweep_spec(o, vorcov::SweepMode::Analytic);
  const vorcov::NetworkParams params{o.lambda, o.alpha, o.mu, o.sigma2};
  const auto rows = vorcov::run_analytic_sweep(spec, params);
  OutputStream out(o.out_path);
  vorcov::write_csv(out.get(), rows);
  return kExitOk;
}

int run_sim(const Options& o, vorcov::SweepMode mode) {
  const auto spec = make_sweep_spec(o, mode);
  const auto cfg = make_sim_config(o);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = vorcov::run_sim_sweep(spec, cfg, o.threads);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

  OutputStream out(o.out_path);
  vorcov::write_csv(out.get(), result.rows);
  vorcov::write_metadata_comments(out.get(), cfg, result.meta);
  std::fprintf(stderr, "simulation wall time: %.2fs (%llu vertices)\n",
               elapsed.count(),
               static_cast<unsigned long long>(result.meta.total_vertices));
  if (mode == vorcov::SweepMode::Compare && result.any_compared && !result.all_pass) {
    std::fprintf(stderr, "comparison FAILED: at least one |analytic - mc| > 3*stderr\n");
    return kExitComparison;
  }
  return kExitOk;
}

int run_validate(const Options& o) {
  vorcov::ValidateOptions vo;
  vo.quick = o.quick;
  vo.seed = o.seed;
  vo.threads = o.threads;
  vo.inject_kappa_error = o.inject_kappa_error;
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = vorcov::run_validation(vo);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
  OutputStream out(o.out_path);
  vorcov::print_validation_report(out.get(), results);
  std::fprintf(stderr, "validation wall time: %.2fs\n", elapsed.count());
  return vorcov::all_passed(results) ? kExitOk : kExitComparison;
}

int run_dump_pattern(const Options& o) {
  vorcov::Window w;
  w.radius = o.window_radius > 0.0 ? o.window_radius : vorcov::default_window_radius(o.lambda);
  w.guard = o.guard > 0.0 ? o.guard : vorcov::default_guard(o.lambda);
  const auto pattern = vorcov::sample_ppp(o.lambda, w, o.seed);
  OutputStream out(o.out_path);
  for (const auto& p : pattern.points) {
    out.get() << vorcov::format_double(p.x) << ' ' << vorcov::format_double(p.y) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case user coverage and spectral efficiency in Poisson-Voronoi "
               "cellular networks: analytic evaluation and Monte-Carlo cross-check"};
  app.require_subcommand(1);
  Options o;

  app.set_config("--config", "", "flat key=value config file")->envname("VORCOV_CONFIG");
  app.add_option("--lambda", o.lambda, "BS intensity per unit area")->capture_default_str();
  app.add_option("--alpha", o.alpha, "path-loss exponent (> 2)")->capture_default_str();
  app.add_option("--mu", o.mu, "fade rate; BS power is 1/mu")->capture_default_str();
  app.add_option("--sigma2", o.sigma2, "noise power")->capture_default_str();
  app.add_option("--gamma-db", o.gamma_spec, "SIR threshold sweep start[:stop[:step]] in dB")
      ->capture_default_str();
  app.add_option("--metrics", o.metrics, "comma list of worst,worst-cs,typical")
      ->capture_default_str();
  app.add_option("--realizations", o.realizations, "Monte-Carlo realizations")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_option("--window-radius", o.window_radius,
                 "simulation window radius (0 = derive from lambda)");
  app.add_option("--guard", o.guard, "guard band width (0 = derive from lambda)");
  app.add_option("--max-vertices", o.max_vertices,
                 "cap on vertices used per realization (0 = all)");
  app.add_option("--threads", o.threads, "worker threads (0 = hardware)");
  app.add_option("--out", o.out_path, "write CSV/report to file instead of stdout");
  app.add_flag("--quick", o.quick, "reduced sample sizes");
  app.add_flag("--spectral", o.spectral, "include spectral-efficiency rows");
  app.add_flag("--inject-kappa-error", o.inject_kappa_error, "")->group("");

  auto* cmd_analytic = app.add_subcommand("analytic", "evaluate the analytic formulas");
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte-Carlo estimates");
  auto* cmd_compare =
      app.add_subcommand("compare", "analytic vs Monte-Carlo with PASS/FAIL column");
  auto* cmd_validate = app.add_subcommand("validate", "run the invariant suite");
  auto* cmd_dump = app.add_subcommand("dump-pattern", "emit one sampled pattern as x y lines");
  for (auto* sub : {cmd_analytic, cmd_simulate, cmd_compare, cmd_validate, cmd_dump}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_analytic->parsed()) return run_analytic(o);
    if (cmd_simulate->parsed()) return run_sim(o, vorcov::SweepMode::Simulate);
    if (cmd_compare->parsed()) return run_sim(o, vorcov::SweepMode::Compare);
    if (cmd_validate->parsed()) return run_validate(o);
    if (cmd_dump->parsed()) return run_dump_pattern(o);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
