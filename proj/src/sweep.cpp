#include "vorcov/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vorcov {
namespace {

constexpr double kPassSlack = 1e-12;  // exact-tie tolerance in |delta| <= 3 se

bool analytic_cs_typical_available(const NetworkParams& p) {
  return p.alpha == 4.0 && p.sigma2 == 0.0;
}

void require_cs_typical(const NetworkParams& p, const char* what) {
  if (!analytic_cs_typical_available(p)) {
    throw std::invalid_argument(std::string(what) +
                                " has an analytic form only for alpha=4, sigma2=0");
  }
}

double analytic_coverage(Metric m, const NetworkParams& p, SirThreshold g,
                         const QuadratureSettings& qs) {
  switch (m) {
    case Metric::Worst:
      return coverage_worst_general(p, g, qs);
    case Metric::WorstCs:
      require_cs_typical(p, "worst-cs coverage");
      return coverage_cs(g);
    case Metric::Typical:
      require_cs_typical(p, "typical coverage");
      return coverage_typical_il(g);
  }
  throw std::logic_error("unreachable");
}

bool within_3se(double analytic, double mc, double se) {
  return std::abs(analytic - mc) <= 3.0 * se + kPassSlack;
}

// For probability rows the sample stderr degenerates when every indicator
// agrees (e.g. zero hits in the deep tail), so the comparison also accepts
// the score-test form whose variance comes from the analytic value itself.
bool coverage_pass(double analytic, double mc, double se, std::uint64_t n) {
  const double score_se =
      n > 0 ? std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n)) : 0.0;
  return within_3se(analytic, mc, std::max(se, score_se));
}

}  // namespace

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::Worst: return "worst";
    case Metric::WorstCs: return "worst-cs";
    case Metric::Typical: return "typical";
  }
  throw std::logic_error("unreachable");
}

std::optional<Metric> metric_from_name(std::string_view name) {
  if (name == "worst") return Metric::Worst;
  if (name == "worst-cs") return Metric::WorstCs;
  if (name == "typical") return Metric::Typical;
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (!(step_db > 0.0)) throw std::invalid_argument("gamma step must be > 0");
  if (!(start_db <= stop_db)) throw std::invalid_argument("gamma range requires start <= stop");
  if (metrics.empty()) throw std::invalid_argument("metric set must be non-empty");
}

std::vector<double> SweepSpec::grid_db() const {
  validate();
  const auto count =
      static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start_db + static_cast<double>(i) * step_db;
  return grid;
}

std::vector<SweepRow> run_analytic_sweep(const SweepSpec& spec,
                                         const NetworkParams& params,
                                         const QuadratureSettings& qs) {
  params.validate();
  std::vector<SweepRow> rows;
  for (const double db : spec.grid_db()) {
    const auto gamma = SirThreshold::from_db(db);
    for (const Metric m : spec.metrics) {
      SweepRow row;
      row.gamma_db = db;
      row.metric = metric_name(m);
      row.analytic = analytic_coverage(m, params, gamma, qs);
      rows.push_back(row);
    }
  }
  if (spec.spectral) {
    require_cs_typical(params, "spectral efficiency");
    for (const Metric m : spec.metrics) {
      if (m == Metric::Worst) {
        const auto se = spectral_worst(qs);
        rows.push_back({std::nullopt, "spectral-worst-nats", se.nats, {}, {}, {}, {}});
        rows.push_back({std::nullopt, "spectral-worst-bps", se.bps, {}, {}, {}, {}});
      } else if (m == Metric::WorstCs) {
        const auto se = spectral_cs(qs);
        rows.push_back({std::nullopt, "spectral-cs-nats", se.nats, {}, {}, {}, {}});
        rows.push_back({std::nullopt, "spectral-cs-bps", se.bps, {}, {}, {}, {}});
      } else {
        rows.push_back({std::nullopt, "spectral-typical-bps",
                        spectral_typical_baseline_bps(), {}, {}, {}, {}});
      }
    }
  }
  return rows;
}

SimSweepResult run_sim_sweep(const SweepSpec& spec, const SimConfig& cfg,
                             unsigned threads, const QuadratureSettings& qs) {
  cfg.params.validate();
  const bool compare = spec.mode == SweepMode::Compare;
  const auto grid_db = spec.grid_db();
  std::vector<double> grid_lin(grid_db.size());
  for (std::size_t i = 0; i < grid_db.size(); ++i) grid_lin[i] = db_to_linear(grid_db[i]);

  const CurveEstimates curves = simulate_curves(cfg, grid_lin, threads);

  SimSweepResult out;
  out.meta = curves.meta;
  const bool have_analytic_cs_typ = analytic_cs_typical_available(cfg.params);

  for (std::size_t i = 0; i < grid_db.size(); ++i) {
    const auto gamma = SirThreshold::from_db(grid_db[i]);
    for (const Metric m : spec.metrics) {
      SweepRow row;
      row.gamma_db = grid_db[i];
      row.metric = metric_name(m);
      const Estimate est = m == Metric::Worst    ? curves.worst[i]
                           : m == Metric::WorstCs ? curves.cs[i]
                                                  : curves.typical[i];
      row.mc_mean = est.mean;
      row.mc_stderr = est.std_error;
      row.n = est.n;
      if (compare && (m == Metric::Worst || have_analytic_cs_typ)) {
        row.analytic = analytic_coverage(m, cfg.params, gamma, qs);
        row.pass = coverage_pass(*row.analytic, est.mean, est.std_error, est.n);
        out.any_compared = true;
        out.all_pass = out.all_pass && *row.pass;
      }
      out.rows.push_back(row);
    }
  }

  if (spec.spectral) {
    for (const Metric m : spec.metrics) {
      if (m == Metric::Typical) {
        if (compare && have_analytic_cs_typ) {
          out.rows.push_back({std::nullopt, "spectral-typical-bps",
                              spectral_typical_baseline_bps(), {}, {}, {}, {}});
        }
        continue;
      }
      const bool worst = m == Metric::Worst;
      const Estimate nats = worst ? curves.spectral_worst_nats : curves.spectral_cs_nats;
      const Estimate bps{nats.mean / M_LN2, nats.std_error / M_LN2, nats.n};
      const std::optional<SpectralEfficiency> an =
          compare && have_analytic_cs_typ
              ? std::optional<SpectralEfficiency>(worst ? spectral_worst(qs) : spectral_cs(qs))
              : std::nullopt;
      SweepRow row_nats{std::nullopt, worst ? "spectral-worst-nats" : "spectral-cs-nats",
                        {}, nats.mean, nats.std_error, nats.n, {}};
      SweepRow row_bps{std::nullopt, worst ? "spectral-worst-bps" : "spectral-cs-bps",
                       {}, bps.mean, bps.std_error, bps.n, {}};
      if (an) {
        row_nats.analytic = an->nats;
        row_nats.pass = within_3se(an->nats, nats.mean, nats.std_error);
        row_bps.analytic = an->bps;
        row_bps.pass = within_3se(an->bps, bps.mean, bps.std_error);
        out.any_compared = true;
        out.all_pass = out.all_pass && *row_nats.pass && *row_bps.pass;
      }
      out.rows.push_back(row_nats);
      out.rows.push_back(row_bps);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "gamma_db,metric,analytic,mc_mean,mc_stderr,n,pass\n";
  for (const auto& r : rows) {
    if (r.gamma_db) os << format_double(*r.gamma_db);
    os << ',' << r.metric << ',';
    if (r.analytic) os << format_double(*r.analytic);
    os << ',';
    if (r.mc_mean) os << format_double(*r.mc_mean);
    os << ',';
    if (r.mc_stderr) os << format_double(*r.mc_stderr);
    os << ',';
    if (r.n) os << *r.n;
    os << ',';
    if (r.pass) os << (*r.pass ? "PASS" : "FAIL");
    os << '\n';
  }
}

void write_metadata_comments(std::ostream& os, const SimConfig& cfg,
                             const SimMetadata& meta) {
  os << "# seed=" << cfg.master_seed << '\n'
     << "# realizations=" << meta.realizations << '\n'
     << "# window_radius=" << format_double(cfg.window.radius) << '\n'
     << "# guard=" << format_double(cfg.window.guard) << '\n'
     << "# guard_area=" << format_double(meta.guard_area) << '\n'
     << "# lambda=" << format_double(cfg.params.lambda) << '\n'
     << "# alpha=" << format_double(cfg.params.alpha) << '\n'
     << "# mu=" << format_double(cfg.params.mu) << '\n'
     << "# sigma2=" << format_double(cfg.params.sigma2) << '\n'
     << "# total_vertices=" << meta.total_vertices << '\n'
     << "# degenerate_retries=" << meta.degenerate_retries << '\n'
     << "# mean_far_field_correction=" << format_double(meta.mean_far_field) << '\n'
     << "# center_truncation_bound=" << format_double(meta.center_truncation_bound)
     << '\n';
}

std::vector<SweepRow> parse_csv(std::istream& is) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 7) throw std::runtime_error("malformed CSV row: " + line);
    SweepRow r;
    if (!fields[0].empty()) r.gamma_db = std::stod(fields[0]);
    r.metric = fields[1];
    if (!fields[2].empty()) r.analytic = std::stod(fields[2]);
    if (!fields[3].empty()) r.mc_mean = std::stod(fields[3]);
    if (!fields[4].empty()) r.mc_stderr = std::stod(fields[4]);
    if (!fields[5].empty()) r.n = std::stoull(fields[5]);
    if (!fields[6].empty()) r.pass = fields[6] == "PASS";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace vorcov
