#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vorcov/analytic.hpp"
#include "vorcov/simulator.hpp"

namespace vorcov {

enum class Metric { Worst, WorstCs, Typical };
enum class SweepMode { Analytic, Simulate, Compare };

std::string metric_name(Metric m);
std::optional<Metric> metric_from_name(std::string_view name);

struct SweepSpec {
  double start_db = -10.0;
  double stop_db = 20.0;
  double step_db = 1.0;
  std::vector<Metric> metrics = {Metric::Worst, Metric::WorstCs, Metric::Typical};
  SweepMode mode = SweepMode::Compare;
  bool spectral = false;  // add spectral-efficiency rows
  void validate() const;
  std::vector<double> grid_db() const;
};

// One CSV record; absent fields print as empty columns.
struct SweepRow {
  std::optional<double> gamma_db;
  std::string metric;
  std::optional<double> analytic;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<std::uint64_t> n;
  std::optional<bool> pass;
};

std::vector<SweepRow> run_analytic_sweep(const SweepSpec& spec,
                                         const NetworkParams& params,
                                         const QuadratureSettings& qs = {});

struct SimSweepResult {
  std::vector<SweepRow> rows;
  SimMetadata meta;
  bool all_pass = true;
  bool any_compared = false;
};

// Simulate or Compare over the grid with a single Monte-Carlo pass.
SimSweepResult run_sim_sweep(const SweepSpec& spec, const SimConfig& cfg,
                             unsigned threads = 0,
                             const QuadratureSettings& qs = {});

std::string format_double(double v);  // round-trip safe, 17 significant digits

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_metadata_comments(std::ostream& os, const SimConfig& cfg,
                             const SimMetadata& meta);
std::vector<SweepRow> parse_csv(std::istream& is);

}  // namespace vorcov
