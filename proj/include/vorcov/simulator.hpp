#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vorcov/analytic.hpp"
#include "vorcov/geometry.hpp"

namespace vorcov {

struct SimConfig {
  NetworkParams params;
  Window window;
  int realizations = 500;
  std::uint64_t master_seed = 1;
  std::optional<std::size_t> max_vertices;  // per-realization cap on vertices used
};

// Window matching the module defaults for the given intensity.
Window default_window(double lambda);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

struct NoSamplesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimMetadata {
  std::uint64_t total_vertices = 0;
  std::uint64_t realizations = 0;
  std::uint64_t degenerate_retries = 0;
  double guard_area = 0.0;
  // Average per-vertex mean interference credited from beyond the window.
  double mean_far_field = 0.0;
  // Spec'd center-vertex truncation bound 2*pi*lambda*R^(2-alpha)/((alpha-2)*mu).
  double center_truncation_bound = 0.0;
};

// One Monte-Carlo pass evaluated on a whole SIR-threshold grid. Fade draws
// do not depend on the grid, so single-threshold calls are exact slices of
// grid calls, and results are bit-identical for any thread count.
struct CurveEstimates {
  std::vector<double> gammas_lin;
  std::vector<Estimate> worst;
  std::vector<Estimate> cs;
  std::vector<Estimate> typical;
  Estimate spectral_worst_nats;
  Estimate spectral_cs_nats;
  SimMetadata meta;
};

CurveEstimates simulate_curves(const SimConfig& cfg,
                               std::span<const double> gammas_lin,
                               unsigned threads = 0);

Estimate simulate_worst_coverage(const SimConfig& cfg, SirThreshold gamma,
                                 unsigned threads = 0);
Estimate simulate_cs_coverage(const SimConfig& cfg, SirThreshold gamma,
                              unsigned threads = 0);
Estimate simulate_typical_coverage(const SimConfig& cfg, SirThreshold gamma,
                                   unsigned threads = 0);
Estimate simulate_worst_spectral(const SimConfig& cfg, unsigned threads = 0);
Estimate simulate_cs_spectral(const SimConfig& cfg, unsigned threads = 0);

// Pooled guard-region vertex count per unit guard area (expected 2*lambda).
Estimate estimate_vertex_intensity(const SimConfig& cfg, unsigned threads = 0);

// Pooled circumradii of guard-region vertices, realization order.
std::vector<double> sample_circumradii(const SimConfig& cfg, unsigned threads = 0);

}  // namespace vorcov
