#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace vorcov {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  double tail_cutoff_tol = 1e-13;  // semi-infinite truncation threshold
};

// Raised when the requested tolerance cannot be met; carries the best
// estimate reached and the error bound attached to it.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double estimate, double bound)
      : std::runtime_error(what), best_estimate(estimate), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7/15 over [a, b].
double integrate_finite(const Integrand& f, double a, double b,
                        const QuadratureSettings& s = {});

// Truncation record for a semi-infinite integral: the upper limit actually
// used and the tail magnitude estimate that justified stopping there.
struct TailInfo {
  double value = 0.0;
  double upper_limit = 0.0;
  double tail_bound = 0.0;
  int segments = 0;
};

// Integral over [a, inf) by segment doubling: [a, a+L], [a+L, a+3L], ...
// stops once both the last segment and the tail proxy |f(T)|*T sit below
// tail_cutoff_tol relative to the accumulated value.
double integrate_semi_infinite(const Integrand& f, double a,
                               const QuadratureSettings& s = {});
TailInfo integrate_semi_infinite_info(const Integrand& f, double a,
                                      const QuadratureSettings& s = {});

}  // namespace vorcov
