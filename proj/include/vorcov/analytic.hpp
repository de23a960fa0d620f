#pragma once

#include <cmath>

#include "vorcov/quadrature.hpp"

namespace vorcov {

// Physical model parameters. Fades are exponential with rate mu (mean 1/mu)
// and each BS transmits power 1/mu, so the received-power product keeps
// mean 1/mu; only the noise term depends on mu at all.
struct NetworkParams {
  double lambda = 1.0;  // BS intensity per unit area
  double alpha = 4.0;   // path-loss exponent, > 2 for finite interference
  double mu = 1.0;      // fade rate / inverse BS power
  double sigma2 = 0.0;  // receiver noise power
  void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Linear SIR threshold; CLI and file formats speak dB, internals linear.
class SirThreshold {
 public:
  static SirThreshold from_linear(double lin);
  static SirThreshold from_db(double db) { return from_linear(db_to_linear(db)); }
  double linear() const { return lin_; }
  double db() const { return linear_to_db(lin_); }

 private:
  explicit SirThreshold(double lin) : lin_(lin) {}
  double lin_;
};

// rho(gamma, alpha) = gamma^(2/alpha) * integral_{gamma^(-2/alpha)}^inf
// du / (1 + u^(alpha/2)). Dispatches to the arctan closed form at alpha = 4.
double rho(SirThreshold gamma, double alpha, const QuadratureSettings& s = {});

// Same quantity, always through the quadrature path.
double rho_quadrature(SirThreshold gamma, double alpha,
                      const QuadratureSettings& s = {});

// kappa(gamma) = 1 + sqrt(gamma)*(pi/2 - atan(1/sqrt(gamma))), alpha = 4.
double kappa(SirThreshold gamma);

// Coverage probability of the worst-case user, general alpha with noise:
// 2*(lambda*pi/(1+gamma))^2 * integral r^3 exp(-lambda*pi*r^2*(1+rho)
// - mu*gamma*sigma2*r^alpha) dr, evaluated after substituting u = lambda*pi*r^2.
double coverage_worst_general(const NetworkParams& p, SirThreshold gamma,
                              const QuadratureSettings& s = {});

// Interference-limited worst-case coverage, (1/((1+gamma)(1+rho)))^2.
double coverage_worst_il(SirThreshold gamma, double alpha,
                         const QuadratureSettings& s = {});

// Typical-user baseline 1/kappa(gamma) (alpha = 4, interference-limited).
double coverage_typical_il(SirThreshold gamma);

// Coordinated-scheduling coverage 3/kappa(g)^2 - 3/kappa(2g)^2 + 1/kappa(3g)^2.
double coverage_cs(SirThreshold gamma);

struct SpectralEfficiency {
  double nats;
  double bps;
};

// eps_c(t) and its scaled variant; both are kappa evaluated on the same code
// path, which is what the identity tests pin down.
double epsilon_c(double t);
double epsilon_cs(double a, double t);

// Worst-case spectral efficiency: integral over t > 0 of (e^-t / eps_c(t))^2.
SpectralEfficiency spectral_worst(const QuadratureSettings& s = {});

// Coordinated-scheduling spectral efficiency:
// integral of 3/eps(1,t)^2 + 1/eps(3,t)^2 - 3/eps(2,t)^2.
SpectralEfficiency spectral_cs(const QuadratureSettings& s = {});

// Typical-user reference rate in bps/Hz.
double spectral_typical_baseline_bps();

// Circumradius law of the typical vertex: density 2*(lambda*pi)^2 r^3
// e^(-lambda*pi*r^2) and tail probability (1 + lambda*pi*r^2) e^(-lambda*pi*r^2).
double vertex_distance_pdf(double r, double lambda);
double vertex_distance_ccdf(double r, double lambda);

// Laplace transform of the aggregate interference seen from a vertex at
// circumradius r: the two co-distant generators contribute the squared
// rational factor, the field beyond r the exponential functional.
double laplace_interference(double s_arg, double r, const NetworkParams& p,
                            const QuadratureSettings& s = {});

// CCDF of the max of n+1 iid exponential(mu) variables.
double max_exp_ccdf(double g, int n, double mu);

}  // namespace vorcov
