#include "vorcov/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace vorcov {

void NetworkParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2: interference diverges");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("sigma2 must be >= 0");
}

SirThreshold SirThreshold::from_linear(double lin) {
  if (!(lin > 0.0) || !std::isfinite(lin)) {
    throw std::invalid_argument("SIR threshold must be positive and finite");
  }
  return SirThreshold(lin);
}

double rho_quadrature(SirThreshold gamma, double alpha,
                      const QuadratureSettings& s) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2: interference diverges");
  const double g = gamma.linear();
  const double lower = std::pow(g, -2.0 / alpha);
  const double half_alpha = alpha / 2.0;
  const double integral = integrate_semi_infinite(
      [half_alpha](double u) { return 1.0 / (1.0 + std::pow(u, half_alpha)); },
      lower, s);
  return std::pow(g, 2.0 / alpha) * integral;
}

namespace {

double rho_closed_form_alpha4(double g) {
  const double sg = std::sqrt(g);
  return sg * (M_PI / 2.0 - std::atan(1.0 / sg));
}

}  // namespace

double rho(SirThreshold gamma, double alpha, const QuadratureSettings& s) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2: interference diverges");
  if (alpha == 4.0) return rho_closed_form_alpha4(gamma.linear());
  return rho_quadrature(gamma, alpha, s);
}

double kappa(SirThreshold gamma) {
  return 1.0 + rho_closed_form_alpha4(gamma.linear());
}

double coverage_worst_general(const NetworkParams& p, SirThreshold gamma,
                              const QuadratureSettings& s) {
  p.validate();
  const double g = gamma.linear();
  const double r = rho(gamma, p.alpha, s);
  // u = lambda*pi*r^2 removes lambda from the domain scale; the noise term
  // keeps it through (u/(lambda*pi))^(alpha/2).
  const double noise_coeff = p.mu * g * p.sigma2;
  const double lp = p.lambda * M_PI;
  const double half_alpha = p.alpha / 2.0;
  const double integral = integrate_semi_infinite(
      [=](double u) {
        double e = -u * (1.0 + r);
        if (noise_coeff > 0.0) e -= noise_coeff * std::pow(u / lp, half_alpha);
        return u * std::exp(e);
      },
      0.0, s);
  const double v = integral / ((1.0 + g) * (1.0 + g));
  return std::min(1.0, std::max(0.0, v));
}

double coverage_worst_il(SirThreshold gamma, double alpha,
                         const QuadratureSettings& s) {
  const double g = gamma.linear();
  const double denom = (1.0 + g) * (1.0 + rho(gamma, alpha, s));
  return 1.0 / (denom * denom);
}

double coverage_typical_il(SirThreshold gamma) { return 1.0 / kappa(gamma); }

double coverage_cs(SirThreshold gamma) {
  const double g = gamma.linear();
  const double k1 = kappa(SirThreshold::from_linear(g));
  const double k2 = kappa(SirThreshold::from_linear(2.0 * g));
  const double k3 = kappa(SirThreshold::from_linear(3.0 * g));
  return 3.0 / (k1 * k1) - 3.0 / (k2 * k2) + 1.0 / (k3 * k3);
}

double epsilon_c(double t) {
  return kappa(SirThreshold::from_linear(std::expm1(t)));
}

double epsilon_cs(double a, double t) {
  return kappa(SirThreshold::from_linear(a * std::expm1(t)));
}

namespace {

// expm1 underflows to 0 at tiny t and kappa demands a positive argument;
// the integrands below are evaluated directly with the closed form instead.
double kappa_lin(double x) {
  if (x <= 0.0) return 1.0;
  const double sx = std::sqrt(x);
  return 1.0 + sx * (M_PI / 2.0 - std::atan(1.0 / sx));
}

}  // namespace

SpectralEfficiency spectral_worst(const QuadratureSettings& s) {
  const double nats = integrate_semi_infinite(
      [](double t) {
        const double e = std::exp(-t) / kappa_lin(std::expm1(t));
        return e * e;
      },
      0.0, s);
  return {nats, nats / M_LN2};
}

SpectralEfficiency spectral_cs(const QuadratureSettings& s) {
  const double nats = integrate_semi_infinite(
      [](double t) {
        const double x = std::expm1(t);
        const double e1 = kappa_lin(x);
        const double e2 = kappa_lin(2.0 * x);
        const double e3 = kappa_lin(3.0 * x);
        return 3.0 / (e1 * e1) - 3.0 / (e2 * e2) + 1.0 / (e3 * e3);
      },
      0.0, s);
  return {nats, nats / M_LN2};
}

double spectral_typical_baseline_bps() { return 2.15; }

double vertex_distance_pdf(double r, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(r >= 0.0)) throw std::invalid_argument("r must be >= 0");
  const double lp = lambda * M_PI;
  return 2.0 * lp * lp * r * r * r * std::exp(-lp * r * r);
}

double vertex_distance_ccdf(double r, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(r >= 0.0)) throw std::invalid_argument("r must be >= 0");
  const double x = lambda * M_PI * r * r;
  return (1.0 + x) * std::exp(-x);
}

double laplace_interference(double s_arg, double r, const NetworkParams& p,
                            const QuadratureSettings& s) {
  p.validate();
  if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
  if (!(s_arg >= 0.0)) throw std::invalid_argument("s must be >= 0");
  if (s_arg == 0.0) return 1.0;

  const double near = p.mu / (p.mu + s_arg * std::pow(r, -p.alpha));
  const double alpha = p.alpha;
  const double mu = p.mu;
  const double exponent_integral = integrate_semi_infinite(
      [=](double v) {
        const double w = s_arg * std::pow(v, -alpha);
        return w / (mu + w) * v;
      },
      r, s);
  return near * near * std::exp(-2.0 * p.lambda * M_PI * exponent_integral);
}

double max_exp_ccdf(double g, int n, double mu) {
  if (!(g >= 0.0)) throw std::invalid_argument("g must be >= 0");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  return 1.0 - std::pow(-std::expm1(-mu * g), n + 1);
}

}  // namespace vorcov
