#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vorcov/analytic.hpp"
#include "vorcov/quadrature.hpp"

using namespace vorcov;

namespace {

SirThreshold lin(double g) { return SirThreshold::from_linear(g); }

// Fixed-grid Simpson rule: an integration route independent of the adaptive
// Gauss-Kronrod engine the library uses.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; i += 2) sum += 4.0 * f(a + i * h);
  for (int i = 2; i < n; i += 2) sum += 2.0 * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("SIR threshold conversions round-trip") {
  for (const double db : {-17.0, -2.0, 0.0, 3.5, 12.0}) {
    const auto g = SirThreshold::from_db(db);
    CHECK(g.db() == doctest::Approx(db).epsilon(1e-12));
    const auto back = SirThreshold::from_linear(g.linear());
    CHECK(back.linear() == g.linear());
  }
  CHECK(SirThreshold::from_db(-2.0).linear() == doctest::Approx(0.63095734448019325).epsilon(1e-14));
  CHECK_THROWS_AS(SirThreshold::from_linear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SirThreshold::from_linear(-1.0), std::invalid_argument);
}

TEST_CASE("network parameter validation") {
  CHECK_NOTHROW(NetworkParams{1.0, 4.0, 1.0, 0.0}.validate());
  CHECK_THROWS_AS((NetworkParams{0.0, 4.0, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((NetworkParams{1.0, 2.0, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((NetworkParams{1.0, 4.0, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((NetworkParams{1.0, 4.0, 1.0, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("rho closed form and quadrature") {
  CHECK(rho(lin(1.0), 4.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
  // sqrt(g)*(pi/2 - atan(1/sqrt(g))) at g = 0.631, frozen from a 30-digit
  // evaluation.
  CHECK(rho(lin(0.631), 4.0) == doctest::Approx(0.53324217177493925).epsilon(1e-12));
  CHECK(rho_quadrature(lin(0.631), 4.0) == doctest::Approx(0.53324217177493925).epsilon(1e-9));
  CHECK(rho(lin(1e-12), 4.0) < 1e-5);
  CHECK_THROWS_AS(rho(lin(1.0), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(rho_quadrature(lin(1.0), 1.5), std::invalid_argument);

  // 100 log-spaced thresholds, quadrature vs arctan form.
  for (int i = 0; i < 100; ++i) {
    const double g = std::pow(10.0, -2.0 + 5.0 * i / 99.0);
    const double closed = rho(lin(g), 4.0);
    const double quad = rho_quadrature(lin(g), 4.0);
    CHECK(std::abs(closed - quad) <= 1e-8 * std::max(closed, 1e-10));
  }
  // General alpha keeps the quadrature path.
  CHECK(rho(lin(1.0), 3.0) == doctest::Approx(rho_quadrature(lin(1.0), 3.0)).epsilon(1e-12));
}

TEST_CASE("kappa") {
  CHECK(kappa(lin(1.0)) == doctest::Approx(1.0 + M_PI / 4.0).epsilon(1e-14));
  CHECK(kappa(lin(0.631)) == doctest::Approx(1.53324217177493925).epsilon(1e-12));
  CHECK(kappa(lin(1e-12)) == doctest::Approx(1.0).epsilon(1e-5));
  double prev = 1.0;
  for (double db = -20.0; db <= 20.0; db += 0.5) {
    const double k = kappa(SirThreshold::from_db(db));
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("worst-case coverage, interference-limited") {
  // (1/((1+g)(1+rho)))^2 at g = 1: hand value 1/(2(1+pi/4))^2.
  const double expected = 1.0 / std::pow(2.0 * (1.0 + M_PI / 4.0), 2.0);
  CHECK(coverage_worst_il(lin(1.0), 4.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.0784277654410908).epsilon(1e-12));
  CHECK(coverage_worst_il(lin(0.631), 4.0) == doctest::Approx(0.15990813785801115).epsilon(1e-12));
  CHECK(coverage_worst_il(lin(1e8), 4.0) < 1e-20);
}

TEST_CASE("worst-case coverage, general formula") {
  const auto g1 = lin(1.0);
  for (const double lambda : {0.1, 1.0, 10.0}) {
    const NetworkParams p{lambda, 4.0, 1.0, 0.0};
    CHECK(coverage_worst_general(p, g1) ==
          doctest::Approx(0.0784277654410908).epsilon(1e-9));
  }
  const NetworkParams base{1.0, 4.0, 1.0, 0.0};
  CHECK(coverage_worst_general(base, lin(1e-9)) == doctest::Approx(1.0).epsilon(1e-6));

  // Noise strictly reduces coverage.
  const NetworkParams noisy{1.0, 4.0, 1.0, 0.5};
  CHECK(coverage_worst_general(noisy, g1) < coverage_worst_general(base, g1));

  // Chain equality on a 50-point grid across three densities.
  for (int i = 0; i < 50; ++i) {
    const double db = -10.0 + 30.0 * i / 49.0;
    const auto gamma = SirThreshold::from_db(db);
    const double il = coverage_worst_il(gamma, 4.0);
    const double closed = 1.0 / std::pow((1.0 + gamma.linear()) * kappa(gamma), 2.0);
    for (const double lambda : {0.1, 1.0, 10.0}) {
      const NetworkParams p{lambda, 4.0, 1.0, 0.0};
      const double general = coverage_worst_general(p, gamma);
      CHECK(std::abs(general - il) < 1e-6);
      CHECK(std::abs(general - closed) < 1e-6);
    }
  }
}

TEST_CASE("typical-user baseline and the worst-case ratio") {
  CHECK(coverage_typical_il(lin(1e-9)) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(coverage_typical_il(lin(0.631)) == doctest::Approx(0.65221268916857544).epsilon(1e-12));
  const double ratio =
      coverage_worst_il(lin(0.631), 4.0) / coverage_typical_il(lin(0.631));
  CHECK(ratio == doctest::Approx(0.2451779005739034).epsilon(1e-10));
  CHECK(ratio > 0.21);
  CHECK(ratio < 0.26);
}

TEST_CASE("coordinated-scheduling coverage") {
  CHECK(coverage_cs(lin(1e-9)) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(coverage_cs(lin(1.0)) == doctest::Approx(0.52467603468749982).epsilon(1e-12));
  const auto g_m1db = SirThreshold::from_db(-1.0);
  CHECK(coverage_cs(g_m1db) == doctest::Approx(0.60039188765714138).epsilon(1e-12));
  CHECK(std::abs(coverage_cs(g_m1db) - coverage_typical_il(g_m1db)) < 0.02);

  for (double db = -10.0; db <= 20.0; db += 0.5) {
    const auto g = SirThreshold::from_db(db);
    const double w = coverage_worst_il(g, 4.0);
    const double cs = coverage_cs(g);
    const double t = coverage_typical_il(g);
    CHECK(cs >= w);
    CHECK(t >= w);
    CHECK(cs >= 0.0);
    CHECK(cs <= 1.0);
  }
}

TEST_CASE("cs coverage equals the vertex-law-weighted kernel") {
  for (const double g : {0.3, 0.6309573444801932, 1.0, 4.0}) {
    const double r1 = rho(lin(g), 4.0);
    const double r2 = rho(lin(2.0 * g), 4.0);
    const double r3 = rho(lin(3.0 * g), 4.0);
    const double quad = integrate_semi_infinite(
        [&](double r) {
          const double lp = M_PI * r * r;
          return (3.0 * std::exp(-lp * r1) - 3.0 * std::exp(-lp * r2) +
                  std::exp(-lp * r3)) *
                 vertex_distance_pdf(r, 1.0);
        },
        0.0);
    CHECK(std::abs(coverage_cs(lin(g)) - quad) < 1e-6);
  }
}

TEST_CASE("spectral kernels reuse kappa") {
  for (const double t : {1e-6, 0.2, 1.0, 3.0, 10.0}) {
    CHECK(epsilon_c(t) == kappa(lin(std::expm1(t))));
    CHECK(epsilon_cs(1.0, t) == epsilon_c(t));
    CHECK(epsilon_cs(2.0, t) == kappa(lin(2.0 * std::expm1(t))));
  }
  // Worst-case integrand tends to 1 at t -> 0+.
  const double t0 = 1e-9;
  const double integrand = std::pow(std::exp(-t0) / epsilon_c(t0), 2.0);
  CHECK(integrand == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("worst-case spectral efficiency") {
  const auto s = spectral_worst();
  // Frozen from two independent 30-digit evaluations of the t-integral.
  CHECK(s.nats == doctest::Approx(0.26711423261951438).epsilon(1e-9));
  CHECK(s.bps == doctest::Approx(0.38536437875103438).epsilon(1e-9));
  CHECK(s.bps == doctest::Approx(s.nats / std::log(2.0)).epsilon(1e-15));

  // Second route: fixed-grid Simpson over a truncated domain.
  const double simpson_nats = simpson(
      [](double t) { return std::pow(std::exp(-t) / epsilon_c(t), 2.0); }, 1e-12, 40.0,
      20000);
  CHECK(s.nats == doctest::Approx(simpson_nats).epsilon(1e-8));
}

TEST_CASE("coordinated-scheduling spectral efficiency") {
  const auto s = spectral_cs();
  CHECK(s.nats == doctest::Approx(0.99828641071177660).epsilon(1e-9));
  CHECK(s.bps == doctest::Approx(1.44022285412072306).epsilon(1e-9));
  CHECK(s.bps >= spectral_worst().bps);

  const double simpson_nats = simpson(
      [](double t) {
        const double e1 = epsilon_cs(1.0, t);
        const double e2 = epsilon_cs(2.0, t);
        const double e3 = epsilon_cs(3.0, t);
        return 3.0 / (e1 * e1) - 3.0 / (e2 * e2) + 1.0 / (e3 * e3);
      },
      1e-12, 60.0, 40000);
  CHECK(s.nats == doctest::Approx(simpson_nats).epsilon(1e-7));
}

TEST_CASE("baseline ratios") {
  CHECK(spectral_typical_baseline_bps() == 2.15);
  const double worst_ratio = spectral_worst().bps / spectral_typical_baseline_bps();
  const double cs_ratio = spectral_cs().bps / spectral_typical_baseline_bps();
  CHECK(worst_ratio == doctest::Approx(0.17923924593071366).epsilon(1e-8));
  CHECK(cs_ratio == doctest::Approx(0.66987109493987119).epsilon(1e-8));
}

TEST_CASE("vertex distance law") {
  CHECK(vertex_distance_ccdf(0.0, 1.0) == 1.0);
  CHECK(vertex_distance_ccdf(0.0, 7.0) == 1.0);
  const double mass =
      integrate_semi_infinite([](double r) { return vertex_distance_pdf(r, 1.0); }, 0.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  // -d/dr ccdf matches the density (central finite differences).
  for (const double r : {0.2, 0.6, 1.1}) {
    const double h = 1e-6;
    const double fd =
        (vertex_distance_ccdf(r - h, 1.5) - vertex_distance_ccdf(r + h, 1.5)) / (2.0 * h);
    CHECK(fd == doctest::Approx(vertex_distance_pdf(r, 1.5)).epsilon(1e-7));
  }

  // Median for lambda = 1 by bisection on the ccdf.
  double lo = 0.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (vertex_distance_ccdf(mid, 1.0) > 0.5 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(0.73091342809467587).epsilon(1e-10));

  // Mean radius: 3/(4 sqrt(lambda)) by quadrature of r * pdf.
  for (const double lambda : {1.0, 4.0}) {
    const double mean = integrate_semi_infinite(
        [lambda](double r) { return r * vertex_distance_pdf(r, lambda); }, 0.0);
    CHECK(mean == doctest::Approx(0.75 / std::sqrt(lambda)).epsilon(1e-9));
  }

  // Scaling: quadrupling the density halves the radius in distribution.
  for (const double r : {0.2, 0.5, 1.0}) {
    CHECK(vertex_distance_ccdf(r, 4.0) ==
          doctest::Approx(vertex_distance_ccdf(2.0 * r, 1.0)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(vertex_distance_pdf(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(vertex_distance_ccdf(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("interference Laplace transform") {
  const NetworkParams p{1.0, 4.0, 1.0, 0.0};
  CHECK(laplace_interference(0.0, 0.8, p) == 1.0);

  // At s = mu*g*r^4 the composite form collapses to the closed expression;
  // frozen value from a 30-digit evaluation at r=0.8, g=0.7.
  const double g = 0.7, r = 0.8;
  const double s_arg = p.mu * g * std::pow(r, 4.0);
  const double closed = std::pow(1.0 + g, -2.0) *
                        std::exp(-p.lambda * M_PI * r * r * rho(lin(g), 4.0));
  CHECK(laplace_interference(s_arg, r, p) == doctest::Approx(closed).epsilon(1e-8));
  CHECK(closed == doctest::Approx(0.10717997734506032).epsilon(1e-12));

  // Same identity off the default parameter point.
  const NetworkParams q{0.7, 3.2, 2.0, 0.0};
  for (const double gg : {0.4, 1.7}) {
    const double rr = 0.55;
    const double sq = q.mu * gg * std::pow(rr, q.alpha);
    const double expect = std::pow(1.0 + gg, -2.0) *
                          std::exp(-q.lambda * M_PI * rr * rr * rho(lin(gg), q.alpha));
    CHECK(laplace_interference(sq, rr, q) == doctest::Approx(expect).epsilon(1e-8));
  }

  double prev = 1.0;
  for (const double s : {0.1, 0.4, 1.0, 3.0, 10.0}) {
    const double v = laplace_interference(s, 0.8, p);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(laplace_interference(-1.0, 0.8, p), std::invalid_argument);
  CHECK_THROWS_AS(laplace_interference(1.0, 0.0, p), std::invalid_argument);
}

TEST_CASE("max-of-exponentials CCDF") {
  CHECK(max_exp_ccdf(0.0, 5, 2.0) == 1.0);
  CHECK(max_exp_ccdf(1.0, 0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  for (const double g : {0.1, 0.7, 2.0}) {
    const double mu = 1.3;
    const double direct = 3.0 * std::exp(-mu * g) - 3.0 * std::exp(-2.0 * mu * g) +
                          std::exp(-3.0 * mu * g);
    CHECK(max_exp_ccdf(g, 2, mu) == doctest::Approx(direct).epsilon(1e-12));
  }
  double prev = 1.1;
  for (const double g : {0.0, 0.2, 0.5, 1.5, 4.0}) {
    const double v = max_exp_ccdf(g, 3, 1.0);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(max_exp_ccdf(-1.0, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(max_exp_ccdf(1.0, -1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(max_exp_ccdf(1.0, 2, 0.0), std::invalid_argument);
}
