#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vorcov/rng.hpp"
#include "vorcov/simulator.hpp"

using namespace vorcov;

namespace {

SirThreshold lin(double g) { return SirThreshold::from_linear(g); }

SimConfig small_config(std::uint64_t seed, int realizations) {
  SimConfig cfg;
  cfg.params = {1.0, 4.0, 1.0, 0.0};
  cfg.window = {12.0, 2.2567583341910251};
  cfg.realizations = realizations;
  cfg.master_seed = seed;
  return cfg;
}

double zscore(const Estimate& e, double truth) {
  return std::abs(e.mean - truth) / std::max(e.std_error, 1e-12);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace

TEST_CASE("coverage saturates at a negligible threshold") {
  const auto est = simulate_worst_coverage(small_config(21, 30), lin(1e-4));
  CHECK(est.mean > 0.995);
  CHECK(est.n > 10000);
}

TEST_CASE("per-metric estimates match the analytic oracles at 3 sigma") {
  SimConfig cfg = small_config(22, 150);
  const double grid[3] = {0.63095734448019325, 0.79432823472428150, 1.0};
  const auto curves = simulate_curves(cfg, grid);

  CHECK(zscore(curves.worst[2], 0.0784277654410908) < 3.0);        // g = 1
  CHECK(zscore(curves.cs[1], 0.60039188765714138) < 3.0);          // -1 dB
  CHECK(zscore(curves.typical[0], 0.65221268916857544) < 3.0);     // -2 dB
  CHECK(zscore(curves.spectral_worst_nats, 0.26711423261951438) < 3.0);
  CHECK(zscore(curves.spectral_cs_nats, 0.99828641071177660) < 3.0);

  // Paired CS dominance under shared fades.
  for (int i = 0; i < 3; ++i) {
    CHECK(curves.cs[i].mean >= curves.worst[i].mean);
    CHECK(curves.worst[i].mean >= 0.0);
    CHECK(curves.cs[i].mean <= 1.0);
    CHECK(curves.worst[i].std_error > 0.0);
  }
  CHECK(curves.meta.total_vertices == curves.worst[0].n);
  CHECK(curves.meta.mean_far_field > 0.0);
  CHECK(curves.meta.center_truncation_bound ==
        doctest::Approx(2.0 * M_PI / (2.0 * 144.0)));
}

TEST_CASE("spectral wrappers convert nats") {
  SimConfig cfg = small_config(23, 60);
  const auto nats = simulate_worst_spectral(cfg);
  CHECK(zscore(nats, 0.26711423261951438) < 3.0);
  const auto cs = simulate_cs_spectral(cfg);
  CHECK(cs.mean > nats.mean);
}

TEST_CASE("identical configs give bit-identical estimates at any width") {
  SimConfig cfg = small_config(24, 16);
  const double grid[2] = {0.5, 2.0};
  const auto a = simulate_curves(cfg, grid, 1);
  const auto b = simulate_curves(cfg, grid, 3);
  const auto c = simulate_curves(cfg, grid, 0);
  for (int i = 0; i < 2; ++i) {
    CHECK(a.worst[i].mean == b.worst[i].mean);
    CHECK(a.worst[i].std_error == b.worst[i].std_error);
    CHECK(a.cs[i].mean == c.cs[i].mean);
    CHECK(a.typical[i].mean == b.typical[i].mean);
  }
  CHECK(a.spectral_worst_nats.mean == b.spectral_worst_nats.mean);
  CHECK(a.spectral_cs_nats.std_error == c.spectral_cs_nats.std_error);

  // Single-threshold calls are exact slices of grid calls.
  const auto single = simulate_worst_coverage(cfg, lin(0.5), 2);
  CHECK(single.mean == a.worst[0].mean);
  CHECK(single.std_error == a.worst[0].std_error);
  CHECK(single.n == a.worst[0].n);
}

TEST_CASE("standard error shrinks like the square root of the sample") {
  const auto small = simulate_worst_coverage(small_config(25, 40), lin(1.0));
  const auto big = simulate_worst_coverage(small_config(25, 160), lin(1.0));
  const double ratio = big.std_error / small.std_error;
  CHECK(ratio > 0.5 * 0.8);
  CHECK(ratio < 0.5 * 1.2);
}

TEST_CASE("vertex intensity matches 2 lambda and scales with area") {
  for (const double lambda : {1.0, 5.0}) {
    SimConfig cfg;
    cfg.params = {lambda, 4.0, 1.0, 0.0};
    cfg.window = default_window(lambda);
    cfg.realizations = 40;
    cfg.master_seed = 31;
    const auto est = estimate_vertex_intensity(cfg);
    CHECK(est.mean == doctest::Approx(2.0 * lambda).epsilon(0.02));
    CHECK(est.n > 50000);
  }

  SimConfig base = small_config(32, 60);
  SimConfig doubled = base;
  doubled.window.radius = std::sqrt(2.0) * base.window.radius;
  const auto a = estimate_vertex_intensity(base);
  const auto b = estimate_vertex_intensity(doubled);
  const double count_ratio = static_cast<double>(b.n) / static_cast<double>(a.n);
  const double area_ratio = doubled.window.guard_area() / base.window.guard_area();
  CHECK(count_ratio == doctest::Approx(area_ratio).epsilon(0.05));
}

TEST_CASE("circumradius law: KS, mean, and density scaling") {
  // Radii pooled within one realization share its BS-count fluctuation, so
  // the iid KS critical value only applies to one vertex per realization,
  // chosen uniformly.
  std::vector<double> iid_radii;
  const Window w{9.0, default_guard(1.0)};
  for (int i = 0; i < 4000; ++i) {
    Rng pick = Rng::substream(33, i, 4000);
    const auto pat = sample_ppp(1.0, w, substream_key(33, i, 4100));
    const auto verts = voronoi_vertices(pat, delaunay(pat));
    if (verts.empty()) continue;
    const auto idx = static_cast<std::size_t>(pick.uniform01() * verts.size());
    iid_radii.push_back(verts[idx].circumradius);
  }
  REQUIRE(iid_radii.size() > 3900);
  const double d = ks_statistic(iid_radii, [](double r) {
    return 1.0 - vertex_distance_ccdf(r, 1.0);
  });
  const double crit = std::sqrt(-std::log(0.005) / (2.0 * iid_radii.size()));
  CHECK(d < crit);

  SimConfig cfg;
  cfg.params = {1.0, 4.0, 1.0, 0.0};
  cfg.window = default_window(1.0);
  cfg.realizations = 5;
  cfg.master_seed = 33;
  const auto radii = sample_circumradii(cfg);
  REQUIRE(radii.size() > 10000);
  double mean = 0.0;
  for (const double r : radii) mean += r;
  mean /= static_cast<double>(radii.size());
  CHECK(mean == doctest::Approx(0.75).epsilon(0.015));

  // Quadrupling the density halves the radii in distribution.
  SimConfig cfg4;
  cfg4.params = {4.0, 4.0, 1.0, 0.0};
  cfg4.window = default_window(4.0);
  cfg4.realizations = 5;
  cfg4.master_seed = 34;
  const auto radii4 = sample_circumradii(cfg4);
  double mean4 = 0.0;
  for (const double r : radii4) mean4 += r;
  mean4 /= static_cast<double>(radii4.size());
  CHECK(2.0 * mean4 == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("noise path matches the general coverage formula") {
  SimConfig cfg = small_config(35, 120);
  cfg.params.sigma2 = 0.5;
  const auto gamma = lin(0.5);
  const double truth = coverage_worst_general(cfg.params, gamma);
  const auto est = simulate_worst_coverage(cfg, gamma);
  CHECK(truth < coverage_worst_il(gamma, 4.0));
  CHECK(zscore(est, truth) < 3.0);
}

TEST_CASE("general path-loss exponent matches the IL formula") {
  SimConfig cfg = small_config(36, 120);
  cfg.params.alpha = 3.0;
  const auto gamma = lin(1.0);
  const auto est = simulate_worst_coverage(cfg, gamma);
  CHECK(zscore(est, coverage_worst_il(gamma, 3.0)) < 3.0);
}

TEST_CASE("lambda invariance across densities") {
  Estimate ests[2];
  int j = 0;
  for (const double lambda : {0.5, 2.0}) {
    SimConfig cfg;
    cfg.params = {lambda, 4.0, 1.0, 0.0};
    cfg.window = default_window(lambda);
    cfg.realizations = 60;
    cfg.master_seed = 37 + j;
    ests[j++] = simulate_worst_coverage(cfg, lin(1.0));
  }
  const double z = std::abs(ests[0].mean - ests[1].mean) /
                   std::sqrt(ests[0].std_error * ests[0].std_error +
                             ests[1].std_error * ests[1].std_error);
  CHECK(z < 3.0);
}

TEST_CASE("vertex cap limits the per-realization sample") {
  SimConfig cfg = small_config(38, 10);
  cfg.max_vertices = 25;
  const auto est = simulate_worst_coverage(cfg, lin(1.0));
  CHECK(est.n == 250);
}

TEST_CASE("zero guard-region vertices raise the no-samples error") {
  SimConfig cfg;
  cfg.params = {1.0, 4.0, 1.0, 0.0};
  cfg.window = {5.0, 4.9};  // guard radius 0.1: vertices essentially never land
  cfg.realizations = 2;
  cfg.master_seed = 39;
  CHECK_THROWS_AS(simulate_worst_coverage(cfg, lin(1.0)), NoSamplesError);
}

TEST_CASE("config validation") {
  SimConfig cfg = small_config(40, 0);
  CHECK_THROWS_AS(simulate_worst_coverage(cfg, lin(1.0)), std::invalid_argument);
  cfg = small_config(40, 2);
  cfg.params.alpha = 1.9;
  CHECK_THROWS_AS(simulate_worst_coverage(cfg, lin(1.0)), std::invalid_argument);
}
