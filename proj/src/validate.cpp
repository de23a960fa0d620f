#include "vorcov/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "vorcov/quadrature.hpp"
#include "vorcov/rng.hpp"
#include "vorcov/sweep.hpp"

namespace vorcov {
namespace {

struct Battery {
  std::vector<CheckResult> results;
  void add(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }
  // Runs a check body, converting stray exceptions into failures.
  void run(const std::string& name, const std::function<void(Battery&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
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

// Asymptotic one-sample critical value; valid for the n >= 1e3 used here.
double ks_critical(double n, double significance) {
  return std::sqrt(-std::log(significance / 2.0) / (2.0 * n));
}

void check_quadrature(Battery& bat, std::uint64_t seed) {
  {
    const double a = integrate_finite([](double) { return 1.0; }, 0.0, 1.0);
    const double b = integrate_finite([](double x) { return x * x * x; }, 0.0, 2.0);
    const double c = integrate_finite([](double x) { return std::exp(-x); }, 0.0, 40.0);
    const bool ok = std::abs(a - 1.0) < 1e-12 && std::abs(b - 4.0) < 1e-12 &&
                    std::abs(c - (1.0 - std::exp(-40.0))) < 1e-12;
    bat.add("quadrature finite oracles", ok,
            "1, x^3, exp(-x) against antiderivatives");
  }
  {
    const double a = integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0);
    const double b = integrate_semi_infinite([](double u) { return 1.0 / (1.0 + u * u); }, 1.0);
    const double c = integrate_semi_infinite(
        [](double x) { return x * x * x * std::exp(-x * x); }, 0.0);
    const bool ok = std::abs(a - 1.0) < 1e-10 && std::abs(b - M_PI / 4.0) < 1e-10 &&
                    std::abs(c - 0.5) < 1e-10;
    bat.add("quadrature semi-infinite oracles", ok,
            "unit exponential, arctan tail, Gamma kernel");
  }
  {
    // Randomized integrands with closed-form antiderivatives.
    Rng rng(mix64(seed ^ 0x5eedULL));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double c0 = 4.0 * rng.uniform01() - 2.0;
      const double c1 = 4.0 * rng.uniform01() - 2.0;
      const double c2 = 4.0 * rng.uniform01() - 2.0;
      const double c3 = 4.0 * rng.uniform01() - 2.0;
      const double c4 = 4.0 * rng.uniform01() - 2.0;
      const double a = 0.5 + 2.5 * rng.uniform01();
      const double b = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * (0.3 + 1.7 * rng.uniform01());
      const double lo = 4.0 * rng.uniform01() - 2.0;
      const double hi = lo + 0.5 + 3.5 * rng.uniform01();
      const auto f = [=](double x) {
        return c0 + c1 * x + c2 * x * x + c3 * std::sin(a * x) + c4 * std::exp(b * x);
      };
      const auto antideriv = [=](double x) {
        return c0 * x + c1 * x * x / 2.0 + c2 * x * x * x / 3.0 -
               c3 * std::cos(a * x) / a + c4 * std::exp(b * x) / b;
      };
      const double exact = antideriv(hi) - antideriv(lo);
      const double got = integrate_finite(f, lo, hi);
      worst = std::max(worst,
                       std::abs(got - exact) / std::max(std::abs(exact), 1e-6));
    }
    bat.add("quadrature randomized antiderivatives", worst < 1e-8,
            "20 integrands, worst rel err " + fmt(worst));
  }
  {
    // Linearity and interval additivity.
    const auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x) + x; };
    const double base = integrate_finite(f, 0.0, 2.5);
    double worst = 0.0;
    for (const double c : {-2.0, 0.5, 10.0}) {
      const double scaled =
          integrate_finite([&](double x) { return c * f(x); }, 0.0, 2.5);
      worst = std::max(worst, std::abs(scaled - c * base));
    }
    const double split = integrate_finite(f, 0.0, 1.1) + integrate_finite(f, 1.1, 2.5);
    worst = std::max(worst, std::abs(split - base));
    bat.add("quadrature linearity/additivity", worst < 1e-8,
            "worst abs deviation " + fmt(worst));
  }
}

void check_analytic(Battery& bat, bool inject_kappa_error) {
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double g = std::pow(10.0, -2.0 + 5.0 * i / 99.0);
      const auto gamma = SirThreshold::from_linear(g);
      const double closed = rho(gamma, 4.0);
      const double quad = rho_quadrature(gamma, 4.0);
      worst = std::max(worst, std::abs(closed - quad) / std::max(closed, 1e-12));
    }
    bat.add("rho quadrature vs closed form", worst < 1e-8,
            "100 log-spaced thresholds, worst rel err " + fmt(worst));
  }
  {
    // Chain equality: general formula at sigma2=0 equals the
    // interference-limited square form for every lambda.
    double worst = 0.0;
    const double bug = inject_kappa_error ? 1.001 : 1.0;
    for (int i = 0; i < 50; ++i) {
      const double db = -10.0 + 30.0 * i / 49.0;
      const auto gamma = SirThreshold::from_db(db);
      const double il = coverage_worst_il(gamma, 4.0);
      const double k = kappa(gamma) * bug;
      const double closed = 1.0 / std::pow((1.0 + gamma.linear()) * k, 2.0);
      for (const double lambda : {0.1, 1.0, 10.0}) {
        const NetworkParams p{lambda, 4.0, 1.0, 0.0};
        const double general = coverage_worst_general(p, gamma);
        worst = std::max({worst, std::abs(general - il), std::abs(general - closed)});
      }
    }
    bat.add("chain equality (general = IL = closed form)", worst < 1e-6,
            "50-point grid, lambda in {0.1,1,10}, worst abs err " + fmt(worst));
  }
  {
    double worst_order = 1.0;
    bool ok = true;
    double prev_w = 1.0, prev_cs = 1.0, prev_t = 1.0;
    for (int i = 0; i < 61; ++i) {
      const double db = -10.0 + 0.5 * i;
      const auto gamma = SirThreshold::from_db(db);
      const double w = coverage_worst_il(gamma, 4.0);
      const double cs = coverage_cs(gamma);
      const double t = coverage_typical_il(gamma);
      ok = ok && w >= 0.0 && w <= 1.0 && cs >= 0.0 && cs <= 1.0 && t >= 0.0 && t <= 1.0;
      ok = ok && w <= cs + 1e-12 && w <= t + 1e-12;
      ok = ok && w <= prev_w + 1e-12 && cs <= prev_cs + 1e-12 && t <= prev_t + 1e-12;
      worst_order = std::min(worst_order, std::min(cs - w, t - w));
      prev_w = w;
      prev_cs = cs;
      prev_t = t;
    }
    bat.add("coverage ordering and monotonicity", ok,
            "worst <= cs, worst <= typical, all non-increasing in gamma");
  }
  {
    // CS coverage equals the vertex-law-weighted kernel quadrature.
    double worst = 0.0;
    for (const double g : {0.25, 0.6309573444801932, 1.0, 3.0}) {
      const double lambda = 1.0;
      const double direct = coverage_cs(SirThreshold::from_linear(g));
      const double r1 = rho(SirThreshold::from_linear(g), 4.0);
      const double r2 = rho(SirThreshold::from_linear(2.0 * g), 4.0);
      const double r3 = rho(SirThreshold::from_linear(3.0 * g), 4.0);
      const double quad = integrate_semi_infinite(
          [&](double r) {
            const double lp = lambda * M_PI * r * r;
            return (3.0 * std::exp(-lp * r1) - 3.0 * std::exp(-lp * r2) +
                    std::exp(-lp * r3)) *
                   vertex_distance_pdf(r, lambda);
          },
          0.0);
      worst = std::max(worst, std::abs(direct - quad));
    }
    bat.add("cs coverage vs kernel quadrature", worst < 1e-6,
            "worst abs err " + fmt(worst));
  }
  {
    bool ok = true;
    for (const double t : {1e-9, 0.1, 0.5, 1.0, 2.5, 7.0}) {
      ok = ok && epsilon_c(t) == kappa(SirThreshold::from_linear(std::expm1(t)));
      ok = ok && epsilon_cs(1.0, t) == epsilon_c(t);
      for (const double a : {2.0, 3.0}) {
        ok = ok &&
             epsilon_cs(a, t) == kappa(SirThreshold::from_linear(a * std::expm1(t)));
      }
    }
    bat.add("spectral kernel identities", ok,
            "eps_c(t) = kappa(e^t - 1), eps_cs(a,t) = kappa(a(e^t - 1))");
  }
  {
    const double mass = integrate_semi_infinite(
        [](double r) { return vertex_distance_pdf(r, 2.0); }, 0.0);
    double worst_fd = 0.0;
    for (const double r : {0.2, 0.5, 0.9, 1.4}) {
      const double h = 1e-6;
      const double fd =
          (vertex_distance_ccdf(r - h, 2.0) - vertex_distance_ccdf(r + h, 2.0)) /
          (2.0 * h);
      const double pdf = vertex_distance_pdf(r, 2.0);
      worst_fd = std::max(worst_fd, std::abs(fd - pdf) / pdf);
    }
    const bool ok = std::abs(mass - 1.0) < 1e-9 &&
                    vertex_distance_ccdf(0.0, 2.0) == 1.0 && worst_fd < 1e-6;
    bat.add("vertex distance law", ok,
            "pdf mass " + fmt(mass) + ", worst FD mismatch " + fmt(worst_fd));
  }
  {
    double worst = 0.0;
    const NetworkParams p{1.7, 4.0, 1.3, 0.0};
    for (const double r : {0.4, 0.9}) {
      for (const double g : {0.3, 1.0, 2.5}) {
        const double s = p.mu * g * std::pow(r, p.alpha);
        const double composite = laplace_interference(s, r, p);
        const double closed =
            std::exp(-p.lambda * M_PI * r * r * rho(SirThreshold::from_linear(g), 4.0)) /
            std::pow(1.0 + g, 2.0);
        worst = std::max(worst, std::abs(composite - closed) / closed);
      }
    }
    const bool at_zero = laplace_interference(0.0, 0.7, p) == 1.0;
    const double l1 = laplace_interference(0.5, 0.7, p);
    const double l2 = laplace_interference(1.5, 0.7, p);
    bat.add("interference Laplace transform", worst < 1e-8 && at_zero && l2 < l1,
            "composite vs closed form, worst rel err " + fmt(worst));
  }
}

void check_geometry(Battery& bat, const ValidateOptions& opt) {
  const std::uint64_t seed = opt.seed;
  {
    // Known shapes through the public pipeline on hand-built patterns.
    PointPattern pat;
    pat.window = {100.0, 1.0};
    pat.points = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    const auto tris = delaunay(pat);
    const auto verts = voronoi_vertices(pat, tris);
    bool ok = tris.size() == 1 && verts.size() == 1;
    if (ok) {
      ok = std::abs(verts[0].circumradius - 1.0 / std::sqrt(3.0)) < 1e-12 &&
           std::abs(verts[0].position.x - 0.5) < 1e-12;
    }
    PointPattern sq;
    sq.window = {100.0, 1.0};
    sq.points = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    ok = ok && delaunay(sq).size() == 2;
    PointPattern rt;
    rt.window = {100.0, 1.0};
    rt.points = {{0.0, 0.0}, {2.0, 0.0}, {0.0, 1.5}};
    const auto rverts = voronoi_vertices(rt, delaunay(rt));
    ok = ok && rverts.size() == 1 && std::abs(rverts[0].position.x - 1.0) < 1e-12 &&
         std::abs(rverts[0].position.y - 0.75) < 1e-12;
    bat.add("delaunay known shapes", ok,
            "equilateral, square tie, right-triangle circumcenters");
  }
  {
    bool threw = false;
    try {
      PointPattern line;
      line.window = {100.0, 1.0};
      line.points = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
      delaunay(line);
    } catch (const DegenerateConfigurationError&) {
      threw = true;
    }
    bat.add("collinear input rejected", threw, "degenerate configuration error raised");
  }
  {
    // Brute-force Delaunay oracles on small patterns.
    const int patterns = opt.quick ? 6 : 16;
    const Window w{8.8, 2.26};
    bool ok = true;
    std::string why = "empty circumcircle, 3-NN, equidistance";
    for (int k = 0; k < patterns && ok; ++k) {
      const auto pat = sample_ppp(1.0, w, substream_key(seed, k, 77));
      const auto tris = delaunay(pat);
      const auto verts = voronoi_vertices(pat, tris);
      for (const auto& v : verts) {
        double gen_d[3];
        for (int j = 0; j < 3; ++j) {
          const auto& p = pat.points[v.generators[j]];
          gen_d[j] = std::hypot(p.x - v.position.x, p.y - v.position.y);
          if (std::abs(gen_d[j] - v.circumradius) > 1e-9 * v.circumradius) {
            ok = false;
            why = "equidistance violated";
          }
        }
        std::size_t closer = 0;
        for (std::size_t b = 0; b < pat.points.size(); ++b) {
          const double d = std::hypot(pat.points[b].x - v.position.x,
                                      pat.points[b].y - v.position.y);
          if (d < v.circumradius * (1.0 - 1e-9)) {
            ok = false;
            why = "circumcircle not empty";
          }
          if (d < v.circumradius * (1.0 + 1e-9)) ++closer;
        }
        if (closer != 3) {
          ok = false;
          why = "generators are not the 3 nearest points";
        }
      }
    }
    bat.add("delaunay brute-force oracles", ok, why);
  }
  {
    // Poisson count law at mean 100.
    const int reps = opt.quick ? 4000 : 10000;
    const Window w{std::sqrt(100.0 / M_PI), 1.0};
    double sum = 0.0, sum2 = 0.0, sum_r2 = 0.0;
    std::uint64_t pts = 0;
    for (int k = 0; k < reps; ++k) {
      const auto pat = sample_ppp(1.0, w, substream_key(seed, k, 78));
      const double n = static_cast<double>(pat.points.size());
      sum += n;
      sum2 += n * n;
      if (k < 1000) {
        for (const auto& p : pat.points) {
          sum_r2 += p.x * p.x + p.y * p.y;
          ++pts;
        }
      }
    }
    const double mean = sum / reps;
    const double var = (sum2 - reps * mean * mean) / (reps - 1.0);
    const double msr = sum_r2 / static_cast<double>(pts);
    const double expect_msr = w.radius * w.radius / 2.0;
    const bool ok = mean > 99.0 && mean < 101.0 && var / mean > 0.95 &&
                    var / mean < 1.05 && std::abs(msr - expect_msr) < 0.02 * expect_msr;
    bat.add("ppp count and uniformity laws", ok,
            "mean " + fmt(mean) + ", var/mean " + fmt(var / mean) +
                ", mean r^2 / (R^2/2) " + fmt(msr / expect_msr));
  }
  {
    SimConfig cfg;
    cfg.params = {1.0, 4.0, 1.0, 0.0};
    cfg.window = default_window(1.0);
    cfg.realizations = opt.quick ? 20 : 50;
    cfg.master_seed = substream_key(seed, 1, 79);
    const Estimate est = estimate_vertex_intensity(cfg, opt.threads);
    const double rel = std::abs(est.mean - 2.0) / 2.0;
    bat.add("vertex intensity 2*lambda", rel < 0.02,
            fmt(est.mean) + " per unit area from " + std::to_string(est.n) +
                " vertices (rel dev " + fmt(rel) + ")");
  }
  {
    // One uniformly chosen vertex per realization: pooled radii share each
    // realization's BS-count fluctuation, which breaks the iid critical value.
    const int reps = opt.quick ? 3000 : 10500;
    const Window w{9.0, default_guard(1.0)};
    std::vector<double> radii;
    radii.reserve(reps);
    const std::uint64_t ks_seed = substream_key(seed, 2, 80);
    for (int i = 0; i < reps; ++i) {
      Rng pick = Rng::substream(ks_seed, i, 4000);
      const auto pat = sample_ppp(1.0, w, substream_key(ks_seed, i, 4100));
      const auto verts = voronoi_vertices(pat, delaunay(pat));
      if (verts.empty()) continue;
      const auto idx = static_cast<std::size_t>(pick.uniform01() * verts.size());
      radii.push_back(verts[idx].circumradius);
    }
    const double d = ks_statistic(radii, [](double r) {
      return 1.0 - vertex_distance_ccdf(r, 1.0);
    });
    const double crit = ks_critical(static_cast<double>(radii.size()), 0.01);
    bat.add("circumradius KS vs vertex law", d < crit,
            "D " + fmt(d) + " vs crit " + fmt(crit) + " at n " +
                std::to_string(radii.size()));
  }
  {
    // Nearest-BS distance of the origin user: CDF 1 - exp(-lambda pi R^2).
    const int reps = opt.quick ? 150 : 400;
    const Window w{8.0, 1.0};
    std::vector<double> nearest(reps);
    for (int k = 0; k < reps; ++k) {
      const auto pat = sample_ppp(1.0, w, substream_key(seed, k, 81));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : pat.points) best = std::min(best, std::hypot(p.x, p.y));
      nearest[k] = best;
    }
    const double d = ks_statistic(nearest, [](double r) {
      return -std::expm1(-M_PI * r * r);
    });
    const double crit = ks_critical(reps, 0.01);
    bat.add("nearest-distance KS (void law)", d < crit,
            "D " + fmt(d) + " vs crit " + fmt(crit));
  }
}

void check_simulator(Battery& bat, const ValidateOptions& opt) {
  {
    SimConfig cfg;
    cfg.params = {1.0, 4.0, 1.0, 0.0};
    cfg.window = default_window(1.0);
    cfg.realizations = opt.quick ? 40 : 100;
    cfg.master_seed = substream_key(opt.seed, 3, 90);
    const double grid[3] = {db_to_linear(-5.0), 1.0, db_to_linear(5.0)};
    const auto curves = simulate_curves(cfg, grid, opt.threads);
    double worst_z = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto gamma = SirThreshold::from_linear(grid[i]);
      const double a_w = coverage_worst_il(gamma, 4.0);
      const double a_c = coverage_cs(gamma);
      const double a_t = coverage_typical_il(gamma);
      worst_z = std::max(worst_z,
                         std::abs(curves.worst[i].mean - a_w) /
                             std::max(curves.worst[i].std_error, 1e-12));
      worst_z = std::max(worst_z, std::abs(curves.cs[i].mean - a_c) /
                                      std::max(curves.cs[i].std_error, 1e-12));
      worst_z = std::max(worst_z, std::abs(curves.typical[i].mean - a_t) /
                                      std::max(curves.typical[i].std_error, 1e-12));
    }
    const auto sw = spectral_worst();
    const auto sc = spectral_cs();
    worst_z = std::max(worst_z,
                       std::abs(curves.spectral_worst_nats.mean - sw.nats) /
                           std::max(curves.spectral_worst_nats.std_error, 1e-12));
    worst_z = std::max(worst_z, std::abs(curves.spectral_cs_nats.mean - sc.nats) /
                                    std::max(curves.spectral_cs_nats.std_error, 1e-12));
    // Family-adjusted threshold: 11 simultaneous checks at a 1% family
    // significance put the per-comparison cut at z = 3.32.
    bat.add("monte carlo vs analytic (3-point grid + spectral)", worst_z < 3.32,
            "worst |z| " + fmt(worst_z) + " across 11 comparisons (crit 3.32)");
  }
  {
    double means[2], ses[2];
    for (int j = 0; j < 2; ++j) {
      const double lambda = j == 0 ? 0.5 : 2.0;
      SimConfig cfg;
      cfg.params = {lambda, 4.0, 1.0, 0.0};
      cfg.window = default_window(lambda);
      cfg.realizations = opt.quick ? 30 : 80;
      cfg.master_seed = substream_key(opt.seed, 4 + j, 91);
      const Estimate est =
          simulate_worst_coverage(cfg, SirThreshold::from_linear(1.0), opt.threads);
      means[j] = est.mean;
      ses[j] = est.std_error;
    }
    const double z = std::abs(means[0] - means[1]) /
                     std::sqrt(ses[0] * ses[0] + ses[1] * ses[1]);
    bat.add("lambda invariance (MC)", z < 3.0,
            "lambda 0.5 vs 2.0 at gamma=1: |z| " + fmt(z));
  }
  {
    SimConfig cfg;
    cfg.params = {1.0, 4.0, 1.0, 0.0};
    cfg.window = {10.0, 2.26};
    cfg.realizations = 16;
    cfg.master_seed = substream_key(opt.seed, 6, 92);
    const double grid[2] = {0.5, 2.0};
    const auto a = simulate_curves(cfg, grid, 1);
    const auto b = simulate_curves(cfg, grid, 2);
    const auto c = simulate_curves(cfg, grid, opt.threads);
    bool identical = true;
    for (int i = 0; i < 2; ++i) {
      identical = identical && a.worst[i].mean == b.worst[i].mean &&
                  b.worst[i].mean == c.worst[i].mean &&
                  a.cs[i].std_error == b.cs[i].std_error &&
                  a.typical[i].mean == b.typical[i].mean;
    }
    identical = identical &&
                a.spectral_worst_nats.mean == b.spectral_worst_nats.mean &&
                a.spectral_cs_nats.mean == c.spectral_cs_nats.mean;
    // Paired CS dominance under shared fades.
    bool dominance = true;
    for (int i = 0; i < 2; ++i) {
      dominance = dominance && a.cs[i].mean >= a.worst[i].mean;
    }
    bat.add("determinism across thread counts", identical,
            "bit-identical estimates for 1, 2, and auto threads");
    bat.add("paired CS dominance", dominance, "CS coverage >= plain at shared seeds");
  }
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& opt) {
  Battery bat;
  bat.run("quadrature", [&](Battery& b) { check_quadrature(b, opt.seed); });
  bat.run("analytic", [&](Battery& b) { check_analytic(b, opt.inject_kappa_error); });
  bat.run("geometry", [&](Battery& b) { check_geometry(b, opt); });
  bat.run("simulator", [&](Battery& b) { check_simulator(b, opt); });
  return bat.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

void print_validation_report(std::ostream& os,
                             const std::vector<CheckResult>& results) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::size_t failed = 0;
  for (const auto& r : results) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    for (std::size_t i = r.name.size(); i < width + 2; ++i) os << ' ';
    os << r.detail << '\n';
    if (!r.pass) ++failed;
  }
  os << (failed == 0 ? "all checks passed"
                     : std::to_string(failed) + " check(s) failed")
     << " (" << results.size() << " total)\n";
}

}  // namespace vorcov
