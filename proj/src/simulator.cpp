#include "vorcov/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "vorcov/quadrature.hpp"
#include "vorcov/rng.hpp"

namespace vorcov {
namespace {

constexpr std::uint64_t kPurposePattern = 1000;  // + retry attempt
constexpr std::uint64_t kPurposeFades = 2000;
constexpr std::uint64_t kPurposeTypical = 3000;
constexpr int kMaxPatternRetries = 100;

double pathloss_from_d2(double d2, double alpha) {
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

// Mean interference received from the (unsimulated) PPP beyond the window,
// as a function of the receiver's distance from the origin. Closed form for
// alpha = 4, radial quadrature table otherwise.
class FarField {
 public:
  FarField(const NetworkParams& p, const Window& w)
      : scale_(p.lambda / p.mu), alpha_(p.alpha), radius_(w.radius) {
    if (alpha_ == 4.0) return;
    const double guard_r = w.guard_radius();
    const int nodes = 513;
    table_.resize(nodes);
    step_ = guard_r / (nodes - 1);
    for (int i = 0; i < nodes; ++i) table_[i] = exterior_integral(step_ * i);
  }

  double operator()(double d) const {
    if (alpha_ == 4.0) {
      const double den = radius_ * radius_ - d * d;
      return scale_ * M_PI * radius_ * radius_ / (den * den);
    }
    const double pos = d / step_;
    const auto lo = std::min(table_.size() - 2, static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(lo);
    return scale_ * (table_[lo] * (1.0 - frac) + table_[lo + 1] * frac);
  }

 private:
  // integral over {|x| > R} of |x - v|^(-alpha), |v| = d: polar around v,
  // with the exterior arc angle 2(pi - acos(c)) on the crossing annulus.
  double exterior_integral(double d) const {
    const double R = radius_;
    const double alpha = alpha_;
    const QuadratureSettings qs{1e-10, 1e-14, 2000, 1e-13};
    const double crossing =
        (d == 0.0) ? 0.0
                   : integrate_finite(
                         [=](double u) {
                           double c = (d * d + u * u - R * R) / (2.0 * d * u);
                           c = std::clamp(c, -1.0, 1.0);
                           const double angle = 2.0 * (M_PI - std::acos(c));
                           return std::pow(u, 1.0 - alpha) * angle;
                         },
                         R - d, R + d, qs);
    const double tail =
        2.0 * M_PI * std::pow(R + d, 2.0 - alpha) / (alpha - 2.0);
    return crossing + tail;
  }

  double scale_;
  double alpha_;
  double radius_;
  double step_ = 1.0;
  std::vector<double> table_;
};

struct RealizationOut {
  std::uint64_t vertices = 0;
  std::vector<std::uint32_t> worst_hits;
  std::vector<std::uint32_t> cs_hits;
  double sum_ln_plain = 0.0;
  double sum_ln_cs = 0.0;
  double typical_sir = 0.0;
  double sum_far = 0.0;
  std::uint32_t retries = 0;
  std::vector<double> radii;  // only when collecting circumradii
};

struct GeometryDraw {
  PointPattern pattern;
  std::vector<VertexRecord> vertices;
  std::uint32_t retries = 0;
};

GeometryDraw draw_geometry(const SimConfig& cfg, std::uint64_t index) {
  GeometryDraw out;
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t seed =
        substream_key(cfg.master_seed, index, kPurposePattern + attempt);
    try {
      out.pattern = sample_ppp(cfg.params.lambda, cfg.window, seed);
      const auto tris = delaunay(out.pattern);
      out.vertices = voronoi_vertices(out.pattern, tris);
      break;
    } catch (const DegeneratePatternError&) {
    } catch (const DegenerateConfigurationError&) {
    }
    if (attempt + 1 >= kMaxPatternRetries) {
      throw NoSamplesError("no usable pattern after degenerate-pattern retries");
    }
    ++out.retries;
  }
  if (cfg.max_vertices && out.vertices.size() > *cfg.max_vertices) {
    out.vertices.resize(*cfg.max_vertices);
  }
  return out;
}

RealizationOut run_realization(const SimConfig& cfg,
                               std::span<const double> gammas,
                               const FarField& far, std::uint64_t index) {
  RealizationOut out;
  out.worst_hits.assign(gammas.size(), 0);
  out.cs_hits.assign(gammas.size(), 0);

  GeometryDraw geo = draw_geometry(cfg, index);
  out.retries = geo.retries;
  const auto& pts = geo.pattern.points;
  const auto n_bs = pts.size();
  const double alpha = cfg.params.alpha;
  const double mu = cfg.params.mu;
  const double sigma2 = cfg.params.sigma2;

  Rng fades = Rng::substream(cfg.master_seed, index, kPurposeFades);
  for (const auto& vert : geo.vertices) {
    const auto g0 = static_cast<std::size_t>(vert.generators[0]);
    const auto g1 = static_cast<std::size_t>(vert.generators[1]);
    const auto g2 = static_cast<std::size_t>(vert.generators[2]);
    double gen_fade[3] = {0.0, 0.0, 0.0};
    double interference = 0.0;
    for (std::size_t b = 0; b < n_bs; ++b) {
      const double fade = fades.exponential(mu);
      if (b == g0) {
        gen_fade[0] = fade;
        continue;
      }
      if (b == g1) {
        gen_fade[1] = fade;
        continue;
      }
      if (b == g2) {
        gen_fade[2] = fade;
        continue;
      }
      const double dx = pts[b].x - vert.position.x;
      const double dy = pts[b].y - vert.position.y;
      interference += fade * pathloss_from_d2(dx * dx + dy * dy, alpha);
    }
    const double w_serving =
        pathloss_from_d2(vert.circumradius * vert.circumradius, alpha);
    const double far_mean = far(std::hypot(vert.position.x, vert.position.y));
    out.sum_far += far_mean;

    // Serving BS is the lowest-index generator; under CS the best of the
    // three fades serves and the other two are muted.
    const double base = sigma2 + interference + far_mean;
    const double sir_plain =
        gen_fade[0] * w_serving / (base + (gen_fade[1] + gen_fade[2]) * w_serving);
    const double sir_cs =
        std::max({gen_fade[0], gen_fade[1], gen_fade[2]}) * w_serving / base;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      out.worst_hits[k] += sir_plain > gammas[k];
      out.cs_hits[k] += sir_cs > gammas[k];
    }
    out.sum_ln_plain += std::log1p(sir_plain);
    out.sum_ln_cs += std::log1p(sir_cs);
  }
  out.vertices = geo.vertices.size();

  // Typical-user probe: one sample per realization, user at the origin
  // served by the nearest BS.
  Rng tfades = Rng::substream(cfg.master_seed, index, kPurposeTypical);
  std::size_t nearest = 0;
  double nearest_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < n_bs; ++b) {
    const double d2 = pts[b].x * pts[b].x + pts[b].y * pts[b].y;
    if (d2 < nearest_d2) {
      nearest_d2 = d2;
      nearest = b;
    }
  }
  double numerator = 0.0;
  double denom = sigma2 + far(0.0);
  for (std::size_t b = 0; b < n_bs; ++b) {
    const double fade = tfades.exponential(mu);
    const double d2 = pts[b].x * pts[b].x + pts[b].y * pts[b].y;
    if (b == nearest) {
      numerator = fade * pathloss_from_d2(d2, alpha);
    } else {
      denom += fade * pathloss_from_d2(d2, alpha);
    }
  }
  out.typical_sir = numerator / denom;
  return out;
}

template <class Fn>
void parallel_realizations(int realizations, unsigned threads, Fn&& fn) {
  unsigned width = threads != 0 ? threads : std::thread::hardware_concurrency();
  width = std::max(1u, std::min<unsigned>(width, realizations));
  std::vector<std::exception_ptr> errors(realizations);
  if (width == 1) {
    for (int i = 0; i < realizations; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (unsigned t = 0; t < width; ++t) {
      pool.emplace_back([&, t]() {
        for (int i = static_cast<int>(t); i < realizations;
             i += static_cast<int>(width)) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Cluster (per-realization) ratio estimator: mean = sum(h)/sum(n),
// se from the realization-level residuals h_i - p*n_i.
Estimate ratio_estimate(const std::vector<double>& h,
                        const std::vector<double>& n) {
  const std::size_t m = h.size();
  double total_h = 0.0;
  double total_n = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    total_h += h[i];
    total_n += n[i];
  }
  if (total_n <= 0.0) throw NoSamplesError("no samples: zero vertices pooled");
  const double p = total_h / total_n;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double resid = h[i] - p * n[i];
    ss += resid * resid;
  }
  Estimate est;
  est.mean = p;
  est.n = static_cast<std::uint64_t>(total_n + 0.5);
  est.std_error =
      m > 1 ? std::sqrt(ss * static_cast<double>(m) / (m - 1.0)) / total_n : 0.0;
  return est;
}

Estimate mean_estimate(const std::vector<double>& x) {
  const std::size_t m = x.size();
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  Estimate est;
  est.mean = mean;
  est.std_error = m > 1 ? std::sqrt(ss / (m - 1.0) / static_cast<double>(m)) : 0.0;
  est.n = m;
  return est;
}

void validate_config(const SimConfig& cfg) {
  cfg.params.validate();
  cfg.window.validate();
  if (cfg.realizations < 1) {
    throw std::invalid_argument("realizations must be >= 1");
  }
}

}  // namespace

Window default_window(double lambda) {
  return {default_window_radius(lambda), default_guard(lambda)};
}

CurveEstimates simulate_curves(const SimConfig& cfg,
                               std::span<const double> gammas_lin,
                               unsigned threads) {
  validate_config(cfg);
  for (const double g : gammas_lin) (void)SirThreshold::from_linear(g);

  const FarField far(cfg.params, cfg.window);
  const int m = cfg.realizations;
  std::vector<RealizationOut> slots(m);
  parallel_realizations(m, threads, [&](int i) {
    slots[i] = run_realization(cfg, gammas_lin, far, static_cast<std::uint64_t>(i));
  });

  CurveEstimates out;
  out.gammas_lin.assign(gammas_lin.begin(), gammas_lin.end());

  std::vector<double> counts(m);
  for (int i = 0; i < m; ++i) counts[i] = static_cast<double>(slots[i].vertices);

  std::vector<double> h(m);
  for (std::size_t k = 0; k < gammas_lin.size(); ++k) {
    for (int i = 0; i < m; ++i) h[i] = slots[i].worst_hits[k];
    out.worst.push_back(ratio_estimate(h, counts));
    for (int i = 0; i < m; ++i) h[i] = slots[i].cs_hits[k];
    out.cs.push_back(ratio_estimate(h, counts));
    std::vector<double> typ(m);
    for (int i = 0; i < m; ++i) {
      typ[i] = slots[i].typical_sir > gammas_lin[k] ? 1.0 : 0.0;
    }
    out.typical.push_back(mean_estimate(typ));
  }
  for (int i = 0; i < m; ++i) h[i] = slots[i].sum_ln_plain;
  out.spectral_worst_nats = ratio_estimate(h, counts);
  for (int i = 0; i < m; ++i) h[i] = slots[i].sum_ln_cs;
  out.spectral_cs_nats = ratio_estimate(h, counts);

  out.meta.realizations = static_cast<std::uint64_t>(m);
  out.meta.guard_area = cfg.window.guard_area();
  const double r = cfg.window.radius;
  out.meta.center_truncation_bound =
      2.0 * M_PI * cfg.params.lambda * std::pow(r, 2.0 - cfg.params.alpha) /
      ((cfg.params.alpha - 2.0) * cfg.params.mu);
  double far_sum = 0.0;
  for (const auto& s : slots) {
    out.meta.total_vertices += s.vertices;
    out.meta.degenerate_retries += s.retries;
    far_sum += s.sum_far;
  }
  out.meta.mean_far_field =
      out.meta.total_vertices > 0
          ? far_sum / static_cast<double>(out.meta.total_vertices)
          : 0.0;
  return out;
}

Estimate simulate_worst_coverage(const SimConfig& cfg, SirThreshold gamma,
                                 unsigned threads) {
  const double g[1] = {gamma.linear()};
  return simulate_curves(cfg, g, threads).worst[0];
}

Estimate simulate_cs_coverage(const SimConfig& cfg, SirThreshold gamma,
                              unsigned threads) {
  const double g[1] = {gamma.linear()};
  return simulate_curves(cfg, g, threads).cs[0];
}

Estimate simulate_typical_coverage(const SimConfig& cfg, SirThreshold gamma,
                                   unsigned threads) {
  const double g[1] = {gamma.linear()};
  return simulate_curves(cfg, g, threads).typical[0];
}

Estimate simulate_worst_spectral(const SimConfig& cfg, unsigned threads) {
  return simulate_curves(cfg, {}, threads).spectral_worst_nats;
}

Estimate simulate_cs_spectral(const SimConfig& cfg, unsigned threads) {
  return simulate_curves(cfg, {}, threads).spectral_cs_nats;
}

Estimate estimate_vertex_intensity(const SimConfig& cfg, unsigned threads) {
  validate_config(cfg);
  const int m = cfg.realizations;
  const double area = cfg.window.guard_area();
  std::vector<double> intensity(m);
  std::vector<std::uint64_t> counts(m);
  parallel_realizations(m, threads, [&](int i) {
    const GeometryDraw geo = draw_geometry(cfg, static_cast<std::uint64_t>(i));
    counts[i] = geo.vertices.size();
    intensity[i] = static_cast<double>(geo.vertices.size()) / area;
  });
  Estimate est = mean_estimate(intensity);
  est.n = 0;
  for (const auto c : counts) est.n += c;
  return est;
}

std::vector<double> sample_circumradii(const SimConfig& cfg, unsigned threads) {
  validate_config(cfg);
  const int m = cfg.realizations;
  std::vector<std::vector<double>> radii(m);
  parallel_realizations(m, threads, [&](int i) {
    const GeometryDraw geo = draw_geometry(cfg, static_cast<std::uint64_t>(i));
    radii[i].reserve(geo.vertices.size());
    for (const auto& v : geo.vertices) radii[i].push_back(v.circumradius);
  });
  std::vector<double> pooled;
  for (const auto& r : radii) pooled.insert(pooled.end(), r.begin(), r.end());
  return pooled;
}

}  // namespace vorcov
