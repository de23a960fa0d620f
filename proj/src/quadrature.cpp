#include "vorcov/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

namespace vorcov {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK dqk15).
// Odd-index abscissae are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double err;
};

Panel gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  double flo[7];
  double fhi[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    flo[j] = f(center - dx);
    fhi[j] = f(center + dx);
    resk += kWgk[j] * (flo[j] + fhi[j]);
    resabs += kWgk[j] * (std::abs(flo[j]) + std::abs(fhi[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (flo[j] + fhi[j]);
  }

  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(flo[j] - mean) + std::abs(fhi[j] - mean));
  }
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > DBL_MIN / (50.0 * DBL_EPSILON)) {
    err = std::max(err, 50.0 * DBL_EPSILON * resabs);
  }
  return {a, b, resk * half, err};
}

}  // namespace

double integrate_finite(const Integrand& f, double a, double b,
                        const QuadratureSettings& s) {
  if (!(a <= b)) throw std::invalid_argument("integrate_finite: requires a <= b");
  if (s.rel_tol <= 0.0 || s.abs_tol <= 0.0 || s.max_subdivisions < 1) {
    throw std::invalid_argument("integrate_finite: invalid settings");
  }
  if (a == b) return 0.0;

  // Globally adaptive: keep bisecting the panel with the largest error
  // estimate until the total sits inside the tolerance.
  std::vector<Panel> panels;
  panels.push_back(gk15(f, a, b));
  while (true) {
    double total = 0.0;
    double err_total = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err_total += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    const double target = std::max(s.abs_tol, s.rel_tol * std::abs(total));
    if (err_total <= target) return total;

    const Panel bad = panels[worst];
    const double mid = 0.5 * (bad.a + bad.b);
    if (static_cast<int>(panels.size()) >= s.max_subdivisions ||
        mid <= bad.a || mid >= bad.b) {
      throw QuadratureError("quadrature tolerance not met", total, err_total);
    }
    panels[worst] = gk15(f, bad.a, mid);
    panels.push_back(gk15(f, mid, bad.b));
  }
}

TailInfo integrate_semi_infinite_info(const Integrand& f, double a,
                                      const QuadratureSettings& s) {
  constexpr int kMaxSegments = 600;
  const double initial = std::max(1.0, std::abs(a));

  TailInfo info;
  double t = a;
  double length = initial;
  double last_seg = 0.0;
  double last_proxy = 0.0;
  int streak = 0;
  for (int seg = 0; seg < kMaxSegments; ++seg) {
    const double t_next = t + length;
    last_seg = integrate_finite(f, t, t_next, s);
    info.value += last_seg;
    info.segments = seg + 1;
    t = t_next;
    length *= 2.0;

    // Tail proxy |f(T)|*T: proportional to the true remainder for both
    // power-law (u^-p, p > 1) and exponential tails.
    last_proxy = std::abs(f(t)) * std::abs(t);
    const double scale = std::abs(info.value) + s.abs_tol;
    if (std::abs(last_seg) <= s.tail_cutoff_tol * scale &&
        last_proxy <= s.tail_cutoff_tol * scale) {
      if (++streak >= 2) {
        info.upper_limit = t;
        info.tail_bound = std::max(std::abs(last_seg), last_proxy);
        return info;
      }
    } else {
      streak = 0;
    }
    if (t > 1e300) break;
  }
  throw QuadratureError("tail not integrable by the maximum truncation point",
                        info.value, std::max(std::abs(last_seg), last_proxy));
}

double integrate_semi_infinite(const Integrand& f, double a,
                               const QuadratureSettings& s) {
  return integrate_semi_infinite_info(f, a, s).value;
}

}  // namespace vorcov
