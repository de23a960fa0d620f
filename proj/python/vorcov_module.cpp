#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vorcov/simulator.hpp"
#include "vorcov/sweep.hpp"

namespace py = pybind11;

namespace {

vorcov::SimConfig make_config(double lambda, double alpha, double mu, double sigma2,
                              int realizations, std::uint64_t seed,
                              double window_radius, double guard,
                              std::size_t max_vertices) {
  vorcov::SimConfig cfg;
  cfg.params = {lambda, alpha, mu, sigma2};
  cfg.window.radius = window_radius > 0.0 ? window_radius
                                          : vorcov::default_window_radius(lambda);
  cfg.window.guard = guard > 0.0 ? guard : vorcov::default_guard(lambda);
  cfg.realizations = realizations;
  cfg.master_seed = seed;
  if (max_vertices > 0) cfg.max_vertices = max_vertices;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(vorcov, m) {
  m.doc() = "Worst-case user coverage/spectral efficiency in Poisson-Voronoi "
            "cellular networks: analytic formulas plus Monte-Carlo cross-checks";

  using vorcov::SirThreshold;

  m.def("db_to_linear", &vorcov::db_to_linear, py::arg("db"));
  m.def("linear_to_db", &vorcov::linear_to_db, py::arg("lin"));

  m.def("rho",
        [](double gamma_lin, double alpha) {
          return vorcov::rho(SirThreshold::from_linear(gamma_lin), alpha);
        },
        py::arg("gamma_lin"), py::arg("alpha") = 4.0);
  m.def("kappa",
        [](double gamma_lin) { return vorcov::kappa(SirThreshold::from_linear(gamma_lin)); },
        py::arg("gamma_lin"));
  m.def("coverage_worst_il",
        [](double gamma_lin, double alpha) {
          return vorcov::coverage_worst_il(SirThreshold::from_linear(gamma_lin), alpha);
        },
        py::arg("gamma_lin"), py::arg("alpha") = 4.0);
  m.def("coverage_worst_general",
        [](double gamma_lin, double lambda, double alpha, double mu, double sigma2) {
          const vorcov::NetworkParams p{lambda, alpha, mu, sigma2};
          return vorcov::coverage_worst_general(p, SirThreshold::from_linear(gamma_lin));
        },
        py::arg("gamma_lin"), py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0,
        py::arg("mu") = 1.0, py::arg("sigma2") = 0.0);
  m.def("coverage_typical_il",
        [](double gamma_lin) {
          return vorcov::coverage_typical_il(SirThreshold::from_linear(gamma_lin));
        },
        py::arg("gamma_lin"));
  m.def("coverage_cs",
        [](double gamma_lin) {
          return vorcov::coverage_cs(SirThreshold::from_linear(gamma_lin));
        },
        py::arg("gamma_lin"));
  m.def("spectral_worst", []() {
    const auto s = vorcov::spectral_worst();
    return py::make_tuple(s.nats, s.bps);
  });
  m.def("spectral_cs", []() {
    const auto s = vorcov::spectral_cs();
    return py::make_tuple(s.nats, s.bps);
  });
  m.def("spectral_typical_baseline_bps", &vorcov::spectral_typical_baseline_bps);
  m.def("vertex_distance_pdf", &vorcov::vertex_distance_pdf, py::arg("r"),
        py::arg("lambda_"));
  m.def("vertex_distance_ccdf", &vorcov::vertex_distance_ccdf, py::arg("r"),
        py::arg("lambda_"));
  m.def("laplace_interference",
        [](double s, double r, double lambda, double alpha, double mu) {
          const vorcov::NetworkParams p{lambda, alpha, mu, 0.0};
          return vorcov::laplace_interference(s, r, p);
        },
        py::arg("s"), py::arg("r"), py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0,
        py::arg("mu") = 1.0);
  m.def("max_exp_ccdf", &vorcov::max_exp_ccdf, py::arg("g"), py::arg("n"),
        py::arg("mu") = 1.0);

  py::class_<vorcov::Window>(m, "Window")
      .def(py::init([](double radius, double guard) {
             vorcov::Window w{radius, guard};
             w.validate();
             return w;
           }),
           py::arg("radius"), py::arg("guard"))
      .def_readonly("radius", &vorcov::Window::radius)
      .def_readonly("guard", &vorcov::Window::guard)
      .def("guard_radius", &vorcov::Window::guard_radius);

  py::class_<vorcov::VertexRecord>(m, "VertexRecord")
      .def_property_readonly("position",
                             [](const vorcov::VertexRecord& v) {
                               return py::make_tuple(v.position.x, v.position.y);
                             })
      .def_readonly("circumradius", &vorcov::VertexRecord::circumradius)
      .def_property_readonly("generators", [](const vorcov::VertexRecord& v) {
        return py::make_tuple(v.generators[0], v.generators[1], v.generators[2]);
      });

  py::class_<vorcov::Estimate>(m, "Estimate")
      .def_readonly("mean", &vorcov::Estimate::mean)
      .def_readonly("std_error", &vorcov::Estimate::std_error)
      .def_readonly("n", &vorcov::Estimate::n)
      .def("__repr__", [](const vorcov::Estimate& e) {
        return "Estimate(mean=" + vorcov::format_double(e.mean) +
               ", std_error=" + vorcov::format_double(e.std_error) +
               ", n=" + std::to_string(e.n) + ")";
      });

  m.def("sample_ppp",
        [](double lambda, double radius, double guard, std::uint64_t seed) {
          const auto pat = vorcov::sample_ppp(lambda, vorcov::Window{radius, guard}, seed);
          std::vector<std::pair<double, double>> pts;
          pts.reserve(pat.points.size());
          for (const auto& p : pat.points) pts.emplace_back(p.x, p.y);
          return pts;
        },
        py::arg("lambda_"), py::arg("radius"), py::arg("guard"), py::arg("seed"));
  m.def("voronoi_vertices",
        [](const std::vector<std::pair<double, double>>& pts, double radius,
           double guard) {
          vorcov::PointPattern pat;
          pat.window = {radius, guard};
          pat.window.validate();
          for (const auto& [x, y] : pts) pat.points.push_back({x, y});
          return vorcov::voronoi_vertices(pat, vorcov::delaunay(pat));
        },
        py::arg("points"), py::arg("radius"), py::arg("guard"));

  const auto cfg_args = [](auto f) { return f; };
  (void)cfg_args;
  m.def("simulate_worst_coverage",
        [](double gamma_lin, double lambda, double alpha, double mu, double sigma2,
           int realizations, std::uint64_t seed, double window_radius, double guard,
           std::size_t max_vertices, unsigned threads) {
          const auto cfg = make_config(lambda, alpha, mu, sigma2, realizations, seed,
                                       window_radius, guard, max_vertices);
          return vorcov::simulate_worst_coverage(
              cfg, SirThreshold::from_linear(gamma_lin), threads);
        },
        py::arg("gamma_lin"), py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0,
        py::arg("mu") = 1.0, py::arg("sigma2") = 0.0, py::arg("realizations") = 100,
        py::arg("seed") = 1, py::arg("window_radius") = 0.0, py::arg("guard") = 0.0,
        py::arg("max_vertices") = 0, py::arg("threads") = 0);
  m.def("simulate_cs_coverage",
        [](double gamma_lin, double lambda, double alpha, double mu, double sigma2,
           int realizations, std::uint64_t seed, double window_radius, double guard,
           std::size_t max_vertices, unsigned threads) {
          const auto cfg = make_config(lambda, alpha, mu, sigma2, realizations, seed,
                                       window_radius, guard, max_vertices);
          return vorcov::simulate_cs_coverage(
              cfg, SirThreshold::from_linear(gamma_lin), threads);
        },
        py::arg("gamma_lin"), py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0,
        py::arg("mu") = 1.0, py::arg("sigma2") = 0.0, py::arg("realizations") = 100,
        py::arg("seed") = 1, py::arg("window_radius") = 0.0, py::arg("guard") = 0.0,
        py::arg("max_vertices") = 0, py::arg("threads") = 0);
  m.def("simulate_typical_coverage",
        [](double gamma_lin, double lambda, double alpha, double mu, double sigma2,
           int realizations, std::uint64_t seed, double window_radius, double guard,
           unsigned threads) {
          const auto cfg = make_config(lambda, alpha, mu, sigma2, realizations, seed,
                                       window_radius, guard, 0);
          return vorcov::simulate_typical_coverage(
              cfg, SirThreshold::from_linear(gamma_lin), threads);
        },
        py::arg("gamma_lin"), py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0,
        py::arg("mu") = 1.0, py::arg("sigma2") = 0.0, py::arg("realizations") = 100,
        py::arg("seed") = 1, py::arg("window_radius") = 0.0, py::arg("guard") = 0.0,
        py::arg("threads") = 0);
  m.def("simulate_worst_spectral",
        [](double lambda, double alpha, double mu, int realizations, std::uint64_t seed,
           double window_radius, double guard, unsigned threads) {
          const auto cfg = make_config(lambda, alpha, mu, 0.0, realizations, seed,
                                       window_radius, guard, 0);
          return vorcov::simulate_worst_spectral(cfg, threads);
        },
        py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0, py::arg("mu") = 1.0,
        py::arg("realizations") = 100, py::arg("seed") = 1,
        py::arg("window_radius") = 0.0, py::arg("guard") = 0.0, py::arg("threads") = 0);
  m.def("simulate_cs_spectral",
        [](double lambda, double alpha, double mu, int realizations, std::uint64_t seed,
           double window_radius, double guard, unsigned threads) {
          const auto cfg = make_config(lambda, alpha, mu, 0.0, realizations, seed,
                                       window_radius, guard, 0);
          return vorcov::simulate_cs_spectral(cfg, threads);
        },
        py::arg("lambda_") = 1.0, py::arg("alpha") = 4.0, py::arg("mu") = 1.0,
        py::arg("realizations") = 100, py::arg("seed") = 1,
        py::arg("window_radius") = 0.0, py::arg("guard") = 0.0, py::arg("threads") = 0);
  m.def("estimate_vertex_intensity",
        [](double lambda, int realizations, std::uint64_t seed, double window_radius,
           double guard, unsigned threads) {
          const auto cfg = make_config(lambda, 4.0, 1.0, 0.0, realizations, seed,
                                       window_radius, guard, 0);
          return vorcov::estimate_vertex_intensity(cfg, threads);
        },
        py::arg("lambda_") = 1.0, py::arg("realizations") = 50, py::arg("seed") = 1,
        py::arg("window_radius") = 0.0, py::arg("guard") = 0.0, py::arg("threads") = 0);
  m.def("sample_circumradii",
        [](double lambda, int realizations, std::uint64_t seed, double window_radius,
           double guard, unsigned threads) {
          const auto cfg = make_config(lambda, 4.0, 1.0, 0.0, realizations, seed,
                                       window_radius, guard, 0);
          return vorcov::sample_circumradii(cfg, threads);
        },
        py::arg("lambda_") = 1.0, py::arg("realizations") = 5, py::arg("seed") = 1,
        py::arg("window_radius") = 0.0, py::arg("guard") = 0.0, py::arg("threads") = 0);
}
