// Python bindings for the main library operations.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psido/diff_operator.hpp"
#include "psido/fiber_symbol.hpp"
#include "psido/greens.hpp"
#include "psido/grid_function.hpp"
#include "psido/hawking.hpp"
#include "psido/l_jet.hpp"
#include "psido/parametrix.hpp"
#include "psido/qed.hpp"
#include "psido/tensor_field.hpp"

namespace py = pybind11;
using namespace psido;

namespace {

using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

GridFunction grid_from_array(const ComplexArray& arr, const std::vector<double>& extents,
                             bool periodic = true) {
    std::vector<int> shape;
    for (py::ssize_t d = 0; d < arr.ndim(); ++d)
        shape.push_back(static_cast<int>(arr.shape(d)));
    GridFunction g(shape, extents, periodic);
    auto* data = static_cast<const std::complex<double>*>(arr.data());
    std::copy(data, data + g.size(), g.data().begin());
    return g;
}

py::array_t<std::complex<double>> array_from_grid(const GridFunction& g) {
    std::vector<py::ssize_t> shape;
    for (int s : g.shape()) shape.push_back(s);
    py::array_t<std::complex<double>> arr(shape);
    std::copy(g.data().begin(), g.data().end(),
              static_cast<std::complex<double>*>(arr.mutable_data()));
    return arr;
}

py::array_t<double> matrix4_to_array(const Matrix4& m) {
    py::array_t<double> arr({4, 4});
    auto w = arr.mutable_unchecked<2>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w(i, j) = m[i][j];
    return arr;
}

}  // namespace

PYBIND11_MODULE(_psido, m) {
    m.doc() = "pseudodifferential symbol calculus toolkit";

    // ---- symbol algebra -----------------------------------------------
    m.def("compose_symbols_json",
          [](const std::string& a, const std::string& b, int order) {
              auto r = compose_symbols(PolySymbol::from_json(a), PolySymbol::from_json(b), order);
              return py::make_tuple(r.symbol.to_json(), r.exact);
          },
          py::arg("a_json"), py::arg("b_json"), py::arg("order"),
          "Compose two polynomial symbols given as JSON; returns (json, exact).");

    m.def("symbol_str",
          [](const std::string& a) { return PolySymbol::from_json(a).str(); },
          py::arg("json"));

    m.def("leading_symbol_json",
          [](const std::string& a) { return PolySymbol::from_json(a).leading().to_json(); },
          py::arg("json"));

    m.def("apply_symbol",
          [](const std::string& sigma_json, const ComplexArray& f,
             std::vector<double> extents) {
              return array_from_grid(
                  apply_symbol(PolySymbol::from_json(sigma_json), grid_from_array(f, extents)));
          },
          py::arg("sigma_json"), py::arg("samples"), py::arg("extents"),
          "Apply a polynomial symbol on a periodic grid (power-of-two shape).");

    // ---- parametrix -----------------------------------------------------
    m.def("remainder_report",
          [](const std::string& p_json, double r0, double r1, const ComplexArray& f,
             std::vector<double> extents) {
              PolySymbol p = PolySymbol::from_json(p_json);
              auto q = cutoff_amplitude(p, CutoffSpec{r0, r1, 5});
              auto rep = remainder_report(p, q, grid_from_array(f, extents));
              py::dict d;
              d["tail_norm"] = rep.tail_norm;
              d["max_highband_residual"] = rep.max_highband_residual;
              d["r0"] = rep.cutoff.r0;
              d["r1"] = rep.cutoff.r1;
              return d;
          },
          py::arg("p_json"), py::arg("r0"), py::arg("r1"), py::arg("samples"),
          py::arg("extents"));

    m.def("greens_laplacian",
          [](const ComplexArray& f, std::vector<double> extents) {
              return array_from_grid(greens_laplacian(grid_from_array(f, extents, false)));
          },
          py::arg("source"), py::arg("extents"));

    m.def("greens_kernel_constant", &greens_kernel_constant, py::arg("n"));

    // ---- geometry --------------------------------------------------------
    py::class_<ChartConnection>(m, "Chart")
        .def_static("from_json", &ChartConnection::from_json, py::arg("text"))
        .def_static("from_json_file", &ChartConnection::from_json_file, py::arg("path"))
        .def_property_readonly("n", &ChartConnection::dim)
        .def_property_readonly("name", &ChartConnection::name)
        .def("gamma", &ChartConnection::gamma, py::arg("p"), py::arg("i"), py::arg("j"),
             py::arg("x"))
        .def("torsion", &ChartConnection::torsion, py::arg("x"))
        .def("scalar_curvature",
             [](const ChartConnection& c, const Vec& x) { return scalar_curvature(c, x); },
             py::arg("x"))
        .def("curvature",
             [](const ChartConnection& c, const Vec& x) {
                 auto R = curvature_tensor(c, x);
                 const int n = c.dim();
                 py::array_t<double> arr({n, n, n, n});
                 std::copy(R.comp.begin(), R.comp.end(),
                           static_cast<double*>(arr.mutable_data()));
                 return arr;
             },
             py::arg("x"))
        .def("metric_compatibility_residual",
             [](const ChartConnection& c, const Vec& x) {
                 return metric_compatibility_residual(c, x);
             },
             py::arg("x"));

    m.def("l_jet_coefficients",
          [](const ChartConnection& chart, const Vec& x0, const Vec& v, int order) {
              LJet jet = build_l_jet(CotangentPoint{x0, v}, chart, order);
              py::dict out;
              std::vector<int> e(static_cast<std::size_t>(chart.dim()), 0);
              // dense dump keyed by exponent tuple
              std::function<void(int, int)> rec = [&](int axis, int left) {
                  if (axis == chart.dim()) {
                      const double c = jet.coefficient(e);
                      if (c != 0.0) out[py::tuple(py::cast(e))] = c;
                      return;
                  }
                  for (int k = 0; k <= left; ++k) {
                      e[static_cast<std::size_t>(axis)] = k;
                      rec(axis + 1, left - k);
                  }
                  e[static_cast<std::size_t>(axis)] = 0;
              };
              rec(0, order);
              return out;
          },
          py::arg("chart"), py::arg("x0"), py::arg("v"), py::arg("order"));

    m.def("nabla_l",
          [](const ChartConnection& chart, const Vec& x0, const Vec& v, int k) {
              auto t = nabla_l(CotangentPoint{x0, v}, chart, k);
              std::vector<py::ssize_t> shape(static_cast<std::size_t>(k), chart.dim());
              py::array_t<double> arr(shape);
              std::copy(t.comp.begin(), t.comp.end(),
                        static_cast<double*>(arr.mutable_data()));
              return arr;
          },
          py::arg("chart"), py::arg("x0"), py::arg("v"), py::arg("k"));

    // ---- QED ---------------------------------------------------------------
    m.def("gauge_symbol",
          [](const std::array<double, 4>& k, double alpha) {
              Matrix4 s = gauge_symbol(Momentum4{k}, alpha).sigma;
              return matrix4_to_array(s);
          },
          py::arg("k"), py::arg("alpha"));

    m.def("invert_gauge_symbol",
          [](const std::array<double, 4>& k, double alpha) {
              Momentum4 mom{k};
              GaugeSymbol s = gauge_symbol(mom, alpha);
              auto c = invert_gauge_symbol(s, mom, alpha);
              const double res = identity_residual(s, assemble_inverse(c, mom));
              return py::make_tuple(c.a, c.b, res);
          },
          py::arg("k"), py::arg("alpha"),
          "Returns (A, B, max_identity_residual).");

    m.def("euclidean_propagator",
          [](const std::array<double, 4>& dx, double alpha) {
              return matrix4_to_array(euclidean_propagator(dx, alpha));
          },
          py::arg("x_minus_y"), py::arg("alpha") = 1.0);

    // ---- Hawking -------------------------------------------------------------
    m.def("radial_operator_coeffs", &radial_operator_coeffs, py::arg("r"), py::arg("m"));
    m.def("solve_radial_eigenvalues",
          [](double mass, double radius, int count) {
              RadialEigenproblem prob;
              prob.mass = mass;
              prob.radius = radius;
              prob.count = count;
              return solve_radial_eigenvalues(prob).eigenvalues;
          },
          py::arg("mass"), py::arg("radius"), py::arg("count"));
    m.def("asymptotic_spectrum", &asymptotic_spectrum, py::arg("theta"), py::arg("m"),
          py::arg("n_min"), py::arg("n_max"));
    m.def("hurwitz_zeta", &hurwitz_zeta, py::arg("s"), py::arg("a"));
    m.def("spectral_zeta",
          [](std::complex<double> s, double xi, double kappa) {
              SpectralZetaSpec spec;
              spec.s = s;
              spec.xi = xi;
              spec.kappa = kappa;
              return spectral_zeta(spec);
          },
          py::arg("s"), py::arg("xi"), py::arg("kappa"));
    m.def("spectral_density", &spectral_density, py::arg("s"), py::arg("omega"),
          py::arg("kappa"));
    m.def("hawking_density", &hawking_density, py::arg("m"), py::arg("omega"));
}
