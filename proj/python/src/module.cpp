#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlrfun/bernstein.hpp"
#include "mlrfun/cm.hpp"
#include "mlrfun/errors.hpp"
#include "mlrfun/mlr.hpp"
#include "mlrfun/quadrature.hpp"
#include "mlrfun/specfun.hpp"
#include "mlrfun/weight.hpp"

namespace py = pybind11;

namespace {

mlr::MLRParams params_from(const std::string& alpha, double beta, int n) {
    return {mlr::RationalOrder::parse(alpha), beta, n};
}

}  // namespace

PYBIND11_MODULE(_mlrfun, m) {
    m.doc() = "Mittag-Leffler functions of Le Roy type: evaluation, Bernstein weights, "
              "Laplace verification and complete-monotonicity tools";

    py::register_exception<mlr::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<mlr::DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<mlr::SeriesValue>(m, "SeriesValue")
        .def_readonly("value", &mlr::SeriesValue::value)
        .def_readonly("abs_error_estimate", &mlr::SeriesValue::abs_error_estimate)
        .def_readonly("terms_used", &mlr::SeriesValue::terms_used)
        .def_readonly("converged", &mlr::SeriesValue::converged)
        .def("__repr__", [](const mlr::SeriesValue& v) {
            return "SeriesValue(value=" + std::to_string(v.value) +
                   ", err=" + std::to_string(v.abs_error_estimate) + ")";
        });

    py::class_<mlr::MLRParams>(m, "MLRParams")
        .def(py::init([](const std::string& alpha, double beta, int n) {
                 return params_from(alpha, beta, n);
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("n"))
        .def_property_readonly("alpha_l", [](const mlr::MLRParams& p) { return p.alpha.l(); })
        .def_property_readonly("alpha_k", [](const mlr::MLRParams& p) { return p.alpha.k(); })
        .def_readonly("beta", &mlr::MLRParams::beta)
        .def_readonly("n", &mlr::MLRParams::n)
        .def("classification",
             [](const mlr::MLRParams& p) { return std::string(to_string(p.classification())); });

    m.def("gamma", &mlr::gamma, py::arg("x"));
    m.def("reciprocal_gamma", &mlr::reciprocal_gamma, py::arg("x"));
    m.def("pochhammer", &mlr::pochhammer, py::arg("c"), py::arg("r"));
    m.def("pochhammer_split", &mlr::pochhammer_split, py::arg("beta"), py::arg("j"),
          py::arg("l"), py::arg("k"), py::arg("r"));
    m.def(
        "pfq",
        [](std::vector<double> upper, std::vector<double> lower, double z, double tol) {
            return mlr::pfq(upper, lower, z, tol);
        },
        py::arg("upper"), py::arg("lower"), py::arg("z"), py::arg("tol") = 1e-12);
    m.def("bessel_i", &mlr::bessel_i, py::arg("nu"), py::arg("x"));
    m.def("bessel_k", &mlr::bessel_k, py::arg("nu"), py::arg("x"));
    m.def("bessel_j0_of", &mlr::bessel_j0_of, py::arg("x"));

    m.def(
        "mlr_series",
        [](const std::string& alpha, double beta, int n, double z, double tol) {
            return mlr::mlr_series(params_from(alpha, beta, n), z, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("z"), py::arg("tol") = 1e-12);
    m.def(
        "mlr_hypergeom",
        [](const std::string& alpha, double beta, int n, double z, double tol) {
            return mlr::mlr_hypergeom(params_from(alpha, beta, n), z, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("z"), py::arg("tol") = 1e-12);
    m.def(
        "laplace_recursion_check",
        [](const std::string& alpha, double beta, int n, double lam, double s, double tol) {
            return mlr::laplace_recursion_check(params_from(alpha, beta, n), lam, s, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("lam") = -1.0,
        py::arg("s") = 2.0, py::arg("tol") = 1e-6);

    m.def(
        "radius",
        [](const std::string& alpha, double beta, int n) {
            return mlr::radius(params_from(alpha, beta, n));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"));
    m.def(
        "weight_eval",
        [](const std::string& alpha, double beta, int n, double y, double tol) {
            return mlr::weight_eval(params_from(alpha, beta, n), y, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("y"), py::arg("tol") = 1e-12);
    m.def(
        "weight_oracle",
        [](const std::string& alpha, double beta, int n, double y) -> py::object {
            auto v = mlr::weight_oracle(params_from(alpha, beta, n), y);
            if (!v) return py::none();
            return py::float_(*v);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("y"));
    m.def(
        "verify_bernstein",
        [](const std::string& alpha, double beta, int n, double x, double tol) {
            return mlr::verify_bernstein(params_from(alpha, beta, n), x, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("x"), py::arg("tol") = 1e-6);

    m.def("supermajorization_bound", &mlr::supermajorization_bound, py::arg("n"));
    m.def("supermajorization_check", &mlr::supermajorization_check, py::arg("n"),
          py::arg("beta"));
    m.def(
        "scan_weight_sign",
        [](const std::string& alpha, double beta, int n, double y_max, int grid) {
            auto rep = mlr::scan_weight_sign(params_from(alpha, beta, n), y_max, grid);
            py::dict d;
            d["verdict"] = std::string(to_string(rep.verdict));
            d["min_value"] = rep.min_value;
            d["min_at"] = rep.min_at;
            d["y_max_scanned"] = rep.y_max_scanned;
            d["negative_intervals"] = rep.negative_intervals;
            return d;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("y_max") = 10.0,
        py::arg("grid") = 2000);
    m.def(
        "cm_bound_search",
        [](int n, const std::string& alpha, double beta_lo, double beta_hi, double beta_tol,
           int grid) {
            auto s = mlr::cm_bound_search(n, mlr::RationalOrder::parse(alpha), beta_lo,
                                          beta_hi, beta_tol, grid);
            py::dict d;
            d["M"] = s.M;
            d["beta_neg"] = s.beta_neg;
            d["beta_pos"] = s.beta_pos;
            d["neg_witness_y"] = s.neg_witness_y;
            d["neg_witness_m"] = s.neg_witness_m;
            d["pos_min_value"] = s.pos_min_value;
            return d;
        },
        py::arg("n"), py::arg("alpha"), py::arg("beta_lo"), py::arg("beta_hi"),
        py::arg("beta_tol") = 1e-2, py::arg("grid") = 600);
    m.def(
        "cm_derivative_check",
        [](const std::string& alpha, double beta, int n, std::vector<double> xs, int order) {
            return mlr::cm_derivative_check(params_from(alpha, beta, n), xs, order);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("x_grid"),
        py::arg("max_order") = 6);

    m.def("alpha_one_series", &mlr::alpha_one_series, py::arg("n"), py::arg("x"));

    m.attr("__version__") = "0.1.0";
}
