#include <cstdlib>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmvop/mvop.hpp"
#include "qmvop/qalg.hpp"
#include "qmvop/qdiff.hpp"
#include "qmvop/qseries.hpp"
#include "qmvop/verify.hpp"

namespace py = pybind11;
using namespace qmvop;

namespace {

bool use_extended(const std::string& precision) {
  std::string p = precision;
  if (p.empty()) {
    const char* env = std::getenv("QMVOP_PRECISION");
    p = env ? env : "double";
    if (p.empty()) p = "double";
  }
  if (p == "double") return false;
  if (p == "extended") return true;
  throw argument_error("precision must be 'double' or 'extended'");
}

template <class T>
MatD to_d(const Mat<T>& m) {
  MatD r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

void check_q(double q) { QContext(q).validate(); }

MatD weight(int two_ell, double q, double x, const std::string& precision) {
  check_q(q);
  HalfInt ell(two_ell);
  if (use_extended(precision)) return to_d<ext_real>(weight_matrix(ell, ext_real(q), ext_real(x)));
  return weight_matrix(ell, q, x);
}

MatD poly(int two_ell, int n, double q, double x, const std::string& precision) {
  check_q(q);
  HalfInt ell(two_ell);
  if (n < 0) throw argument_error("n must be nonnegative");
  if (use_extended(precision)) return to_d<ext_real>(pn_eval(ell, n, ext_real(q), ext_real(x)));
  return pn_eval(ell, n, q, x);
}

py::tuple ldu(int two_ell, double q, double x, const std::string& precision) {
  check_q(q);
  HalfInt ell(two_ell);
  if (use_extended(precision)) {
    LDUFactors<ext_real> f = ldu_factors(ell, ext_real(q), ext_real(x));
    return py::make_tuple(to_d(f.L), to_d(f.T_), to_d(f.Linv));
  }
  LDUFactors<double> f = ldu_factors(ell, QContext(q), x);
  return py::make_tuple(f.L, f.T_, f.Linv);
}

py::dict recurrence(int two_ell, int n, double q, const std::string& precision) {
  check_q(q);
  HalfInt ell(two_ell);
  if (n < 0) throw argument_error("n must be nonnegative");
  py::dict d;
  auto fill = [&](auto r) {
    d["A"] = to_d(r.A);
    d["B"] = to_d(r.B);
    d["C"] = to_d(r.C);
    d["X"] = to_d(r.X);
    d["Y"] = to_d(r.Y);
  };
  if (use_extended(precision))
    fill(recurrence_coeffs(ell, n, ext_real(q)));
  else
    fill(recurrence_coeffs(ell, n, q));
  return d;
}

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["family"] = r.family;
  d["params"] = r.params;
  d["residual"] = r.residual;
  d["tol"] = r.tol;
  d["pass"] = r.pass;
  d["runtime"] = r.runtime;
  d["error"] = r.error;
  return d;
}

SuiteConfig config_from(const py::dict& kw) {
  SuiteConfig c = default_suite_config();
  for (auto item : kw) {
    std::string k = py::cast<std::string>(item.first);
    py::handle v = item.second;
    if (k == "two_ells") c.two_ells = py::cast<std::vector<int>>(v);
    else if (k == "qs") c.qs = py::cast<std::vector<double>>(v);
    else if (k == "max_degree") c.max_degree = py::cast<int>(v);
    else if (k == "lambda_min") c.lambda_min = py::cast<int>(v);
    else if (k == "lambda_max") c.lambda_max = py::cast<int>(v);
    else if (k == "quad_nodes") c.quad_nodes = py::cast<int>(v);
    else if (k == "ldu_grid") c.ldu_grid = py::cast<int>(v);
    else if (k == "poly_grid") c.poly_grid = py::cast<int>(v);
    else if (k == "z_samples") c.z_samples = py::cast<int>(v);
    else if (k == "draws") c.draws = py::cast<int>(v);
    else if (k == "asym_degree") c.asym_degree = py::cast<int>(v);
    else if (k == "asym_q") c.asym_q = py::cast<double>(v);
    else if (k == "seed") c.seed = py::cast<std::uint64_t>(v);
    else if (k == "families") c.families = py::cast<std::vector<std::string>>(v);
    else if (k == "threads") c.threads = py::cast<int>(v);
    else if (k == "tolerance") {
      double t = py::cast<double>(v);
      for (auto& [id, tol] : c.tolerances) tol = t;
    } else if (k == "tolerances") {
      for (auto& [id, tol] : py::cast<std::map<std::string, double>>(v)) {
        if (!c.tolerances.count(id)) throw argument_error("unknown check id '" + id + "'");
        c.tolerances[id] = tol;
      }
    } else {
      throw argument_error("unknown config key '" + k + "'");
    }
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_qmvop, m) {
  m.doc() = "matrix-valued q-orthogonal polynomials of Askey-Wilson type";

  py::register_exception<argument_error>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<pole_error>(m, "PoleError", PyExc_ZeroDivisionError);
  py::register_exception<consistency_error>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("weight", &weight, "W(x)", py::arg("two_ell"), py::arg("q"), py::arg("x"), py::arg("precision") = "");
  m.def("poly", &poly, "monic P_n(x)", py::arg("two_ell"), py::arg("n"), py::arg("q"), py::arg("x"),
        py::arg("precision") = "");
  m.def("poly_explicit",
        [](int two_ell, int n, double q, double x) { return pn_explicit<double>(HalfInt(two_ell), n, q, x); },
        "P_n(x) from the explicit sum", py::arg("two_ell"), py::arg("n"), py::arg("q"), py::arg("x"));
  m.def("ldu", &ldu, "(L, T, Linv) at x", py::arg("two_ell"), py::arg("q"), py::arg("x"), py::arg("precision") = "");
  m.def("recurrence", &recurrence, "A_n, B_n, C_n and the monic X_n, Y_n", py::arg("two_ell"), py::arg("n"),
        py::arg("q"), py::arg("precision") = "");
  m.def("norm", [](int two_ell, int n, double q) { return norm_G<double>(HalfInt(two_ell), n, q); },
        "squared norm G_n", py::arg("two_ell"), py::arg("n"), py::arg("q"));
  m.def("lambda_matrix",
        [](int two_ell, int n, double q, int which) { return lambda_matrix(HalfInt(two_ell), n, QContext(q), which); },
        "Lambda_n(which)", py::arg("two_ell"), py::arg("n"), py::arg("q"), py::arg("which") = 1);
  m.def("orthogonality_matrix",
        [](int two_ell, int n, int mm, double q, int N) {
          return orthogonality_matrix(HalfInt(two_ell), n, mm, QContext(q), N);
        },
        "quadrature Gram matrix", py::arg("two_ell"), py::arg("n"), py::arg("m"), py::arg("q"), py::arg("N") = 64);
  m.def("full_spherical",
        [](int two_ell, int n, int lam, double q) { return full_spherical(HalfInt(two_ell), n, lam, QContext(q)); },
        "full spherical function at A^lambda", py::arg("two_ell"), py::arg("n"), py::arg("lam"), py::arg("q"));
  m.def("cont_q_ultra", [](int n, double beta, double q, double x) { return cont_q_ultra<double>(n, beta, q, x); },
        "C_n(x; beta | q)", py::arg("n"), py::arg("beta"), py::arg("q"), py::arg("x"));
  m.def("check_ids", &suite_check_ids);
  m.def("families", &suite_families);
  m.def("default_tolerances", [] { return default_suite_config().tolerances; });
  m.def(
      "run_suite",
      [](const py::kwargs& kw) {
        SuiteConfig c = config_from(kw);
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_suite(c);
        }
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      "run the verification suite; keyword arguments override the default grid");
}
