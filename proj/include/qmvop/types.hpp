#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qmvop {

// ~50 decimal digits; expression templates off so Eigen and auto behave
using ext_real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;
using cplx = std::complex<double>;
using MatC = Mat<cplx>;

struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Precision { machine_double, extended };

// parameter bundle threaded through every evaluation
struct QContext {
  double q = 0.5;
  Precision precision = Precision::machine_double;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;

  QContext() = default;
  explicit QContext(double q_, Precision p = Precision::machine_double, double ta = 1e-10,
                    double tr = 1e-10)
      : q(q_), precision(p), tol_abs(ta), tol_rel(tr) {
    validate();
  }
  void validate() const {
    if (!(q > 0.0 && q < 1.0)) throw argument_error("q must lie in (0,1), got " + std::to_string(q));
    if (!std::isfinite(tol_abs) || !std::isfinite(tol_rel) || tol_abs < 0 || tol_rel < 0)
      throw argument_error("tolerances must be finite and nonnegative");
  }
};

// spin l stored as 2l
struct HalfInt {
  int two_ell = 0;
  HalfInt() = default;
  explicit HalfInt(int t) : two_ell(t) {
    if (t < 0) throw argument_error("two_ell must be nonnegative");
  }
  int dim() const { return two_ell + 1; }
  double value() const { return two_ell / 2.0; }
  bool operator==(const HalfInt&) const = default;
};

// z on the torus, x = (z + 1/z)/2
struct TorusPoint {
  cplx z;
  explicit TorusPoint(cplx z_) : z(z_) {
    if (z == cplx(0.0)) throw argument_error("torus point z must be nonzero");
  }
  cplx x() const { return 0.5 * (z + 1.0 / z); }
  TorusPoint inverse() const { return TorusPoint(1.0 / z); }
  static TorusPoint from_x(double x) {
    if (std::abs(x) <= 1.0) return TorusPoint(cplx(x, std::sqrt(1.0 - x * x)));
    double s = std::sqrt(x * x - 1.0);
    return TorusPoint(cplx(x > 0 ? x + s : x - s, 0.0));
  }
};

inline double to_double(double x) { return x; }
inline double to_double(const ext_real& x) { return x.convert_to<double>(); }

// integer powers by repeated squaring, exact sign handling for negative e
template <class T>
T ipow(const T& x, long e) {
  if (e < 0) return T(1) / ipow(x, -e);
  T r(1), b(x);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline int sgn_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

template <class T>
Mat<T> reversal(int d) {
  Mat<T> J = Mat<T>::Zero(d, d);
  for (int i = 0; i < d; ++i) J(i, d - 1 - i) = T(1);
  return J;
}

}  // namespace qmvop
