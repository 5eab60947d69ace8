#pragma once

#include <optional>
#include <vector>

#include "qmvop/types.hpp"

namespace qmvop {

// matrix polynomial sum_k coeffs[k] x^k
template <class T>
struct MatPoly {
  int size = 1;
  std::vector<Mat<T>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Mat<T> eval(const T& x) const {
    Mat<T> r = Mat<T>::Zero(size, size);
    for (int k = degree(); k >= 0; --k) r = (r * x + coeffs[k]).eval();
    return r;
  }
  MatC eval_complex(cplx x) const {
    MatC r = MatC::Zero(size, size);
    for (int k = degree(); k >= 0; --k) {
      MatC c(size, size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) c(i, j) = cplx(to_double(coeffs[k](i, j)), 0.0);
      r = (r * x + c).eval();
    }
    return r;
  }
  // drop numerically zero top coefficients
  void trim() {
    while (coeffs.size() > 1 && coeffs.back().cwiseAbs().maxCoeff() == T(0)) coeffs.pop_back();
  }
};

template <class T>
struct RecurrenceCoeffs {
  int n = 0;
  Mat<T> A, B, C, X, Y;
};

template <class T>
struct LDUFactors {
  Mat<T> L, T_, Linv;
};

template <class T>
struct WeightEval {
  T x;
  Mat<T> W;
  std::optional<LDUFactors<T>> ldu;
};

struct BlockSplit {
  MatD Wplus, Wminus;
  MatD Yplus, Yminus;  // orthonormal J-eigenvectors as rows
};

// alpha_t(m,n), 0 <= m <= n <= 2l, 0 <= t <= n
template <class T>
T alpha_coeff(HalfInt ell, int m, int n, int t, const T& q);
double alpha_coeff(HalfInt ell, int m, int n, int t, const QContext& qc);
// the literal sign (-1)^(m-t); yields D W D with D = diag((-1)^i)
double alpha_coeff_printed(HalfInt ell, int m, int n, int t, const QContext& qc);

// W(x) at any real x (polynomial), no domain check
template <class T>
Mat<T> weight_matrix(HalfInt ell, const T& q, const T& x);
WeightEval<double> weight_eval(HalfInt ell, const QContext& qc, double x, bool with_ldu = false);

template <class T>
T ldu_c(HalfInt ell, int k, const T& q);
template <class T>
LDUFactors<T> ldu_factors(HalfInt ell, const T& q, const T& x);
LDUFactors<double> ldu_factors(HalfInt ell, const QContext& qc, double x);
// breve L(z), breve Linv(z) at complex z
MatC ldu_L_z(HalfInt ell, double q, cplx z);
MatC ldu_Linv_z(HalfInt ell, double q, cplx z);

// beta_k(m,n) = L_mk L_nk c_k without the polynomial parts, 0 <= k <= n <= m <= 2l
template <class T>
T ldu_beta(HalfInt ell, int m, int n, int k, const T& q);
double ldu_beta(HalfInt ell, int m, int n, int k, const QContext& qc);
double ldu_beta_printed(HalfInt ell, int m, int n, int k, const QContext& qc);

template <class T>
Mat<T> norm_G(HalfInt ell, int n, const T& q);
template <class T>
Mat<T> leading_coeff(HalfInt ell, int n, const T& q);
template <class T>
RecurrenceCoeffs<T> recurrence_coeffs(HalfInt ell, int n, const T& q);

// P_0, ..., P_N from the three-term recurrence
template <class T>
std::vector<MatPoly<T>> pn_recursive_all(HalfInt ell, int N, const T& q);
template <class T>
MatPoly<T> pn_recursive(HalfInt ell, int n, const T& q);
// P_n(x) by running the recurrence on values
template <class T>
Mat<T> pn_eval(HalfInt ell, int n, const T& q, const T& x);
MatC pn_eval_complex(HalfInt ell, int n, double q, cplx x);

template <class T>
Mat<T> pn_explicit(HalfInt ell, int n, const T& q, const T& x);
MatC pn_explicit_z(HalfInt ell, int n, double q, cplx z);

// top-degree coefficient of entry (i,j) of the explicit P_n sum, zero for j > i
template <class T>
T vanishing_sum(HalfInt ell, int n, int i, int j, const T& q);
double vanishing_sum_printed(HalfInt ell, int n, int i, int j, const QContext& qc);

template <class T>
Mat<T> rn_explicit(HalfInt ell, int n, const T& q, const T& x);
MatC rn_explicit_z(HalfInt ell, int n, double q, cplx z);

BlockSplit block_split(HalfInt ell, const QContext& qc, double x);

// dim { Y : Y W(x_j) = W(x_j) Y } over npts points of [-1,1]
int commutant_dimension(HalfInt ell, const QContext& qc, int npts = 11);

}  // namespace qmvop
