#include "qmvop/mvop.hpp"

#include <functional>

#include "qmvop/qseries.hpp"

namespace qmvop {

namespace {

void check_ell_index(HalfInt ell, int i, const char* what) {
  if (i < 0 || i > ell.two_ell) throw argument_error(std::string(what) + ": index out of range");
}

template <class T>
T one_minus_qpow(const T& q, long e) {
  return T(1) - ipow(q, e);
}

}  // namespace

template <class T>
T alpha_coeff(HalfInt ell, int m, int n, int t, const T& q) {
  const int tl = ell.two_ell;
  if (m < 0 || n < m || n > tl || t < 0 || t > n) throw argument_error("alpha_coeff: need 0 <= m <= n <= 2l, 0 <= t <= n");
  const T Q = q * q;
  long ex = 2L * n * (tl + 1) - 1L * n * n - (2L * tl + 3) * t + 1L * t * t - tl + m;
  return T(sgn_pow(n - t)) * ipow(q, ex) * one_minus_qpow(q, 2 * tl + 2) / one_minus_qpow(q, 2 * m + 2) *
         qfac(Q, tl - n) * qfac(Q, n) / qfac(Q, tl) * qpoch_pow(m - tl, Q, n - t) / qpoch_pow(m + 2, Q, n - t) *
         qpoch_pow(tl + 2 - t, Q, t) / qfac(Q, t);
}

double alpha_coeff(HalfInt ell, int m, int n, int t, const QContext& qc) {
  qc.validate();
  return alpha_coeff<double>(ell, m, n, t, qc.q);
}

double alpha_coeff_printed(HalfInt ell, int m, int n, int t, const QContext& qc) {
  return sgn_pow(m - n) * alpha_coeff(ell, m, n, t, qc);
}

template <class T>
Mat<T> weight_matrix(HalfInt ell, const T& q, const T& x) {
  const int d = ell.dim();
  Mat<T> W(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = m; n < d; ++n) {
      T v(0);
      for (int t = 0; t <= n; ++t) v += alpha_coeff(ell, m, n, t, q) * chebyshev_u_ext(m + n - 2 * t, x);
      W(m, n) = v;
      W(n, m) = v;
    }
  return W;
}

template <class T>
T ldu_c(HalfInt ell, int k, const T& q) {
  const int tl = ell.two_ell;
  check_ell_index(ell, k, "ldu_c");
  const T Q = q * q;
  T fk = qfac(Q, k), f2 = qfac(Q, 2 * k + 1), ft = qfac(Q, tl);
  return ipow(q, -tl) / 4 * one_minus_qpow(q, 4 * k + 2) * qfac(Q, tl + k + 1) * qfac(Q, tl - k) * fk * fk * fk *
         fk / (f2 * f2 * ft * ft);
}

namespace {

// scalar prefactor of L_{mk}
template <class T>
T l_coef(int m, int k, const T& q) {
  const T Q = q * q;
  return ipow(q, m - k) * qfac(Q, m) * qfac(Q, 2 * k + 1) / (qfac(Q, m + k + 1) * qfac(Q, k));
}

template <class T>
T linv_coef(int k, int n, const T& q) {
  const T Q = q * q;
  return ipow(q, (2L * k + 1) * (k - n)) * qfac(Q, k) * qfac(Q, k + n) / (qfac(Q, 2 * k) * qfac(Q, n));
}

}  // namespace

template <class T>
LDUFactors<T> ldu_factors(HalfInt ell, const T& q, const T& x) {
  const int d = ell.dim();
  const T Q = q * q;
  LDUFactors<T> f;
  f.L = Mat<T>::Zero(d, d);
  f.T_ = Mat<T>::Zero(d, d);
  f.Linv = Mat<T>::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int k = 0; k <= m; ++k) f.L(m, k) = l_coef(m, k, q) * cont_q_ultra_pow(m - k, k + 1, Q, x);
  for (int k = 0; k < d; ++k) f.T_(k, k) = ldu_c(ell, k, q) * ultra_weight_reduced(k, q, x);
  for (int k = 0; k < d; ++k)
    for (int n = 0; n <= k; ++n) f.Linv(k, n) = linv_coef(k, n, q) * cont_q_ultra_pow(k - n, -k, Q, x);
  return f;
}

LDUFactors<double> ldu_factors(HalfInt ell, const QContext& qc, double x) {
  qc.validate();
  return ldu_factors<double>(ell, qc.q, x);
}

WeightEval<double> weight_eval(HalfInt ell, const QContext& qc, double x, bool with_ldu) {
  qc.validate();
  if (std::abs(x) > 1.0) throw domain_error("weight_eval: |x| > 1");
  WeightEval<double> w;
  w.x = x;
  w.W = weight_matrix<double>(ell, qc.q, x);
  if (with_ldu) w.ldu = ldu_factors<double>(ell, qc.q, x);
  return w;
}

MatC ldu_L_z(HalfInt ell, double q, cplx z) {
  const int d = ell.dim();
  MatC L = MatC::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int k = 0; k <= m; ++k) L(m, k) = l_coef(m, k, q) * cont_q_ultra_pow(m - k, k + 1, q * q, z);
  return L;
}

MatC ldu_Linv_z(HalfInt ell, double q, cplx z) {
  const int d = ell.dim();
  MatC L = MatC::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int n = 0; n <= k; ++n) L(k, n) = linv_coef(k, n, q) * cont_q_ultra_pow(k - n, -k, q * q, z);
  return L;
}

template <class T>
T ldu_beta(HalfInt ell, int m, int n, int k, const T& q) {
  if (k < 0 || n < k || m < n || m > ell.two_ell) throw argument_error("ldu_beta: need 0 <= k <= n <= m <= 2l");
  return l_coef(m, k, q) * l_coef(n, k, q) * ldu_c(ell, k, q);
}

double ldu_beta(HalfInt ell, int m, int n, int k, const QContext& qc) {
  qc.validate();
  return ldu_beta<double>(ell, m, n, k, qc.q);
}

double ldu_beta_printed(HalfInt ell, int m, int n, int k, const QContext& qc) {
  if (k < 0 || n < k || m < n || m > ell.two_ell) throw argument_error("ldu_beta: need 0 <= k <= n <= m <= 2l");
  const double q = qc.q, Q = q * q;
  const int tl = ell.two_ell;
  double fk = qfac(Q, k), ft = qfac(Q, tl);
  return qfac(Q, m) / qfac(Q, m + k + 1) * qfac(Q, n) / qfac(Q, n + k + 1) * fk * fk * (1 - std::pow(q, 4 * k + 2)) *
         qfac(Q, tl + k + 1) * qfac(Q, tl + k) / (std::pow(q, tl) * ft * ft);
}

template <class T>
Mat<T> norm_G(HalfInt ell, int n, const T& q) {
  if (n < 0) throw argument_error("norm_G: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  Mat<T> G = Mat<T>::Zero(d, d);
  T num = one_minus_qpow(q, 2 * tl + 2);
  for (int i = 0; i < d; ++i)
    G(i, i) = ipow(q, 2 * n - tl) * num * num /
              (one_minus_qpow(q, 2 * n + 2 * i + 2) * one_minus_qpow(q, 2 * tl - 2 * i + 2 * n + 2));
  return G;
}

template <class T>
Mat<T> leading_coeff(HalfInt ell, int n, const T& q) {
  if (n < 0) throw argument_error("leading_coeff: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  const T Q = q * q;
  Mat<T> L = Mat<T>::Zero(d, d);
  for (int i = 0; i < d; ++i)
    L(i, i) = ipow(T(2) * q, n) * qpoch_pow(i + 1, Q, n) * qpoch_pow(tl - i + 1, Q, n) /
              (qfac(Q, n) * qpoch_pow(tl + 2, Q, n));
  return L;
}

template <class T>
RecurrenceCoeffs<T> recurrence_coeffs(HalfInt ell, int n, const T& q) {
  if (n < 0) throw argument_error("recurrence_coeffs: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  auto om = [&](long e) { return one_minus_qpow(q, e); };
  RecurrenceCoeffs<T> r;
  r.n = n;
  r.A = Mat<T>::Zero(d, d);
  r.B = Mat<T>::Zero(d, d);
  r.C = Mat<T>::Zero(d, d);
  r.X = Mat<T>::Zero(d, d);
  r.Y = Mat<T>::Zero(d, d);
  const T h = ipow(q, 2 * n + 1) / 2;
  for (int i = 0; i < d; ++i) {
    r.A(i, i) = om(2 * n + 2) * om(2 * tl + 2 * n + 4) / (2 * q * om(2 * i + 2 * n + 2) * om(2 * tl - 2 * i + 2 * n + 2));
    r.C(i, i) = q / 2 * om(2 * n) * om(2 * tl + 2 * n + 2) / (om(2 * n + 2 * i + 2) * om(2 * tl + 2 * n - 2 * i + 2));
    if (i < tl) {
      r.B(i, i + 1) = h * om(2 * tl - 2 * i) * om(2 * i + 2) / (om(2 * tl + 2 * n - 2 * i) * om(2 * n + 2 * i + 4));
      T u = om(2 * i + 2);
      r.X(i, i + 1) = h * u * u / (om(2 * n + 2 * i + 2) * om(2 * n + 2 * i + 4));
    }
    if (i > 0) {
      r.B(i, i - 1) = h * om(2 * i) * om(2 * tl - 2 * i + 2) / (om(2 * n + 2 * i) * om(2 * tl - 2 * i + 2 * n + 4));
      T u = om(2 * tl - 2 * i + 2);
      r.X(i, i - 1) = h * u * u / (om(2 * tl - 2 * i + 2 * n + 2) * om(2 * tl - 2 * i + 2 * n + 4));
    }
    if (n > 0) {
      T a = om(2 * n), b = om(2 * tl + 2 * n + 2);
      r.Y(i, i) = a * a * b * b /
                  (4 * om(2 * n + 2 * i) * om(2 * tl + 2 * n - 2 * i) * om(2 * n + 2 * i + 2) *
                   om(2 * tl - 2 * i + 2 * n + 2));
    }
  }
  return r;
}

template <class T>
std::vector<MatPoly<T>> pn_recursive_all(HalfInt ell, int N, const T& q) {
  if (N < 0) throw argument_error("pn_recursive: negative degree");
  const int d = ell.dim();
  std::vector<MatPoly<T>> P;
  MatPoly<T> p0;
  p0.size = d;
  p0.coeffs = {Mat<T>::Identity(d, d)};
  P.push_back(p0);
  for (int n = 0; n < N; ++n) {
    RecurrenceCoeffs<T> r = recurrence_coeffs(ell, n, q);
    Mat<T> Ainv = Mat<T>::Zero(d, d);
    for (int i = 0; i < d; ++i) Ainv(i, i) = T(1) / r.A(i, i);
    MatPoly<T> nx;
    nx.size = d;
    nx.coeffs.assign(n + 2, Mat<T>::Zero(d, d));
    const MatPoly<T>& pn = P[n];
    for (int k = 0; k <= pn.degree(); ++k) {
      nx.coeffs[k + 1] += pn.coeffs[k];
      nx.coeffs[k] -= pn.coeffs[k] * r.B;
    }
    if (n > 0)
      for (int k = 0; k <= P[n - 1].degree(); ++k) nx.coeffs[k] -= P[n - 1].coeffs[k] * r.C;
    for (auto& c : nx.coeffs) c = (c * Ainv).eval();
    P.push_back(nx);
  }
  return P;
}

template <class T>
MatPoly<T> pn_recursive(HalfInt ell, int n, const T& q) {
  return pn_recursive_all(ell, n, q).back();
}

template <class T>
Mat<T> pn_eval(HalfInt ell, int n, const T& q, const T& x) {
  if (n < 0) throw argument_error("pn_eval: negative degree");
  const int d = ell.dim();
  Mat<T> prev = Mat<T>::Zero(d, d), cur = Mat<T>::Identity(d, d);
  for (int k = 0; k < n; ++k) {
    RecurrenceCoeffs<T> r = recurrence_coeffs(ell, k, q);
    Mat<T> nx = x * cur - cur * r.B - prev * r.C;
    for (int i = 0; i < d; ++i) nx.col(i) /= r.A(i, i);
    prev = cur;
    cur = nx;
  }
  return cur;
}

MatC pn_eval_complex(HalfInt ell, int n, double q, cplx x) {
  if (n < 0) throw argument_error("pn_eval: negative degree");
  const int d = ell.dim();
  MatC prev = MatC::Zero(d, d), cur = MatC::Identity(d, d);
  for (int k = 0; k < n; ++k) {
    RecurrenceCoeffs<double> r = recurrence_coeffs<double>(ell, k, q);
    MatC nx = x * cur - cur * r.B.cast<cplx>() - prev * r.C.cast<cplx>();
    for (int i = 0; i < d; ++i) nx.col(i) /= r.A(i, i);
    prev = cur;
    cur = nx;
  }
  return cur;
}

namespace {

// coefficient of R_k C_{k-i}(x;Q^{-k}) C_{n+j-k}(x;Q^{k+1}) in P_n(x)_{ij}; zero when skipped
template <class T>
T pn_term_coef(int tl, int n, int i, int j, int k, const T& q) {
  const T Q = q * q;
  T a = qpoch_pow(-tl, Q, k) * qpoch_pow(-j - n, Q, k);
  if (a == T(0)) return T(0);
  long ex = n + (2L * k + 1) * (k - i) + 1L * j * (2 * k + 1) + 2L * k * (tl + n + 1) - 1L * k * k;
  T c = T(sgn_pow(k)) * ipow(q, ex) * qfac(Q, k) * qfac(Q, k + i) / (qfac(Q, 2 * k) * qfac(Q, i)) * a /
        (qfac(Q, k) * qpoch_pow(tl + 2, Q, k)) * qfac(Q, n + j - k) / qpoch_pow(2 * k + 2, Q, n + j - k);
  return c * q_racah_pow(k, 0, 0, -n - j - 1, -tl - 1, Q, j);
}

template <class T>
T rn_term_coef(int tl, int n, int i, int j, const T& q) {
  const T Q = q * q;
  T a = qpoch_pow(-tl, Q, i) * qpoch_pow(-j - n, Q, i);
  if (a == T(0)) return T(0);
  long ex = 1L * j * (2 * i + 1) + 2L * i * (tl + n + 1) - 1L * i * i;
  T c = T(sgn_pow(i)) / ipow(T(2), n) * qfac(Q, n) * qpoch_pow(tl + 2, Q, n) /
        (qpoch_pow(j + 1, Q, n) * qpoch_pow(tl - j + 1, Q, n)) * a / (qfac(Q, i) * qpoch_pow(tl + 2, Q, i)) *
        qfac(Q, n + j - i) / qpoch_pow(2 * i + 2, Q, n + j - i) * ipow(q, ex);
  return c * q_racah_pow(i, 0, 0, -n - j - 1, -tl - 1, Q, j);
}

}  // namespace

template <class T>
Mat<T> pn_explicit(HalfInt ell, int n, const T& q, const T& x) {
  if (n < 0) throw argument_error("pn_explicit: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  const T Q = q * q;
  Mat<T> P = Mat<T>::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      T s(0);
      for (int k = i; k <= tl; ++k) {
        T c = pn_term_coef(tl, n, i, j, k, q);
        if (c == T(0)) continue;
        s += c * cont_q_ultra_pow(k - i, -k, Q, x) * cont_q_ultra_pow(n + j - k, k + 1, Q, x);
      }
      P(i, j) = s;
    }
  return P;
}

MatC pn_explicit_z(HalfInt ell, int n, double q, cplx z) {
  if (n < 0) throw argument_error("pn_explicit: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  const double Q = q * q;
  MatC P = MatC::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx s(0.0);
      for (int k = i; k <= tl; ++k) {
        double c = pn_term_coef(tl, n, i, j, k, q);
        if (c == 0.0) continue;
        s += c * cont_q_ultra_pow(k - i, -k, Q, z) * cont_q_ultra_pow(n + j - k, k + 1, Q, z);
      }
      P(i, j) = s;
    }
  return P;
}

template <class T>
T vanishing_sum(HalfInt ell, int n, int i, int j, const T& q) {
  check_ell_index(ell, i, "vanishing_sum");
  check_ell_index(ell, j, "vanishing_sum");
  const int tl = ell.two_ell;
  const T Q = q * q;
  T s(0);
  for (int k = i; k <= tl; ++k) {
    T c = pn_term_coef(tl, n, i, j, k, q);
    if (c == T(0)) continue;
    // leading x-coefficients of the two ultraspherical factors
    s += c * ipow(T(2), n + j - i) * qpoch_pow(-k, Q, k - i) / qfac(Q, k - i) * qpoch_pow(k + 1, Q, n + j - k) /
         qfac(Q, n + j - k);
  }
  return s;
}

double vanishing_sum_printed(HalfInt ell, int n, int i, int j, const QContext& qc) {
  check_ell_index(ell, i, "vanishing_sum");
  check_ell_index(ell, j, "vanishing_sum");
  const int tl = ell.two_ell;
  const double q = qc.q, Q = q * q;
  double s = 0.0;
  for (int k = i; k <= tl; ++k) {
    double a = qpoch_pow(-tl, Q, k) * qpoch_pow(-j - n, Q, k);
    if (a == 0.0) continue;
    long ex = (2L * k + 1) * (k - i) + 1L * j * (2 * k + 1) + 2L * k * (tl + n + 1) - 1L * k * k;
    s += sgn_pow(k) * std::pow(q, ex) * qfac(Q, k) * qfac(Q, k + i) / qfac(Q, 2 * k) * a /
         (qfac(Q, k) * qpoch_pow(tl + 2, Q, k)) * qpoch_pow(k + 1, Q, n + j - k) / qpoch_pow(2 * k + 2, Q, n + j - k) *
         q_racah_pow(k, 0, 0, -n - j - 1, -tl - 1, Q, j);
  }
  return s;
}

template <class T>
Mat<T> rn_explicit(HalfInt ell, int n, const T& q, const T& x) {
  if (n < 0) throw argument_error("rn_explicit: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  const T Q = q * q;
  Mat<T> R = Mat<T>::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (n + j - i < 0) continue;
      T c = rn_term_coef(tl, n, i, j, q);
      if (c != T(0)) R(i, j) = c * cont_q_ultra_pow(n + j - i, i + 1, Q, x);
    }
  return R;
}

MatC rn_explicit_z(HalfInt ell, int n, double q, cplx z) {
  if (n < 0) throw argument_error("rn_explicit: negative degree");
  const int tl = ell.two_ell, d = ell.dim();
  MatC R = MatC::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (n + j - i < 0) continue;
      double c = rn_term_coef(tl, n, i, j, q);
      if (c != 0.0) R(i, j) = c * cont_q_ultra_pow(n + j - i, i + 1, q * q, z);
    }
  return R;
}

BlockSplit block_split(HalfInt ell, const QContext& qc, double x) {
  WeightEval<double> w = weight_eval(ell, qc, x);
  const int d = ell.dim(), tl = ell.two_ell;
  const int np = (d + 1) / 2, nm = d / 2;
  BlockSplit b;
  b.Yplus = MatD::Zero(np, d);
  b.Yminus = MatD::Zero(nm, d);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < nm; ++i) {
    b.Yplus(i, i) = r;
    b.Yplus(i, tl - i) = r;
    b.Yminus(i, i) = -r;
    b.Yminus(i, tl - i) = r;
  }
  if (np > nm) b.Yplus(np - 1, tl / 2) = 1.0;
  b.Wplus = b.Yplus * w.W * b.Yplus.transpose();
  b.Wminus = b.Yminus * w.W * b.Yminus.transpose();
  return b;
}

int commutant_dimension(HalfInt ell, const QContext& qc, int npts) {
  const int d = ell.dim();
  MatD S(npts * d * d, d * d);
  MatD I = MatD::Identity(d, d);
  for (int p = 0; p < npts; ++p) {
    double x = npts == 1 ? 0.0 : -1.0 + 2.0 * p / (npts - 1);
    MatD W = weight_matrix<double>(ell, qc.q, x);
    // vec(YW - WY) = (W^T (x) I - I (x) W) vec(Y), column-major vec
    MatD K(d * d, d * d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) K.block(a * d, b * d, d, d) = W(b, a) * I - (a == b ? W : MatD::Zero(d, d));
    S.block(p * d * d, 0, d * d, d * d) = K;
  }
  Eigen::JacobiSVD<MatD> svd(S);
  const VecD& s = svd.singularValues();
  double tol = 1e-9 * std::max(1.0, s(0));
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return d * d - rank;
}

#define QMVOP_INST(T)                                                              \
  template T alpha_coeff<T>(HalfInt, int, int, int, const T&);                     \
  template Mat<T> weight_matrix<T>(HalfInt, const T&, const T&);                   \
  template T ldu_c<T>(HalfInt, int, const T&);                                     \
  template LDUFactors<T> ldu_factors<T>(HalfInt, const T&, const T&);              \
  template T ldu_beta<T>(HalfInt, int, int, int, const T&);                        \
  template Mat<T> norm_G<T>(HalfInt, int, const T&);                               \
  template Mat<T> leading_coeff<T>(HalfInt, int, const T&);                        \
  template RecurrenceCoeffs<T> recurrence_coeffs<T>(HalfInt, int, const T&);       \
  template std::vector<MatPoly<T>> pn_recursive_all<T>(HalfInt, int, const T&);    \
  template MatPoly<T> pn_recursive<T>(HalfInt, int, const T&);                     \
  template Mat<T> pn_eval<T>(HalfInt, int, const T&, const T&);                    \
  template Mat<T> pn_explicit<T>(HalfInt, int, const T&, const T&);                \
  template T vanishing_sum<T>(HalfInt, int, int, int, const T&);                   \
  template Mat<T> rn_explicit<T>(HalfInt, int, const T&, const T&);

QMVOP_INST(double)
QMVOP_INST(ext_real)
#undef QMVOP_INST

}  // namespace qmvop
