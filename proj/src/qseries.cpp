#include "qmvop/qseries.hpp"

#include <limits>
#include <vector>

namespace qmvop {

namespace {

template <class T>
bool near_zero(const T& v, const T& scale) {
  using std::abs;
  return abs(v) <= 64 * std::numeric_limits<T>::epsilon() * (scale < T(1) ? T(1) : scale);
}

// ratio (b;q)_r (b;q)_{n-r} / ((q;q)_r (q;q)_{n-r}), zero terms flagged
template <class T, class Poch>
std::vector<T> ultra_coeffs(int n, Poch poch, const T& Q) {
  std::vector<T> c(n + 1);
  for (int r = 0; r <= n; ++r) {
    T a = poch(r), b = poch(n - r);
    c[r] = (a == T(0) || b == T(0)) ? T(0) : a * b / (qfac(Q, r) * qfac(Q, n - r));
  }
  return c;
}

template <class T>
T real_ultra_sum(const std::vector<T>& c, const T& x) {
  using std::acos;
  using std::cos;
  using std::sqrt;
  using std::abs;
  const int n = static_cast<int>(c.size()) - 1;
  T s(0);
  if (abs(x) <= T(1)) {
    T th = acos(x);
    for (int r = 0; r <= n; ++r)
      if (c[r] != T(0)) s += c[r] * cos(T(n - 2 * r) * th);
  } else {
    T z = x > 0 ? x + sqrt(x * x - 1) : x - sqrt(x * x - 1);
    for (int r = 0; r <= n; ++r)
      if (c[r] != T(0)) s += c[r] * ipow(z, n - 2 * r);
  }
  return s;
}

}  // namespace

template <class T>
T qpoch(const T& a, const T& q, int n) {
  if (n < 0) throw argument_error("qpoch: negative length");
  T r(1), qk(1);
  for (int k = 0; k < n; ++k) {
    r *= T(1) - a * qk;
    qk *= q;
  }
  return r;
}

cplx qpoch(cplx a, double q, int n) {
  if (n < 0) throw argument_error("qpoch: negative length");
  cplx r(1.0);
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    r *= 1.0 - a * qk;
    qk *= q;
  }
  return r;
}

template <class T>
T qpoch_pow(long e, const T& Q, int n) {
  if (n < 0) return T(1) / qpoch_pow(e + n, Q, -n);
  T r(1);
  for (int k = 0; k < n; ++k) {
    if (e + k == 0) return T(0);
    r *= T(1) - ipow(Q, e + k);
  }
  return r;
}

template <class T>
T qfac(const T& Q, int n) {
  return qpoch_pow<T>(1, Q, n);
}

template <class T>
T qbinom(int n, int k, const T& q) {
  if (n < 0) throw argument_error("qbinom: negative n");
  if (k < 0 || k > n) return T(0);
  return qfac(q, n) / (qfac(q, k) * qfac(q, n - k));
}

template <class T>
T chebyshev_u(int n, const T& x) {
  if (n < 0) throw argument_error("chebyshev_u: negative degree");
  T a(0), b(1);
  for (int k = 0; k < n; ++k) {
    T c = 2 * x * b - a;
    a = b;
    b = c;
  }
  return b;
}

template <class T>
T chebyshev_u_ext(int n, const T& x) {
  if (n >= 0) return chebyshev_u(n, x);
  if (n == -1) return T(0);
  return -chebyshev_u(-n - 2, x);
}

template <class T>
T cont_q_ultra_pow(int n, long e, const T& Q, const T& x) {
  if (n < 0) return T(0);
  auto c = ultra_coeffs<T>(n, [&](int r) { return qpoch_pow(e, Q, r); }, Q);
  return real_ultra_sum(c, x);
}

cplx cont_q_ultra_pow(int n, long e, double Q, cplx z) {
  if (n < 0) return cplx(0.0);
  auto c = ultra_coeffs<double>(n, [&](int r) { return qpoch_pow(e, Q, r); }, Q);
  cplx s(0.0);
  for (int r = 0; r <= n; ++r)
    if (c[r] != 0.0) s += c[r] * std::pow(z, n - 2 * r);
  return s;
}

namespace {
// (beta;q)_r with factors that cancel to rounding treated as exact zeros
template <class T>
T poch_skip(const T& beta, const T& q, int r) {
  T p(1), qk(1);
  for (int k = 0; k < r; ++k) {
    T f = T(1) - beta * qk;
    using std::abs;
    if (near_zero(f, abs(beta * qk))) return T(0);
    p *= f;
    qk *= q;
  }
  return p;
}
}  // namespace

template <class T>
T cont_q_ultra(int n, const T& beta, const T& q, const T& x) {
  if (n < 0) throw argument_error("cont_q_ultra: negative degree");
  auto c = ultra_coeffs<T>(n, [&](int r) { return poch_skip(beta, q, r); }, q);
  return real_ultra_sum(c, x);
}

cplx cont_q_ultra(int n, double beta, const QContext& qc, const TorusPoint& p) {
  qc.validate();
  if (n < 0) throw argument_error("cont_q_ultra: negative degree");
  auto c = ultra_coeffs<double>(n, [&](int r) { return poch_skip(beta, qc.q, r); }, qc.q);
  for (int r = 0; r <= n; ++r)
    if (std::abs(c[r] - c[n - r]) > 1e-12 * (1.0 + std::abs(c[r])))
      throw consistency_error("cont_q_ultra: coefficient symmetry violated");
  cplx s(0.0);
  for (int r = 0; r <= n; ++r)
    if (c[r] != 0.0) s += c[r] * std::pow(p.z, n - 2 * r);
  if (std::abs(std::abs(p.z) - 1.0) < 1e-14) {
    if (std::abs(s.imag()) > qc.tol_abs * (1.0 + std::abs(s.real())))
      throw consistency_error("cont_q_ultra: non-real value on the unit circle");
    return cplx(s.real(), 0.0);
  }
  return s;
}

template <class T>
T ultra_weight_reduced(int k, const T& q, const T& x) {
  if (k < 0) throw argument_error("ultra_weight: negative k");
  T r(4), q2 = q * q, c = 2 * (2 * x * x - 1);
  T qj(1);
  for (int j = 1; j <= k; ++j) {
    qj *= q2;
    r *= T(1) - c * qj + qj * qj;
  }
  return r;
}

template <class T>
T ultra_weight(int k, const T& q, const T& x) {
  using std::abs;
  if (abs(x) > T(1)) throw domain_error("ultra_weight: |x| > 1");
  return (T(1) - x * x) * ultra_weight_reduced(k, q, x);
}

double ultra_weight(int k, const QContext& qc, double x) { return ultra_weight<double>(k, qc.q, x); }

template <class T>
T q_racah(int n, const T& alpha, const T& beta, const T& gamma, const T& delta, const T& q, int j) {
  using std::abs;
  using std::log;
  using std::round;
  if (n < 0 || j < 0) throw argument_error("q_racah: negative degree or lattice point");
  // termination: alpha q, beta delta q or gamma q equals q^{-N}, N >= n
  auto lattice = [&](const T& v) -> long {
    if (!(v > T(0))) return -1;
    T N = -log(v) / log(q);
    T Nr = round(N);
    if (abs(N - Nr) > T(1e-9) * (T(1) + abs(N))) return -1;
    return static_cast<long>(to_double(Nr));
  };
  bool ok = false;
  for (const T& v : {alpha * q, beta * delta * q, gamma * q}) {
    long N = lattice(v);
    if (N >= n) ok = true;
  }
  if (!ok) throw argument_error("q_racah: non-terminating parameter set");
  const T a[4] = {ipow(q, -n), alpha * beta * ipow(q, n + 1), ipow(q, -j), gamma * delta * ipow(q, j + 1)};
  const T b[4] = {alpha * q, beta * delta * q, gamma * q, q};
  T term(1), sum(1), qk(1);
  for (int k = 0; k < n; ++k) {
    T num(1), den(1);
    bool numzero = false, denzero = false;
    for (int i = 0; i < 4; ++i) {
      T f = T(1) - a[i] * qk;
      if (near_zero(f, abs(a[i] * qk))) numzero = true;
      num *= f;
      T g = T(1) - b[i] * qk;
      if (near_zero(g, abs(b[i] * qk))) denzero = true;
      den *= g;
    }
    if (numzero) break;
    if (denzero) throw argument_error("q_racah: vanishing denominator before termination");
    term *= num / den * q;
    sum += term;
    qk *= q;
  }
  return sum;
}

template <class T>
T q_racah_pow(int n, long ea, long eb, long ec, long ed, const T& Q, int j) {
  if (n < 0 || j < 0) throw argument_error("q_racah_pow: negative degree or lattice point");
  T s(0);
  for (int k = 0; k <= n; ++k) {
    T num = qpoch_pow(-n, Q, k) * qpoch_pow(ea + eb + n + 1, Q, k) * qpoch_pow(-j, Q, k) *
            qpoch_pow(ec + ed + j + 1, Q, k);
    if (num == T(0)) continue;
    T den = qpoch_pow(ea + 1, Q, k) * qpoch_pow(eb + ed + 1, Q, k) * qpoch_pow(ec + 1, Q, k) * qfac(Q, k);
    if (den == T(0)) throw argument_error("q_racah_pow: vanishing denominator before termination");
    s += num / den * ipow(Q, k);
  }
  return s;
}

#define QMVOP_INST(T)                                                                       \
  template T qpoch<T>(const T&, const T&, int);                                             \
  template T qpoch_pow<T>(long, const T&, int);                                             \
  template T qfac<T>(const T&, int);                                                        \
  template T qbinom<T>(int, int, const T&);                                                 \
  template T chebyshev_u<T>(int, const T&);                                                 \
  template T chebyshev_u_ext<T>(int, const T&);                                             \
  template T cont_q_ultra_pow<T>(int, long, const T&, const T&);                            \
  template T cont_q_ultra<T>(int, const T&, const T&, const T&);                            \
  template T ultra_weight<T>(int, const T&, const T&);                                      \
  template T ultra_weight_reduced<T>(int, const T&, const T&);                              \
  template T q_racah<T>(int, const T&, const T&, const T&, const T&, const T&, int);        \
  template T q_racah_pow<T>(int, long, long, long, long, const T&, int);

QMVOP_INST(double)
QMVOP_INST(ext_real)
#undef QMVOP_INST

}  // namespace qmvop
