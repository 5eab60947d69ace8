#include "qmvop/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include <boost/math/constants/constants.hpp>

#include "qmvop/mvop.hpp"
#include "qmvop/qalg.hpp"
#include "qmvop/qdiff.hpp"
#include "qmvop/qseries.hpp"

namespace qmvop {

QuadratureRule gauss_chebyshev2(int N) {
  if (N < 1) throw argument_error("gauss_chebyshev2: N must be at least 1");
  QuadratureRule r;
  r.N = N;
  const double pi = boost::math::constants::pi<double>();
  for (int k = 1; k <= N; ++k) {
    double th = k * pi / (N + 1), s = std::sin(th);
    r.nodes.push_back(std::cos(th));
    r.weights.push_back(pi / (N + 1) * s * s);
  }
  return r;
}

namespace {

template <class T>
void gauss_chebyshev2_t(int N, std::vector<T>& x, std::vector<T>& w) {
  const T pi = boost::math::constants::pi<T>();
  x.clear();
  w.clear();
  for (int k = 1; k <= N; ++k) {
    T th = T(k) * pi / T(N + 1), s = sin(th);
    x.push_back(cos(th));
    w.push_back(pi / T(N + 1) * s * s);
  }
}

// P_0(x), ..., P_N(x) by one recurrence sweep
template <class T>
std::vector<Mat<T>> pn_values(HalfInt ell, int N, const T& q, const T& x) {
  const int d = ell.dim();
  std::vector<Mat<T>> P{Mat<T>::Identity(d, d)};
  Mat<T> prev = Mat<T>::Zero(d, d);
  for (int k = 0; k < N; ++k) {
    RecurrenceCoeffs<T> r = recurrence_coeffs(ell, k, q);
    Mat<T> nx = x * P.back() - P.back() * r.B - prev * r.C;
    for (int i = 0; i < d; ++i) nx.col(i) /= r.A(i, i);
    prev = P.back();
    P.push_back(nx);
  }
  return P;
}

template <class T>
MatD gram(HalfInt ell, int n, int m, const T& q, int N) {
  std::vector<T> xs, ws;
  gauss_chebyshev2_t<T>(N, xs, ws);
  const int d = ell.dim();
  Mat<T> S = Mat<T>::Zero(d, d);
  for (size_t k = 0; k < xs.size(); ++k) {
    auto P = pn_values(ell, std::max(n, m), q, xs[k]);
    S += ws[k] * P[m].transpose() * weight_matrix(ell, q, xs[k]) * P[n];
  }
  S *= T(2) / boost::math::constants::pi<T>();
  MatD out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = to_double(S(i, j));
  return out;
}

}  // namespace

MatD orthogonality_matrix(HalfInt ell, int n, int m, const QContext& qc, int N) {
  qc.validate();
  if (n < 0 || m < 0) throw argument_error("orthogonality_matrix: negative degree");
  if (N < n + m + 2 * ell.two_ell + 2)
    throw argument_error("orthogonality_matrix: need N >= n + m + 2*two_ell + 2 for exactness");
  if (qc.precision == Precision::extended) return gram<ext_real>(ell, n, m, ext_real(qc.q), N);
  return gram<double>(ell, n, m, qc.q, N);
}

template <class T>
std::pair<T, T> sheppard_sides(const T& b, const T& c, const T& d, const T& e, int n, const T& q) {
  if (n < 0) throw argument_error("sheppard_sides: negative n");
  if (b == T(0) || c == T(0) || d == T(0) || e == T(0)) throw argument_error("sheppard_sides: zero parameter");
  const T qn = ipow(q, -n);
  T lhs(0), rhs(0);
  for (int k = 0; k <= n; ++k) {
    T qk = ipow(q, k);
    lhs += qpoch(d * qk, q, n - k) * qpoch(e * qk, q, n - k) * qpoch(qn, q, k) * qpoch(b, q, k) * qpoch(c, q, k) /
           qfac(q, k) * ipow(d * e / (b * c) * ipow(q, n), k);
    long ex = 2L * k * (n - 1) - static_cast<long>(k) * (k - 1) + k;
    rhs += ipow(q, ex) * ipow(d * e / (b * c * c), k) * qpoch(d / c, q, n - k) * qpoch(e / c, q, n - k) *
           qpoch(qn, q, k) * qpoch(c, q, k) * qpoch(b * c * ipow(q, 1 - n) / (d * e), q, k) / qfac(q, k);
  }
  return {lhs, ipow(c, n) * rhs};
}

template <class T>
T qtaylor_extract(const std::vector<T>& A, int n, const T& q) {
  if (n < 0) throw argument_error("qtaylor_extract: negative n");
  auto B = [&](int M) {
    T y = ipow(q, -M), s(0);
    for (size_t t = 0; t < A.size(); ++t) s += A[t] * T(sgn_pow(t)) * qpoch(y, q, static_cast<int>(t));
    return s;
  };
  // D[M] holds Delta^j B(q^{-M}) for M = 0..n-j
  std::vector<T> D(n + 1);
  for (int M = 0; M <= n; ++M) D[M] = B(M);
  for (int j = 1; j <= n; ++j)
    for (int M = 0; M <= n - j; ++M) D[M] = ipow(q, M) * (D[M] - D[M + 1]);
  return D[0] / (ipow(q, static_cast<long>(n) * (n - 1) / 2) * qpoch(ipow(q, -n), q, n));
}

template <class T>
std::pair<T, T> e_closed_sides(HalfInt ell, int k, int p, int s, const T& q) {
  const int tl = ell.two_ell;
  if (k < 0 || k > p || k + p > tl || s < 0 || s > p) throw argument_error("e_closed_sides: parameters out of range");
  const T Q = q * q;
  T lhs(0);
  for (int i = 0; i <= p - s; ++i)
    for (int n = 0; n <= tl - k - s; ++n) {
      T num = qbinom(tl - k, n + s, Q) * qbinom(tl - p, n, Q);
      if (num == T(0)) continue;
      T den = qbinom(tl, i + n + s, Q);
      lhs += ipow(q, -2L * i * (s + 1)) * qbinom(k, i, Q) * qbinom(p, i + s, Q) *
             ipow(q, 2L * n * (-2 * i + k + p - s + 1)) * num / (den * den);
    }
  lhs *= ipow(q, 2L * k * s + k + p - tl);
  T pre = ipow(q, 2L * p * (tl + 1) - p * p - tl + k) * (T(1) - ipow(q, 2 * tl + 2)) / (T(1) - ipow(q, 2 * k + 2)) *
          qfac(Q, tl - p) * qfac(Q, p) / qfac(Q, tl);
  T sum(0);
  for (int T_ = 0; T_ <= std::min(k, p - s); ++T_)
    sum += ipow(q, static_cast<long>(T_) * T_ - (2L * tl + 3) * T_) * T(sgn_pow(p - T_)) *
           qpoch_pow(k - tl, Q, p - T_) / qpoch_pow(k + 2, Q, p - T_) * qpoch_pow(tl + 2 - T_, Q, T_) / qfac(Q, T_);
  return {lhs, pre * sum};
}

double alpha_sum_lhs(HalfInt ell, int k, int p, int two_s, const QContext& qc) {
  qc.validate();
  if (k < 0 || k > p || p > ell.two_ell) throw argument_error("alpha_sum_lhs: need 0 <= k <= p <= 2l");
  const ext_real q(qc.q);
  ext_real s(0);
  for (int r = 0; r <= k; ++r)
    for (int a = 0; a <= k + p - 2 * r; ++a)
      if (two_s == k + p - 2 * (r + a)) s += alpha_coeff<ext_real>(ell, k, p, r, q);
  return to_double(s);
}

template <class T>
T triple_integral(int k, int m, int n, int t, const T& q, int N) {
  if (k < 0 || k > m || m > n || t < 0) throw argument_error("triple_integral: need 0 <= k <= m <= n, t >= 0");
  std::vector<T> xs, ws;
  gauss_chebyshev2_t<T>(N, xs, ws);
  const T Q = q * q;
  T s(0);
  for (size_t j = 0; j < xs.size(); ++j)
    s += ws[j] * ultra_weight_reduced(k, q, xs[j]) * cont_q_ultra_pow(m - k, k + 1, Q, xs[j]) *
         cont_q_ultra_pow(n - k, k + 1, Q, xs[j]) * chebyshev_u_ext(n + m - 2 * t, xs[j]);
  return s / (2 * boost::math::constants::pi<T>());
}

template <class T>
T triple_integral_closed(int k, int m, int n, int t, const T& q) {
  if (k < 0 || k > m || m > n || t < 0) throw argument_error("triple_integral_closed: need 0 <= k <= m <= n, t >= 0");
  if (t > m) return T(0);
  const T Q = q * q;
  const int L = m + n - 2 * k;
  T c = ipow(q, static_cast<long>(k) * (k + 1)) / (T(1) - ipow(Q, k + 1)) * qpoch_pow(k + 1, Q, L) /
        qpoch_pow(2 * k + 2, Q, L) * qpoch_pow(k + 1, Q, m - k) / qfac(Q, m - k) * qpoch_pow(k + 1, Q, n - k) /
        qfac(Q, n - k) * T(sgn_pow(k)) * qpoch_pow(2 * k + 2, Q, L) * qfac(Q, k + 1) / qfac(Q, m + n - k);
  return c * q_racah_pow(k, 0, 0, -m - 1, -n - 1, Q, t);
}

template <class T>
std::pair<T, T> racah_sum_sides(HalfInt ell, int m, int n, int k, const T& q) {
  const int tl = ell.two_ell;
  if (k < 0 || k > n || n > m || m > tl) throw argument_error("racah_sum_sides: need 0 <= k <= n <= m <= 2l");
  const T Q = q * q;
  T lhs(0);
  for (int t = 0; t <= m; ++t)
    lhs += T(sgn_pow(t)) * qpoch_pow(m - tl, Q, n - t) / qpoch_pow(m + 2, Q, n - t) * qpoch_pow(tl + 2 - t, Q, t) /
           qfac(Q, t) * (T(1) - ipow(q, 2 * m + 2 * n + 2 - 4 * t)) *
           ipow(q, static_cast<long>(t) * (t - 1) - 2L * tl * t) * q_racah_pow(k, 0, 0, -m - 1, -n - 1, Q, t);
  T rhs = ipow(q, static_cast<long>(n) * (n - 1) - static_cast<long>(k) * (k + 1) - 2L * n * tl) *
          T(sgn_pow(n + k)) * qfac(Q, tl + k + 1) * qfac(Q, tl - k) / qfac(Q, tl + 1) * (T(1) - ipow(q, 2 * m + 2)) /
          (qfac(Q, n) * qfac(Q, tl - n));
  return {lhs, rhs};
}

#define QMVOP_INST(T)                                                                                \
  template std::pair<T, T> sheppard_sides<T>(const T&, const T&, const T&, const T&, int, const T&); \
  template T qtaylor_extract<T>(const std::vector<T>&, int, const T&);                              \
  template std::pair<T, T> e_closed_sides<T>(HalfInt, int, int, int, const T&);                 \
  template T triple_integral<T>(int, int, int, int, const T&, int);                                   \
  template T triple_integral_closed<T>(int, int, int, int, const T&);                                          \
  template std::pair<T, T> racah_sum_sides<T>(HalfInt, int, int, int, const T&);

QMVOP_INST(double)
QMVOP_INST(ext_real)
#undef QMVOP_INST

// ---------------------------------------------------------------------------
// suite

namespace {

struct FamilyChecks {
  const char* family;
  const char* letters;
  std::vector<const char*> ids;
};

const std::vector<FamilyChecks>& check_table() {
  static const std::vector<FamilyChecks> t = {
      {"qalg", "a",
       {"rep.spin_relations", "rep.casimir", "rep.coideal_relations", "rep.casimir_tensor", "cgc.isometry",
        "cgc.intertwining", "cgc.bottom", "cgc.half_half", "cgc.ends", "cgc.completeness", "cgc.ortho_sum"}},
      {"alpha_sum", "b", {"aux.alpha_sum"}},
      {"ldu", "cd",
       {"ldu.factorization", "ldu.inverse", "ldu.positivity", "ldu.beta", "aux.triple_integral", "aux.triple_integral_zero",
        "aux.racah_sum"}},
      {"sheppard", "e", {"aux.sheppard"}},
      {"qtaylor", "f", {"aux.qtaylor"}},
      {"e_closed", "g", {"aux.e_closed", "aux.e_closed_ds"}},
      {"mvop", "h",
       {"ortho.gram", "poly.explicit", "poly.l0", "poly.rn_explicit", "rec.consistency", "rec.monic", "asym.Y",
        "asym.X"}},
      {"qdiff", "h",
       {"qdiff.eigen_P", "qdiff.eigen_R", "qdiff.conjugation", "radial.recurrence", "radial.bab", "radial.cm",
        "sph.factorization", "sph.determinant", "aux.diffeq_n1"}},
      {"examples", "i",
       {"ex.half.weight", "ex.half.recurrence", "ex.one.weight", "ex.one.recurrence", "ex.one.pminus",
        "ex.one.qdiff"}},
      {"consequences", "j", {"pn.vanishing", "pn.normalisation", "pn.commutant", "pn.jsymmetry"}},
  };
  return t;
}

using Params = std::map<std::string, double>;
using Clock = std::chrono::steady_clock;

// splitmix-style stream so draws do not depend on the standard library's distributions
struct Rng {
  std::mt19937_64 g;
  Rng(std::uint64_t seed, const std::string& id) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    g.seed(seed ^ h);
  }
  double uniform(double a, double b) { return a + (b - a) * static_cast<double>(g() >> 11) * 0x1.0p-53; }
  int integer(int a, int b) { return a + static_cast<int>(g() % static_cast<std::uint64_t>(b - a + 1)); }
};

struct Sink {
  const SuiteConfig& cfg;
  std::string family;
  std::vector<CheckReport> out;

  template <class F>
  void run(const std::string& id, Params p, F&& f) {
    CheckReport r;
    r.id = id;
    r.family = family;
    r.tol = cfg.tolerances.at(id);
    auto t0 = Clock::now();
    try {
      r.residual = f(p);
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::infinity();
      r.error = e.what();
    }
    r.runtime = std::chrono::duration<double>(Clock::now() - t0).count();
    r.params = std::move(p);
    r.pass = r.residual >= 0 && r.residual <= r.tol;
    out.push_back(std::move(r));
  }
};

template <class M>
double max_abs(const M& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

// max |a - b| / max(1, max |a|, max |b|)
template <class A, class B>
double rel_diff(const Eigen::MatrixBase<A>& a_, const Eigen::MatrixBase<B>& b_) {
  auto a = a_.eval();
  auto b = b_.eval();
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double rel_scalar(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }
double rel_scalar(const ext_real& a, const ext_real& b) {
  ext_real s = std::max(abs(a), abs(b));
  if (s == 0) return 0.0;
  return to_double(abs(a - b) / s);
}

std::vector<double> grid(int n) {
  std::vector<double> g;
  if (n == 1) return {0.0};
  for (int i = 0; i < n; ++i) g.push_back(-1.0 + 2.0 * i / (n - 1));
  g.front() = -1.0;
  g.back() = 1.0;
  return g;
}

cplx mu(cplx z) { return 0.5 * (z + 1.0 / z); }

// |z| cycles through 0.6, 1.0, 1.4; points near the poles of the operators are redrawn
std::vector<cplx> sample_z(Rng& rng, double q, int count) {
  const double radii[3] = {0.6, 1.0, 1.4};
  std::vector<cplx> zs;
  while (static_cast<int>(zs.size()) < count) {
    double r = radii[zs.size() % 3];
    double th = rng.uniform(0.3, 2.8);
    if (rng.uniform(0, 1) < 0.5) th = -th;
    cplx z = std::polar(r, th);
    if (std::abs(1.0 - z * z) < 0.1 || std::abs(1.0 - q * q * z * z) < 0.1 || std::abs(1.0 - z * z / (q * q)) < 0.1)
      continue;
    zs.push_back(z);
  }
  return zs;
}

MatC to_c(const MatD& m) { return m.cast<cplx>(); }

// ---- representations and branching

void qalg_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    s.run("rep.spin_relations", {{"two_ell", tl}, {"q", q}}, [&](Params&) {
      SpinRep r = spin_rep(ell, qc);
      const int d = ell.dim();
      MatD I = MatD::Identity(d, d), k = r.k(), ki = r.kinv();
      double res = 0;
      res = std::max(res, rel_diff(r.kh * r.khinv, I));
      res = std::max(res, rel_diff(k * ki, I));
      res = std::max(res, rel_diff(r.kh * r.e, q * r.e * r.kh));
      res = std::max(res, rel_diff(r.kh * r.f, r.f * r.kh / q));
      res = std::max(res, rel_diff(k * r.e, q * q * r.e * k));
      res = std::max(res, rel_diff(k * r.f, r.f * k / (q * q)));
      res = std::max(res, rel_diff(r.e * r.f - r.f * r.e, (k - ki) / (q - 1.0 / q)));
      return res;
    });
    s.run("rep.casimir", {{"two_ell", tl}, {"q", q}}, [&](Params&) {
      SpinRep r = spin_rep(ell, qc);
      const int d = ell.dim();
      MatD k = r.k(), ki = r.kinv(), I = MatD::Identity(d, d);
      double c = std::pow(1.0 / q - q, 2);
      MatD w1 = ((1.0 / q) * ki + q * k - 2.0 * I) / c + r.f * r.e;
      MatD w2 = (q * ki + (1.0 / q) * k - 2.0 * I) / c + r.e * r.f;
      MatD target = casimir_scalar(ell, qc) * I;
      return std::max({rel_diff(w1, target), rel_diff(w2, target), rel_diff(spin_casimir(ell, qc), target)});
    });
  }
  for (int t1 : cfg.two_ells)
    for (int t2 : cfg.two_ells) {
      HalfInt l1(t1), l2(t2);
      s.run("rep.coideal_relations", {{"two_ell1", t1}, {"two_ell2", t2}, {"q", q}}, [&](Params&) {
        CoidealRep c = coideal_rep(l1, l2, qc);
        MatD K = c.Kh * c.Kh, Ki = c.Khinv * c.Khinv;
        double res = rel_diff(c.Kh * c.B1, q * c.B1 * c.Kh);
        res = std::max(res, rel_diff(c.Kh * c.B2, c.B2 * c.Kh / q));
        res = std::max(res, rel_diff(c.B1 * c.B2 - c.B2 * c.B1, (K - Ki) / (q - 1.0 / q)));
        res = std::max(res, rel_diff(MatD(c.B1.transpose()), c.B2));
        // the two tensor factors commute
        res = std::max(res, rel_diff(c.E1 * c.F2, c.F2 * c.E1));
        res = std::max(res, rel_diff(c.E2 * c.K1h, c.K1h * c.E2));
        return res;
      });
      s.run("rep.casimir_tensor", {{"two_ell1", t1}, {"two_ell2", t2}, {"q", q}}, [&](Params&) {
        const int d = l1.dim() * l2.dim();
        MatD I = MatD::Identity(d, d);
        double r1 = rel_diff(casimir_rep(l1, l2, qc, 1), casimir_scalar(l1, qc) * I);
        double r2 = rel_diff(casimir_rep(l1, l2, qc, 2), casimir_scalar(l2, qc) * I);
        return std::max(r1, r2);
      });
    }
  // branching for every admissible triple over the grid
  for (int t1 : cfg.two_ells)
    for (int t2 : cfg.two_ells)
      for (int tl = std::abs(t1 - t2); tl <= t1 + t2; tl += 2) {
        HalfInt l1(t1), l2(t2), l(tl);
        Params p{{"two_ell1", t1}, {"two_ell2", t2}, {"two_ell", tl}, {"q", q}};
        s.run("cgc.isometry", p, [&](Params&) {
          Intertwiner I = branching(l1, l2, l, qc);
          return max_abs(MatD(I.beta.transpose() * I.beta) - MatD::Identity(l.dim(), l.dim()));
        });
        s.run("cgc.intertwining", p, [&](Params&) {
          Intertwiner I = branching(l1, l2, l, qc);
          CoidealRep c = coideal_rep(l1, l2, qc);
          SpinRep r = spin_rep(l, qc);
          return std::max({rel_diff(c.Kh * I.beta, I.beta * r.kh), rel_diff(c.B1 * I.beta, I.beta * r.b1),
                           rel_diff(c.B2 * I.beta, I.beta * r.b2)});
        });
        s.run("cgc.ends", p, [&](Params&) {
          Intertwiner I = branching(l1, l2, l, qc);
          return std::abs(I.cgc(-t1, -t2, t2 - t1) - cgc_ends(l1, l2, l, qc));
        });
      }
  for (int tl : cfg.two_ells) {
    HalfInt l(tl);
    s.run("cgc.bottom", {{"two_ell", tl}, {"q", q}}, [&](Params&) {
      double res = 0;
      for (int m2 = -tl; m2 <= tl; m2 += 2) {
        int t1 = (tl + m2) / 2, t2 = (tl - m2) / 2;
        Intertwiner I = branching(HalfInt(t1), HalfInt(t2), l, qc);
        for (int i = -t1; i <= t1; i += 2)
          for (int j = -t2; j <= t2; j += 2)
            for (int k = -tl; k <= tl; k += 2) {
              double c = I.cgc(i, j, k);
              double want = (i - j == k) ? cgc_bottom_sq(l, m2, i, j, k, qc) : 0.0;
              res = std::max(res, std::abs(c * c - want));
            }
      }
      return res;
    });
    s.run("cgc.completeness", {{"two_ell", tl}, {"q", q}}, [&](Params&) {
      // fix (l1, l2) = (l, l/2 rounded) style pairs from the grid: all ell below l1 + l2
      double res = 0;
      for (int t2 : cfg.two_ells) {
        HalfInt l1(tl), l2(t2);
        const int d = l1.dim() * l2.dim();
        MatD S(d, 0);
        for (int t = std::abs(tl - t2); t <= tl + t2; t += 2) {
          Intertwiner I = branching(l1, l2, HalfInt(t), qc);
          MatD nx(d, S.cols() + I.beta.cols());
          nx << S, I.beta;
          S = nx;
        }
        if (S.cols() != d) throw consistency_error("branching blocks do not fill the tensor product");
        res = std::max(res, max_abs(MatD(S.transpose() * S) - MatD::Identity(d, d)));
        res = std::max(res, max_abs(MatD(S * S.transpose()) - MatD::Identity(d, d)));
      }
      return res;
    });
    s.run("cgc.ortho_sum", {{"two_ell", tl}, {"q", q}}, [&](Params&) {
      double res = 0;
      double want = std::pow(q, -tl) * (1 - std::pow(q, 2 * tl + 2)) / (1 - q * q);
      for (int t1 = 0; t1 <= tl + 6; ++t1)
        for (int t2 = 0; t2 <= tl + 6; ++t2) {
          if (!admissible(HalfInt(t1), HalfInt(t2), l) || t1 + t2 > tl + 6) continue;
          Intertwiner I = branching(HalfInt(t1), HalfInt(t2), l, qc);
          double sum = 0;
          for (int i = -tl; i <= tl; i += 2)
            for (int a = -t1; a <= t1; a += 2)
              for (int b = -t2; b <= t2; b += 2) {
                double c = I.cgc(a, b, i);
                sum += c * c * std::pow(q, a + b);
              }
          res = std::max(res, std::abs(sum - want) / std::max(1.0, want));
        }
      return res;
    });
  }
  s.run("cgc.half_half", {{"q", q}}, [&](Params&) {
    Intertwiner I = branching(HalfInt(1), HalfInt(1), HalfInt(0), qc);
    double r = std::sqrt(1 + q * q);
    double res = std::abs(I.cgc(1, 1, 0) + 1.0 / r);
    res = std::max(res, std::abs(I.cgc(-1, -1, 0) - q / r));
    res = std::max(res, std::abs(I.cgc(1, -1, 0)));
    res = std::max(res, std::abs(I.cgc(-1, 1, 0)));
    for (int tl : cfg.two_ells) {
      Intertwiner J = branching(HalfInt(tl), HalfInt(tl), HalfInt(0), qc);
      double want = std::pow(q, tl) * std::sqrt((1 - q * q) / (1 - std::pow(q, 2 * tl + 2)));
      res = std::max(res, std::abs(J.cgc(-tl, -tl, 0) - want));
    }
    return res;
  });
}

// ---- ldu family

void ldu_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  const auto xs = grid(cfg.ldu_grid);
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    Params p{{"two_ell", tl}, {"q", q}, {"points", cfg.ldu_grid}};
    // factorization and beta expansion are evaluated in extended precision
    s.run("ldu.factorization", p, [&](Params& pp) {
      pp["extended"] = 1;
      using E = ext_real;
      const E qe(q);
      E res(0);
      for (double x : xs) {
        const E xe(x);
        LDUFactors<E> f = ldu_factors(ell, qe, xe);
        Mat<E> W = weight_matrix(ell, qe, xe), D = W - f.L * f.T_ * f.L.transpose();
        for (int i = 0; i < D.rows(); ++i)
          for (int j = 0; j < D.cols(); ++j) res = std::max(res, E(abs(D(i, j))));
      }
      return to_double(res);
    });
    s.run("ldu.inverse", p, [&](Params&) {
      double res = 0;
      for (double x : xs) {
        LDUFactors<double> f = ldu_factors(ell, qc, x);
        res = std::max(res, max_abs(MatD(f.L * f.Linv - MatD::Identity(ell.dim(), ell.dim()))));
      }
      return res;
    });
    s.run("ldu.positivity", p, [&](Params& pp) {
      double mn = std::numeric_limits<double>::infinity();
      for (double x : xs) {
        Eigen::SelfAdjointEigenSolver<MatD> es(weight_matrix(ell, q, x));
        mn = std::min(mn, es.eigenvalues().minCoeff());
      }
      pp["min_eigenvalue"] = mn;
      return mn > 0 ? 0.0 : 1.0;
    });
    s.run("ldu.beta", {{"two_ell", tl}, {"q", q}, {"points", cfg.poly_grid}, {"extended", 1}}, [&](Params&) {
      using E = ext_real;
      const E qe(q), Q = qe * qe;
      E res(0);
      for (double x : grid(cfg.poly_grid)) {
        const E xe(x);
        Mat<E> W = weight_matrix(ell, qe, xe);
        for (int m = 0; m <= tl; ++m)
          for (int n = 0; n <= m; ++n) {
            E v(0);
            for (int k = 0; k <= n; ++k)
              v += ldu_beta(ell, m, n, k, qe) * cont_q_ultra_pow(m - k, k + 1, Q, xe) *
                   cont_q_ultra_pow(n - k, k + 1, Q, xe) * ultra_weight_reduced(k, qe, xe);
            res = std::max(res, E(abs(v - W(m, n)) / std::max(E(1), E(abs(W(m, n))))));
          }
      }
      return to_double(res);
    });
  }
}

void ldu_identity_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.triple_integral");
  const int nmax = std::max(cfg.max_degree, 1);
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    int n = rng.integer(0, nmax), m = rng.integer(0, n), k = rng.integer(0, m), t = rng.integer(0, m);
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"k", k}, {"m", m}, {"n", n}, {"t", t}};
    s.run("aux.triple_integral", p, [&](Params&) {
      ext_real Q(q);
      ext_real a = triple_integral<ext_real>(k, m, n, t, Q, cfg.quad_nodes), b = triple_integral_closed<ext_real>(k, m, n, t, Q);
      return rel_scalar(a, b);
    });
  }
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    // m + n - 2t >= 0 with t > m needs n >= m + 2
    int n = rng.integer(2, std::max(nmax, 2)), m = rng.integer(0, n - 2), k = rng.integer(0, m);
    int t = rng.integer(m + 1, (m + n) / 2);
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"k", k}, {"m", m}, {"n", n}, {"t", t}};
    s.run("aux.triple_integral_zero", p, [&](Params&) {
      return std::abs(to_double(triple_integral<ext_real>(k, m, n, t, ext_real(q), cfg.quad_nodes)));
    });
  }
  Rng rng2(cfg.seed, "aux.racah_sum");
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng2.uniform(0.3, 0.8);
    int tl = rng2.integer(0, 8), m = rng2.integer(0, tl), n = rng2.integer(0, m), k = rng2.integer(0, n);
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"two_ell", tl}, {"m", m}, {"n", n}, {"k", k}};
    s.run("aux.racah_sum", p, [&](Params&) {
      auto sides = racah_sum_sides<ext_real>(HalfInt(tl), m, n, k, ext_real(q));
      return rel_scalar(sides.first, sides.second);
    });
  }
}

// ---- single-family identities

void alpha_sum_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.alpha_sum");
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    int tl = rng.integer(0, 8), p = rng.integer(0, tl), k = rng.integer(0, std::min(p, tl - p));
    int two_s = -(k + p) + 2 * rng.integer(0, k + p);
    Params pr{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"two_ell", tl}, {"k", k}, {"p", p}, {"two_s", two_s}};
    s.run("aux.alpha_sum", pr, [&](Params&) {
      QContext qc(q);
      return rel_scalar(alpha_sum_lhs(HalfInt(tl), k, p, two_s, qc), weight_laurent(HalfInt(tl), k, p, two_s, qc));
    });
  }
}

void sheppard_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.sheppard");
  auto par = [&] {
    double v = rng.uniform(0.2, 1.6);
    return rng.uniform(0, 1) < 0.25 ? -v : v;
  };
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8), b = par(), c = par(), d = par(), e = par();
    int n = rng.integer(0, std::max(cfg.max_degree, 1));
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"n", n}};
    s.run("aux.sheppard", p, [&](Params&) {
      auto sides = sheppard_sides<ext_real>(b, c, d, e, n, q);
      return rel_scalar(sides.first, sides.second);
    });
  }
}

void qtaylor_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.qtaylor");
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    int N = rng.integer(0, std::max(cfg.max_degree, 1));
    std::vector<ext_real> A;
    for (int t = 0; t <= N; ++t) A.emplace_back(rng.uniform(-1, 1));
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"N", N}};
    s.run("aux.qtaylor", p, [&](Params&) {
      ext_real scale(0);
      for (auto& a : A) scale = std::max(scale, abs(a));
      ext_real res(0);
      for (int n = 0; n <= N + 1; ++n) {
        ext_real want = n <= N ? A[n] : ext_real(0);
        res = std::max(res, abs(qtaylor_extract<ext_real>(A, n, ext_real(q)) - want));
      }
      return to_double(res / std::max(scale, ext_real(1e-300)));
    });
  }
}

void e_closed_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.e_closed");
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    int tl = rng.integer(0, 8), p = rng.integer(0, tl), k = rng.integer(0, std::min(p, tl - p)), sv = rng.integer(0, p);
    Params pr{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"two_ell", tl}, {"k", k}, {"p", p}, {"s", sv}};
    s.run("aux.e_closed", pr, [&](Params&) {
      auto sides = e_closed_sides<ext_real>(HalfInt(tl), k, p, sv, ext_real(q));
      return rel_scalar(sides.first, sides.second);
    });
    s.run("aux.e_closed_ds", pr, [&](Params&) {
      auto sides = e_closed_sides<ext_real>(HalfInt(tl), k, p, sv, ext_real(q));
      double ds = weight_laurent(HalfInt(tl), k, p, 2 * sv + k - p, QContext(q));
      return rel_scalar(to_double(sides.first), ds);
    });
  }
}

// ---- mvop

void mvop_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  const int nmax = cfg.max_degree;
  const auto xs = grid(cfg.poly_grid);
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    const int d = ell.dim();
    s.run("ortho.gram", {{"two_ell", tl}, {"q", q}, {"N", cfg.quad_nodes}, {"max_degree", nmax}}, [&](Params&) {
      if (cfg.quad_nodes < 2 * nmax + 2 * tl + 2) throw argument_error("quadrature too coarse for the degree grid");
      QuadratureRule r = gauss_chebyshev2(cfg.quad_nodes);
      std::vector<std::vector<MatD>> P;
      std::vector<MatD> W;
      for (double x : r.nodes) {
        P.push_back(pn_values(ell, nmax, q, x));
        W.push_back(weight_matrix(ell, q, x));
      }
      double res = 0;
      for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= nmax; ++m) {
          MatD S = MatD::Zero(d, d);
          for (size_t k = 0; k < r.nodes.size(); ++k) S += r.weights[k] * P[k][m].transpose() * W[k] * P[k][n];
          S *= 2.0 / boost::math::constants::pi<double>();
          MatD target = n == m ? norm_G(ell, n, q) : MatD::Zero(d, d);
          res = std::max(res, max_abs(MatD(S - target)));
        }
      return res;
    });
    s.run("poly.explicit", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}, {"points", cfg.poly_grid}}, [&](Params&) {
      double res = 0;
      for (double x : xs) {
        auto P = pn_values(ell, nmax, q, x);
        for (int n = 0; n <= nmax; ++n) res = std::max(res, rel_diff(pn_explicit(ell, n, q, x), P[n]));
      }
      return res;
    });
    s.run("poly.rn_explicit", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}, {"points", cfg.poly_grid}}, [&](Params&) {
      double res = 0;
      for (double x : xs) {
        auto P = pn_values(ell, nmax, q, x);
        LDUFactors<double> f = ldu_factors(ell, qc, x);
        for (int n = 0; n <= nmax; ++n) {
          MatD lc = leading_coeff(ell, n, q);
          MatD R = f.L.transpose() * P[n] * lc.inverse();
          res = std::max(res, rel_diff(rn_explicit(ell, n, q, x), R));
        }
      }
      return res;
    });
    s.run("rec.consistency", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}}, [&](Params&) {
      double res = 0;
      for (int n = 0; n <= nmax; ++n) {
        auto r = recurrence_coeffs(ell, n, q), r1 = recurrence_coeffs(ell, n + 1, q);
        MatD G = norm_G(ell, n, q), G1 = norm_G(ell, n + 1, q);
        res = std::max(res, rel_diff(MatD(G1 * r.A), MatD(r1.C.transpose() * G)));
        res = std::max(res, rel_diff(MatD(G * r.B), MatD(r.B.transpose() * G)));
      }
      return res;
    });
    s.run("rec.monic", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}}, [&](Params&) {
      double res = 0;
      for (int n = 0; n <= nmax; ++n) {
        auto r = recurrence_coeffs(ell, n, q);
        MatD lc = leading_coeff(ell, n, q), lc1 = leading_coeff(ell, n + 1, q), li = lc.inverse();
        res = std::max(res, rel_diff(MatD(lc1 * r.A * li), MatD::Identity(d, d)));
        res = std::max(res, rel_diff(MatD(lc * r.B * li), r.X));
        if (n > 0) res = std::max(res, rel_diff(MatD(leading_coeff(ell, n - 1, q) * r.C * li), r.Y));
        // the explicit polynomials have the stated leading coefficient
        MatPoly<double> P = pn_recursive(ell, n, q);
        res = std::max(res, rel_diff(P.coeffs.back(), lc));
      }
      return res;
    });
  }
  if (q == cfg.qs.front()) {
    s.run("poly.l0", {{"max_degree", nmax}, {"points", cfg.poly_grid}}, [&](Params&) {
      double res = 0;
      for (double qq : cfg.qs)
        for (double x : xs) {
          auto P = pn_values(HalfInt(0), nmax, qq, x);
          for (int n = 0; n <= nmax; ++n) {
            double want = std::pow(qq, n) * (1 - qq * qq) / (1 - std::pow(qq, 2 * n + 2)) * chebyshev_u(n, x);
            res = std::max(res, std::abs(P[n](0, 0) - want));
            res = std::max(res, std::abs(pn_explicit(HalfInt(0), n, qq, x)(0, 0) - want));
          }
        }
      return res;
    });
    const int na = cfg.asym_degree;
    const double qa = cfg.asym_q;
    for (int tl : cfg.two_ells) {
      HalfInt ell(tl);
      Params p{{"two_ell", tl}, {"q", qa}, {"n", na}};
      s.run("asym.Y", p, [&](Params&) {
        auto r = recurrence_coeffs(ell, na, qa);
        double res = 0;
        for (int i = 0; i <= tl; ++i) res = std::max(res, std::abs(r.Y(i, i) - 0.25));
        return res;
      });
      s.run("asym.X", p, [&](Params& pp) {
        auto r = recurrence_coeffs(ell, na, qa);
        double scale = std::pow(qa, -2 * na - 1), worst = 0, norm = 0, lim_max = 0;
        for (int i = 0; i <= tl; ++i) {
          if (i < tl) lim_max = std::max(lim_max, 0.5 * std::pow(1 - std::pow(qa, 2 * i + 2), 2));
          if (i > 0) lim_max = std::max(lim_max, 0.5 * std::pow(1 - std::pow(qa, 2 * tl - 2 * i + 2), 2));
        }
        norm = scale * max_abs(r.X);
        pp["scaled_norm"] = norm;
        pp["limit"] = lim_max;
        if (tl == 0) return norm == 0 ? 0.0 : 2.0;
        worst = norm / (2 * lim_max);
        return worst;
      });
    }
  }
}

// ---- qdiff and spherical functions

void qdiff_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  const int nmax = cfg.max_degree;
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    Rng rng(cfg.seed, "qdiff:" + std::to_string(tl) + ":" + std::to_string(q));
    const auto zs = sample_z(rng, q, cfg.z_samples);
    for (int which = 1; which <= 2; ++which) {
      Params p{{"two_ell", tl}, {"q", q}, {"which", which}, {"max_degree", nmax}, {"seed", static_cast<double>(cfg.seed)}};
      s.run("qdiff.eigen_P", p, [&](Params&) {
        double res = 0;
        for (int n = 0; n <= nmax; ++n) {
          MatFunction f = [&](cplx x) { return pn_eval_complex(ell, n, q, x); };
          MatD L = lambda_matrix(ell, n, qc, which);
          for (cplx z : zs) res = std::max(res, rel_diff(apply_D(ell, which, f, qc, z), MatC(f(mu(z)) * to_c(L))));
        }
        return res;
      });
      s.run("qdiff.eigen_R", p, [&](Params&) {
        double res = 0;
        for (int n = 0; n <= nmax; ++n) {
          MatD L = lambda_matrix(ell, n, qc, which);
          for (cplx z : zs) {
            MatC lhs = decoupled_K(ell, qc, z, which) * rn_explicit_z(ell, n, q, q * z) +
                       decoupled_K(ell, qc, 1.0 / z, which) * rn_explicit_z(ell, n, q, z / q);
            res = std::max(res, rel_diff(lhs, MatC(rn_explicit_z(ell, n, q, z) * to_c(L))));
          }
        }
        return res;
      });
      s.run("qdiff.conjugation", {{"two_ell", tl}, {"q", q}, {"which", which}}, [&](Params&) {
        double res = 0;
        for (cplx z : zs) {
          MatC lhs = decoupled_K(ell, qc, z, which) * MatC(ldu_L_z(ell, q, q * z).transpose());
          MatC rhs = MatC(ldu_L_z(ell, q, z).transpose()) * m_matrix(ell, qc, z, which);
          res = std::max(res, rel_diff(lhs, rhs));
        }
        return res;
      });
    }
  }
  // radial part, 2l1, 2l2 <= 4
  int lim = 0;
  for (int t : cfg.two_ells) lim = std::max(lim, t);
  for (int tl = 0; tl <= lim; ++tl)
    for (int n = 0; tl + n <= lim; ++n) {
      HalfInt ell(tl);
      for (int which = 1; which <= 2; ++which)
        s.run("radial.recurrence", {{"two_ell", tl}, {"n", n}, {"q", q}, {"which", which}}, [&](Params&) {
          double res = 0;
          MatD L = lambda_matrix(ell, n, qc, which);
          for (int lam = cfg.lambda_min; lam <= std::min(cfg.lambda_max, 4); ++lam) {
            if (lam == -1) continue;
            RadialCoeffs rc = radial_casimir(ell, qc, cplx(std::pow(q, lam)), which);
            MatC lhs = to_c(MatD(full_spherical(ell, n, lam, qc) * L));
            MatC rhs = rc.M * to_c(full_spherical(ell, n, lam + 1, qc)) + rc.N * to_c(full_spherical(ell, n, lam - 1, qc));
            res = std::max(res, rel_diff(lhs, rhs));
          }
          return res;
        });
    }
  for (int t1 = 0; t1 <= lim; ++t1)
    for (int t2 = 0; t2 <= lim; ++t2) {
      HalfInt l1(t1), l2(t2);
      Params p{{"two_ell1", t1}, {"two_ell2", t2}, {"q", q}};
      s.run("radial.bab", p, [&](Params&) {
        double res = 0;
        for (int lam = cfg.lambda_min; lam <= std::min(cfg.lambda_max, 4); ++lam) {
          if (lam == -1) continue;
          for (int which = 1; which <= 2; ++which) res = std::max(res, bab_residual(l1, l2, lam, qc, which));
        }
        return res;
      });
      s.run("radial.cm", p, [&](Params&) {
        double res = 0;
        for (int lam = cfg.lambda_min; lam <= std::min(cfg.lambda_max, 4); ++lam)
          if (lam != 0) res = std::max(res, cm_residual(l1, l2, lam, qc));
        return res;
      });
    }
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    s.run("sph.factorization", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}}, [&](Params&) {
      double res = 0;
      for (int n = 0; n <= nmax; ++n)
        for (int lam = cfg.lambda_min; lam <= cfg.lambda_max; ++lam)
          res = std::max(res, phi0_factorization_residual(ell, n, lam, qc));
      return res;
    });
    s.run("sph.determinant", {{"two_ell", tl}, {"q", q}}, [&](Params& pp) {
      double res = 0;
      int mismatched = 0;
      for (int lam = cfg.lambda_min; lam <= cfg.lambda_max; ++lam) {
        InvertibilityCertificate c = invertibility_certificate(ell, lam, qc);
        bool expect_zero = std::abs(lam) >= 1 && std::abs(lam) <= tl;
        if (c.degenerate != expect_zero) ++mismatched;
        res = std::max(res, c.residual);
      }
      pp["zero_pattern_mismatches"] = mismatched;
      return mismatched ? std::numeric_limits<double>::infinity() : res;
    });
  }
}

void diffeq_n1_checks(Sink& s) {
  const SuiteConfig& cfg = s.cfg;
  Rng rng(cfg.seed, "aux.diffeq_n1");
  int lim = 0;
  for (int t : cfg.two_ells) lim = std::max(lim, t);
  for (int draw = 0; draw < cfg.draws; ++draw) {
    double q = rng.uniform(0.3, 0.8);
    int tl = rng.integer(0, lim);
    cplx z;
    do {
      z = std::polar(rng.uniform(0.5, 1.5), rng.uniform(-3.1, 3.1));
    } while (std::abs(1.0 - z * z) < 0.1);
    Params p{{"seed", static_cast<double>(cfg.seed)}, {"draw", draw}, {"q", q}, {"two_ell", tl}, {"z_re", z.real()}, {"z_im", z.imag()}};
    s.run("aux.diffeq_n1", p, [&](Params&) { return diffeq_n1_residual(HalfInt(tl), QContext(q), z); });
  }
}

// ---- examples

void example_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  const int nmax = cfg.max_degree;
  const auto xs = grid(cfg.poly_grid);
  const double r2 = std::sqrt(2.0);
  auto om = [&](int e) { return 1 - std::pow(q, e); };
  // spin 1/2
  {
    HalfInt ell(1);
    s.run("ex.half.weight", {{"q", q}, {"points", cfg.poly_grid}}, [&](Params&) {
      double res = 0, c = q + 1 / q;
      for (double x : xs) {
        BlockSplit b = block_split(ell, qc, x);
        res = std::max(res, std::abs(b.Wplus(0, 0) - (c + 2 * x)));
        res = std::max(res, std::abs(b.Wminus(0, 0) - (c - 2 * x)));
        res = std::max(res, max_abs(MatD(b.Yplus * weight_matrix(ell, q, x) * b.Yminus.transpose())));
      }
      return res;
    });
    s.run("ex.half.recurrence", {{"q", q}, {"max_degree", nmax}}, [&](Params&) {
      BlockSplit b = block_split(ell, qc, 0.0);
      MatD Y(2, 2);
      Y << b.Yplus, b.Yminus;
      double res = 0;
      for (int n = 0; n <= nmax; ++n) {
        auto r = recurrence_coeffs(ell, n, q);
        double A = om(2 * n + 6) / (2 * q * om(2 * n + 4));
        double B = std::pow(q, 2 * n + 1) * om(2) * om(2) / (2 * om(2 * n + 2) * om(2 * n + 4));
        double C = q * om(2 * n) / (2 * om(2 * n + 2));
        MatD a(2, 2), bb(2, 2), c(2, 2);
        a << A, 0, 0, A;
        bb << B, 0, 0, -B;
        c << C, 0, 0, C;
        res = std::max({res, max_abs(MatD(Y * r.A * Y.transpose() - a)), max_abs(MatD(Y * r.B * Y.transpose() - bb)),
                        max_abs(MatD(Y * r.C * Y.transpose() - c))});
      }
      return res;
    });
  }
  // spin 1
  {
    HalfInt ell(2);
    s.run("ex.one.weight", {{"q", q}, {"points", cfg.poly_grid}}, [&](Params&) {
      double res = 0;
      for (double x : xs) {
        BlockSplit b = block_split(ell, qc, x);
        MatD Wp(2, 2);
        double off = 2 * r2 / q * (1 + q * q + std::pow(q, 4)) / (1 + q * q) * x;
        Wp << 4 * x * x + q * q + 1 / (q * q), off, off,
            4 * q * q / std::pow(1 + q * q, 2) * x * x + q * q + 1 / (q * q);
        res = std::max(res, max_abs(MatD(b.Wplus - Wp)));
        res = std::max(res, std::abs(b.Wminus(0, 0) - (-4 * x * x + q * q + 2 + 1 / (q * q))));
        res = std::max(res, max_abs(MatD(b.Yplus * weight_matrix(ell, q, x) * b.Yminus.transpose())));
      }
      return res;
    });
    s.run("ex.one.recurrence", {{"q", q}, {"max_degree", nmax}}, [&](Params&) {
      BlockSplit b = block_split(ell, qc, 0.0);
      double res = 0;
      for (int n = 0; n <= nmax; ++n) {
        auto r = recurrence_coeffs(ell, n, q);
        MatD A(2, 2), B(2, 2), C(2, 2);
        A << om(2 * n + 8) / om(2 * n + 6), 0, 0, om(2 * n + 8) * om(2 * n + 2) / std::pow(om(2 * n + 4), 2);
        A /= 2 * q;
        C << om(2 * n) / om(2 * n + 2), 0, 0, om(2 * n) * om(2 * n + 6) / std::pow(om(2 * n + 4), 2);
        C *= q / 2;
        double h = std::pow(q, 2 * n + 1) * om(2) * om(4);
        B << 0, h / std::pow(om(2 * n + 4), 2), h / (om(2 * n + 2) * om(2 * n + 6)), 0;
        B *= r2 / 2;
        res = std::max({res, max_abs(MatD(b.Yplus * r.A * b.Yplus.transpose() - A)),
                        max_abs(MatD(b.Yplus * r.B * b.Yplus.transpose() - B)),
                        max_abs(MatD(b.Yplus * r.C * b.Yplus.transpose() - C))});
        MatD am = b.Yminus * r.A * b.Yminus.transpose(), bm = b.Yminus * r.B * b.Yminus.transpose(),
             cm = b.Yminus * r.C * b.Yminus.transpose();
        res = std::max({res, std::abs(am(0, 0) - om(2 * n + 8) / (2 * q * om(2 * n + 6))), std::abs(bm(0, 0)),
                        std::abs(cm(0, 0) - q / 2 * om(2 * n) / om(2 * n + 2))});
        res = std::max({res, max_abs(MatD(b.Yplus * r.A * b.Yminus.transpose())),
                        max_abs(MatD(b.Yplus * r.B * b.Yminus.transpose())),
                        max_abs(MatD(b.Yplus * r.C * b.Yminus.transpose()))});
      }
      return res;
    });
    s.run("ex.one.pminus", {{"q", q}, {"max_degree", nmax}, {"points", cfg.poly_grid}}, [&](Params&) {
      BlockSplit b = block_split(ell, qc, 0.0);
      double res = 0;
      for (double x : xs) {
        auto P = pn_values(ell, nmax, q, x);
        for (int n = 0; n <= nmax; ++n) {
          double got = (b.Yminus * P[n] * b.Yminus.transpose())(0, 0);
          double want = std::pow(q, n) * om(2) * om(6) / (om(2 * n + 2) * om(2 * n + 6)) * cont_q_ultra_pow(n, 2, q * q, x);
          res = std::max(res, std::abs(got - want));
        }
      }
      return res;
    });
    s.run("ex.one.qdiff", {{"q", q}, {"max_degree", nmax}, {"seed", static_cast<double>(cfg.seed)}}, [&](Params&) {
      BlockSplit b = block_split(ell, qc, 0.0);
      MatC Yp = to_c(b.Yplus);
      Rng rng(cfg.seed, "ex.one.qdiff:" + std::to_string(q));
      double res = 0;
      for (cplx z : sample_z(rng, q, cfg.z_samples)) {
        MatC Mz = Yp * (m_matrix(ell, qc, z, 1) + m_matrix(ell, qc, z, 2)) * Yp.transpose();
        MatC want(2, 2);
        cplx f = 1.0 / (q * om(2) * (1.0 - z * z));
        cplx g = 1.0 - std::pow(q, 4) * z * z;
        want << (1 + q * q) / om(2) * g, -r2 * q * q * z, -r2 * q * (1 + q * q) * z, 2 * q * g / om(2);
        want *= f;
        res = std::max(res, rel_diff(Mz, want));
      }
      for (int n = 0; n <= nmax; ++n) {
        MatD Ln = b.Yplus * (lambda_matrix(ell, n, qc, 1) + lambda_matrix(ell, n, qc, 2)) * b.Yplus.transpose();
        MatD want = MatD::Zero(2, 2);
        want(0, 0) = std::pow(q, -n - 1) * (1 + q * q) * (1 + std::pow(q, 2 * n + 4)) / std::pow(om(2), 2);
        want(1, 1) = 2 * std::pow(q, -n) * (1 + std::pow(q, 2 * n + 4)) / std::pow(om(2), 2);
        res = std::max(res, rel_diff(Ln, want));
      }
      return res;
    });
  }
}

// ---- consequences of the explicit formula

void consequence_checks(Sink& s, double q) {
  const SuiteConfig& cfg = s.cfg;
  QContext qc(q);
  const int nmax = cfg.max_degree;
  for (int tl : cfg.two_ells) {
    HalfInt ell(tl);
    const int d = ell.dim();
    s.run("pn.vanishing", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}}, [&](Params&) {
      double res = 0;
      for (int n = 0; n <= nmax; ++n)
        for (int i = 0; i <= tl; ++i)
          for (int j = i + 1; j <= tl; ++j) res = std::max(res, std::abs(vanishing_sum<double>(ell, n, i, j, q)));
      return res;
    });
    s.run("pn.normalisation", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}}, [&](Params&) {
      double res = 0, x = 0.5 * (q + 1 / q);
      auto P = pn_values(ell, nmax, q, x);
      for (int n = 0; n <= nmax; ++n) {
        VecD cs = P[n].colwise().sum();
        res = std::max(res, (cs.array() - 1.0).abs().maxCoeff());
      }
      return res;
    });
    s.run("pn.commutant", {{"two_ell", tl}, {"q", q}}, [&](Params& pp) {
      int dim = commutant_dimension(ell, qc);
      pp["dimension"] = dim;
      // a single point space has J = I, so the commutant is everything
      int want = tl == 0 ? 1 : 2;
      return static_cast<double>(std::abs(dim - want));
    });
    s.run("pn.jsymmetry", {{"two_ell", tl}, {"q", q}, {"max_degree", nmax}, {"points", cfg.poly_grid}}, [&](Params&) {
      MatD J = reversal<double>(d);
      double res = 0;
      for (double x : grid(cfg.poly_grid)) {
        auto P = pn_values(ell, nmax, q, x);
        res = std::max(res, rel_diff(MatD(J * weight_matrix(ell, q, x) * J), weight_matrix(ell, q, x)));
        for (int n = 0; n <= nmax; ++n) res = std::max(res, rel_diff(MatD(J * P[n] * J), P[n]));
      }
      return res;
    });
  }
}

struct Task {
  std::string family;
  std::function<void(Sink&)> fn;
};

}  // namespace

SuiteConfig default_suite_config() {
  SuiteConfig c;
  c.two_ells = {0, 1, 2, 3, 4};
  c.qs = {0.3, 0.5, 0.8};
  c.max_degree = 8;
  c.lambda_min = -4;
  c.lambda_max = 6;
  c.quad_nodes = 64;
  c.ldu_grid = 101;
  c.poly_grid = 21;
  c.z_samples = 10;
  c.draws = 25;
  c.asym_degree = 100;
  c.asym_q = 0.5;
  c.seed = 20240611;
  c.tolerances = {
      {"rep.spin_relations", 1e-11},  {"rep.casimir", 1e-11},        {"rep.coideal_relations", 1e-11},
      {"rep.casimir_tensor", 1e-11},  {"cgc.isometry", 1e-11},       {"cgc.intertwining", 1e-11},
      {"cgc.bottom", 1e-11},          {"cgc.half_half", 1e-12},      {"cgc.ends", 1e-12},
      {"cgc.completeness", 1e-11},    {"cgc.ortho_sum", 1e-10},      {"aux.alpha_sum", 1e-10},
      {"ldu.factorization", 1e-10},   {"ldu.inverse", 1e-10},        {"ldu.positivity", 0.0},
      {"ldu.beta", 1e-10},            {"aux.triple_integral", 1e-10},           {"aux.triple_integral_zero", 1e-12},
      {"aux.racah_sum", 1e-10},            {"aux.sheppard", 1e-10},       {"aux.qtaylor", 1e-10},
      {"aux.e_closed", 1e-10},    {"aux.e_closed_ds", 1e-10}, {"ortho.gram", 1e-9},
      {"poly.explicit", 1e-9},        {"poly.l0", 1e-12},            {"poly.rn_explicit", 1e-9},
      {"rec.consistency", 1e-11},     {"rec.monic", 1e-11},          {"asym.Y", 1e-8},
      {"asym.X", 1.0},                {"qdiff.eigen_P", 1e-9},       {"qdiff.eigen_R", 1e-9},
      {"qdiff.conjugation", 1e-11},   {"radial.recurrence", 1e-9},   {"radial.bab", 1e-9},
      {"radial.cm", 1e-9},            {"sph.factorization", 1e-9},   {"sph.determinant", 1e-10},
      {"aux.diffeq_n1", 1e-10},       {"ex.half.weight", 1e-10},     {"ex.half.recurrence", 1e-10},
      {"ex.one.weight", 1e-10},       {"ex.one.recurrence", 1e-10},  {"ex.one.pminus", 1e-10},
      {"ex.one.qdiff", 1e-10},        {"pn.vanishing", 1e-10},      {"pn.normalisation", 1e-10},
      {"pn.commutant", 0.0},         {"pn.jsymmetry", 1e-11},
  };
  return c;
}

std::vector<std::string> suite_families() {
  std::vector<std::string> f;
  for (const auto& t : check_table()) f.emplace_back(t.family);
  return f;
}

std::vector<std::string> suite_check_ids() {
  std::vector<std::string> ids;
  for (const auto& t : check_table())
    for (const char* id : t.ids) ids.emplace_back(id);
  return ids;
}

bool family_selected(const SuiteConfig& cfg, const std::string& family) {
  if (cfg.families.empty()) return true;
  const FamilyChecks* row = nullptr;
  for (const auto& t : check_table())
    if (family == t.family) row = &t;
  if (!row) return false;
  for (const auto& f : cfg.families) {
    if (f == family) return true;
    if (f.size() == 1 && std::string(row->letters).find(f[0]) != std::string::npos) return true;
  }
  return false;
}

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  // configuration errors are thrown before any check runs
  for (const auto& f : cfg.families) {
    bool known = f.size() == 1 && f[0] >= 'a' && f[0] <= 'j';
    for (const auto& t : check_table()) known = known || f == t.family;
    if (!known) throw argument_error("run_suite: unknown family '" + f + "'");
  }
  if (cfg.qs.empty() || cfg.two_ells.empty()) throw argument_error("run_suite: empty parameter grid");
  for (double q : cfg.qs) QContext(q).validate();
  for (int t : cfg.two_ells) HalfInt{t};
  if (cfg.max_degree < 0 || cfg.quad_nodes < 1 || cfg.ldu_grid < 2 || cfg.poly_grid < 1 || cfg.z_samples < 0 ||
      cfg.draws < 0 || cfg.lambda_min > cfg.lambda_max || cfg.asym_degree < 0)
    throw argument_error("run_suite: invalid grid sizes");
  QContext(cfg.asym_q).validate();
  for (const auto& t : check_table()) {
    if (!family_selected(cfg, t.family)) continue;
    for (const char* id : t.ids) {
      auto it = cfg.tolerances.find(id);
      if (it == cfg.tolerances.end()) throw argument_error(std::string("run_suite: no tolerance for ") + id);
      if (!(it->second >= 0)) throw argument_error(std::string("run_suite: bad tolerance for ") + id);
    }
  }

  std::vector<Task> tasks;
  for (double q : cfg.qs) {
    tasks.push_back({"qalg", [q](Sink& s) { qalg_checks(s, q); }});
    tasks.push_back({"ldu", [q](Sink& s) { ldu_checks(s, q); }});
    tasks.push_back({"mvop", [q](Sink& s) { mvop_checks(s, q); }});
    tasks.push_back({"qdiff", [q](Sink& s) { qdiff_checks(s, q); }});
    tasks.push_back({"examples", [q](Sink& s) { example_checks(s, q); }});
    tasks.push_back({"consequences", [q](Sink& s) { consequence_checks(s, q); }});
  }
  tasks.push_back({"alpha_sum", alpha_sum_checks});
  tasks.push_back({"ldu", ldu_identity_checks});
  tasks.push_back({"sheppard", sheppard_checks});
  tasks.push_back({"qtaylor", qtaylor_checks});
  tasks.push_back({"e_closed", e_closed_checks});
  tasks.push_back({"qdiff", diffeq_n1_checks});

  std::vector<Task> selected;
  for (auto& t : tasks)
    if (family_selected(cfg, t.family)) selected.push_back(std::move(t));

  std::vector<std::vector<CheckReport>> results(selected.size());
  unsigned nthreads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < selected.size();) {
      Sink s{cfg, selected[i].family, {}};
      try {
        selected[i].fn(s);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      results[i] = std::move(s.out);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < std::min<size_t>(nthreads, selected.size()); ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<CheckReport> all;
  for (auto& r : results)
    for (auto& c : r) all.push_back(std::move(c));
  std::stable_sort(all.begin(), all.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return all;
}

}  // namespace qmvop
