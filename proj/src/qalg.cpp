#include "qmvop/qalg.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "qmvop/qseries.hpp"

namespace qmvop {

double spin_b(int two_ell, int two_p, double q) {
  double l = two_ell / 2.0, p = two_p / 2.0;
  double v = (std::pow(q, -l + p - 1) - std::pow(q, l - p + 1)) * (std::pow(q, -l - p) - std::pow(q, l + p));
  return std::sqrt(std::max(v, 0.0)) / (1.0 / q - q);
}

SpinRep spin_rep(HalfInt ell, const QContext& qc) {
  qc.validate();
  const double q = qc.q;
  const int d = ell.dim(), tl = ell.two_ell;
  SpinRep r;
  r.ell = ell;
  r.kh = MatD::Zero(d, d);
  r.khinv = MatD::Zero(d, d);
  r.e = MatD::Zero(d, d);
  r.f = MatD::Zero(d, d);
  r.b1 = MatD::Zero(d, d);
  r.b2 = MatD::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    int p2 = 2 * a - tl;
    double p = p2 / 2.0;
    r.kh(a, a) = std::pow(q, -p);
    r.khinv(a, a) = std::pow(q, p);
    if (a > 0) {
      r.e(a - 1, a) = std::pow(q, 2 - p) * spin_b(tl, p2, q);
      r.b1(a - 1, a) = spin_b(tl, p2, q);
    }
    if (a < d - 1) {
      r.f(a + 1, a) = std::pow(q, p - 1) * spin_b(tl, p2 + 2, q);
      r.b2(a + 1, a) = spin_b(tl, p2 + 2, q);
    }
  }
  return r;
}

CoidealRep coideal_rep(HalfInt ell1, HalfInt ell2, const QContext& qc) {
  const double q = qc.q;
  SpinRep s1 = spin_rep(ell1, qc), s2 = spin_rep(ell2, qc);
  MatD I1 = MatD::Identity(ell1.dim(), ell1.dim()), I2 = MatD::Identity(ell2.dim(), ell2.dim());
  auto kron = [](const MatD& a, const MatD& b) {
    MatD r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
  };
  CoidealRep c;
  c.ell1 = ell1;
  c.ell2 = ell2;
  c.K1h = kron(s1.kh, I2);
  c.K1hinv = kron(s1.khinv, I2);
  c.K2h = kron(I1, s2.kh);
  c.K2hinv = kron(I1, s2.khinv);
  c.E1 = kron(s1.e, I2);
  c.F1 = kron(s1.f, I2);
  c.E2 = kron(I1, s2.e);
  c.F2 = kron(I1, s2.f);
  c.B1 = (1.0 / q) * c.K1hinv * c.K2hinv * c.E1 + q * c.F2 * c.K1hinv * c.K2h;
  c.B2 = (1.0 / q) * c.K1hinv * c.K2hinv * c.E2 + q * c.F1 * c.K1h * c.K2hinv;
  c.Kh = c.K1h * c.K2hinv;
  c.Khinv = c.K1hinv * c.K2h;
  c.A = c.K1h * c.K2h;
  c.Ainv = c.K1hinv * c.K2hinv;
  return c;
}

bool admissible(HalfInt ell1, HalfInt ell2, HalfInt ell) {
  int a = ell1.two_ell, b = ell2.two_ell, l = ell.two_ell;
  return std::abs(a - b) <= l && l <= a + b && (a + b - l) % 2 == 0;
}

double Intertwiner::cgc(int two_i, int two_j, int two_p) const {
  const int t1 = ell1.two_ell, t2 = ell2.two_ell, tl = ell.two_ell;
  if (std::abs(two_i) > t1 || std::abs(two_j) > t2 || std::abs(two_p) > tl) return 0.0;
  if ((two_i + t1) % 2 || (two_j + t2) % 2 || (two_p + tl) % 2) return 0.0;
  int a1 = (two_i + t1) / 2, a2 = (two_j + t2) / 2, a = (two_p + tl) / 2;
  return beta(a1 * (t2 + 1) + a2, a);
}

namespace {

Intertwiner build_branching(HalfInt ell1, HalfInt ell2, HalfInt ell, const QContext& qc) {
  const int t1 = ell1.two_ell, t2 = ell2.two_ell, tl = ell.two_ell;
  const int d1 = t1 + 1, d2 = t2 + 1;
  CoidealRep R = coideal_rep(ell1, ell2, qc);
  // K^{1/2}-weight q^{l}: i - j = -l
  std::vector<int> idx;
  for (int a1 = 0; a1 < d1; ++a1)
    for (int a2 = 0; a2 < d2; ++a2)
      if ((2 * a1 - t1) - (2 * a2 - t2) == -tl) idx.push_back(a1 * d2 + a2);
  MatD M(R.dim(), static_cast<int>(idx.size()));
  for (size_t c = 0; c < idx.size(); ++c) M.col(c) = R.B1.col(idx[c]);
  Eigen::JacobiSVD<MatD> svd(M, Eigen::ComputeFullV);
  const VecD& s = svd.singularValues();
  const int m = static_cast<int>(idx.size());
  double smax = s.size() ? s(0) : 0.0;
  double scale = std::max(1.0, smax);
  if (s.size() == m && s(m - 1) > 1e-10 * scale)
    throw consistency_error("branching: B1 has trivial kernel on the lowest weight space");
  if (m > 1 && s(m - 2) <= 1e-8 * scale)
    throw consistency_error("branching: kernel dimension exceeds one");
  // the kernel and the ladder are rebuilt entrywise in extended precision: the SVD vector has only
  // absolute accuracy, while the spherical functions weight small entries by large powers of q
  using E = ext_real;
  const E qe(qc.q), qh = sqrt(qe);
  auto bq = [&](int tw, int tp) {  // b^{tw/2}(tp/2)
    E a = ipow(qh, tp - tw - 2) - ipow(qh, tw - tp + 2), b = ipow(qh, -tw - tp) - ipow(qh, tw + tp);
    E v = a * b;
    return v > 0 ? E(sqrt(v) / (1 / qe - qe)) : E(0);
  };
  const int D = R.dim();
  std::vector<E> col(D, E(0));
  // weight space: 2i - 2j = -2l; step (i,j) -> (i+1,j+1) from B1 v = 0
  int i2 = std::max(-t1, -t2 - tl), j2 = i2 + tl;
  E val(1), norm(0);
  for (; i2 <= t1 && j2 <= t2; i2 += 2, j2 += 2) {
    col[((i2 + t1) / 2) * d2 + (j2 + t2) / 2] = val;
    norm += val * val;
    if (i2 + 2 > t1 || j2 + 2 > t2) break;
    val = -ipow(qh, -tl - 2) * bq(t2, j2 + 2) / bq(t1, i2 + 2) * val;
  }
  norm = sqrt(norm);
  for (auto& c : col) c /= norm;
  Intertwiner I;
  I.ell1 = ell1;
  I.ell2 = ell2;
  I.ell = ell;
  I.beta = MatD::Zero(D, tl + 1);
  for (int r = 0; r < D; ++r) I.beta(r, 0) = to_double(col[r]);
  if ((R.B1 * I.beta.col(0)).norm() > 1e-10 * std::max(1.0, R.B1.norm()))
    throw consistency_error("branching: kernel recursion disagrees with B1");
  for (int a = 1; a <= tl; ++a) {
    // B2 e_i (x) e_j = q^i b2(j) e_i (x) e_{j-1} + q^j b1(i+1) e_{i+1} (x) e_j
    std::vector<E> nx(D, E(0));
    for (int a1 = 0; a1 < d1; ++a1)
      for (int a2 = 0; a2 < d2; ++a2) {
        const E& c = col[a1 * d2 + a2];
        if (c == 0) continue;
        int pi2 = 2 * a1 - t1, pj2 = 2 * a2 - t2;
        if (a2 > 0) nx[a1 * d2 + a2 - 1] += ipow(qh, pi2) * bq(t2, pj2) * c;
        if (a1 + 1 < d1) nx[(a1 + 1) * d2 + a2] += ipow(qh, pj2) * bq(t1, pi2 + 2) * c;
      }
    E den = bq(tl, 2 * a - tl);
    for (int r = 0; r < D; ++r) {
      col[r] = nx[r] / den;
      I.beta(r, a) = to_double(col[r]);
    }
  }
  return I;
}

}  // namespace

Intertwiner branching(HalfInt ell1, HalfInt ell2, HalfInt ell, const QContext& qc) {
  qc.validate();
  if (!admissible(ell1, ell2, ell)) throw argument_error("branching: inadmissible (l1, l2, l)");
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, double>, Intertwiner> cache;
  auto key = std::make_tuple(ell1.two_ell, ell2.two_ell, ell.two_ell, qc.q);
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Intertwiner I = build_branching(ell1, ell2, ell, qc);
  std::lock_guard<std::mutex> g(mu);
  cache.emplace(key, I);
  return I;
}

double cgc_bottom_sq(HalfInt ell, int two_m, int two_i, int two_j, int two_k, const QContext& qc) {
  const int tl = ell.two_ell;
  const double q = qc.q, Q = q * q;
  if (std::abs(two_m) > tl || (tl + two_m) % 2) return 0.0;
  const int t1 = (tl + two_m) / 2, t2 = (tl - two_m) / 2;  // 2l1, 2l2
  if (two_i - two_j != two_k) return 0.0;
  if (std::abs(two_i) > t1 || std::abs(two_j) > t2 || std::abs(two_k) > tl) return 0.0;
  if ((two_i + t1) % 2 || (two_j + t2) % 2 || (two_k + tl) % 2) return 0.0;
  int a = (two_i + t1) / 2, b = (two_j + t2) / 2;
  return std::pow(q, 2.0 * a * b) * qbinom(t1, (t1 - two_i) / 2, Q) * qbinom(t2, (t2 - two_j) / 2, Q) /
         qbinom(tl, (tl - two_k) / 2, Q);
}

double cgc_ends(HalfInt ell1, HalfInt ell2, HalfInt ell, const QContext& qc) {
  if (!admissible(ell1, ell2, ell)) throw argument_error("cgc_ends: inadmissible triple");
  const int t1 = ell1.two_ell, t2 = ell2.two_ell, tl = ell.two_ell;
  const double q = qc.q, Q = q * q;
  int s = (t1 + t2 - tl) / 2;
  return std::pow(q, s) * std::sqrt(qfac(Q, t1) * qfac(Q, t2) * (1 - std::pow(q, 2 * tl + 2)) /
                                    (qfac(Q, (t1 + t2 + tl) / 2 + 1) * qfac(Q, s)));
}

std::pair<HalfInt, HalfInt> xi_map(HalfInt ell, int n, int k) {
  if (n < 0) throw argument_error("xi_map: negative n");
  if (k < 0 || k > ell.two_ell) throw argument_error("xi_map: k out of range");
  return {HalfInt(n + k), HalfInt(ell.two_ell + n - k)};
}

VecD spherical_diag(HalfInt ell, HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc) {
  Intertwiner I = branching(ell1, ell2, ell, qc);
  const int t1 = ell1.two_ell, t2 = ell2.two_ell;
  VecD out = VecD::Zero(ell.dim());
  for (int a1 = 0; a1 <= t1; ++a1)
    for (int a2 = 0; a2 <= t2; ++a2) {
      int s2 = (2 * a1 - t1) + (2 * a2 - t2);
      double w = std::pow(qc.q, -lambda * s2 / 2.0);
      out += w * I.beta.row(a1 * (t2 + 1) + a2).cwiseAbs2().transpose();
    }
  return out;
}

Vec<cplx> spherical_diag_z(HalfInt ell, HalfInt ell1, HalfInt ell2, cplx z, int shift, const QContext& qc) {
  if (z == cplx(0.0)) throw pole_error("spherical_diag_z: z = 0");
  Intertwiner I = branching(ell1, ell2, ell, qc);
  const int t1 = ell1.two_ell, t2 = ell2.two_ell;
  const cplx w = std::sqrt(z);
  Vec<cplx> out = Vec<cplx>::Zero(ell.dim());
  for (int a1 = 0; a1 <= t1; ++a1)
    for (int a2 = 0; a2 <= t2; ++a2) {
      int s2 = (2 * a1 - t1) + (2 * a2 - t2);
      cplx f = std::pow(w, -s2) * std::pow(qc.q, -shift * s2 / 2.0);
      out += f * I.beta.row(a1 * (t2 + 1) + a2).cwiseAbs2().transpose().cast<cplx>();
    }
  return out;
}

MatD full_spherical(HalfInt ell, int n, int lambda, const QContext& qc) {
  const int d = ell.dim();
  MatD M(d, d);
  for (int j = 0; j < d; ++j) {
    auto [l1, l2] = xi_map(ell, n, j);
    M.col(j) = spherical_diag(ell, l1, l2, lambda, qc);
  }
  return M;
}

MatC full_spherical_z(HalfInt ell, int n, cplx z, int shift, const QContext& qc) {
  const int d = ell.dim();
  MatC M(d, d);
  for (int j = 0; j < d; ++j) {
    auto [l1, l2] = xi_map(ell, n, j);
    M.col(j) = spherical_diag_z(ell, l1, l2, z, shift, qc);
  }
  return M;
}

double casimir_scalar(HalfInt ell, const QContext& qc) {
  const double q = qc.q, l = ell.value();
  double v = (std::pow(q, -0.5 - l) - std::pow(q, 0.5 + l)) / (1.0 / q - q);
  return v * v;
}

MatD spin_casimir(HalfInt ell, const QContext& qc) {
  SpinRep s = spin_rep(ell, qc);
  const double q = qc.q;
  const int d = ell.dim();
  return (s.kinv() / q + q * s.k() - 2.0 * MatD::Identity(d, d)) / std::pow(1.0 / q - q, 2) + s.f * s.e;
}

MatD casimir_rep(HalfInt ell1, HalfInt ell2, const QContext& qc, int which) {
  if (which != 1 && which != 2) throw argument_error("casimir_rep: which must be 1 or 2");
  CoidealRep c = coideal_rep(ell1, ell2, qc);
  const double q = qc.q;
  const int d = c.dim();
  const MatD& Kh = which == 1 ? c.K1h : c.K2h;
  const MatD& Khi = which == 1 ? c.K1hinv : c.K2hinv;
  const MatD& E = which == 1 ? c.E1 : c.E2;
  const MatD& F = which == 1 ? c.F1 : c.F2;
  return (q * Khi * Khi + Kh * Kh / q - 2.0 * MatD::Identity(d, d)) / std::pow(q - 1.0 / q, 2) + E * F;
}

namespace {
MatD a_power(const CoidealRep& c, int lambda) {
  VecD diag = c.A.diagonal();
  for (int i = 0; i < diag.size(); ++i) diag(i) = std::pow(diag(i), lambda);
  return diag.asDiagonal();
}
double rel_max(const MatD& lhs, const MatD& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, lhs.cwiseAbs().maxCoeff());
}
}  // namespace

double bab_residual(HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc, int which) {
  if (lambda == -1) throw argument_error("bab_residual: lambda = -1 is a pole");
  if (which != 1 && which != 2) throw argument_error("bab_residual: which must be 1 or 2");
  CoidealRep c = coideal_rep(ell1, ell2, qc);
  const double q = qc.q;
  MatD Om = casimir_rep(ell1, ell2, qc, which);
  MatD Al = a_power(c, lambda), Ap = a_power(c, lambda + 1), Am = a_power(c, lambda - 1);
  const MatD& Kp = which == 1 ? c.Kh : c.Khinv;
  const MatD& Km = which == 1 ? c.Khinv : c.Kh;
  const MatD& Ba = which == 1 ? c.B1 : c.B2;
  const MatD& Bb = which == 1 ? c.B2 : c.B1;
  const double w = std::pow(1 - q * q, 2), D = 1 - std::pow(q, 2 * lambda + 2), D2 = D * D;
  MatD rhs = q * (1 - std::pow(q, 2 * lambda + 4)) / (w * D) * Kp * Ap - 2 * q * q / w * Al +
             std::pow(q, 3) * (1 - std::pow(q, 2 * lambda)) / (w * D) * Km * Am -
             std::pow(q, 2 * lambda + 1) / D2 * Ba * Km * Bb * Ap -
             std::pow(q, 2 * lambda + 2) / D2 * Ap * Km * Bb * Ba + std::pow(q, lambda) / D2 * Ba * Km * Ap * Bb +
             std::pow(q, 3 * lambda + 3) / D2 * Km * Bb * Ap * Ba;
  return rel_max(Om * Al, rhs);
}

double cm_residual(HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc) {
  if (lambda == 0) throw argument_error("cm_residual: lambda = 0 excluded");
  CoidealRep c = coideal_rep(ell1, ell2, qc);
  const double q = qc.q;
  MatD Al = a_power(c, lambda);
  MatD rhs = (1.0 / q) / (std::pow(q, 1 - lambda) - std::pow(q, 1 + lambda)) *
             (c.Kh * Al * c.B1 - std::pow(q, lambda) * c.Kh * c.B1 * Al);
  return rel_max(c.F2 * Al, rhs);
}

double weight_laurent(HalfInt ell, int k, int p, int two_s, const QContext& qc) {
  const int tl = ell.two_ell;
  if (k < 0 || p < 0 || k > tl || p > tl) throw argument_error("weight_laurent: k, p out of range");
  if (std::abs(two_s) > k + p || (two_s + k + p) % 2) return 0.0;
  const double q = qc.q, Q = q * q;
  double tot = 0.0;
  for (int i2 = -k; i2 <= k; i2 += 2) {
    int j2 = i2 + two_s;
    if (std::abs(j2) > p || (j2 + p) % 2) continue;
    for (int n2 = -tl; n2 <= tl; n2 += 2) {
      int a = (i2 + k) / 2, b = (i2 - n2 + tl - k) / 2, c = (j2 + p) / 2, d = (j2 - n2 + tl - p) / 2;
      if (b < 0 || d < 0 || b > tl - k || d > tl - p) continue;
      int ex = (i2 + j2 - n2) + 2 * a * b + 2 * c * d;
      double den = qbinom(tl, (tl - n2) / 2, Q);
      tot += std::pow(q, ex) * qbinom(k, (k - i2) / 2, Q) * qbinom(tl - k, (tl - k + n2 - i2) / 2, Q) *
             qbinom(p, (p - j2) / 2, Q) * qbinom(tl - p, (tl - p + n2 - j2) / 2, Q) / (den * den);
    }
  }
  return tot;
}

double phi_scalar(int lambda, const QContext& qc) {
  return 0.5 * (std::pow(qc.q, lambda + 1) + std::pow(qc.q, -lambda - 1));
}

}  // namespace qmvop
