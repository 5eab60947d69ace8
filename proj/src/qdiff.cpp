#include "qmvop/qdiff.hpp"

#include "qmvop/mvop.hpp"
#include "qmvop/qalg.hpp"
#include "qmvop/qseries.hpp"

namespace qmvop {

namespace {

void check_which(int which) {
  if (which != 1 && which != 2) throw argument_error("which must be 1 or 2");
}

void check_torus_pole(cplx z) {
  if (std::abs(z) < 1e-300) throw pole_error("pole at z = 0");
  if (std::abs(1.0 - z * z) < 1e-12) throw pole_error("pole at z = +-1");
}

double max_abs(const MatC& m) { return m.cwiseAbs().maxCoeff(); }

MatC jconj(const MatC& m) {
  const int d = static_cast<int>(m.rows());
  MatC J = reversal<cplx>(d);
  return J * m * J;
}

}  // namespace

MatC m1_matrix(HalfInt ell, const QContext& qc, cplx z) {
  qc.validate();
  check_torus_pole(z);
  const double q = qc.q, w = std::pow(1 - q * q, 2);
  const int d = ell.dim(), tl = ell.two_ell;
  MatC M = MatC::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    M(i, i) = std::pow(q, 1 - i) / w * (1.0 - std::pow(q, 2 * i + 2) * z * z) / (1.0 - z * z);
    if (i < tl) M(i, i + 1) = -std::pow(q, 1 - i) * (1 - std::pow(q, 2 * i + 2)) / w * z / (1.0 - z * z);
  }
  return M;
}

MatC m_matrix(HalfInt ell, const QContext& qc, cplx z, int which) {
  check_which(which);
  MatC M = m1_matrix(ell, qc, z);
  return which == 1 ? M : jconj(M);
}

MatD lambda_matrix(HalfInt ell, int n, const QContext& qc, int which) {
  qc.validate();
  check_which(which);
  if (n < 0) throw argument_error("lambda_matrix: negative degree");
  const double q = qc.q;
  const int d = ell.dim();
  MatD L = MatD::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    int jj = which == 1 ? j : ell.two_ell - j;
    L(j, j) = (std::pow(q, -jj - n - 1) + std::pow(q, jj + n + 1)) / std::pow(1.0 / q - q, 2);
  }
  return L;
}

MatC apply_D(HalfInt ell, int which, const MatFunction& f, const QContext& qc, cplx z) {
  check_torus_pole(z);
  const double q = qc.q;
  auto mu = [](cplx w) { return 0.5 * (w + 1.0 / w); };
  auto eval = [&](cplx w) {
    return MatC(m_matrix(ell, qc, w, which) * f(mu(q * w)) + m_matrix(ell, qc, 1.0 / w, which) * f(mu(w / q)));
  };
  MatC a = eval(z), b = eval(1.0 / z);
  double scale = std::max(1.0, max_abs(a));
  if (max_abs(a - b) > 1e-9 * scale) throw consistency_error("apply_D: result is not symmetric in z <-> 1/z");
  return a;
}

RadialCoeffs radial_casimir(HalfInt ell, const QContext& qc, cplx z, int which) {
  qc.validate();
  check_which(which);
  const double q = qc.q, w = std::pow(1 - q * q, 2);
  const cplx den = 1.0 - q * q * z * z;
  if (std::abs(den) < 1e-12) throw pole_error("radial_casimir: pole at z = +-1/q");
  const int d = ell.dim(), tl = ell.two_ell;
  RadialCoeffs r;
  r.M = MatC::Zero(d, d);
  r.N = MatC::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    double m = a - tl / 2.0;
    auto b2 = [&](double mm) {
      double b = spin_b(tl, static_cast<int>(std::lround(2 * mm)), q);
      return b * b;
    };
    r.N(a, a) = std::pow(q, 3 + m) * (1.0 - z * z) / (w * den);
    r.M(a, a) = std::pow(q, 1 - m) * (1.0 - std::pow(q, 4) * z * z) / (w * den) -
                z * z * std::pow(q, 2 + m) * (b2(m) + b2(m + 1)) / (den * den);
    if (a < tl) r.M(a, a + 1) = z * std::pow(q, m + 1) * b2(m + 1) / (den * den);
    if (a > 0) r.M(a, a - 1) = z * z * z * std::pow(q, m + 3) * b2(m) / (den * den);
  }
  if (which == 2) {
    r.M = jconj(r.M);
    r.N = jconj(r.N);
  }
  return r;
}

MatC decoupled_K(HalfInt ell, const QContext& qc, cplx z, int which) {
  qc.validate();
  check_which(which);
  check_torus_pole(z);
  const double q = qc.q, c = 1.0 / std::pow(1 - q * q, 2);
  const int d = ell.dim(), tl = ell.two_ell;
  auto qp = [&](double e) { return std::pow(q, e); };
  MatC K = MatC::Zero(d, d);
  const cplx zz = 1.0 - z * z;
  for (int i = 0; i < d; ++i) {
    if (which == 1) {
      K(i, i) = qp(1 - i) * c * (1.0 - qp(2 * i + 2) * z * z) / zz;
      continue;
    }
    K(i, i) = 2 * qp(i - tl + 1) * c * (1 + qp(2 * tl + 2)) / ((1 + qp(2 * i)) * (1 + qp(2 * i + 2))) *
              (1.0 - qp(2 * i + 2) * z * z) / zz;
    if (i > 0) K(i, i - 1) = -qp(i - tl + 1) * c * (1 - qp(2 * tl - 2 * i + 2)) * z / zz;
    if (i < tl) {
      double u = 1 + qp(2 * i + 2);
      K(i, i + 1) = -qp(i - tl + 1) * c * (1 - qp(2 * tl + 2 * i + 4)) * std::pow(1 - qp(2 * i + 2), 2) /
                    ((1 - qp(4 * i + 6)) * (1 - qp(4 * i + 2)) * u * u) * (1.0 - qp(2 * i + 2) * z * z) *
                    (1.0 - qp(2 * i + 4) * z * z) / (z * zz);
    }
  }
  return K;
}

double phi0_factorization_residual(HalfInt ell, int n, int lambda, const QContext& qc) {
  MatD lhs = full_spherical(ell, n, lambda, qc);
  MatD rhs = full_spherical(ell, 0, lambda, qc);
  if (n > 0) rhs = rhs * pn_eval<double>(ell, n, qc.q, phi_scalar(lambda, qc));
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, lhs.cwiseAbs().maxCoeff());
}

InvertibilityCertificate invertibility_certificate(HalfInt ell, int lambda, const QContext& qc) {
  const double q = qc.q, Q = q * q;
  InvertibilityCertificate c;
  c.det_phi0 = full_spherical(ell, 0, lambda, qc).determinant();
  MatD a = full_spherical(ell, 0, -lambda - 1, qc), b = full_spherical(ell, 0, lambda - 1, qc);
  c.lhs = a.determinant() * b.determinant();
  double rhs = 1.0;
  for (int k = 0; k <= ell.two_ell; ++k) {
    double f = qpoch_pow(1 + lambda, Q, k) * qpoch_pow(1 - lambda, Q, k);
    if (f == 0.0) {
      rhs = 0.0;
      break;
    }
    rhs *= 4 * ldu_c<double>(ell, k, q) * f;
  }
  c.rhs = rhs;
  c.degenerate = rhs == 0.0;
  if (c.degenerate) {
    double hada = 1.0;
    for (int j = 0; j < a.cols(); ++j) hada *= a.col(j).norm() * b.col(j).norm();
    c.residual = std::abs(c.lhs) / hada;
  } else {
    c.residual = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
  }
  return c;
}

double diffeq_n1_residual(HalfInt ell, const QContext& qc, cplx z) {
  MatC lhs = full_spherical_z(ell, 0, z, -1, qc) * m1_matrix(ell, qc, 1.0 / z);
  MatC rhs = radial_casimir(ell, qc, z / qc.q, 1).N * full_spherical_z(ell, 0, z, -2, qc);
  return max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs));
}

}  // namespace qmvop
