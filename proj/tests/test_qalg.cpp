#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmvop/mvop.hpp"
#include "qmvop/qalg.hpp"
#include "qmvop/qdiff.hpp"
#include "qmvop/qseries.hpp"
#include "qmvop/verify.hpp"

using namespace qmvop;

namespace {
double maxabs(const MatD& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
}  // namespace

TEST_CASE("spin representation") {
  QContext qc(0.5);
  SpinRep r0 = spin_rep(HalfInt(0), qc);
  CHECK(r0.kh(0, 0) == 1.0);
  CHECK(r0.e(0, 0) == 0.0);
  CHECK(r0.f(0, 0) == 0.0);

  SpinRep r1 = spin_rep(HalfInt(1), qc);
  CHECK(r1.kh(0, 0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(r1.kh(1, 1) == doctest::Approx(1 / std::sqrt(0.5)));
  CHECK(r1.kh(0, 1) == 0.0);

  SpinRep r = spin_rep(HalfInt(2), qc);
  const double q = 0.5;
  MatD k = r.k(), ki = r.kinv();
  CHECK(maxabs(r.e * r.f - r.f * r.e - (k - ki) / (q - 1 / q)) <= 1e-12);
  CHECK(maxabs(k * r.e - q * q * r.e * k) <= 1e-12);
  CHECK(maxabs(spin_casimir(HalfInt(2), qc) - casimir_scalar(HalfInt(2), qc) * MatD::Identity(3, 3)) <= 1e-12);
  CHECK_THROWS_AS(spin_rep(HalfInt(-1), qc), argument_error);
}

TEST_CASE("coideal generators") {
  QContext qc(0.5);
  CoidealRep c0 = coideal_rep(HalfInt(0), HalfInt(0), qc);
  CHECK(c0.B1(0, 0) == 0.0);
  CHECK(c0.B2(0, 0) == 0.0);
  CHECK(c0.Kh(0, 0) == 1.0);
  CHECK(c0.A(0, 0) == doctest::Approx(1.0));

  CoidealRep c = coideal_rep(HalfInt(1), HalfInt(1), qc);
  MatD K = c.Kh * c.Kh, Ki = c.Khinv * c.Khinv;
  CHECK(maxabs(c.B1 * c.B2 - c.B2 * c.B1 - (K - Ki) / (0.5 - 2.0)) <= 1e-12);

  CoidealRep c2 = coideal_rep(HalfInt(2), HalfInt(1), qc);
  CHECK(maxabs(MatD(c2.B2 - c2.B1.transpose())) <= 1e-15);
}

TEST_CASE("branching and Clebsch-Gordan values") {
  for (double q : {0.3, 0.5, 0.8}) {
    QContext qc(q);
    Intertwiner I = branching(HalfInt(1), HalfInt(1), HalfInt(0), qc);
    CHECK(I.cgc(1, 1, 0) == doctest::Approx(-1 / std::sqrt(1 + q * q)).epsilon(1e-12));
    CHECK(I.cgc(-1, -1, 0) == doctest::Approx(q / std::sqrt(1 + q * q)).epsilon(1e-12));
    for (int t1 = 0; t1 <= 4; ++t1)
      for (int t2 = 0; t2 <= 4; ++t2)
        for (int tl = std::abs(t1 - t2); tl <= t1 + t2; tl += 2) {
          Intertwiner J = branching(HalfInt(t1), HalfInt(t2), HalfInt(tl), qc);
          CHECK(J.cgc(-t1, -t2, t2 - t1) ==
                doctest::Approx(cgc_ends(HalfInt(t1), HalfInt(t2), HalfInt(tl), qc)).epsilon(1e-12));
          CHECK(maxabs(MatD(J.beta.transpose() * J.beta) - MatD::Identity(tl + 1, tl + 1)) <= 1e-11);
        }
  }
  CHECK_THROWS_AS(branching(HalfInt(1), HalfInt(1), HalfInt(1), QContext(0.5)), argument_error);
}

TEST_CASE("bottom stratum squares") {
  QContext qc(0.5);
  for (int tl = 0; tl <= 6; ++tl)
    for (int tm = -tl; tm <= tl; tm += 2) {
      const int t1 = (tl + tm) / 2, t2 = (tl - tm) / 2;
      Intertwiner I = branching(HalfInt(t1), HalfInt(t2), HalfInt(tl), qc);
      for (int ti = -t1; ti <= t1; ti += 2)
        for (int tj = -t2; tj <= t2; tj += 2) {
          const int tk = ti - tj;
          if (std::abs(tk) > tl) continue;
          double c = I.cgc(ti, tj, tk);
          CHECK(cgc_bottom_sq(HalfInt(tl), tm, ti, tj, tk, qc) == doctest::Approx(c * c).epsilon(1e-11));
        }
      CHECK(cgc_bottom_sq(HalfInt(tl), tm, -t1 - 2, 0, 0, qc) == 0.0);
    }
  // l1 = l2 = l, coupled to 0, lowest weights
  for (int tl = 1; tl <= 4; ++tl) {
    const double q = qc.q;
    Intertwiner I = branching(HalfInt(tl), HalfInt(tl), HalfInt(0), qc);
    double c = I.cgc(-tl, -tl, 0);
    CHECK(c * c == doctest::Approx(std::pow(q, 2 * tl) * (1 - q * q) / (1 - std::pow(q, 2 * tl + 2))).epsilon(1e-12));
  }
}

TEST_CASE("xi reparametrisation") {
  auto [a, b] = xi_map(HalfInt(0), 0, 0);
  CHECK(a.two_ell == 0);
  CHECK(b.two_ell == 0);
  for (int n = 0; n < 6; ++n) {
    auto [c, d] = xi_map(HalfInt(0), n, 0);
    CHECK(c.two_ell == n);
    CHECK(d.two_ell == n);
  }
  auto [e, f] = xi_map(HalfInt(2), 2, 1);
  CHECK(e.two_ell == 3);
  CHECK(f.two_ell == 3);
}

TEST_CASE("spherical functions") {
  for (double q : {0.3, 0.5, 0.8}) {
    QContext qc(q);
    VecD one = spherical_diag(HalfInt(3), HalfInt(2), HalfInt(1), 0, qc);
    CHECK(maxabs(one - VecD::Ones(4)) <= 1e-12);
    for (int n = 0; n < 6; ++n)
      for (int lam = -3; lam <= 4; ++lam) {
        double v = spherical_diag(HalfInt(0), HalfInt(n), HalfInt(n), lam, qc)(0);
        double want = std::pow(q, n) * (1 - q * q) / (1 - std::pow(q, 2 * n + 2)) *
                      chebyshev_u(n, phi_scalar(lam, qc));
        CHECK(v == doctest::Approx(want).epsilon(1e-11));
      }
  }
  // against the Clebsch-Gordan squared sum
  QContext qc(0.5);
  HalfInt ell(1);
  auto [l1, l2] = xi_map(ell, 0, 1);
  Intertwiner I = branching(l1, l2, ell, qc);
  const int lam = 2;
  VecD v = spherical_diag(ell, l1, l2, lam, qc);
  for (int tp = -1; tp <= 1; tp += 2) {
    double s = 0;
    for (int ti = -l1.two_ell; ti <= l1.two_ell; ti += 2)
      for (int tj = -l2.two_ell; tj <= l2.two_ell; tj += 2) {
        double c = I.cgc(ti, tj, tp);
        s += c * c * std::pow(0.5, -lam * (ti + tj) / 2.0);
      }
    CHECK(v((tp + 1) / 2) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("full spherical functions") {
  QContext qc(0.5);
  for (int lam = -2; lam <= 3; ++lam)
    CHECK(full_spherical(HalfInt(0), 3, lam, qc)(0, 0) ==
          doctest::Approx(spherical_diag(HalfInt(0), HalfInt(3), HalfInt(3), lam, qc)(0)));
  MatD P = full_spherical(HalfInt(3), 0, 0, qc);
  CHECK(maxabs(P - MatD::Ones(4, 4)) <= 1e-12);
  CHECK(phi0_factorization_residual(HalfInt(2), 1, 3, qc) <= 1e-10);
  MatD J = reversal<double>(5), F = full_spherical(HalfInt(4), 2, 2, qc);
  CHECK(maxabs(MatD(J * F * J - F)) <= 1e-10 * maxabs(F));
}

TEST_CASE("Casimir elements") {
  QContext qc(0.5);
  const double q = 0.5, s = std::pow((1 / std::sqrt(q) - std::sqrt(q)) / (1 / q - q), 2);
  CHECK(casimir_scalar(HalfInt(0), qc) == doctest::Approx(s));
  CHECK(casimir_rep(HalfInt(0), HalfInt(0), qc, 1)(0, 0) == doctest::Approx(s));
  CHECK(casimir_rep(HalfInt(0), HalfInt(0), qc, 2)(0, 0) == doctest::Approx(s));
  MatD O = casimir_rep(HalfInt(1), HalfInt(1), qc, 1);
  CHECK(maxabs(O - casimir_scalar(HalfInt(1), qc) * MatD::Identity(4, 4)) <= 1e-12);
  CoidealRep c = coideal_rep(HalfInt(1), HalfInt(1), qc);
  CHECK(maxabs(O * c.B1 - c.B1 * O) <= 1e-12);
}

TEST_CASE("BAB decomposition") {
  CHECK(bab_residual(HalfInt(1), HalfInt(1), 0, QContext(0.5), 1) <= 1e-10);
  CHECK(bab_residual(HalfInt(2), HalfInt(2), 2, QContext(0.8), 2) <= 1e-9);
  CHECK_THROWS_AS(bab_residual(HalfInt(1), HalfInt(1), -1, QContext(0.5), 1), argument_error);
  CHECK(cm_residual(HalfInt(2), HalfInt(1), 3, QContext(0.5)) <= 1e-9);
}

TEST_CASE("Laurent coefficients of the weight") {
  for (double q : {0.3, 0.5}) {
    QContext qc(q);
    CHECK(weight_laurent(HalfInt(0), 0, 0, 0, qc) == doctest::Approx(1.0));
    for (int tl = 0; tl <= 4; ++tl)
      for (int k = 0; k <= tl; ++k)
        for (int p = 0; p <= tl; ++p)
          for (int ts = -(k + p); ts <= k + p; ts += 2) {
            CHECK(weight_laurent(HalfInt(tl), k, p, ts, qc) ==
                  doctest::Approx(weight_laurent(HalfInt(tl), k, p, -ts, qc)).epsilon(1e-12));
            if (k <= p)
              CHECK(weight_laurent(HalfInt(tl), k, p, ts, qc) ==
                    doctest::Approx(alpha_sum_lhs(HalfInt(tl), k, p, ts, qc)).epsilon(1e-10));
          }
  }
}

TEST_CASE("phi scalar") {
  QContext qc(0.3);
  CHECK(phi_scalar(-1, qc) == 1.0);
  CHECK(phi_scalar(0, qc) == doctest::Approx((0.3 + 1 / 0.3) / 2));
  CHECK(phi_scalar(-2, qc) == doctest::Approx(phi_scalar(0, qc)));
}
