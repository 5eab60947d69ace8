#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmvop/qseries.hpp"

using namespace qmvop;

TEST_CASE("q-Pochhammer") {
  CHECK(qpoch(0.3, 0.5, 0) == 1.0);
  CHECK(qpoch(1.0, 0.5, 3) == 0.0);
  CHECK(qpoch(0.5, 0.5, 2) == doctest::Approx(0.375).epsilon(1e-15));
  // exact zero from the integer-exponent form
  CHECK(qpoch_pow(-2, 0.25, 3) == 0.0);
  CHECK(qpoch_pow(-2, 0.25, 2) != 0.0);
  // negative length
  const double Q = 0.49;
  CHECK(qpoch_pow(3, Q, -2) == doctest::Approx(1.0 / qpoch(Q, Q, 2)));
  CHECK(std::isinf(qpoch_pow(1, Q, -2)));
  cplx z = qpoch(cplx(0.2, 0.1), 0.5, 3);
  cplx r = (1.0 - cplx(0.2, 0.1)) * (1.0 - 0.5 * cplx(0.2, 0.1)) * (1.0 - 0.25 * cplx(0.2, 0.1));
  CHECK(std::abs(z - r) < 1e-15);
}

TEST_CASE("Gaussian binomial") {
  const double q = 0.5;
  for (int n = 0; n < 6; ++n) CHECK(qbinom(n, 0, q) == 1.0);
  double want = qfac(q, 4) / (qfac(q, 2) * qfac(q, 2));
  CHECK(qbinom(4, 2, q) == doctest::Approx(want).epsilon(1e-15));
  CHECK(qbinom(3, 5, q) == 0.0);
  CHECK(qbinom(3, -1, q) == 0.0);
  // Pascal rule
  for (int n = 1; n < 8; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(qbinom(n, k, q) == doctest::Approx(qbinom(n - 1, k - 1, q) + std::pow(q, k) * qbinom(n - 1, k, q)));
}

TEST_CASE("Chebyshev U") {
  CHECK(chebyshev_u(0, 0.3) == 1.0);
  CHECK(chebyshev_u(2, 0.0) == -1.0);
  CHECK(chebyshev_u(3, 0.4) == doctest::Approx(8 * 0.064 - 4 * 0.4));
  CHECK(chebyshev_u_ext(-1, 0.4) == 0.0);
  CHECK(chebyshev_u_ext(-3, 0.4) == doctest::Approx(-chebyshev_u(1, 0.4)));
}

TEST_CASE("continuous q-ultraspherical") {
  const double q = 0.6, beta = 0.35;
  for (double x : {-0.9, 0.0, 0.45})
    CHECK(cont_q_ultra(0, beta, q, x) == 1.0);
  CHECK(cont_q_ultra(1, beta, q, 0.45) == doctest::Approx(2 * 0.45 * (1 - beta) / (1 - q)));
  // C_3(x; q^{-1} | q) = 0 since 3 - 1 > 1
  for (double x : {-0.7, 0.2, 0.8}) CHECK(std::abs(cont_q_ultra_pow(3, -1, q, x)) < 1e-14);
  // beta = q gives U_n
  for (double qq : {0.3, 0.5, 0.8})
    for (int n = 0; n < 7; ++n)
      for (double x : {-0.9, 0.1, 0.6})
        CHECK(cont_q_ultra(n, qq, qq, x) == doctest::Approx(chebyshev_u(n, x)).epsilon(1e-12));
  // generic beta agrees with the integer-exponent form
  const double Q = q * q;
  for (int n = 0; n < 6; ++n)
    CHECK(cont_q_ultra(n, Q * Q * Q, Q, 0.3) == doctest::Approx(cont_q_ultra_pow(n, 3, Q, 0.3)).epsilon(1e-12));
  // torus evaluation
  QContext qc(q);
  TorusPoint p = TorusPoint::from_x(0.3);
  CHECK(cont_q_ultra(4, beta, qc, p).real() == doctest::Approx(cont_q_ultra(4, beta, q, 0.3)).epsilon(1e-12));
  CHECK(std::abs(cont_q_ultra_pow(4, 3, Q, p.z) - cont_q_ultra_pow(4, 3, Q, 0.3)) < 1e-12);
}

TEST_CASE("q-ultraspherical weight") {
  for (double x : {-0.5, 0.0, 0.7}) CHECK(ultra_weight(0, 0.5, x) == doctest::Approx(4 * (1 - x * x)));
  for (int k = 0; k < 4; ++k) {
    CHECK(ultra_weight(k, 0.5, 1.0) == 0.0);
    CHECK(ultra_weight(k, 0.5, -1.0) == 0.0);
  }
  CHECK(ultra_weight(1, 0.5, 0.0) == doctest::Approx(6.25));
  CHECK(ultra_weight(2, 0.3, 0.4) == doctest::Approx((1 - 0.16) * ultra_weight_reduced(2, 0.3, 0.4)));
}

TEST_CASE("q-Racah") {
  const double q = 0.5, Q = q * q;
  CHECK(q_racah(0, std::pow(q, -4), 0.2, 0.1, 0.4, q, 2) == 1.0);
  CHECK_THROWS_AS(q_racah(2, 0.3, 0.2, 0.1, 0.4, q, 2), argument_error);
  for (int n = 0; n < 4; ++n) CHECK(q_racah_pow(n, 1, 1, -2 * n - 4, -5, Q, 0) == doctest::Approx(1.0));
  // two-term sum at n = 1: 1 + (Q^{-1}, a b Q^2, Q^{-j}, Q^{j} g d Q; Q)_1 / (Q, a Q, b d Q, g Q; Q)_1 Q
  const double a = 1, b = 1, g = std::pow(Q, -6), d = std::pow(Q, -3);
  const int j = 1;
  double num = (1 - 1 / Q) * (1 - a * b * Q * Q) * (1 - std::pow(Q, -j)) * (1 - std::pow(Q, j) * g * d * Q);
  double den = (1 - Q) * (1 - a * Q) * (1 - b * d * Q) * (1 - g * Q);
  CHECK(q_racah_pow(1, 0, 0, -6, -3, Q, j) == doctest::Approx(1 + num / den * Q).epsilon(1e-13));
  CHECK(q_racah(1, a, b, g, d, Q, j) == doctest::Approx(1 + num / den * Q).epsilon(1e-12));
}

TEST_CASE("extended precision agrees with double") {
  const ext_real q("0.5"), x("0.3");
  CHECK(to_double(cont_q_ultra_pow<ext_real>(5, 2, q * q, x)) ==
        doctest::Approx(cont_q_ultra_pow(5, 2, 0.25, 0.3)).epsilon(1e-14));
  CHECK(to_double(qbinom<ext_real>(6, 3, q)) == doctest::Approx(qbinom(6, 3, 0.5)).epsilon(1e-15));
}
