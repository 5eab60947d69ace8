#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qmvop/mvop.hpp"
#include "qmvop/qseries.hpp"
#include "qmvop/verify.hpp"

using namespace qmvop;

namespace {

double maxabs(const MatD& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

SuiteConfig small_config() {
  SuiteConfig c = default_suite_config();
  c.two_ells = {0, 1, 2};
  c.qs = {0.5};
  c.max_degree = 3;
  c.lambda_min = -2;
  c.lambda_max = 3;
  c.draws = 5;
  c.asym_degree = 30;
  return c;
}

}  // namespace

TEST_CASE("Gauss-Chebyshev rule") {
  const double pi = std::acos(-1.0);
  QuadratureRule r1 = gauss_chebyshev2(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(pi / 2));
  QuadratureRule r = gauss_chebyshev2(64);
  double s = 0;
  for (double w : r.weights) s += w;
  CHECK(std::abs(s - pi / 2) <= 1e-14);
  QuadratureRule r8 = gauss_chebyshev2(8);
  for (int n = 0; n <= 15; ++n)
    for (int m = 0; n + m <= 15; ++m) {
      double v = 0;
      for (int k = 0; k < r8.N; ++k) v += r8.weights[k] * chebyshev_u(n, r8.nodes[k]) * chebyshev_u(m, r8.nodes[k]);
      CHECK(2 / pi * v == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
    }
  CHECK_THROWS_AS(gauss_chebyshev2(0), argument_error);
}

TEST_CASE("orthogonality matrix") {
  QContext qc(0.5);
  CHECK(orthogonality_matrix(HalfInt(0), 0, 0, qc, 8)(0, 0) == doctest::Approx(1.0));
  CHECK(maxabs(orthogonality_matrix(HalfInt(2), 3, 3, qc, 64) - norm_G<double>(HalfInt(2), 3, 0.5)) <= 1e-9);
  CHECK(maxabs(orthogonality_matrix(HalfInt(2), 2, 5, qc, 64)) <= 1e-9);
  CHECK_THROWS_AS(orthogonality_matrix(HalfInt(2), 2, 5, qc, 5), argument_error);
  QContext qe(0.5, Precision::extended);
  CHECK(maxabs(orthogonality_matrix(HalfInt(2), 3, 3, qe, 64) - norm_G<double>(HalfInt(2), 3, 0.5)) <= 1e-12);
}

TEST_CASE("q-Sheppard") {
  auto [l, r] = sheppard_sides<double>(0.3, 0.7, 1.3, 0.4, 5, 0.5);
  CHECK(std::abs(l - r) <= 1e-11 * std::max(std::abs(l), std::abs(r)));
  auto [le, re] = sheppard_sides<ext_real>(ext_real("0.3"), ext_real("0.7"), ext_real("1.3"), ext_real("0.4"), 5,
                                           ext_real("0.5"));
  CHECK(to_double(abs(le - re)) <= 1e-40);
}

TEST_CASE("q-Taylor extraction") {
  const std::vector<double> A{0.7, -1.2, 0.4, 2.5, -0.3};
  for (double q : {0.3, 0.5, 0.8})
    for (int n = 0; n < 5; ++n) CHECK(qtaylor_extract<double>(A, n, q) == doctest::Approx(A[n]).epsilon(1e-10));
}

TEST_CASE("e_s closed form") {
  for (int tl = 0; tl <= 4; ++tl)
    for (int k = 0; k <= tl; ++k)
      for (int p = k; k + p <= tl; ++p)
        for (int s = 0; s <= p; ++s) {
          auto [l, r] = e_closed_sides<double>(HalfInt(tl), k, p, s, 0.5);
          CHECK(l == doctest::Approx(r).epsilon(1e-10).scale(1.0));
        }
}

TEST_CASE("integral of three q-ultraspherical polynomials") {
  for (int k = 0; k <= 2; ++k)
    for (int m = k; m <= 4; ++m)
      for (int n = m; n <= 4; ++n)
        for (int t = 0; 2 * t <= m + n; ++t) {
          double I = triple_integral<double>(k, m, n, t, 0.5, 40);
          if (t > m)
            CHECK(std::abs(I) <= 1e-12);
          else
            CHECK(I == doctest::Approx(triple_integral_closed<double>(k, m, n, t, 0.5)).epsilon(1e-10).scale(1.0));
        }
  CHECK(triple_integral<double>(0, 0, 0, 0, 0.5, 8) == doctest::Approx(1.0));
}

TEST_CASE("finite q-Racah sum") {
  for (int tl = 0; tl <= 4; ++tl)
    for (int m = 0; m <= tl; ++m)
      for (int n = 0; n <= m; ++n)
        for (int k = 0; k <= n; ++k) {
          auto [l, r] = racah_sum_sides<double>(HalfInt(tl), m, n, k, 0.5);
          CHECK(l == doctest::Approx(r).epsilon(1e-10).scale(1.0));
        }
}

TEST_CASE("suite configuration") {
  SuiteConfig c = small_config();
  c.tolerances.erase("ldu.inverse");
  CHECK_THROWS_AS(run_suite(c), argument_error);
  c.families = {"sheppard"};
  CHECK_NOTHROW(run_suite(c));

  const auto all = suite_check_ids();
  std::set<std::string> ids(all.begin(), all.end());
  for (const auto& [k, v] : default_suite_config().tolerances) CHECK(ids.count(k) == 1);
  CHECK(ids.size() == default_suite_config().tolerances.size());

  SuiteConfig f = small_config();
  f.families = {"c"};
  CHECK(family_selected(f, "ldu"));
  CHECK_FALSE(family_selected(f, "qalg"));
}

TEST_CASE("small suite run") {
  SuiteConfig c = small_config();
  std::vector<CheckReport> a = run_suite(c);
  c.threads = 1;
  std::vector<CheckReport> b = run_suite(c);
  REQUIRE(a.size() == b.size());
  REQUIRE(!a.empty());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].params == b[i].params);
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].pass == (a[i].residual <= a[i].tol));
    CHECK(a[i].residual >= 0);
    CHECK(a[i].pass);
    if (a[i].id == "aux.sheppard") CHECK(a[i].params.at("seed") == static_cast<double>(c.seed));
    if (i) CHECK(a[i - 1].id <= a[i].id);
  }
  c.families = {"ldu"};
  c.tolerances["ldu.inverse"] = 1e-30;
  bool any_fail = false;
  for (const auto& r : run_suite(c)) {
    CHECK(r.family == "ldu");
    any_fail |= !r.pass;
  }
  CHECK(any_fail);
}
