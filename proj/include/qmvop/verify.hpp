#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmvop/types.hpp"

namespace qmvop {

// N-point Gauss-Chebyshev rule of the second kind
struct QuadratureRule {
  int N = 0;
  std::vector<double> nodes, weights;
};
QuadratureRule gauss_chebyshev2(int N);

// (2/pi) sum_k w_k P_m(x_k)^T W(x_k) P_n(x_k); N >= n + m + 2*two_ell + 2
MatD orthogonality_matrix(HalfInt ell, int n, int m, const QContext& qc, int N);

// both sides of the q-Sheppard identity
template <class T>
std::pair<T, T> sheppard_sides(const T& b, const T& c, const T& d, const T& e, int n, const T& q);

// A_n recovered from B(q^{-M}) = sum_t A_t (-1)^t (q^{-M};q)_t by repeated q-differences at M = 0
template <class T>
T qtaylor_extract(const std::vector<T>& A, int n, const T& q);

// e_s^l(k,p) and its closed form; k <= p, k + p <= 2l, 0 <= s <= p
template <class T>
std::pair<T, T> e_closed_sides(HalfInt ell, int k, int p, int s, const T& q);

// sum of alpha_r(k,p) over 2s = k + p - 2(r + a), s doubled
double alpha_sum_lhs(HalfInt ell, int k, int p, int two_s, const QContext& qc);

// (1/2pi) int w(x;q^{2k+2}|q^2)/sqrt(1-x^2) C_{m-k} C_{n-k} U_{n+m-2t} dx by N-point quadrature
template <class T>
T triple_integral(int k, int m, int n, int t, const T& q, int N);
// closed form of the same integral, zero for t > m
template <class T>
T triple_integral_closed(int k, int m, int n, int t, const T& q);

// both sides of the finite q-Racah sum, 0 <= k <= n <= m <= 2l
template <class T>
std::pair<T, T> racah_sum_sides(HalfInt ell, int m, int n, int k, const T& q);

struct CheckReport {
  std::string id;
  std::string family;
  std::map<std::string, double> params;
  double residual = 0;
  double tol = 0;
  bool pass = false;
  double runtime = 0;  // seconds
  std::string error;   // set when the check threw
};

struct SuiteConfig {
  std::vector<int> two_ells;
  std::vector<double> qs;
  int max_degree = 0;
  int lambda_min = 0, lambda_max = 0;
  int quad_nodes = 0;
  int ldu_grid = 0;     // points on [-1,1] for the LDU sweep, endpoints included
  int poly_grid = 0;    // points for polynomial comparisons
  int z_samples = 0;    // complex sample points per q-difference case
  int draws = 0;        // random draws per randomized identity
  int asym_degree = 0;
  double asym_q = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> families;  // empty selects every family
  std::map<std::string, double> tolerances;  // keyed by check id
  int threads = 0;  // 0: hardware concurrency
};

// the desk-scale grid with every tolerance filled in
SuiteConfig default_suite_config();
std::vector<std::string> suite_families();
std::vector<std::string> suite_check_ids();

// family names or the letters a..j
bool family_selected(const SuiteConfig& cfg, const std::string& family);

std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

}  // namespace qmvop
