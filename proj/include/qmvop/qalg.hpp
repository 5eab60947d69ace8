#pragma once

#include <utility>

#include "qmvop/types.hpp"

namespace qmvop {

// generators of U_q(su(2)) on H^l, basis e_{-l}, ..., e_{l}
struct SpinRep {
  HalfInt ell;
  MatD kh, khinv, e, f;
  MatD k() const { return kh * kh; }
  MatD kinv() const { return khinv * khinv; }
  // t^l on the coideal generators K^{1/2}, B1, B2
  MatD b1, b2;
};

// K^{1/2}, B1, B2, A on H^{l1} (x) H^{l2}, index (i+l1)(2l2+1) + (j+l2)
struct CoidealRep {
  HalfInt ell1, ell2;
  MatD K1h, K1hinv, K2h, K2hinv, E1, F1, E2, F2;
  MatD Kh, Khinv, B1, B2, A, Ainv;
  int dim() const { return static_cast<int>(Kh.rows()); }
};

struct Intertwiner {
  HalfInt ell1, ell2, ell;
  MatD beta;
  // C^{l1,l2,l}_{i,j,p}, all arguments doubled
  double cgc(int two_i, int two_j, int two_p) const;
};

// b^l(p), p doubled
double spin_b(int two_ell, int two_p, double q);

SpinRep spin_rep(HalfInt ell, const QContext& qc);
CoidealRep coideal_rep(HalfInt ell1, HalfInt ell2, const QContext& qc);

bool admissible(HalfInt ell1, HalfInt ell2, HalfInt ell);
Intertwiner branching(HalfInt ell1, HalfInt ell2, HalfInt ell, const QContext& qc);

// squared CGC for l1 = (l+m)/2, l2 = (l-m)/2, arguments doubled
double cgc_bottom_sq(HalfInt ell, int two_m, int two_i, int two_j, int two_k, const QContext& qc);
// the value for the ends (-l1, -l2, l2-l1)
double cgc_ends(HalfInt ell1, HalfInt ell2, HalfInt ell, const QContext& qc);

std::pair<HalfInt, HalfInt> xi_map(HalfInt ell, int n, int k);

// diagonal of Phi^l_{l1,l2}(A^lambda)
VecD spherical_diag(HalfInt ell, HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc);
// same as a Laurent polynomial in z = q^lambda, evaluated at A^{lambda+shift} for complex z
Vec<cplx> spherical_diag_z(HalfInt ell, HalfInt ell1, HalfInt ell2, cplx z, int shift, const QContext& qc);

MatD full_spherical(HalfInt ell, int n, int lambda, const QContext& qc);
MatC full_spherical_z(HalfInt ell, int n, cplx z, int shift, const QContext& qc);

// ((q^{-1/2-l} - q^{1/2+l})/(q^{-1} - q))^2
double casimir_scalar(HalfInt ell, const QContext& qc);
// Casimir of U_q(su(2)) on H^l
MatD spin_casimir(HalfInt ell, const QContext& qc);
MatD casimir_rep(HalfInt ell1, HalfInt ell2, const QContext& qc, int which);

// max |LHS - RHS| / max(1, max |LHS|) of the BAB decomposition of Omega_which A^lambda
double bab_residual(HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc, int which);
// same measure for F2 A^lambda written through K^{1/2}, A, B1 (lambda != 0)
double cm_residual(HalfInt ell1, HalfInt ell2, int lambda, const QContext& qc);

// d_s^l(k,p), s doubled
double weight_laurent(HalfInt ell, int k, int p, int two_s, const QContext& qc);

// mu(q^{lambda+1})
double phi_scalar(int lambda, const QContext& qc);

}  // namespace qmvop
