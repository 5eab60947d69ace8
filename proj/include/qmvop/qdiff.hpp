#pragma once

#include <functional>

#include "qmvop/types.hpp"

namespace qmvop {

// curly M_1(z); which = 2 gives J M_1 J
MatC m1_matrix(HalfInt ell, const QContext& qc, cplx z);
MatC m_matrix(HalfInt ell, const QContext& qc, cplx z, int which);

// Lambda_n(1) = diag((q^{-j-n-1} + q^{j+n+1})/(q^{-1}-q)^2), Lambda_n(2) = J Lambda_n(1) J
MatD lambda_matrix(HalfInt ell, int n, const QContext& qc, int which);

using MatFunction = std::function<MatC(cplx x)>;

// M(z) f(mu(qz)) + M(1/z) f(mu(z/q)); throws if the result is not symmetric in z <-> 1/z
MatC apply_D(HalfInt ell, int which, const MatFunction& f, const QContext& qc, cplx z);

struct RadialCoeffs {
  MatC M, N;
};
// M_i(z) tridiagonal, N_i(z) diagonal, index 0..2l
RadialCoeffs radial_casimir(HalfInt ell, const QContext& qc, cplx z, int which);

// curly K_1 diagonal, curly K_2 tridiagonal
MatC decoupled_K(HalfInt ell, const QContext& qc, cplx z, int which);

// max |Phi_n(A^lambda) - Phi_0(A^lambda) P_n(mu(q^{lambda+1}))| / max(1, max |Phi_n(A^lambda)|)
double phi0_factorization_residual(HalfInt ell, int n, int lambda, const QContext& qc);

struct InvertibilityCertificate {
  double det_phi0 = 0;   // det Phi_0(A^lambda)
  double lhs = 0;        // det Phi_0(A^{-lambda-1}) det Phi_0(A^{lambda-1})
  double rhs = 0;        // prod_k 4 c_k (q^{2+2lambda}, q^{2-2lambda}; q^2)_k
  double residual = 0;   // relative, or normalised |lhs| on the degenerate band
  bool degenerate = false;
};
InvertibilityCertificate invertibility_certificate(HalfInt ell, int lambda, const QContext& qc);

// entrywise check of Phi_0(A^{lambda-1}) M_1(1/z) = N_1(z/q) Phi_0(A^{lambda-2}) as Laurent polynomials in z = q^lambda
double diffeq_n1_residual(HalfInt ell, const QContext& qc, cplx z);

}  // namespace qmvop
