#pragma once

#include "qmvop/types.hpp"

namespace qmvop {

// (a;q)_n
template <class T>
T qpoch(const T& a, const T& q, int n);
cplx qpoch(cplx a, double q, int n);

// (Q^e;Q)_n with the factor for e+k == 0 returned as an exact zero.
// Negative n follows (a;Q)_{-k} = 1/(aQ^{-k};Q)_k.
template <class T>
T qpoch_pow(long e, const T& Q, int n);

// (Q;Q)_n
template <class T>
T qfac(const T& Q, int n);

// Gaussian binomial in base q, zero outside 0 <= k <= n
template <class T>
T qbinom(int n, int k, const T& q);

// U_n(x) by the three-term recurrence
template <class T>
T chebyshev_u(int n, const T& x);

// U_n extended to negative n: U_{-1} = 0, U_{-k} = -U_{k-2}
template <class T>
T chebyshev_u_ext(int n, const T& x);

// C_n(x; Q^e | Q) at real x
template <class T>
T cont_q_ultra_pow(int n, long e, const T& Q, const T& x);

// C_n(x; Q^e | Q) at x = mu(z) for complex z
cplx cont_q_ultra_pow(int n, long e, double Q, cplx z);

// C_n(x; beta | q) at real x, generic real beta
template <class T>
T cont_q_ultra(int n, const T& beta, const T& q, const T& x);

// C_n(mu(z); beta | q) with q = qc.q. On |z| = 1 the imaginary part must
// vanish to qc.tol_abs and the real part is returned.
cplx cont_q_ultra(int n, double beta, const QContext& qc, const TorusPoint& p);

// w(x; q^{2k+2} | q^2) = 4(1-x^2) prod_{j=1..k} (1 - 2(2x^2-1)q^{2j} + q^{4j})
template <class T>
T ultra_weight(int k, const T& q, const T& x);
double ultra_weight(int k, const QContext& qc, double x);

// w(x; q^{2k+2} | q^2)/(1-x^2), the polynomial part, valid for every x
template <class T>
T ultra_weight_reduced(int k, const T& q, const T& x);

// terminating balanced 4phi3 R_n(mu(j); alpha, beta, gamma, delta; q)
template <class T>
T q_racah(int n, const T& alpha, const T& beta, const T& gamma, const T& delta, const T& q, int j);

// same with alpha = Q^ea, beta = Q^eb, gamma = Q^ec, delta = Q^ed; zeros are exact
template <class T>
T q_racah_pow(int n, long ea, long eb, long ec, long ed, const T& Q, int j);

}  // namespace qmvop
