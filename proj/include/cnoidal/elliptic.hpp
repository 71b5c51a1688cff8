#pragma once

// Complete elliptic integrals and Jacobi elliptic functions.
//
// Everything here is parameterized by the SQUARED modulus m = k^2, i.e.
// cn(u, m) below is cn(u; k^2) in the usual semicolon notation.  Passing the
// un-squared modulus k is the classic convention bug; don't.

namespace cnoidal {

// Jacobi function values at a given argument and squared modulus.
struct EllipticValues {
    double K;   // quarter period K(m)
    double sn;
    double cn;
    double dn;
};

// Complete elliptic integral of the first kind,
//   K(m) = int_0^{pi/2} ds / sqrt(1 - m sin^2 s),
// by the arithmetic-geometric mean.  Requires 0 <= m < 1; K diverges as
// m -> 1.
double complete_K(double m);

// sn, cn, dn at argument u for 0 <= m <= 1, via the descending Landen
// transformation with backward recurrence.  m = 0 and m = 1 use the
// trigonometric/hyperbolic closed forms.
EllipticValues jacobi_sn_cn_dn(double u, double m);

// Incomplete elliptic integral of the first kind,
//   I(psi; m) = int_0^psi ds / sqrt(1 - m sin^2 s),
// by adaptive Gauss-Kronrod quadrature.  Independent of the Landen machinery
// above, so it can serve as a cross-check: I(arcsin(sn(u)), m) = u on [0, K].
double invert_elliptic_integral(double psi, double m);

} // namespace cnoidal
