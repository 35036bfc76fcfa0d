#pragma once

#include <vector>

namespace polyslice::bessel {

// Bessel functions of the first kind, order 0 and 1, for real arguments.
// Power series (double-double accumulation) below the switch point,
// Hankel asymptotic expansion above it.  Amplitude-relative accuracy is
// ~1e-14 over [0, 1e4]; validated against boost::math in the tests.
double j0(double x);
double j1(double x);

// kernel(u) = 2 J1(u)/u with the removable singularity filled: kernel(0) = 1.
// |kernel(u)| <= 1 for all u >= 0.
double kernel(double u);

// kernel(u) - 1 evaluated without cancellation for small u (series form).
double kernel_minus_one(double u);

// First m positive zeros of J1, strictly increasing, each to ~1e-12.
std::vector<double> j1_zeros(int m);

// m-th positive zero of J1 (1-based).  Refined table for small m,
// McMahon expansion beyond (already below 1e-12 error there).
double j1_zero(int m);

// Envelope: |kernel(u)| <= min(1, c_env * u^-3/2) for all u > 0.
// c_env must exceed the asymptotic amplitude 2*sqrt(2/pi) ~ 1.5958; the
// first lobe of |kernel|*u^(3/2) peaks at 1.65006 near u = 2.166, so 1.6
// is too small and 1.66 clears the whole range (validated on a dense grid
// in the tests).
inline constexpr double kEnvelopeConstant = 1.66;
// Where c_env * u^-3/2 crosses 1, i.e. c_env^(2/3).
inline constexpr double kEnvelopeSwitch = 1.40228820298090966;
double tail_envelope(double u);

// Truncated Hankel form of the kernel used by the semi-analytic tail
// integrator:
//   khat(x) = (2/sqrt(pi)) x^-3/2 [ (Q-P) cos x + (P+Q) sin x ]
// with P = 1 + p2/x^2 + p4/x^4 and Q = q1/x + q3/x^3 + q5/x^5.
// |kernel(x) - khat(x)| <= kHankelRemainder * x^-15/2 for x >= kHankelXMin
// (validated on a dense grid in the tests; the true constant is ~1.08).
inline constexpr double kHankelP2 = 15.0 / 128.0;
inline constexpr double kHankelP4 = -14175.0 / 98304.0;
inline constexpr double kHankelQ1 = 3.0 / 8.0;
inline constexpr double kHankelQ3 = -105.0 / 1024.0;
inline constexpr double kHankelQ5 = 1091475.0 / 3932160.0;
inline constexpr double kHankelRemainder = 1.2;
inline constexpr double kHankelXMin = 6.0;
double kernel_hankel(double x);

}  // namespace polyslice::bessel
