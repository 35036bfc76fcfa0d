#pragma once

#include <complex>
#include <span>

namespace polyslice::tail {

// W_p(z) = int_z^inf u^-p e^{iu} du for p > 1, z > 0.
// Three regimes: integration-by-parts asymptotics for large z, Taylor
// series of e^{iu} below u = 1, Gauss panels in between.
std::complex<double> osc_integral(double p, double z);

// int_T^inf t^-p e^{i nu t} dt for nu >= 0, p > 1, T > 0.
std::complex<double> power_osc_tail(double p, double nu, double T);

struct TailEstimate {
    double value = 0.0;  // semi-analytic value of the tail integral
    double bound = 0.0;  // bound on its error (truncated Hankel remainder)
};

// int_T^inf (1/2) t prod_j kernel(w_j t) dt evaluated from the truncated
// Hankel form of each factor.  The product of m oscillating factors splits
// into 2^(m-1) sum/difference frequencies sum_j (+-w_j); each carries a
// polynomial in 1/t whose terms integrate exactly via power_osc_tail.
// Requires w.back() * T >= bessel::kHankelXMin and 2 <= m <= 8.
TailEstimate bessel_product_tail(std::span<const double> w, double T);
TailEstimate bessel_pair_tail(double a1, double a2, double T);

// Smallest truncation point at which the Hankel remainder bound drops below
// half_tol (also enforces the kHankelXMin validity floor).  Returns +inf
// when the analytic tail is unavailable for these weights (m > 8, or a
// weight so small that the coefficient products would overflow).
double product_tail_min_T(std::span<const double> w, double half_tol);

}  // namespace polyslice::tail
