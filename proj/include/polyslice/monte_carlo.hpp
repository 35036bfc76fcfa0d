#pragma once

#include <cstdint>

#include "polyslice/quadrature.hpp"

namespace polyslice {

// Rao-Blackwellized Monte Carlo for A_n(a) = E |sum_k a_k xi_k|^-2 with
// xi_k uniform on S^3: the leading sphere vector is integrated out through
// the min-identity, leaving
//     min{ a_1^-2, |sum_{k>=2} a_k xi_k|^-2 }
// per sample (convention |0|^-2 = +inf).  Every sample lies in (0, a_1^-2],
// so the variance is finite and the reported standard error is honest; the
// naive |sum a_k xi_k|^-2 estimator has a heavy upper tail.
// Deterministic given (a, num_samples, seed); sample i draws from a stream
// derived from (seed, i), independent of evaluation order.
VolumeEstimate volume_monte_carlo(const Direction& a, long num_samples, uint64_t seed);

namespace detail {
// Single Rao-Blackwellized sample (exposed for the boundedness tests).
double rb_estimator_sample(const Direction& a, uint64_t seed, uint64_t index);
}  // namespace detail

}  // namespace polyslice
