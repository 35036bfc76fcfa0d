#include "polyslice/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

#include "polyslice/rng.hpp"

namespace polyslice {

namespace {

constexpr uint32_t kPurposeXi = 0;

double sample_value(const Direction& a, uint64_t seed, uint64_t index)
{
    const double a1 = a[0];
    const double cap = 1.0 / (a1 * a1);
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const int m = a.nonzero_count();
    for (int k = 1; k < m; ++k) {
        // 2^16 sub-blocks per weight leaves room for zero-norm redraws.
        rng::Stream st{seed, index, kPurposeXi, static_cast<uint64_t>(k) * 65536};
        const auto xi = st.next_s3();
        for (int i = 0; i < 4; ++i) s[i] += a[k] * xi[i];
    }
    const double n2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
    if (n2 == 0.0) return cap;  // |0|^-2 = +inf, min picks the cap
    return std::min(cap, 1.0 / n2);
}

}  // namespace

namespace detail {

double rb_estimator_sample(const Direction& a, uint64_t seed, uint64_t index)
{
    return sample_value(a, seed, index);
}

}  // namespace detail

VolumeEstimate volume_monte_carlo(const Direction& a, long num_samples, uint64_t seed)
{
    if (num_samples < 1) throw std::invalid_argument("volume_monte_carlo: num_samples must be >= 1");
    // Welford in fixed sample order keeps the result bit-reproducible.
    double mean = 0.0, m2 = 0.0;
    for (long i = 0; i < num_samples; ++i) {
        const double x = sample_value(a, seed, static_cast<uint64_t>(i));
        const double d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (x - mean);
    }
    double stderr_mean = 0.0;
    if (num_samples > 1)
        stderr_mean = std::sqrt(m2 / (static_cast<double>(num_samples) *
                                      static_cast<double>(num_samples - 1)));
    return {mean, Method::monte_carlo, stderr_mean, num_samples};
}

}  // namespace polyslice
