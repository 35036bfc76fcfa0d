#include "polyslice/bounds.hpp"

#include <cmath>
#include <limits>

#include "polyslice/errors.hpp"

namespace polyslice::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt38 = 0.61237243569579452455;  // sqrt(3/8)
constexpr double kA2Small = 6e-5;
constexpr double kA2CapL10 = (1.0 - 1e-5) * kInvSqrt2;
constexpr double kA2CapL12 = (1.0 - 1e-4) * kInvSqrt2;

void require_n2(const Direction& a, const char* who)
{
    if (a.n() < 2) throw DimensionMismatchError(std::string(who) + ": need n >= 2");
}

}  // namespace

std::string to_string(Region r)
{
    switch (r) {
        case Region::L7: return "L7";
        case Region::L8: return "L8";
        case Region::L9: return "L9";
        case Region::L10: return "L10";
        case Region::C11: return "C11";
        case Region::L12: return "L12";
        case Region::L13: return "L13";
    }
    return "?";
}

double RegionAssignment::min_bound() const
{
    double m = kInf;
    for (const auto& [r, b] : bounds) m = std::min(m, b);
    return m;
}

double delta(const Direction& a)
{
    require_n2(a, "delta");
    return 2.0 - std::sqrt(2.0) * (a.a1() + a.a2());
}

double l4_norm4(const Direction& a)
{
    double s = 0.0;
    for (double w : a.weights()) s += w * w * w * w;
    return s;
}

double theorem1_upper(const Direction& a)
{
    require_n2(a, "theorem1_upper");
    const double dist = std::sqrt(std::max(0.0, delta(a)));
    return 2.0 - std::min(1e-40 * dist, l4_norm4(a) / 76.0);
}

double lower_stability(const Direction& a)
{
    // |a - e1|^2 = 2 - 2 a1
    return 1.0 + (2.0 - 2.0 * a.a1()) / 4.0;
}

double fourier_product_upper(const Direction& a, const QuadratureConfig& psi_cfg)
{
    double log_prod = std::log(2.0);
    std::map<double, PsiValue> memo;
    for (int k = 0; k < a.nonzero_count(); ++k) {
        const double ak2 = a[k] * a[k];
        const double s = 1.0 / ak2;
        if (s <= 4.0 / 3.0 || s < 1.4) return kInf;
        auto it = memo.find(s);
        if (it == memo.end()) {
            try {
                it = memo.emplace(s, psi(s, psi_cfg)).first;
            } catch (const TolNotReachedError&) {
                return kInf;  // +inf is always a valid upper bound
            }
        }
        log_prod += ak2 * std::log(it->second.value + it->second.error);
    }
    return std::exp(log_prod);
}

double gaussian_comparison(double a1)
{
    if (!(a1 > 0.0) || !(a1 < 1.0)) throw DomainError("gaussian_comparison: need 0 < a1 < 1");
    const double q = a1 * a1;
    return (1.0 - std::exp(-2.0 * q / (1.0 - q))) / q;
}

double berry_esseen_upper(double a1, double a2)
{
    if (!(a1 > 0.0) || !(a1 < 1.0)) throw DomainError("berry_esseen_upper: need 0 < a1 < 1");
    const double q = a1 * a1;
    const double raic = 42.0 * std::sqrt(2.0) + 16.0;  // (42 d^(1/4) + 16) at d = 4
    return gaussian_comparison(a1) + 8.0 * raic * a2 / (q * std::sqrt(1.0 - q));
}

double berry_esseen_upper(const Direction& a)
{
    require_n2(a, "berry_esseen_upper");
    return berry_esseen_upper(a.a1(), a.a2());
}

RegionAssignment classify_region(const Direction& a)
{
    require_n2(a, "classify_region");
    RegionAssignment out;
    const double a1 = a.a1(), a2 = a.a2();
    const double d = delta(a);
    out.delta = d;
    if (d <= 1.0 / 5000.0)
        out.bounds[Region::L7] = 2.0 - std::sqrt(std::max(0.0, d)) / 25.0;
    if (a1 <= kSqrt38)
        out.bounds[Region::L8] = 2.0 * std::exp(-l4_norm4(a) / 151.0);
    if (a1 >= kSqrt38 && a1 <= kInvSqrt2) {
        if (a2 <= kA2Small) out.bounds[Region::L9] = 2.0 - 1e-5;
        if (a2 >= kA2Small && a2 <= kA2CapL10) out.bounds[Region::L10] = 2.0 - 1e-19;
        if (a2 <= kA2CapL10) out.bounds[Region::C11] = 2.0 - 1e-19;
    }
    if (a1 > kInvSqrt2) {
        // L12's strip (1/sqrt2, 1/sqrt2 + 6e-41] holds no representable
        // double above 1/sqrt2, but a1 rounded *onto* 1/sqrt2 + one ulp may
        // stand for a point of either strip; report both bounds and let the
        // verifier take the minimum.
        if (a2 <= kA2CapL12) out.bounds[Region::L12] = 2.0 - 1e-20;
        out.bounds[Region::L13] = 2.0 - 12.0 * std::sqrt(2.0) * 1e-41;
    }
    return out;
}

StabilityBounds stability_bounds(const Direction& a, const QuadratureConfig& psi_cfg)
{
    StabilityBounds out;
    out.upper_thm1 = theorem1_upper(a);
    out.lower_stab = lower_stability(a);
    out.fourier_product = fourier_product_upper(a, psi_cfg);
    return out;
}

bool lipschitz_check(const Direction& a, const Direction& b, const VolumeEstimate& A_a,
                     const VolumeEstimate& A_b, double slack)
{
    const double lhs = std::abs(A_a.value - A_b.value);
    return lhs <= kLipschitzConstant * distance(a, b) + A_a.error + A_b.error + slack;
}

bool n2_delta_predicate(const Direction& a, double slack)
{
    if (a.n() != 2) throw DimensionMismatchError("n2_delta_predicate: need n = 2");
    const double lhs = 1.0 / (a.a1() * a.a1());
    return lhs <= 2.0 - std::sqrt(std::max(0.0, delta(a))) + slack;
}

}  // namespace polyslice::bounds
