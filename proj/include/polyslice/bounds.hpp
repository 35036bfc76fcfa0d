#pragma once

#include <map>
#include <string>

#include "polyslice/direction.hpp"
#include "polyslice/psi.hpp"
#include "polyslice/quadrature.hpp"

namespace polyslice::bounds {

inline constexpr double kLipschitzConstant = 5.65685424949238019520;  // 4 sqrt(2)

// Case labels of the (a1, a2) partition; Lk is the lemma resolving the case.
enum class Region { L7, L8, L9, L10, C11, L12, L13 };
std::string to_string(Region r);

struct RegionAssignment {
    std::map<Region, double> bounds;  // region tag -> upper bound on A_n(a)
    double delta = 0.0;

    bool contains(Region r) const { return bounds.count(r) > 0; }
    bool empty() const { return bounds.empty(); }
    double min_bound() const;
};

struct StabilityBounds {
    double upper_thm1 = 2.0;
    double lower_stab = 1.0;
    double fourier_product = 0.0;  // may be +inf
    double lipschitz_constant = kLipschitzConstant;
};

// delta(a) = |a - (e1+e2)/sqrt(2)|^2 = 2 - sqrt(2)(a1 + a2).
double delta(const Direction& a);

// 2 - min{ 1e-40 |a - (e1+e2)/sqrt(2)|, ||a||_4^4 / 76 }.
double theorem1_upper(const Direction& a);

// 1 + |a - e1|^2 / 4.
double lower_stability(const Direction& a);

double l4_norm4(const Direction& a);

// 2 prod_k Psi(a_k^-2)^(a_k^2) over nonzero weights, each factor evaluated
// one-sided as value + error.  Returns +inf when any a_k >= sqrt(3)/2
// (Psi infinite) or the Psi engine refuses the exponent.
double fourier_product_upper(const Direction& a, const QuadratureConfig& psi_cfg = default_psi_config());

// (1/a1^2)(1 - e^{-2 a1^2/(1-a1^2)}): the Gaussian term of the
// Berry-Esseen comparison.
double gaussian_comparison(double a1);

// Gaussian term plus 8 (42 sqrt(2) + 16) a2 / (a1^2 sqrt(1-a1^2)).
double berry_esseen_upper(double a1, double a2);
double berry_esseen_upper(const Direction& a);

// All regions whose hypotheses a satisfies, each with its bound.
// 1/sqrt(2) + 6e-41 is not separable from 1/sqrt(2) in double precision,
// so a1 > 1/sqrt(2) assigns both L12 (under its a2 hypothesis) and L13.
RegionAssignment classify_region(const Direction& a);

StabilityBounds stability_bounds(const Direction& a, const QuadratureConfig& psi_cfg = default_psi_config());

// |A_a - A_b| <= 4 sqrt(2) |a - b| + both error fields + slack.
bool lipschitz_check(const Direction& a, const Direction& b, const VolumeEstimate& A_a,
                     const VolumeEstimate& A_b, double slack = 1e-9);

// n = 2 counterpart of the region machinery: A_2 = a1^-2 <= 2 - sqrt(delta).
bool n2_delta_predicate(const Direction& a, double slack = 1e-12);

}  // namespace polyslice::bounds
