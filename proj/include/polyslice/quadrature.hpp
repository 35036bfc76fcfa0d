#pragma once

#include <cstdint>
#include <string>

#include "polyslice/direction.hpp"

namespace polyslice {

enum class Method { quadrature, monte_carlo, closed_form };
std::string to_string(Method m);

struct QuadratureConfig {
    double abs_tol = 1e-8;
    double panel_width_factor = 1.0;  // scales the pi/a1 half-period width
    long max_panels = 20'000'000;
    int nodes_per_panel = 12;
};

// Normalized section volume with its error accounting.  For quadrature the
// error field is the rigorous truncation bound plus accumulated panel
// estimates; for Monte Carlo it is the standard error of the mean.
struct VolumeEstimate {
    double value = 0.0;
    Method method = Method::quadrature;
    double error = 0.0;
    long samples_or_panels = 0;
};

// A_n(a) = (1/2) int_0^inf (prod_j 2 J1(a_j t)/(a_j t)) t dt.
// Zero weights are dropped; one effective weight integrates to exactly 1.
// Two effective weights use the semi-analytic Hankel tail (the integrand
// decays like 1/t there, far too slowly for envelope truncation alone);
// three or more truncate where the envelope-product tail bound falls
// below abs_tol/2.  Throws TolNotReachedError when max_panels is exceeded.
VolumeEstimate volume_quadrature(const Direction& a, const QuadratureConfig& cfg = {});

// n = 3 closed form: integrate min{(a1^2+a2^2+2a1a2 x)^-1, a3^-2} against
// the semicircle density (2/pi) sqrt(1-x^2) on [-1,1], with the kink at the
// min crossover split analytically.  Absolute accuracy ~1e-10.
double volume_closed_form_n3(const Direction& a);

// Dispatch: n = 1 exact, n = 2 closed form a1^-2, n = 3 closed form,
// n >= 4 quadrature.
VolumeEstimate volume_auto(const Direction& a, const QuadratureConfig& cfg = {});

}  // namespace polyslice
