#pragma once

#include "polyslice/quadrature.hpp"

namespace polyslice {

// Psi(s) = (s/4) int_0^inf |2 J1(t)/t|^s t dt, finite for s > 4/3.
struct PsiValue {
    double s = 0.0;
    double value = 0.0;
    double error = 0.0;
};

inline QuadratureConfig default_psi_config()
{
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-7;
    return cfg;
}

// Panel boundaries at the zeros of J1 (|kernel|^s has a kink there for
// non-even s), a cosine-graded map inside each lobe, and a substitution-
// scaled first lobe so the e^{-s t^2/8} concentration of large s stays
// resolved.  Tail truncated by the envelope bound
//   (s/4) c_env^s T^(2-3s/2) / (3s/2 - 2) < abs_tol/2.
// s = 2 is kink-free (|k|^2 = k^2) and uses the semi-analytic Hankel tail
// instead; the envelope rule alone would need ~10^7 panels there.
// Throws DomainError for s <= 4/3, SlowConvergenceError for s < 1.4, and
// TolNotReachedError when the panel budget is exceeded (s just below 2).
PsiValue psi(double s, const QuadratureConfig& cfg = default_psi_config());

}  // namespace polyslice
