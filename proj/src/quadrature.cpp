#include "polyslice/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "polyslice/bessel.hpp"
#include "polyslice/errors.hpp"
#include "polyslice/gauss.hpp"
#include "polyslice/tail.hpp"

namespace polyslice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxPanelWidth = 2.5;  // keeps the Gaussian core of concentrated integrands resolved

// Rigorous envelope tail bound
//   G(T) = (1/2) int_T^inf t prod_j min(1, c_env (w_j t)^-3/2) dt,
// piecewise power integrals between the per-factor envelope switch points,
// accumulated in log space (the coefficients overflow doubles for large m).
double envelope_tail_bound(const std::vector<double>& w, double T)
{
    using namespace bessel;
    const int m = static_cast<int>(w.size());
    const double logc = std::log(kEnvelopeConstant);
    double total = 0.0;
    double logC = std::log(0.5);
    double a = T;
    int idx = 0;
    while (idx < m && kEnvelopeSwitch / w[idx] <= a) {
        logC += logc - 1.5 * std::log(w[idx]);
        ++idx;
    }
    while (true) {
        const int r = idx;
        const double p1 = 2.0 - 1.5 * r;  // exponent + 1 of the segment integrand
        if (idx == m) {
            if (p1 >= 0.0) return kInf;
            total += std::exp(logC + p1 * std::log(a) - std::log(-p1));
            break;
        }
        const double b = kEnvelopeSwitch / w[idx];
        total += std::exp(logC + p1 * std::log(a)) * (std::pow(b / a, p1) - 1.0) / p1;
        logC += logc - 1.5 * std::log(w[idx]);
        a = b;
        ++idx;
    }
    return total;
}

// Smallest T with G(T) <= half_tol (G is decreasing in T).
double envelope_truncation_point(const std::vector<double>& w, double half_tol)
{
    double hi = std::max(4.0, bessel::kEnvelopeSwitch / w.back());
    while (envelope_tail_bound(w, hi) > half_tol) {
        hi *= 2.0;
        if (hi > 1e17) return kInf;
    }
    double lo = 1.0;
    for (int i = 0; i < 100; ++i) {
        double mid = std::sqrt(lo * hi);  // bisect in log scale
        (envelope_tail_bound(w, mid) > half_tol ? lo : hi) = mid;
    }
    return hi;
}

struct PanelSum {
    double value = 0.0;
    double estimate = 0.0;  // sum of |GL(n) - GL(n/2)| per panel
};

// Fixed-width Gauss panels over [0, T]; Kahan accumulation keeps roundoff
// out of the error budget at panel counts in the millions.
PanelSum integrate_panels(const std::function<double(double)>& f, double T, double h, int nodes)
{
    const auto& hi_rule = gauss::legendre(nodes);
    const auto& lo_rule = gauss::legendre(std::max(2, nodes / 2));
    PanelSum out;
    double comp = 0.0;
    const long n_panels = static_cast<long>(std::ceil(T / h - 1e-9));
    for (long p = 0; p < n_panels; ++p) {
        const double a = p * h;
        const double c = a + 0.5 * h, s = 0.5 * h;
        double vhi = 0.0, vlo = 0.0;
        for (size_t i = 0; i < hi_rule.nodes.size(); ++i)
            vhi += hi_rule.weights[i] * f(c + s * hi_rule.nodes[i]);
        for (size_t i = 0; i < lo_rule.nodes.size(); ++i)
            vlo += lo_rule.weights[i] * f(c + s * lo_rule.nodes[i]);
        vhi *= s;
        vlo *= s;
        const double y = vhi - comp;
        const double t = out.value + y;
        comp = (t - out.value) - y;
        out.value = t;
        out.estimate += std::abs(vhi - vlo);
    }
    return out;
}

}  // namespace

std::string to_string(Method m)
{
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
        case Method::closed_form: return "closed_form";
    }
    return "?";
}

VolumeEstimate volume_quadrature(const Direction& a, const QuadratureConfig& cfg)
{
    if (!(cfg.abs_tol > 0.0)) throw DomainError("volume_quadrature: abs_tol must be > 0");
    std::vector<double> w(a.weights().begin(), a.weights().begin() + a.nonzero_count());
    const int m = static_cast<int>(w.size());
    if (m == 0) throw ZeroVectorError("volume_quadrature: no nonzero weights");
    if (m == 1) return {1.0, Method::quadrature, 0.0, 0};

    const double half_tol = 0.5 * cfg.abs_tol;
    const double h = std::min(cfg.panel_width_factor * M_PI / w[0], kMaxPanelWidth);

    // Two candidate truncation plans; take the cheaper panel count.
    const double T_env = envelope_truncation_point(w, half_tol);
    const double T_asym = tail::product_tail_min_T(w, half_tol);
    const bool use_asym = T_asym < T_env;
    double T = use_asym ? T_asym : T_env;
    if (!std::isfinite(T) || T / h > static_cast<double>(cfg.max_panels))
        throw TolNotReachedError("volume_quadrature: tail bound needs " +
                                 std::to_string(T / h) + " panels (max " +
                                 std::to_string(cfg.max_panels) + ")");

    long n_panels = static_cast<long>(std::ceil(T / h));
    T = n_panels * h;

    auto f = [&w](double t) {
        double v = 0.5 * t;
        for (double wj : w) v *= bessel::kernel(wj * t);
        return v;
    };
    PanelSum main = integrate_panels(f, T, h, cfg.nodes_per_panel);

    double value = main.value;
    double err;
    if (use_asym) {
        tail::TailEstimate te = tail::bessel_product_tail(w, T);
        value += te.value;
        err = te.bound + main.estimate;
    } else {
        err = envelope_tail_bound(w, T) + main.estimate;
    }
    return {value, Method::quadrature, err, n_panels};
}

double volume_closed_form_n3(const Direction& a)
{
    if (a.n() != 3) throw DimensionMismatchError("volume_closed_form_n3: need n = 3");
    const double a1 = a[0], a2 = a[1], a3 = a[2];
    if (a2 == 0.0) return 1.0;  // direction is e1
    const double cap = a3 > 0.0 ? 1.0 / (a3 * a3) : kInf;

    // x = cos(phi): integrate (2/pi) sin^2(phi) min{ 1/|X|^2, a3^-2 } on [0, pi],
    // |X|^2 = (a1-a2)^2 + 4 a1 a2 cos^2(phi/2) (stable near the a1 = a2 kink).
    auto g = [&](double phi) {
        const double co = std::cos(0.5 * phi);
        const double q = (a1 - a2) * (a1 - a2) + 4.0 * a1 * a2 * co * co;
        const double si = std::sin(phi);
        return 2.0 / M_PI * si * si * std::min(1.0 / q, cap);
    };

    // Kink where 1/|X|^2 crosses the cap.
    std::vector<double> edges{0.0, M_PI};
    const double xs = (a3 * a3 - a1 * a1 - a2 * a2) / (2.0 * a1 * a2);
    if (xs > -1.0 && xs < 1.0) edges.insert(edges.begin() + 1, std::acos(xs));

    const auto& hi_rule = gauss::legendre(15);
    const auto& lo_rule = gauss::legendre(7);
    double total = 0.0;
    const double tol = 1e-11;
    std::function<void(double, double, int)> refine = [&](double lo, double hi, int depth) {
        const double c = 0.5 * (lo + hi), s = 0.5 * (hi - lo);
        double vhi = 0.0, vlo = 0.0;
        for (size_t i = 0; i < hi_rule.nodes.size(); ++i)
            vhi += hi_rule.weights[i] * g(c + s * hi_rule.nodes[i]);
        for (size_t i = 0; i < lo_rule.nodes.size(); ++i)
            vlo += lo_rule.weights[i] * g(c + s * lo_rule.nodes[i]);
        vhi *= s;
        vlo *= s;
        if (depth >= 40 || std::abs(vhi - vlo) < tol * (hi - lo) / M_PI) {
            total += vhi;
            return;
        }
        refine(lo, c, depth + 1);
        refine(c, hi, depth + 1);
    };
    for (size_t i = 0; i + 1 < edges.size(); ++i) refine(edges[i], edges[i + 1], 0);
    return total;
}

VolumeEstimate volume_auto(const Direction& a, const QuadratureConfig& cfg)
{
    switch (a.n()) {
        case 0: throw ZeroVectorError("volume_auto: empty direction");
        case 1: return {1.0, Method::closed_form, 0.0, 0};
        case 2: return {1.0 / (a.a1() * a.a1()), Method::closed_form, 0.0, 0};
        case 3: return {volume_closed_form_n3(a), Method::closed_form, 1e-10, 0};
        default: return volume_quadrature(a, cfg);
    }
}

}  // namespace polyslice
