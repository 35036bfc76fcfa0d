#include "polyslice/psi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "polyslice/bessel.hpp"
#include "polyslice/errors.hpp"
#include "polyslice/gauss.hpp"
#include "polyslice/tail.hpp"

namespace polyslice {

namespace {

// |kernel(t)|^s via exp(s log|k|); log1p on the series form keeps the
// neighbourhood of t = 0 accurate where k is within roundoff of 1.
double abs_kernel_pow(double t, double s)
{
    if (t < 0.5) return std::exp(s * std::log1p(bessel::kernel_minus_one(t)));
    const double k = std::abs(bessel::kernel(t));
    if (k == 0.0) return 0.0;
    return std::exp(s * std::log(k));
}

struct MappedRule {
    std::vector<double> pos;  // t = lo + (hi-lo) * pos
    std::vector<double> wgt;  // weight including the map derivative
};

// Cosine-graded map v -> v - sin(2 pi v)/(2 pi) on [0,1]: node density
// vanishes quadratically at both panel ends, which restores fast Gauss
// convergence against the |t - z|^s endpoint behaviour of the integrand.
const MappedRule& mapped_rule(int nodes)
{
    static std::mutex mu;
    static std::map<int, MappedRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        const auto& g = gauss::legendre(nodes);
        MappedRule r;
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double v = 0.5 * (g.nodes[i] + 1.0);
            r.pos.push_back(v - std::sin(2.0 * M_PI * v) / (2.0 * M_PI));
            r.wgt.push_back(0.5 * g.weights[i] * (1.0 - std::cos(2.0 * M_PI * v)));
        }
        it = cache.emplace(nodes, std::move(r)).first;
    }
    return it->second;
}

struct PanelSum {
    double value = 0.0;
    double estimate = 0.0;
};

void add_panel(const std::function<double(double)>& f, double lo, double hi, int nodes,
               PanelSum& out)
{
    const auto& hi_rule = mapped_rule(nodes);
    const auto& lo_rule = mapped_rule(std::max(2, nodes / 2));
    const double len = hi - lo;
    double vhi = 0.0, vlo = 0.0;
    for (size_t i = 0; i < hi_rule.pos.size(); ++i)
        vhi += hi_rule.wgt[i] * f(lo + len * hi_rule.pos[i]);
    for (size_t i = 0; i < lo_rule.pos.size(); ++i)
        vlo += lo_rule.wgt[i] * f(lo + len * lo_rule.pos[i]);
    out.value += len * vhi;
    out.estimate += len * std::abs(vhi - vlo);
}

PsiValue psi_two(const QuadratureConfig& cfg)
{
    // (2/4) int k^2 t dt: same integrand as the two-factor volume integral
    // with unit weights.
    const double w[2] = {1.0, 1.0};
    const double half_tol = 0.5 * cfg.abs_tol;
    double T = tail::product_tail_min_T(std::span<const double>(w, 2), half_tol);
    const double h = std::min(cfg.panel_width_factor * M_PI, 2.5);
    const long n = static_cast<long>(std::ceil(T / h));
    T = n * h;
    PanelSum ps;
    auto f = [](double t) {
        const double k = bessel::kernel(t);
        return 0.5 * t * k * k;
    };
    for (long i = 0; i < n; ++i) add_panel(f, i * h, (i + 1) * h, cfg.nodes_per_panel, ps);
    const tail::TailEstimate te = tail::bessel_pair_tail(1.0, 1.0, T);
    return {2.0, ps.value + te.value, te.bound + ps.estimate};
}

}  // namespace

PsiValue psi(double s, const QuadratureConfig& cfg)
{
    if (!(s > 4.0 / 3.0))
        throw DomainError("psi: s <= 4/3 (Psi is infinite there)");
    if (s < 1.4)
        throw SlowConvergenceError("psi: refusing 4/3 < s < 1.4 (tail exponent too close to 0)");
    if (s == 2.0) return psi_two(cfg);

    const double half_tol = 0.5 * cfg.abs_tol;
    const double c = bessel::kEnvelopeConstant;
    const double ex = 1.5 * s - 2.0;
    // (s/4) c^s T^-ex / ex = half_tol, solved in logs.
    double T = std::exp((std::log(s / 4.0) + s * std::log(c) - std::log(ex) - std::log(half_tol)) / ex);
    T = std::max(T, bessel::kEnvelopeSwitch * 1.05);

    const double z1 = bessel::j1_zero(1);
    auto f = [s](double t) { return 0.25 * s * t * abs_kernel_pow(t, s); };

    PanelSum ps;
    // First lobe on the e^{-s t^2 / 8} concentration scale.
    {
        const double top = std::min(T, z1);
        const double scale = std::sqrt(8.0 / s);
        const double u_top = top / scale;
        const double u_cap = 45.0;
        const double covered = u_top <= u_cap ? top : u_cap * scale;
        const long subs = std::max<long>(2, std::lround(std::ceil(std::min(u_top, u_cap))));
        for (long i = 0; i < subs; ++i)
            add_panel(f, covered * i / subs, covered * (i + 1) / subs, cfg.nodes_per_panel, ps);
        if (covered < top) {
            // k is decreasing on the first lobe; the skipped stretch is below
            // k(covered)^s everywhere, i.e. ~e^-2000 of the total.
            ps.estimate += 0.25 * s * abs_kernel_pow(covered, s) * 0.5 * (top * top - covered * covered);
        }
    }
    // Lobe panels between consecutive zeros.
    if (T > z1) {
        long m = 1;
        double lo = z1;
        const double max_panels_d = static_cast<double>(cfg.max_panels);
        if ((T - z1) / M_PI > max_panels_d)
            throw TolNotReachedError("psi: tail bound needs too many lobe panels at s = " + std::to_string(s));
        while (lo < T) {
            const double hi = std::min(bessel::j1_zero(static_cast<int>(m) + 1), T);
            add_panel(f, lo, hi, cfg.nodes_per_panel, ps);
            lo = hi;
            ++m;
        }
    }
    const double tail_bound = s / 4.0 * std::exp(s * std::log(c)) * std::pow(T, -ex) / ex;
    return {s, ps.value, tail_bound + ps.estimate};
}

}  // namespace polyslice
