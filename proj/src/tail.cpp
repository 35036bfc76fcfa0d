#include "polyslice/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "polyslice/bessel.hpp"
#include "polyslice/gauss.hpp"

namespace polyslice::tail {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
constexpr double kSmallZ = 0.9;
constexpr int kMaxFactors = 8;
constexpr double kMinWeight = 1e-7;  // below this the coefficient products overflow

// The IBP series bottoms out at a relative error ~e^(p - z); this margin
// puts the floor below 1e-13 for every p in use.
double asym_cut(double p) { return p + 45.0; }

// z >= asym_cut(p): W_p = i z^-p e^{iz} - i p W_{p+1}, unrolled to the
// smallest term (the series is asymptotic, not convergent).
cplx osc_asymptotic(double p, double z)
{
    const cplx eiz = std::polar(1.0, z);
    cplx acc{0.0, 0.0};
    cplx coef{1.0, 0.0};
    double zpow = std::pow(z, -p);
    double prev_mag = HUGE_VAL;
    for (int k = 0; k < 200; ++k) {
        const double mag = std::abs(coef) * zpow;
        if (mag > prev_mag || mag < 1e-20 * std::max(1e-300, std::abs(acc))) break;
        prev_mag = mag;
        acc += coef * kI * zpow * eiz;
        coef *= -kI * (p + k);
        zpow /= z;
    }
    return acc;
}

// int_z^b u^-p e^{iu} du for z < b <= 1 via the Taylor series of e^{iu};
// the k = p-1 term integrates to a logarithm when p is an integer.
cplx osc_series_segment(double p, double z, double b)
{
    cplx sum{0.0, 0.0};
    cplx ik{1.0, 0.0};
    double fact = 1.0;
    for (int k = 0; k <= 30; ++k) {
        double e = k - p + 1.0;
        double seg;
        if (std::abs(e) < 1e-12)
            seg = std::log(b / z);
        else
            seg = (std::pow(b, e) - std::pow(z, e)) / e;
        sum += ik / fact * seg;
        ik *= kI;
        fact *= k + 1.0;
    }
    return sum;
}

}  // namespace

cplx osc_integral(double p, double z)
{
    if (!(p > 1.0) || !(z > 0.0)) throw std::invalid_argument("osc_integral: need p > 1, z > 0");
    const double cut = asym_cut(p);
    if (z >= cut) return osc_asymptotic(p, z);

    cplx acc = osc_asymptotic(p, cut);
    double lo = z;
    if (lo < 1.0) {
        acc += osc_series_segment(p, lo, 1.0);
        lo = 1.0;
    }
    // Gauss panels on [lo, cut]: width capped at a third of an oscillation
    // and graded geometrically so u^-p stays resolvable at large p.
    const auto& rule = gauss::legendre(16);
    double a = lo;
    while (a < cut - 1e-12) {
        double b = std::min({a + 2.0, a * (1.0 + 1.6 / p), cut});
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        cplx s{0.0, 0.0};
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            double u = c + h * rule.nodes[i];
            s += rule.weights[i] * std::pow(u, -p) * std::polar(1.0, u);
        }
        acc += h * s;
        a = b;
    }
    return acc;
}

cplx power_osc_tail(double p, double nu, double T)
{
    if (nu == 0.0) return {std::pow(T, 1.0 - p) / (p - 1.0), 0.0};
    const double z = nu * T;
    if (z >= kSmallZ) {
        // nu^(p-1) may underflow for large p; the product is then genuinely
        // negligible against the low-p terms it accompanies.
        return std::pow(nu, p - 1.0) * osc_integral(p, z);
    }
    // Small nu*T: expand e^{i nu t} on [T, 0.9/nu] where the phase is small.
    //   int_T^That t^{k-p} dt with That = 0.9/nu, then nu^(p-1) W_p(0.9).
    // nu^k * That^e collapses to 0.9^e * nu^(p-1), which keeps every
    // intermediate in range.
    cplx sum{0.0, 0.0};
    cplx ik{1.0, 0.0};
    const double nup = std::pow(nu, p - 1.0);
    double fact = 1.0, nuk = 1.0;
    for (int k = 0; k <= 26; ++k) {
        const double e = k - p + 1.0;
        double seg;
        if (std::abs(e) < 1e-12)
            seg = nuk * std::log(kSmallZ / z);
        else
            seg = (std::pow(kSmallZ, e) * nup - nuk * std::pow(T, e)) / e;
        sum += ik / fact * seg;
        ik *= kI;
        fact *= k + 1.0;
        nuk *= nu;
    }
    return sum + nup * osc_integral(p, kSmallZ);
}

namespace {

// One sum/difference frequency of the expanded kernel product, carrying a
// polynomial in 1/t (coefficient d multiplies t^-d).
struct FreqTerm {
    double nu = 0.0;
    std::vector<cplx> poly;
};

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{0.0, 0.0}) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// khat(x) = (2/sqrt(pi)) x^-3/2 Re[ gamma(x) e^{ix} ] with
// gamma = (Q - P) - i (P + Q); as a polynomial in 1/t for x = w t.
std::vector<cplx> gamma_poly(double w)
{
    using namespace bessel;
    const cplx mp{-1.0, -1.0};  // -(1+i), multiplies P coefficients
    const cplx pq{1.0, -1.0};   // (1-i), multiplies Q coefficients
    std::vector<cplx> g(6, cplx{0.0, 0.0});
    g[0] = mp;
    g[1] = pq * (kHankelQ1 / w);
    g[2] = mp * (kHankelP2 / (w * w));
    g[3] = pq * (kHankelQ3 / (w * w * w));
    g[4] = mp * (kHankelP4 / (w * w * w * w));
    g[5] = pq * (kHankelQ5 / std::pow(w, 5.0));
    return g;
}

// log of the Hankel-remainder bound on |int_T^inf (1/2) t (prod k - prod khat) dt|:
// first order replaces one factor by its remainder C x^-15/2, second order two.
double log_remainder_bound(std::span<const double> w, double logT)
{
    using namespace bessel;
    const int m = static_cast<int>(w.size());
    const double logc = std::log(kEnvelopeConstant);
    const double logC = std::log(kHankelRemainder);
    double sum_logw = 0.0;
    for (double x : w) sum_logw += std::log(x);

    double best = -std::numeric_limits<double>::infinity();
    auto accumulate = [&](double lt) { best = std::max(best, lt) + std::log1p(std::exp(std::min(best, lt) - std::max(best, lt))); };
    // first order
    for (int j = 0; j < m; ++j) {
        double q = 1.5 * m + 4.0;  // tail exponent of int t^-(1.5m+5)
        double lt = std::log(0.5) + (m - 1) * logc + logC - 1.5 * (sum_logw - std::log(w[j])) -
                    7.5 * std::log(w[j]) - q * logT - std::log(q);
        accumulate(lt);
    }
    // second order
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            double q = 1.5 * m + 10.0;
            double lt = std::log(0.5) + (m - 2) * logc + 2.0 * logC -
                        1.5 * (sum_logw - std::log(w[j]) - std::log(w[k])) -
                        7.5 * (std::log(w[j]) + std::log(w[k])) - q * logT - std::log(q);
            accumulate(lt);
        }
    return best;
}

bool analytic_tail_available(std::span<const double> w)
{
    const int m = static_cast<int>(w.size());
    if (m < 2 || m > kMaxFactors) return false;
    return w.back() >= (m > 2 ? kMinWeight : 1e-12);
}

}  // namespace

TailEstimate bessel_product_tail(std::span<const double> w, double T)
{
    using namespace bessel;
    const int m = static_cast<int>(w.size());
    if (!analytic_tail_available(w))
        throw std::invalid_argument("bessel_product_tail: unsupported weight set");
    for (int j = 0; j + 1 < m; ++j)
        if (w[j] < w[j + 1]) throw std::invalid_argument("bessel_product_tail: weights must be nonincreasing");
    if (w.back() * T < kHankelXMin - 1e-9)
        throw std::invalid_argument("bessel_product_tail: T below Hankel validity floor");

    // Expand prod_j Re[gamma_j e^{i w_j t}] into 2^(m-1) frequency terms
    // (the epsilon_1 = +1 half; realness doubles them at the end).
    std::vector<FreqTerm> terms;
    terms.push_back({w[0], gamma_poly(w[0])});
    for (int j = 1; j < m; ++j) {
        const auto g = gamma_poly(w[j]);
        auto gc = g;
        for (auto& c : gc) c = std::conj(c);
        std::vector<FreqTerm> next;
        next.reserve(terms.size() * 2);
        for (const auto& t : terms) {
            next.push_back({t.nu + w[j], poly_mul(t.poly, g)});
            next.push_back({t.nu - w[j], poly_mul(t.poly, gc)});
        }
        terms = std::move(next);
    }

    // (1/2) t prod khat = F t^(1 - 3m/2) 2^(1-m) sum_eps Re[ poly e^{i nu t} ]
    double logF = m * std::log(2.0 / std::sqrt(M_PI)) + (1 - m) * std::log(2.0) - std::log(2.0);
    for (double x : w) logF -= 1.5 * std::log(x);
    const double F = std::exp(logF);

    const double p0 = 1.5 * m - 1.0;
    double total = 0.0, gross = 0.0;
    for (const auto& t : terms) {
        const double anu = std::abs(t.nu);
        for (size_t d = 0; d < t.poly.size(); ++d) {
            cplx c = t.poly[d];
            if (c == cplx{0.0, 0.0}) continue;
            cplx I = power_osc_tail(p0 + static_cast<double>(d), anu, T);
            if (t.nu < 0.0) I = std::conj(I);
            total += (c * I).real();
            gross += std::abs(c) * std::abs(I);
        }
    }
    const double value = F * total;
    const double bound = std::exp(log_remainder_bound(w, std::log(T)));
    return {value, bound + 1e-12 * F * gross};
}

TailEstimate bessel_pair_tail(double a1, double a2, double T)
{
    if (!(a1 > 0.0) || !(a2 > 0.0) || a2 > a1)
        throw std::invalid_argument("bessel_pair_tail: need a1 >= a2 > 0");
    const double w[2] = {a1, a2};
    return bessel_product_tail(std::span<const double>(w, 2), T);
}

double product_tail_min_T(std::span<const double> w, double half_tol)
{
    if (!analytic_tail_available(w)) return std::numeric_limits<double>::infinity();
    const double log_tol = std::log(half_tol);
    double T = bessel::kHankelXMin / w.back();
    if (log_remainder_bound(w, std::log(T)) <= log_tol) return T;
    double lo = T, hi = T;
    while (log_remainder_bound(w, std::log(hi)) > log_tol) {
        hi *= 2.0;
        if (hi > 1e18) return hi;
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (log_remainder_bound(w, std::log(mid)) > log_tol ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace polyslice::tail
