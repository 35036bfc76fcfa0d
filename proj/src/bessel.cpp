#include "polyslice/bessel.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace polyslice::bessel {

namespace {

constexpr double kSeriesSwitch = 24.0;

// Double-double accumulation for the power series.  The series loses
// ~x^2/4 digits to cancellation (factor ~2e9 at x = 24), which a plain
// double sum cannot absorb at the accuracy we need.
struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd dd_add(dd a, double b)
{
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    return two_sum(s.hi, s.lo);
}

inline dd two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_mul(dd a, dd b)
{
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, double b)
{
    double q1 = a.hi / b;
    dd r = two_prod(q1, b);
    double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
    return two_sum(q1, q2);
}

// J_nu(x) = (x/2)^nu sum_k (-1)^k (x^2/4)^k / (k! (k+nu)!), nu in {0,1}.
// The factor x^2/4 enters as an exact double-double so the cancellation
// (a factor ~2e9 at x = 24) eats headroom, not accuracy.
double j_series(int nu, double x)
{
    const dd q = two_prod(0.5 * x, 0.5 * x);
    dd sum{1.0, 0.0};
    dd term{1.0, 0.0};
    for (int k = 1; k < 120; ++k) {
        term = dd_div(dd_mul(term, q), -static_cast<double>(k) * (k + nu));
        sum = dd_add(sum, term.hi);
        sum = dd_add(sum, term.lo);
        if (std::abs(term.hi) < 1e-20 * (1.0 + std::abs(sum.hi))) break;
    }
    double s = sum.hi + sum.lo;
    return nu == 0 ? s : 0.5 * x * s;
}

// Hankel coefficients a_k(nu) = prod_{m=1..k} (4nu^2 - (2m-1)^2) / (8k).
struct HankelTable {
    static constexpr int kTerms = 19;
    std::array<double, kTerms> a0{};  // nu = 0
    std::array<double, kTerms> a1{};  // nu = 1
};

const HankelTable& hankel_table()
{
    static const HankelTable t = [] {
        HankelTable h;
        h.a0[0] = h.a1[0] = 1.0;
        for (int k = 1; k < HankelTable::kTerms; ++k) {
            double odd = (2.0 * k - 1.0) * (2.0 * k - 1.0);
            h.a0[k] = h.a0[k - 1] * (0.0 - odd) / (8.0 * k);
            h.a1[k] = h.a1[k - 1] * (4.0 - odd) / (8.0 * k);
        }
        return h;
    }();
    return t;
}

// J_nu(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - (nu/2 + 1/4) pi.
double j_hankel(int nu, double x)
{
    const auto& coef = nu == 0 ? hankel_table().a0 : hankel_table().a1;
    const double ix2 = 1.0 / (x * x);
    double p = 0.0, q = 0.0, xpow = 1.0;
    double sgn = 1.0, prev = HUGE_VAL;
    for (int k = 0; k + 1 < HankelTable::kTerms; k += 2) {
        // Asymptotic series: stop once terms no longer shrink.
        double mag = std::max(std::abs(coef[k]), std::abs(coef[k + 1]) / x) * xpow;
        if (mag > prev) break;
        prev = mag;
        p += sgn * coef[k] * xpow;
        q += sgn * coef[k + 1] * xpow / x;
        sgn = -sgn;
        xpow *= ix2;
        if (mag < 1e-18) break;
    }
    // chi = x - (nu/2 + 1/4) pi via angle addition: x - 2.36 would lose
    // ~ulp(x) of phase, while sin/cos of x itself reduce exactly.
    const double s = std::sin(x), c = std::cos(x);
    const double inv_sqrt2 = 0.70710678118654752440;
    double cos_chi, sin_chi;
    if (nu == 0) {
        cos_chi = (c + s) * inv_sqrt2;
        sin_chi = (s - c) * inv_sqrt2;
    } else {
        cos_chi = (s - c) * inv_sqrt2;
        sin_chi = -(s + c) * inv_sqrt2;
    }
    return std::sqrt(2.0 / (M_PI * x)) * (p * cos_chi - q * sin_chi);
}

double j_eval(int nu, double x)
{
    const double ax = std::abs(x);
    double v = ax <= kSeriesSwitch ? j_series(nu, ax) : j_hankel(nu, ax);
    if (x < 0.0 && nu == 1) v = -v;  // J1 is odd, J0 even
    return v;
}

}  // namespace

double j0(double x) { return j_eval(0, x); }

double j1(double x) { return j_eval(1, x); }

double kernel(double u)
{
    if (u == 0.0) return 1.0;
    const double au = std::abs(u);
    if (au < 0.5) return 1.0 + kernel_minus_one(au);
    return 2.0 * j1(au) / au;
}

double kernel_minus_one(double u)
{
    const double au = std::abs(u);
    if (au >= 0.5) return kernel(au) - 1.0;
    // sum_{k>=1} (-1)^k (u^2/4)^k / (k! (k+1)!)
    const double q = 0.25 * au * au;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-19 * std::max(std::abs(sum), 1e-30)) break;
    }
    return sum;
}

double tail_envelope(double u)
{
    if (u <= 0.0) throw std::invalid_argument("tail_envelope: u must be > 0");
    if (u <= kEnvelopeSwitch) return 1.0;
    return kEnvelopeConstant / (u * std::sqrt(u));
}

double kernel_hankel(double x)
{
    const double ix = 1.0 / x;
    const double ix2 = ix * ix;
    const double p = 1.0 + ix2 * (kHankelP2 + ix2 * kHankelP4);
    const double q = ix * (kHankelQ1 + ix2 * (kHankelQ3 + ix2 * kHankelQ5));
    return 2.0 / std::sqrt(M_PI) * ix * std::sqrt(ix) *
           ((q - p) * std::cos(x) + (p + q) * std::sin(x));
}

namespace {

// McMahon expansion for the m-th zero of J1, beta = (m + 1/4) pi.
double mcmahon_zero(int m)
{
    const double b = (m + 0.25) * M_PI;
    const double ib2 = 1.0 / (b * b);
    return b + 1.0 / b * (-0.375 + ib2 * (0.0234375 - ib2 * 0.23025173611111111));
}

// Refine by bisection (guaranteed bracket) then Newton; J1' = J0 - J1/x.
double refine_zero(double guess)
{
    double lo = guess - 0.5, hi = guess + 0.5;
    double flo = j1(lo);
    for (int i = 0; i < 8 && flo * j1(hi) > 0.0; ++i) {
        lo -= 0.25;
        hi += 0.25;
        flo = j1(lo);
    }
    for (int i = 0; i < 20; ++i) {
        double mid = 0.5 * (lo + hi);
        if (flo * j1(mid) <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = j1(lo);
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double f = j1(x);
        double fp = j0(x) - f / x;
        double step = f / fp;
        x -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return x;
}

constexpr int kZeroTableSize = 256;

const std::array<double, kZeroTableSize>& zero_table()
{
    static const std::array<double, kZeroTableSize> t = [] {
        std::array<double, kZeroTableSize> z{};
        for (int m = 1; m <= kZeroTableSize; ++m) z[m - 1] = refine_zero(mcmahon_zero(m));
        return z;
    }();
    return t;
}

}  // namespace

double j1_zero(int m)
{
    if (m < 1) throw std::invalid_argument("j1_zero: m must be >= 1");
    if (m <= kZeroTableSize) return zero_table()[m - 1];
    return mcmahon_zero(m);
}

std::vector<double> j1_zeros(int m)
{
    if (m < 1) throw std::invalid_argument("j1_zeros: m must be >= 1");
    std::vector<double> out(m);
    for (int i = 1; i <= m; ++i) out[i - 1] = j1_zero(i);
    return out;
}

}  // namespace polyslice::bessel
