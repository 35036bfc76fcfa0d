#include "polyslice/direction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "polyslice/errors.hpp"

namespace polyslice {

int Direction::nonzero_count() const
{
    int m = n();
    while (m > 0 && weights_[m - 1] == 0.0) --m;
    return m;
}

Direction canonicalize(std::span<const double> raw)
{
    if (raw.empty()) throw ZeroVectorError("canonicalize: empty input");
    std::vector<double> w(raw.begin(), raw.end());
    double norm2 = 0.0;
    for (double& x : w) {
        if (!std::isfinite(x)) throw NonFiniteError("canonicalize: non-finite entry");
        x = std::abs(x);
        norm2 += x * x;
    }
    if (norm2 == 0.0) throw ZeroVectorError("canonicalize: all entries are zero");
    std::sort(w.begin(), w.end(), std::greater<>());
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : w) x *= inv;
    return Direction(std::move(w));
}

Direction canonicalize(std::initializer_list<double> raw)
{
    return canonicalize(std::span<const double>(raw.begin(), raw.size()));
}

double distance(const Direction& a, const Direction& b)
{
    if (a.n() != b.n()) throw DimensionMismatchError("distance: dimensions differ");
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

bool is_canonical(std::span<const double> w, double norm_tol)
{
    if (w.empty()) return false;
    double norm2 = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i]) || w[i] < 0.0) return false;
        if (i > 0 && w[i] > w[i - 1]) return false;
        norm2 += w[i] * w[i];
    }
    return std::abs(norm2 - 1.0) <= norm_tol;
}

}  // namespace polyslice
