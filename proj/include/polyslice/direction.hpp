#pragma once

#include <span>
#include <vector>

namespace polyslice {

// Canonical hyperplane normal: unit vector with nonnegative, nonincreasing
// entries.  The polydisc is invariant under coordinate permutations and
// per-coordinate rotations, so every hyperplane has a normal of this form.
class Direction {
public:
    Direction() = default;

    int n() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double operator[](int i) const { return weights_[i]; }
    double a1() const { return weights_[0]; }
    double a2() const { return weights_[1]; }

    // Number of leading nonzero weights (entries are sorted).
    int nonzero_count() const;

    friend Direction canonicalize(std::span<const double> raw);

private:
    explicit Direction(std::vector<double> w) : weights_(std::move(w)) {}
    std::vector<double> weights_;
};

// Absolute values, sorted nonincreasing, normalized to unit Euclidean norm.
// Zero entries are retained.  Throws ZeroVectorError / NonFiniteError.
Direction canonicalize(std::span<const double> raw);
Direction canonicalize(std::initializer_list<double> raw);

// Euclidean distance between two directions of equal dimension.
double distance(const Direction& a, const Direction& b);

bool is_canonical(std::span<const double> w, double norm_tol = 1e-12);

}  // namespace polyslice
