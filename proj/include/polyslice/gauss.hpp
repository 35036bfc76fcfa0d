#pragma once

#include <vector>

namespace polyslice::gauss {

// Gauss-Legendre rule on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights computed once by Newton iteration on P_n; cached per order.
const Rule& legendre(int n);

}  // namespace polyslice::gauss
