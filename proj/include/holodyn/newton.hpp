#pragma once

#include <vector>

#include "holodyn/julia.hpp"
#include "holodyn/rational_map.hpp"

namespace holodyn {

// N(z) = z - p(z)/p'(z) in lowest terms; every root of p becomes a
// superattracting fixed point. p must be squarefree.
RationalMap newton_map(const Polynomial& p);

// Per-pixel basin labels for Newton iteration: index into `roots` when the
// orbit settles within tol of a root for 3 consecutive iterates, -1 when it
// never does within max_iter.
struct BasinGrid {
    Viewport view;
    std::vector<Complex> roots; // sorted, label i refers to roots[i]
    std::vector<int32_t> labels;
    int max_iter = 0;
    double tol = 0.0;
};

BasinGrid cayley_basins(const Polynomial& p, const Viewport& v, int max_iter = 200,
                        double tol = 1e-8);

} // namespace holodyn
