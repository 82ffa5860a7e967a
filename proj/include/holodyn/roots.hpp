#pragma once

#include <vector>

#include "holodyn/polynomial.hpp"

namespace holodyn {

struct RootOptions {
    int max_iters = 400;
    int polish_steps = 5;
    // Accepted backward-error: |p(r)| <= residual_rel * sum|a_i||r|^i.
    double residual_rel = 1e-10;
};

// All roots of p with multiplicity (exactly deg p entries), sorted
// lexicographically by (re, im). Degree <= 2 and binomial polynomials are
// solved in closed form; everything else runs the Aberth-Ehrlich
// simultaneous iteration from a perturbed circle, followed by Newton polish.
// Throws numeric_error with the worst residuals on non-convergence.
std::vector<Complex> poly_roots(const Polynomial& p, const RootOptions& opts = {});

// Backward-error scale of p at z: sum |a_i| |z|^i.
double residual_scale(const Polynomial& p, const Complex& z);

struct RootCluster {
    Complex center;
    int multiplicity;
};

// Collapse points whose pairwise distance (transitively) stays below tol
// into their centroid. Input order does not matter; output is sorted.
std::vector<RootCluster> cluster_points(const std::vector<Complex>& pts, double tol);

} // namespace holodyn
