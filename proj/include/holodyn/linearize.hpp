#pragma once

#include <optional>
#include <vector>

#include "holodyn/boettcher.hpp"
#include "holodyn/rational_map.hpp"

namespace holodyn {

// Exact rational exponent m/n for the fractional-power terms.
struct Exponent {
    long long num = 0;
    long long den = 1;
    double value() const { return double(num) / double(den); }
    Exponent plus(long long k) const { return {num + k * den, den}; }
    std::string str() const;
};

struct LaurentTerm {
    Exponent exponent; // nonzero; the constant part lives in `constant`
    Complex coeff;
};

// Finite table of fractional-power terms around a center:
// F(z) = constant + sum coeff * (z - center)^exponent, declared convergent
// on the annulus inner_radius < |z - center| < outer_radius.
struct LaurentSeries {
    Complex center{0.0};
    Complex constant{0.0};
    std::vector<LaurentTerm> terms;
    double inner_radius = 0.0;
    double outer_radius = 1e100;
};

// Koenigs linearizer at an attracting fixed point (0 < |lambda| < 1):
// B(z) = lim (f_n(z) - x)/lambda^n solves B(f(z)) = lambda B(z), normalized
// by B'(x) = 1. Repelling points are handled by passing the germ of the
// local inverse branch (see local_inverse).
CoordinateChart koenigs(const RationalMap& f, const SpherePoint& x, int n_max = 256);
CoordinateChart koenigs(const PowerSeries& germ, int n_max = 256);

// Taylor coefficients of the Koenigs map, by triangular recursion.
PowerSeries koenigs_series(const PowerSeries& germ, size_t len);

// Compositional inverse of a germ with a nonzero linear part.
PowerSeries local_inverse(const PowerSeries& germ, size_t len);

// Solution of psi(f(z)) - psi(z) = F(z) at an attracting fixed point: F is
// re-expanded in powers of the Koenigs coordinate w = B(z) (series reversion),
// the constant part contributes B0 log B(z)/log lambda, and each power term
// c w^e contributes c w^e/(lambda^e - 1).
struct AbelSolution {
    std::function<Complex(const SpherePoint&)> eval;
    Complex lambda{0.0};
    Complex log_coeff{0.0};          // B0 / log(lambda)
    std::vector<LaurentTerm> table;  // re-expanded terms, already divided
    double inner_radius = 0.0;       // annulus where the residual was vetted
    double outer_radius = 0.0;
};

AbelSolution abel_solve(const RationalMap& f, const SpherePoint& x, const LaurentSeries& F,
                        int n_terms = 24);
AbelSolution abel_solve(const PowerSeries& germ, const LaurentSeries& F, int n_terms = 24);

// Iterative roots of a polynomial: all g of degree p with g composed with
// itself k times equal to F (p^k = deg F), found by leading-branch
// enumeration plus triangular coefficient matching, verified by full
// composition (coefficientwise residual < 1e-8). Ordered by the argument of
// the leading coefficient in [0, 2 pi).
std::vector<Polynomial> poly_iter_roots(const Polynomial& F, int p);
std::optional<Polynomial> poly_iter_root(const Polynomial& F, int p);

} // namespace holodyn
