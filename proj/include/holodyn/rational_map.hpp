#pragma once

#include <vector>

#include "holodyn/moebius.hpp"
#include "holodyn/polynomial.hpp"
#include "holodyn/power_series.hpp"
#include "holodyn/sphere.hpp"

namespace holodyn {

struct Orbit {
    SpherePoint start;
    std::vector<SpherePoint> points; // points[0] == start, length n+1
    bool escaped = false;
    int escape_index = -1; // first index with |z| beyond the escape radius
};

// A rational self-map of the sphere, kept in lowest terms: numerator and
// denominator are made coprime on construction (shared roots are divided
// out) and jointly rescaled so the largest coefficient has modulus 1.
class RationalMap {
public:
    RationalMap(Polynomial num, Polynomial den);
    explicit RationalMap(Polynomial poly) : RationalMap(std::move(poly), Polynomial::one()) {}
    static RationalMap from_moebius(const MoebiusMap& m);

    const Polynomial& num() const { return p_; }
    const Polynomial& den() const { return q_; }
    // Reversals padded to the common degree: rev_num()(w) = w^d P(1/w).
    const Polynomial& rev_num() const { return rev_p_; }
    const Polynomial& rev_den() const { return rev_q_; }
    int degree() const { return degree_; }
    bool is_polynomial() const { return q_.degree() == 0; }

    // The numerator rescaled so the denominator is 1 (polynomial maps only).
    Polynomial as_polynomial() const;

    SpherePoint operator()(const SpherePoint& z) const;
    Complex derivative_at(const Complex& z) const; // finite non-pole z

    // (P'Q - PQ')/Q^2 in lowest terms.
    RationalMap derivative() const;

    // f(g(z)) as a rational map; throws when the raw degree would exceed
    // max_degree or coefficients overflow.
    RationalMap compose(const RationalMap& g,
                        int max_degree = Polynomial::kComposeDegreeCap) const;

    RationalMap precompose(const MoebiusMap& m) const;  // f(m(z))
    RationalMap postcompose(const MoebiusMap& m) const; // m(f(z))
    RationalMap conjugated(const MoebiusMap& m) const;  // m . f . m^-1

    // Taylor expansion around a finite non-pole point x: series of f(x+w).
    PowerSeries taylor_at(const Complex& x, size_t len) const;
    // Series of w -> 1/f(1/w) around 0 (requires f(infinity) = infinity).
    PowerSeries taylor_at_infinity_conjugate(size_t len) const;

    // w -> 1/f(1/w) as an exact rational map.
    RationalMap infinity_conjugate() const;

    bool equals(const RationalMap& o, double tol = 1e-9) const;

private:
    Polynomial p_, q_;
    Polynomial rev_p_, rev_q_; // reversals padded to the common degree
    int degree_ = 0;
};

SpherePoint eval(const RationalMap& f, const SpherePoint& z);

Orbit iterate_orbit(const RationalMap& f, const SpherePoint& z0, int n,
                    double escape_radius);

// All 2d-2 critical points with multiplicity (roots of P'Q - PQ', plus the
// point at infinity with whatever multiplicity remains).
std::vector<SpherePoint> critical_points(const RationalMap& f);

// One chain-rule factor of the spherical derivative:
// |f'(z)| (1+|z|^2) / (1+|f(z)|^2). Multiplies along orbits and stays finite
// at poles and infinity. f_conj must be f.infinity_conjugate(), passed in so
// hot loops do not rebuild it.
double spherical_derivative_factor(const RationalMap& f, const RationalMap& f_conj,
                                   const SpherePoint& z);

} // namespace holodyn
