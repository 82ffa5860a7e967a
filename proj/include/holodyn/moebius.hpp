#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holodyn/sphere.hpp"

namespace holodyn {

// z -> (A z + B) / (C z + D) with AD - BC != 0. Coefficients are rescaled so
// the largest modulus is 1, which keeps repeated matrix products stable.
struct MoebiusMap {
    Complex a, b, c, d;

    MoebiusMap() : a(1.0), b(0.0), c(0.0), d(1.0) {}
    MoebiusMap(const Complex& A, const Complex& B, const Complex& C, const Complex& D);

    static MoebiusMap identity() { return MoebiusMap(); }
    static MoebiusMap affine(const Complex& scale, const Complex& shift) {
        return MoebiusMap(scale, shift, Complex(0.0), Complex(1.0));
    }
    // z -> 1/(z - p): sends p to infinity and infinity to 0.
    static MoebiusMap inversion_about(const Complex& p) {
        return MoebiusMap(Complex(0.0), Complex(1.0), Complex(1.0), -p);
    }

    Complex det() const { return a * d - b * c; }
    SpherePoint operator()(const SpherePoint& z) const;
    Complex derivative_at(const Complex& z) const;

    MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }
    MoebiusMap compose(const MoebiusMap& o) const; // this after o
    bool is_identity(double tol = 1e-12) const;

    // Agreement as maps (cross-ratio of coefficient matrices), not as raw
    // coefficient tuples.
    bool equals(const MoebiusMap& o, double tol = 1e-10) const;
};

enum class MoebiusClass {
    identity_like,
    parabolic,
    elliptic_rational,
    elliptic_irrational,
    loxodromic,
};

struct MoebiusClassification {
    MoebiusClass kind;
    std::vector<SpherePoint> fixed_points; // one entry when parabolic
    Complex multiplier_ratio;              // kappa; 1 for identity/parabolic
    int period = 0;                        // iterative period, elliptic-rational only
};

std::string to_string(MoebiusClass c);

// Both fixed points on the sphere (coincident point reported once).
std::vector<SpherePoint> moebius_fixed_points(const MoebiusMap& m);

// Classification by the multiplier ratio kappa at a fixed point: |kappa| = 1
// with rational angle gives finite iterative period (the denominator of the
// rotation number), irrational angle an irrational rotation, anything else
// is loxodromic. Rationality is decided by a continued-fraction expansion of
// arg(kappa)/2pi (depth 12, tolerance 1e-10).
MoebiusClassification moebius_classify(const MoebiusMap& m);

// n-th iterate in closed form via the coefficient matrix power
// (eigendecomposition, or the Jordan form in the parabolic case).
MoebiusMap moebius_iterate_closed(const MoebiusMap& m, int n);

// Best rational approximation p/q of x with q <= the continued-fraction
// depth bound; returns nullopt when no denominator within depth matches x
// to tol.
std::optional<std::pair<long long, long long>> rational_angle(double x, int depth = 12,
                                                              double tol = 1e-10);

// Canonical form of the quadratic A z^2 + 2 B z + C: the conjugating affine
// pair omega1(z) = (z - B)/A, omega2(z) = A z + B transports its iteration
// to that of z^2 + T with T = AC - B^2 + B.
struct QuadraticNormalForm {
    Complex t;
    MoebiusMap omega1; // satisfies f(omega1(z)) = omega1(z^2 + T)
    MoebiusMap omega2; // satisfies omega2(f(z)) = omega2(z)^2 + T
};

QuadraticNormalForm normalize_quadratic(const Complex& A, const Complex& B, const Complex& C);

} // namespace holodyn
