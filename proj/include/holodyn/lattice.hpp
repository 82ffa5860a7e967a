#pragma once

#include <vector>

#include "holodyn/rational_map.hpp"

namespace holodyn {

// A plane lattice {m lambda + n mu} with derived Weierstrass invariants.
// Construction reduces the basis, caches the nonzero lattice points inside
// the truncation radius, and computes g2 = 60 G4, g3 = 140 G6. The slowly
// convergent G4, G6 sums are recovered from the fast ones (G8, G10, G12)
// through the classical recursion G8 = 3/7 G4^2, G10 = 5/11 G4 G6,
// 143 G12 = 42 G4 G8 + 25 G6^2, with branches matched to the direct partial
// sums; everything stays a plain lattice sum.
struct LatticeSpec {
    Complex lambda, mu;
    Complex g2, g3;
    double truncation_radius = 0.0;
    std::vector<Complex> points; // nonzero lattice points, |w| <= radius
    Complex eisenstein_g4, eisenstein_g6;
};

// radius <= 0 picks the default 20 * max(|lambda|, |mu|).
LatticeSpec make_lattice(const Complex& lambda, const Complex& mu, double radius = 0.0);

// The square lattice whose invariants are (g2, 0) for real g2 > 0; the
// generator comes from the arithmetic-geometric mean of the period integral.
LatticeSpec square_lattice(double g2, double radius = 0.0);

// Weierstrass elliptic function by direct lattice sum after reducing z into
// the centered fundamental cell; the subtracted local expansion terms are
// added back through the invariants, leaving a tail far below the 1e-6
// accuracy target at the default radius. Throws on z within 1e-9 of a
// lattice point.
Complex weierstrass_p(const LatticeSpec& lat, const Complex& z);

// Degree-4 rational map R with P(2z) = R(P(z)):
// R(z) = (z^4 + g2 z^2/2 + 2 g3 z + (g2/4)^2) / (4z^3 - g2 z - g3).
// Requires nonzero discriminant g2^3 - 27 g3^2.
RationalMap lattes_weierstrass(const Complex& g2, const Complex& g3);

// The elliptic-sine-squared duplication map
// f(z) = 4z(1-z)(1-k^2 z) / (1 - k^2 z^2)^2 for modulus 0 < k < 1.
RationalMap lattes_sn(double k);

} // namespace holodyn
