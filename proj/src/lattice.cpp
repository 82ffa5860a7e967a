#include "holodyn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

// Lagrange-Gauss reduction of the basis: shortest vectors, |Re <mu,lambda>|
// at most |lambda|^2 / 2.
void reduce_basis(Complex& lambda, Complex& mu) {
    for (int it = 0; it < 64; ++it) {
        if (std::abs(mu) < std::abs(lambda)) std::swap(lambda, mu);
        const double t = std::round((mu.real() * lambda.real() + mu.imag() * lambda.imag()) /
                                    std::norm(lambda));
        if (t == 0.0) break;
        mu -= t * lambda;
    }
    if (std::abs(mu) < std::abs(lambda)) std::swap(lambda, mu);
}

Complex sum_inverse_power(const std::vector<Complex>& pts, int k) {
    Complex acc(0.0);
    for (const Complex& w : pts) {
        Complex p(1.0);
        const Complex inv = Complex(1.0) / w;
        for (int i = 0; i < k; ++i) p *= inv;
        acc += p;
    }
    return acc;
}

Complex branch_match(const Complex& magnitude_fixed, const Complex& direct) {
    // magnitude_fixed is one square root; flip the sign to sit nearer the
    // direct partial sum.
    return (std::abs(magnitude_fixed - direct) <= std::abs(-magnitude_fixed - direct))
               ? magnitude_fixed
               : -magnitude_fixed;
}

} // namespace

LatticeSpec make_lattice(const Complex& lambda_in, const Complex& mu_in, double radius) {
    LatticeSpec lat;
    lat.lambda = lambda_in;
    lat.mu = mu_in;
    const Complex ratio = mu_in / lambda_in;
    if (!(std::abs(ratio.imag()) > 1e-12))
        throw numeric_error("lattice: generators are real multiples of each other");
    reduce_basis(lat.lambda, lat.mu);
    const double scale = std::max(std::abs(lat.lambda), std::abs(lat.mu));
    lat.truncation_radius = (radius > 0.0) ? radius : 20.0 * scale;

    // Enumerate m lambda + n mu inside the radius; the index bounds come from
    // the dual basis: |m| <= |mu| r / area, |n| <= |lambda| r / area.
    const double area = std::abs(lat.lambda.real() * lat.mu.imag() -
                                 lat.lambda.imag() * lat.mu.real());
    const double r = lat.truncation_radius;
    const long mm = static_cast<long>(std::ceil(std::abs(lat.mu) * r / area)) + 1;
    const long nn = static_cast<long>(std::ceil(std::abs(lat.lambda) * r / area)) + 1;
    for (long m = -mm; m <= mm; ++m)
        for (long n = -nn; n <= nn; ++n) {
            if (m == 0 && n == 0) continue;
            const Complex w = double(m) * lat.lambda + double(n) * lat.mu;
            if (std::abs(w) <= r) lat.points.push_back(w);
        }
    std::sort(lat.points.begin(), lat.points.end(), [](const Complex& a, const Complex& b) {
        const double na = std::norm(a), nb = std::norm(b);
        if (na != nb) return na > nb; // sum small terms last-to-first
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    const Complex g8 = sum_inverse_power(lat.points, 8);
    const Complex g10 = sum_inverse_power(lat.points, 10);
    const Complex g12 = sum_inverse_power(lat.points, 12);
    const Complex g4_direct = sum_inverse_power(lat.points, 4);
    const Complex g6_direct = sum_inverse_power(lat.points, 6);

    Complex G4 = branch_match(std::sqrt(g8 * (7.0 / 3.0)), g4_direct);
    Complex G6;
    if (std::abs(G4) > 1e-8) {
        G6 = g10 * (11.0 / 5.0) / G4;
    } else {
        G4 = Complex(0.0);
        G6 = branch_match(std::sqrt(143.0 * g12 / 25.0), g6_direct);
    }
    lat.eisenstein_g4 = G4;
    lat.eisenstein_g6 = G6;
    lat.g2 = 60.0 * G4;
    lat.g3 = 140.0 * G6;
    return lat;
}

LatticeSpec square_lattice(double g2, double radius) {
    if (!(g2 > 0.0)) throw numeric_error("square_lattice: g2 must be positive");
    // Roots of 4t^3 - g2 t: e1 = sqrt(g2)/2, e2 = 0, e3 = -e1. The real
    // half-period is pi / (2 AGM(sqrt(e1-e3), sqrt(e1-e2))).
    const double e1 = std::sqrt(g2) / 2.0;
    double a = std::sqrt(2.0 * e1), b = std::sqrt(e1);
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    const double period = std::numbers::pi / a; // = 2 * half-period
    return make_lattice(Complex(period), Complex(0.0, period), radius);
}

Complex weierstrass_p(const LatticeSpec& lat, const Complex& z_in) {
    // Reduce into the centered fundamental cell.
    const double area = lat.lambda.real() * lat.mu.imag() - lat.lambda.imag() * lat.mu.real();
    const double ca = (z_in.real() * lat.mu.imag() - z_in.imag() * lat.mu.real()) / area;
    const double cb = (lat.lambda.real() * z_in.imag() - lat.lambda.imag() * z_in.real()) / area;
    const Complex z = z_in - std::round(ca) * lat.lambda - std::round(cb) * lat.mu;
    if (std::abs(z) < 1e-9)
        throw numeric_error("weierstrass_p: z is within 1e-9 of a lattice point");

    const Complex z2 = z * z, z3 = z2 * z, z4 = z2 * z2;
    Complex acc(0.0);
    for (const Complex& w : lat.points) {
        const Complex d = z - w;
        const Complex iw = Complex(1.0) / w;
        const Complex iw2 = iw * iw;
        const Complex iw3 = iw2 * iw;
        const Complex iw4 = iw2 * iw2;
        const Complex term = Complex(1.0) / (d * d) - iw2 - 2.0 * z * iw3 - 3.0 * z2 * iw4 -
                             4.0 * z3 * iw4 * iw - 5.0 * z4 * iw4 * iw2;
        acc += term;
    }
    // Add back the subtracted orders over the full lattice: the odd ones
    // vanish by symmetry, the even ones are Eisenstein values.
    return Complex(1.0) / z2 + acc + 3.0 * z2 * lat.eisenstein_g4 + 5.0 * z4 * lat.eisenstein_g6;
}

RationalMap lattes_weierstrass(const Complex& g2, const Complex& g3) {
    const Complex disc = g2 * g2 * g2 - 27.0 * g3 * g3;
    const double scale = std::max({std::pow(std::abs(g2), 3.0), std::abs(g3) * std::abs(g3), 1e-30});
    if (std::abs(disc) <= 1e-12 * scale)
        throw numeric_error("lattes_weierstrass: discriminant g2^3 - 27 g3^2 vanishes");
    const Complex quarter = g2 / 4.0;
    Polynomial num({quarter * quarter, 2.0 * g3, g2 / 2.0, Complex(0.0), Complex(1.0)});
    Polynomial den({-g3, -g2, Complex(0.0), Complex(4.0)});
    return RationalMap(std::move(num), std::move(den));
}

RationalMap lattes_sn(double k) {
    if (!(k > 0.0 && k < 1.0)) throw numeric_error("lattes_sn: modulus must lie in (0,1)");
    const double k2 = k * k;
    Polynomial num({0.0, 4.0, -4.0 * (1.0 + k2), 4.0 * k2});
    Polynomial den({1.0, 0.0, -2.0 * k2, 0.0, k2 * k2});
    return RationalMap(std::move(num), std::move(den));
}

} // namespace holodyn
