#include "holodyn/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

void rescale(Complex& a, Complex& b, Complex& c, Complex& d) {
    const double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (s == 0.0) return;
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

} // namespace

MoebiusMap::MoebiusMap(const Complex& A, const Complex& B, const Complex& C, const Complex& D)
    : a(A), b(B), c(C), d(D) {
    rescale(a, b, c, d);
    const double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (std::abs(det()) <= 1e-14 * s * s)
        throw numeric_error("moebius: AD - BC vanishes, map is degenerate");
}

SpherePoint MoebiusMap::operator()(const SpherePoint& z) const {
    if (z.is_infinity()) {
        if (std::abs(c) == 0.0) return SpherePoint::infinity();
        return SpherePoint(a / c);
    }
    const Complex num = a * z.value() + b;
    const Complex den = c * z.value() + d;
    if (std::abs(den) == 0.0) return SpherePoint::infinity();
    const Complex v = num / den;
    return is_finite(v) ? SpherePoint(v) : SpherePoint::infinity();
}

Complex MoebiusMap::derivative_at(const Complex& z) const {
    const Complex den = c * z + d;
    return det() / (den * den);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    return MoebiusMap(a * o.a + b * o.c, a * o.b + b * o.d,
                      c * o.a + d * o.c, c * o.b + d * o.d);
}

bool MoebiusMap::is_identity(double tol) const {
    return std::abs(b) <= tol && std::abs(c) <= tol && std::abs(a - d) <= tol;
}

bool MoebiusMap::equals(const MoebiusMap& o, double tol) const {
    // Compare a/o as projective matrices: cross products must vanish.
    const Complex v1[4] = {a, b, c, d};
    const Complex v2[4] = {o.a, o.b, o.c, o.d};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(v1[i] * v2[j] - v1[j] * v2[i]) > tol) return false;
    return true;
}

std::string to_string(MoebiusClass c) {
    switch (c) {
        case MoebiusClass::identity_like: return "identity-like";
        case MoebiusClass::parabolic: return "parabolic";
        case MoebiusClass::elliptic_rational: return "elliptic-rational";
        case MoebiusClass::elliptic_irrational: return "elliptic-irrational";
        case MoebiusClass::loxodromic: return "loxodromic";
    }
    return "?";
}

std::vector<SpherePoint> moebius_fixed_points(const MoebiusMap& m) {
    const double tol = 1e-12;
    if (std::abs(m.c) <= tol) {
        // Affine: infinity is always fixed.
        if (std::abs(m.a - m.d) <= tol * std::max(std::abs(m.a), std::abs(m.d)))
            return {SpherePoint::infinity()}; // translation or identity
        return {SpherePoint(m.b / (m.d - m.a)), SpherePoint::infinity()};
    }
    // c z^2 + (d - a) z - b = 0
    const Complex A = m.c, B = m.d - m.a, C = -m.b;
    const Complex disc = B * B - 4.0 * A * C;
    const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    if (std::abs(disc) <= 1e-24 * scale * scale) return {SpherePoint(-B / (2.0 * A))};
    const Complex sq = std::sqrt(disc);
    const Complex s = (std::real(std::conj(B) * sq) >= 0.0) ? sq : -sq;
    const Complex q = -0.5 * (B + s);
    std::vector<SpherePoint> fps{SpherePoint(q / A), SpherePoint(C / q)};
    if (sphere_less(fps[1], fps[0])) std::swap(fps[0], fps[1]);
    return fps;
}

std::optional<std::pair<long long, long long>> rational_angle(double x, int depth, double tol) {
    // Continued fraction of x; accept the first convergent p/q within tol.
    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1; // convergents p/q
    double y = x;
    for (int k = 0; k < depth; ++k) {
        const double fl = std::floor(y);
        if (fl > 1e15 || fl < -1e15) break;
        const long long ai = static_cast<long long>(fl);
        if (std::abs(double(ai)) * std::max(std::abs(double(p0)), std::abs(double(q0))) > 1e15)
            break;
        const long long p2 = ai * p0 + p1;
        const long long q2 = ai * q0 + q1;
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        if (q0 != 0 && std::abs(x - double(p0) / double(q0)) < tol)
            return std::make_pair(p0, q0);
        const double frac = y - fl;
        if (frac < 1e-18) break;
        y = 1.0 / frac;
    }
    return std::nullopt;
}

MoebiusClassification moebius_classify(const MoebiusMap& m) {
    MoebiusClassification out;
    out.multiplier_ratio = Complex(1.0);
    if (m.is_identity()) {
        out.kind = MoebiusClass::identity_like;
        out.period = 1;
        return out;
    }
    out.fixed_points = moebius_fixed_points(m);
    if (out.fixed_points.size() == 1) {
        out.kind = MoebiusClass::parabolic;
        return out;
    }
    // Multiplier at the first fixed point; equals (C r2 + D)/(C r1 + D).
    const SpherePoint& r1 = out.fixed_points[0];
    Complex kappa;
    if (r1.is_infinity())
        kappa = m.d / m.a; // conjugate chart at infinity: w -> (d w + ...)/(..
    else
        kappa = m.derivative_at(r1.value());
    out.multiplier_ratio = kappa;

    if (std::abs(std::abs(kappa) - 1.0) > 1e-9) {
        out.kind = MoebiusClass::loxodromic;
        return out;
    }
    const double angle = std::arg(kappa) / (2.0 * std::numbers::pi);
    if (auto pq = rational_angle(angle)) {
        out.kind = MoebiusClass::elliptic_rational;
        out.period = static_cast<int>(std::llabs(pq->second));
        if (out.period == 0) out.period = 1;
        return out;
    }
    out.kind = MoebiusClass::elliptic_irrational;
    return out;
}

MoebiusMap moebius_iterate_closed(const MoebiusMap& m, int n) {
    if (n < 0) throw numeric_error("moebius_iterate_closed: n must be >= 0");
    if (n == 0) return MoebiusMap::identity();

    const Complex tr = m.a + m.d;
    const Complex det = m.det();
    const Complex disc = tr * tr - 4.0 * det;

    auto mat_to_map = [](Complex A, Complex B, Complex C, Complex D) {
        return MoebiusMap(A, B, C, D);
    };

    if (std::abs(disc) <= 1e-24) {
        // Single eigenvalue s = tr/2; M = s (I + N) with N^2 = 0, so
        // M^n = s^n (I + n N).
        const Complex s = tr / 2.0;
        const Complex nA = m.a / s - 1.0, nB = m.b / s;
        const Complex nC = m.c / s, nD = m.d / s - 1.0;
        const Complex k = Complex(double(n));
        return mat_to_map(s * (1.0 + k * nA), s * (k * nB),
                          s * (k * nC), s * (1.0 + k * nD));
    }

    const Complex sq = std::sqrt(disc);
    const Complex l1 = (tr + sq) / 2.0;
    const Complex l2 = (tr - sq) / 2.0;
    // Eigenvectors: (b, l - a) or (l - d, c), whichever is better scaled.
    auto eigvec = [&](const Complex& l, Complex& x, Complex& y) {
        const Complex x1 = m.b, y1 = l - m.a;
        const Complex x2 = l - m.d, y2 = m.c;
        if (std::abs(x1) + std::abs(y1) >= std::abs(x2) + std::abs(y2)) {
            x = x1;
            y = y1;
        } else {
            x = x2;
            y = y2;
        }
    };
    Complex x1, y1, x2, y2;
    eigvec(l1, x1, y1);
    eigvec(l2, x2, y2);

    const Complex p1 = std::pow(l1, double(n));
    const Complex p2 = std::pow(l2, double(n));
    // V diag(p1,p2) V^{-1} up to the global 1/det(V) factor, which a
    // Moebius map ignores.
    const Complex A = p1 * x1 * y2 - p2 * x2 * y1;
    const Complex B = (p2 - p1) * x1 * x2;
    const Complex C = (p1 - p2) * y1 * y2;
    const Complex D = p2 * x1 * y2 - p1 * x2 * y1;
    return mat_to_map(A, B, C, D);
}

QuadraticNormalForm normalize_quadratic(const Complex& A, const Complex& B, const Complex& C) {
    if (std::abs(A) == 0.0)
        throw numeric_error("normalize_quadratic: A = 0, the map is not quadratic");
    QuadraticNormalForm out;
    out.t = A * C - B * B + B;
    out.omega1 = MoebiusMap(Complex(1.0), -B, Complex(0.0), A); // (z - B)/A
    out.omega2 = MoebiusMap(A, B, Complex(0.0), Complex(1.0));  // A z + B
    return out;
}

} // namespace holodyn
