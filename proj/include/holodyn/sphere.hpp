#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>

namespace holodyn {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// A point of the Riemann sphere: a finite complex number or the point at
// infinity. Comparisons go through the chordal metric, which is bounded by 2.
class SpherePoint {
public:
    SpherePoint() : z_(0.0, 0.0), infinite_(false) {}
    SpherePoint(const Complex& z) : z_(z), infinite_(!holodyn::is_finite(z)) {}
    SpherePoint(double x) : z_(x, 0.0), infinite_(!std::isfinite(x)) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Only meaningful for finite points.
    const Complex& value() const { return z_; }

    std::string str() const;

private:
    Complex z_;
    bool infinite_;
};

// Chordal distance on the sphere under the stereographic embedding.
// Symmetric, satisfies the triangle inequality, and never exceeds 2.
inline double chordal(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_infinity() && b.is_infinity()) return 0.0;
    if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    const double num = 2.0 * std::abs(a.value() - b.value());
    return num / std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

inline double chordal(const Complex& a, const Complex& b) {
    return chordal(SpherePoint(a), SpherePoint(b));
}

// Lexicographic order (re, im) with infinity sorted last; used everywhere a
// deterministic merge of point sets is required.
inline bool sphere_less(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    if (a.value().real() != b.value().real()) return a.value().real() < b.value().real();
    return a.value().imag() < b.value().imag();
}

inline std::string SpherePoint::str() const {
    if (infinite_) return "inf";
    std::string s = std::to_string(z_.real());
    s += (z_.imag() < 0 ? "-" : "+") + std::to_string(std::abs(z_.imag())) + "i";
    return s;
}

} // namespace holodyn
