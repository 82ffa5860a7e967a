#pragma once

#include <vector>

#include "holodyn/sphere.hpp"

namespace holodyn {

// Dense univariate polynomial over complex doubles, coefficients stored
// lowest degree first. The zero polynomial has an empty coefficient list and
// degree -1 by convention.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial({Complex(1.0)}); }
    static Polynomial identity() { return Polynomial({Complex(0.0), Complex(1.0)}); }
    static Polynomial monomial(int k, const Complex& a = Complex(1.0));
    static Polynomial from_roots(const std::vector<Complex>& roots,
                                 const Complex& lead = Complex(1.0));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0.0);
    }
    Complex lead() const { return c_.empty() ? Complex(0.0) : c_.back(); }

    // Largest coefficient modulus; the reference scale for zero tests.
    double coeff_scale() const;
    bool has_real_coeffs(double tol = 1e-14) const;

    Complex operator()(const Complex& z) const; // Horner
    Complex eval_derivative(const Complex& z) const;

    Polynomial derivative() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Complex& s) const;
    Polynomial operator-() const { return *this * Complex(-1.0); }

    // f(g(z)) by Horner in g. Throws numeric_error if the result degree
    // would exceed max_degree or the coefficients overflow.
    Polynomial compose(const Polynomial& g, int max_degree = kComposeDegreeCap) const;

    // Substitute z -> z + x (exact Taylor shift).
    Polynomial shifted(const Complex& x) const;

    // Divide out (z - r) once; remainder is discarded (caller checks p(r)).
    Polynomial deflate(const Complex& r) const;

    // Euclidean division: *this = q * d + r with deg r < deg d.
    void divmod(const Polynomial& d, Polynomial& q, Polynomial& r) const;

    // Coefficients reversed after padding with zeros up to `degree`:
    // returns z^degree * p(1/z).
    Polynomial reversed(int degree) const;

    // Drop leading coefficients that are negligible relative to the scale.
    void trim(double rel_tol = 0.0);

    bool equals(const Polynomial& o, double tol) const;

    static constexpr int kComposeDegreeCap = 4096;

private:
    std::vector<Complex> c_;
};

} // namespace holodyn
