#pragma once

#include <vector>

#include "holodyn/polynomial.hpp"
#include "holodyn/sphere.hpp"

namespace holodyn {

// Truncated power series around 0: c[0] + c[1] z + ... + c[n] z^n. All
// operations truncate to the requested number of terms (length = degree+1).
struct PowerSeries {
    std::vector<Complex> c;

    PowerSeries() = default;
    explicit PowerSeries(std::vector<Complex> coeffs) : c(std::move(coeffs)) {}
    static PowerSeries identity(size_t len);

    size_t size() const { return c.size(); }
    Complex coeff(size_t k) const { return k < c.size() ? c[k] : Complex(0.0); }
    Complex operator()(const Complex& z) const;

    // Index of the first coefficient that is not negligible relative to the
    // largest one; returns size() for the zero series.
    size_t valuation(double rel_tol = 1e-13) const;

    PowerSeries truncated(size_t len) const;
    PowerSeries derivative() const;

    // Substitute z -> a z.
    PowerSeries scaled_arg(const Complex& a) const;

    Polynomial to_polynomial() const { return Polynomial(c); }
};

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b, size_t len);
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b, size_t len);
// Reciprocal; requires a.c[0] != 0.
PowerSeries ps_inv(const PowerSeries& a, size_t len);
PowerSeries ps_div(const PowerSeries& a, const PowerSeries& b, size_t len);
// log of a series with constant term 1.
PowerSeries ps_log1(const PowerSeries& a, size_t len);
// exp of a series with constant term 0.
PowerSeries ps_exp0(const PowerSeries& a, size_t len);
// (series with constant term 1)^e for arbitrary complex exponent e.
PowerSeries ps_pow1(const PowerSeries& a, const Complex& e, size_t len);
// a(b(z)); requires b(0) = 0.
PowerSeries ps_compose(const PowerSeries& a, const PowerSeries& b, size_t len);
// Compositional inverse of a = z + ...: requires a[0] = 0, a[1] != 0.
PowerSeries ps_revert(const PowerSeries& a, size_t len);

} // namespace holodyn
