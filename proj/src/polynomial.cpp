#include "holodyn/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/errors.hpp"

namespace holodyn {

Polynomial Polynomial::monomial(int k, const Complex& a) {
    std::vector<Complex> c(static_cast<size_t>(k) + 1, Complex(0.0));
    c.back() = a;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, const Complex& lead) {
    Polynomial p({lead});
    for (const Complex& r : roots) p = p * Polynomial({-r, Complex(1.0)});
    return p;
}

double Polynomial::coeff_scale() const {
    double s = 0.0;
    for (const Complex& a : c_) s = std::max(s, std::abs(a));
    return s;
}

bool Polynomial::has_real_coeffs(double tol) const {
    const double s = coeff_scale();
    for (const Complex& a : c_)
        if (std::abs(a.imag()) > tol * s) return false;
    return true;
}

Complex Polynomial::operator()(const Complex& z) const {
    Complex acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex Polynomial::eval_derivative(const Complex& z) const {
    Complex acc(0.0);
    for (int k = degree(); k >= 1; --k) acc = acc * z + c_[k] * Complex(double(k));
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Complex(double(k));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Complex> r(std::max(c_.size(), o.c_.size()), Complex(0.0));
    for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    Polynomial p(std::move(r));
    p.trim(1e-15);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Complex> r(c_.size() + o.c_.size() - 1, Complex(0.0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Complex& s) const {
    std::vector<Complex> r(c_);
    for (Complex& a : r) a *= s;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::compose(const Polynomial& g, int max_degree) const {
    if (is_zero()) return Polynomial();
    const long long want = static_cast<long long>(std::max(degree(), 0)) *
                           static_cast<long long>(std::max(g.degree(), 0));
    if (want > max_degree)
        throw numeric_error("compose: result degree " + std::to_string(want) +
                            " exceeds cap " + std::to_string(max_degree));
    Polynomial acc({c_.back()});
    for (int k = degree() - 1; k >= 0; --k) acc = acc * g + Polynomial({c_[k]});
    for (const Complex& a : acc.c_)
        if (!is_finite(a)) throw numeric_error("compose: coefficient overflow, degree too large");
    return acc;
}

Polynomial Polynomial::shifted(const Complex& x) const {
    // Repeated synthetic division collects the Taylor coefficients of p(z+x).
    std::vector<Complex> w(c_);
    const int n = degree();
    for (int k = 0; k < n; ++k)
        for (int i = n - 1; i >= k; --i) w[i] += x * w[i + 1];
    return Polynomial(std::move(w));
}

Polynomial Polynomial::deflate(const Complex& r) const {
    if (degree() < 1) return Polynomial();
    std::vector<Complex> q(c_.size() - 1);
    Complex carry = c_.back();
    for (int k = degree() - 1; k >= 0; --k) {
        q[k] = carry;
        carry = c_[k] + carry * r;
    }
    return Polynomial(std::move(q));
}

void Polynomial::divmod(const Polynomial& d, Polynomial& q, Polynomial& r) const {
    if (d.is_zero()) throw numeric_error("divmod: division by zero polynomial");
    std::vector<Complex> rem(c_);
    const int dd = d.degree();
    const Complex inv = Complex(1.0) / d.lead();
    std::vector<Complex> quot(std::max<int>(degree() - dd + 1, 0), Complex(0.0));
    for (int k = degree(); k >= dd; --k) {
        const Complex f = rem[k] * inv;
        quot[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    if (!rem.empty()) rem.resize(dd > 0 ? dd : 0);
    q = Polynomial(std::move(quot));
    r = Polynomial(std::move(rem));
    r.trim(1e-14);
}

Polynomial Polynomial::reversed(int degree) const {
    std::vector<Complex> r(static_cast<size_t>(degree) + 1, Complex(0.0));
    for (size_t k = 0; k < c_.size(); ++k) {
        if (static_cast<int>(k) > degree) break;
        r[degree - k] = c_[k];
    }
    return Polynomial(std::move(r));
}

void Polynomial::trim(double rel_tol) {
    double s = 0.0;
    for (const Complex& a : c_) s = std::max(s, std::abs(a));
    const double cut = s * rel_tol;
    while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
}

bool Polynomial::equals(const Polynomial& o, double tol) const {
    const double s = std::max({coeff_scale(), o.coeff_scale(), 1.0});
    const size_t n = std::max(c_.size(), o.c_.size());
    for (size_t k = 0; k < n; ++k)
        if (std::abs(coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k))) > tol * s)
            return false;
    return true;
}

} // namespace holodyn
