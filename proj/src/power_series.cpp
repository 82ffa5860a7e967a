#include "holodyn/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/errors.hpp"

namespace holodyn {

PowerSeries PowerSeries::identity(size_t len) {
    std::vector<Complex> c(std::max<size_t>(len, 2), Complex(0.0));
    c[1] = Complex(1.0);
    c.resize(len, Complex(0.0));
    return PowerSeries(std::move(c));
}

Complex PowerSeries::operator()(const Complex& z) const {
    Complex acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

size_t PowerSeries::valuation(double rel_tol) const {
    double s = 0.0;
    for (const Complex& a : c) s = std::max(s, std::abs(a));
    for (size_t k = 0; k < c.size(); ++k)
        if (std::abs(c[k]) > rel_tol * s) return k;
    return c.size();
}

PowerSeries PowerSeries::truncated(size_t len) const {
    std::vector<Complex> out(c.begin(), c.begin() + std::min(len, c.size()));
    out.resize(len, Complex(0.0));
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::derivative() const {
    if (c.size() <= 1) return PowerSeries({Complex(0.0)});
    std::vector<Complex> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Complex(double(k));
    return PowerSeries(std::move(d));
}

PowerSeries PowerSeries::scaled_arg(const Complex& a) const {
    std::vector<Complex> out(c);
    Complex p(1.0);
    for (size_t k = 0; k < out.size(); ++k) {
        out[k] *= p;
        p *= a;
    }
    return PowerSeries(std::move(out));
}

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b, size_t len) {
    std::vector<Complex> out(len, Complex(0.0));
    for (size_t k = 0; k < len; ++k) out[k] = a.coeff(k) + b.coeff(k);
    return PowerSeries(std::move(out));
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b, size_t len) {
    std::vector<Complex> out(len, Complex(0.0));
    const size_t na = std::min(a.size(), len);
    for (size_t i = 0; i < na; ++i) {
        if (a.c[i] == Complex(0.0)) continue;
        const size_t nb = std::min(b.size(), len - i);
        for (size_t j = 0; j < nb; ++j) out[i + j] += a.c[i] * b.c[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries ps_inv(const PowerSeries& a, size_t len) {
    if (a.size() == 0 || a.c[0] == Complex(0.0))
        throw numeric_error("series reciprocal: zero constant term");
    std::vector<Complex> out(len, Complex(0.0));
    const Complex inv0 = Complex(1.0) / a.c[0];
    out[0] = inv0;
    for (size_t k = 1; k < len; ++k) {
        Complex s(0.0);
        for (size_t j = 1; j <= k; ++j) s += a.coeff(j) * out[k - j];
        out[k] = -s * inv0;
    }
    return PowerSeries(std::move(out));
}

PowerSeries ps_div(const PowerSeries& a, const PowerSeries& b, size_t len) {
    return ps_mul(a, ps_inv(b, len), len);
}

PowerSeries ps_log1(const PowerSeries& a, size_t len) {
    if (a.size() == 0 || std::abs(a.c[0] - Complex(1.0)) > 1e-12)
        throw numeric_error("series log: constant term must be 1");
    // log(a)' = a'/a, integrate term by term.
    PowerSeries q = ps_div(a.derivative(), a, len);
    std::vector<Complex> out(len, Complex(0.0));
    for (size_t k = 1; k < len; ++k) out[k] = q.coeff(k - 1) / Complex(double(k));
    return PowerSeries(std::move(out));
}

PowerSeries ps_exp0(const PowerSeries& a, size_t len) {
    if (a.size() > 0 && std::abs(a.c[0]) > 1e-12)
        throw numeric_error("series exp: constant term must be 0");
    // e' = a' e, solved coefficientwise.
    std::vector<Complex> out(len, Complex(0.0));
    out[0] = Complex(1.0);
    for (size_t k = 1; k < len; ++k) {
        Complex s(0.0);
        for (size_t j = 1; j <= k; ++j)
            s += Complex(double(j)) * a.coeff(j) * out[k - j];
        out[k] = s / Complex(double(k));
    }
    return PowerSeries(std::move(out));
}

PowerSeries ps_pow1(const PowerSeries& a, const Complex& e, size_t len) {
    PowerSeries l = ps_log1(a, len);
    for (Complex& x : l.c) x *= e;
    return ps_exp0(l, len);
}

PowerSeries ps_compose(const PowerSeries& a, const PowerSeries& b, size_t len) {
    if (b.size() > 0 && std::abs(b.c[0]) > 1e-12)
        throw numeric_error("series compose: inner series must vanish at 0");
    // Horner over the coefficients of a.
    PowerSeries inner = b.truncated(len);
    inner.c[0] = Complex(0.0);
    const size_t na = std::min(a.size(), len);
    PowerSeries res(std::vector<Complex>(len, Complex(0.0)));
    for (size_t k = na; k-- > 0;) {
        res = ps_mul(res, inner, len);
        res.c[0] += a.c[k];
    }
    return res;
}

PowerSeries ps_revert(const PowerSeries& a, size_t len) {
    if (a.size() < 2 || std::abs(a.coeff(0)) > 1e-12 || a.c[1] == Complex(0.0))
        throw numeric_error("series reversion: need a(0)=0, a'(0)!=0");
    // Newton iteration on g: a(g(z)) = z, doubling the correct order.
    std::vector<Complex> g0(2, Complex(0.0));
    g0[1] = Complex(1.0) / a.c[1];
    PowerSeries g(std::move(g0));
    size_t cur = 2;
    while (cur < len) {
        cur = std::min(len, cur * 2);
        g = g.truncated(cur);
        PowerSeries err = ps_compose(a.truncated(cur), g, cur); // = z + e(z)
        err.c[1] -= Complex(1.0);
        PowerSeries da = ps_compose(a.derivative().truncated(cur), g, cur);
        PowerSeries corr = ps_div(err, da, cur);
        for (size_t k = 0; k < cur; ++k) g.c[k] -= corr.coeff(k);
    }
    return g.truncated(len);
}

} // namespace holodyn
