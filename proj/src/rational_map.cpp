#include "holodyn/rational_map.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

// Remove shared roots of p and q by root matching on the denominator. A
// denominator root counts as a root of p when the residual is tiny relative
// to the coefficient scale AND the Newton correction says an actual root of
// p lies within tolerance; the distance test keeps near-power numerators
// (every symbolic iterate has that shape) from triggering false deflations.
void reduce_coprime(Polynomial& p, Polynomial& q) {
    if (p.is_zero()) return;
    for (int guard = 0; guard < 2 * (q.degree() + 1) && q.degree() >= 1; ++guard) {
        bool removed = false;
        std::vector<Complex> qroots;
        try {
            qroots = poly_roots(q);
        } catch (const numeric_error&) {
            return; // leave as-is; eval guards catch true 0/0 later
        }
        for (const Complex& r : qroots) {
            if (std::abs(p(r)) >= 1e-9 * residual_scale(p, r)) continue;
            const Complex der = p.eval_derivative(r);
            const double dist = (std::abs(der) > 0.0)
                                    ? std::abs(p(r) / der)
                                    : 0.0; // flat derivative: multiple root right here
            if (dist < 1e-8 * (1.0 + std::abs(r))) {
                p = p.deflate(r);
                q = q.deflate(r);
                removed = true;
                break;
            }
        }
        if (!removed) break;
    }
}

} // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den) : p_(std::move(num)), q_(std::move(den)) {
    if (q_.is_zero()) throw numeric_error("rational map: denominator is identically zero");
    p_.trim(1e-14);
    q_.trim(1e-14);
    reduce_coprime(p_, q_);
    const double s = std::max(p_.coeff_scale(), q_.coeff_scale());
    if (s > 0.0) {
        const Complex inv(1.0 / s);
        p_ = p_ * inv;
        q_ = q_ * inv;
    }
    degree_ = std::max(p_.degree(), q_.degree());
    if (degree_ < 0) degree_ = 0;
    rev_p_ = p_.reversed(degree_);
    rev_q_ = q_.reversed(degree_);
}

RationalMap RationalMap::from_moebius(const MoebiusMap& m) {
    return RationalMap(Polynomial({m.b, m.a}), Polynomial({m.d, m.c}));
}

Polynomial RationalMap::as_polynomial() const {
    if (!is_polynomial()) throw numeric_error("as_polynomial: map has a nontrivial denominator");
    return p_ * (Complex(1.0) / q_.coeff(0));
}

SpherePoint RationalMap::operator()(const SpherePoint& z) const {
    return eval(*this, z);
}

SpherePoint eval(const RationalMap& f, const SpherePoint& zp) {
    if (zp.is_infinity()) {
        // f(1/w) = revP(w)/revQ(w) evaluated at w = 0.
        const Complex pn = f.rev_num().coeff(0);
        const Complex qn = f.rev_den().coeff(0);
        if (std::abs(qn) == 0.0) return SpherePoint::infinity();
        const Complex v = pn / qn;
        return is_finite(v) ? SpherePoint(v) : SpherePoint::infinity();
    }
    // Horner on |argument| <= 1 never overflows (coefficients are
    // normalized), so switch to the reversal beyond the unit circle.
    const Complex z = zp.value();
    const bool reversed = std::abs(z) > 1.0;
    const Complex w = reversed ? Complex(1.0) / z : z;
    const Polynomial& num = reversed ? f.rev_num() : f.num();
    const Polynomial& den = reversed ? f.rev_den() : f.den();
    const Complex pv = num(w);
    const Complex qv = den(w);
    if (std::abs(qv) == 0.0) {
        if (std::abs(pv) <= 1e-14 * residual_scale(num, w))
            throw numeric_error("eval: 0/0, map violates the coprimality invariant");
        return SpherePoint::infinity();
    }
    const Complex v = pv / qv;
    return is_finite(v) ? SpherePoint(v) : SpherePoint::infinity();
}

Complex RationalMap::derivative_at(const Complex& z) const {
    const Complex pv = p_(z), qv = q_(z);
    const Complex dp = p_.eval_derivative(z), dq = q_.eval_derivative(z);
    return (dp * qv - pv * dq) / (qv * qv);
}

RationalMap RationalMap::derivative() const {
    const Polynomial w = p_.derivative() * q_ - p_ * q_.derivative();
    return RationalMap(w, q_ * q_);
}

RationalMap RationalMap::compose(const RationalMap& g, int max_degree) const {
    const long long want = static_cast<long long>(degree_) * g.degree();
    if (want > max_degree)
        throw numeric_error("compose: degree " + std::to_string(want) + " exceeds cap " +
                            std::to_string(max_degree));
    const int d = degree_;
    // Powers of g's numerator and denominator up to d.
    std::vector<Polynomial> np(d + 1), dp(d + 1);
    np[0] = Polynomial::one();
    dp[0] = Polynomial::one();
    for (int k = 1; k <= d; ++k) {
        np[k] = np[k - 1] * g.num();
        dp[k] = dp[k - 1] * g.den();
    }
    Polynomial num, den;
    for (int i = 0; i <= d; ++i) {
        if (i <= p_.degree() && std::abs(p_.coeff(i)) > 0.0)
            num = num + np[i] * dp[d - i] * p_.coeff(i);
        if (i <= q_.degree() && std::abs(q_.coeff(i)) > 0.0)
            den = den + np[i] * dp[d - i] * q_.coeff(i);
    }
    for (const Complex& c : num.coeffs())
        if (!is_finite(c)) throw numeric_error("compose: coefficient overflow");
    for (const Complex& c : den.coeffs())
        if (!is_finite(c)) throw numeric_error("compose: coefficient overflow");
    return RationalMap(num, den);
}

RationalMap RationalMap::precompose(const MoebiusMap& m) const {
    const Polynomial n({m.b, m.a});
    const Polynomial dd({m.d, m.c});
    const int d = degree_;
    std::vector<Polynomial> np(d + 1), dp(d + 1);
    np[0] = Polynomial::one();
    dp[0] = Polynomial::one();
    for (int k = 1; k <= d; ++k) {
        np[k] = np[k - 1] * n;
        dp[k] = dp[k - 1] * dd;
    }
    Polynomial num, den;
    for (int i = 0; i <= d; ++i) {
        if (std::abs(p_.coeff(i)) > 0.0) num = num + np[i] * dp[d - i] * p_.coeff(i);
        if (std::abs(q_.coeff(i)) > 0.0) den = den + np[i] * dp[d - i] * q_.coeff(i);
    }
    return RationalMap(num, den);
}

RationalMap RationalMap::postcompose(const MoebiusMap& m) const {
    return RationalMap(p_ * m.a + q_ * m.b, p_ * m.c + q_ * m.d);
}

RationalMap RationalMap::conjugated(const MoebiusMap& m) const {
    return precompose(m.inverse()).postcompose(m);
}

PowerSeries RationalMap::taylor_at(const Complex& x, size_t len) const {
    const Polynomial ps = p_.shifted(x);
    const Polynomial qs = q_.shifted(x);
    if (std::abs(qs.coeff(0)) <= 1e-14 * qs.coeff_scale())
        throw numeric_error("taylor_at: expansion point is a pole");
    return ps_div(PowerSeries(ps.coeffs()), PowerSeries(qs.coeffs()), len);
}

PowerSeries RationalMap::taylor_at_infinity_conjugate(size_t len) const {
    if (std::abs(rev_p_.coeff(0)) <= 1e-14 * rev_p_.coeff_scale())
        throw numeric_error("taylor at infinity: infinity is not fixed");
    return ps_div(PowerSeries(rev_q_.coeffs()), PowerSeries(rev_p_.coeffs()), len);
}

RationalMap RationalMap::infinity_conjugate() const {
    return RationalMap(rev_q_, rev_p_);
}

bool RationalMap::equals(const RationalMap& o, double tol) const {
    // Cross-multiplied coefficient comparison: P1 Q2 - P2 Q1 ~ 0.
    const Polynomial diff = p_ * o.q_ - o.p_ * q_;
    const double s = std::max({(p_ * o.q_).coeff_scale(), (o.p_ * q_).coeff_scale(), 1e-300});
    return diff.coeff_scale() <= tol * s;
}

Orbit iterate_orbit(const RationalMap& f, const SpherePoint& z0, int n, double escape_radius) {
    if (n < 0) throw numeric_error("iterate_orbit: n must be >= 0");
    Orbit o;
    o.start = z0;
    o.points.reserve(n + 1);
    o.points.push_back(z0);
    const bool poly = f.is_polynomial();
    SpherePoint z = z0;
    for (int k = 1; k <= n; ++k) {
        z = eval(f, z);
        o.points.push_back(z);
        if (poly && !o.escaped) {
            const bool out = z.is_infinity() || std::abs(z.value()) > escape_radius;
            if (out) {
                o.escaped = true;
                o.escape_index = k;
            }
        }
    }
    return o;
}

std::vector<SpherePoint> critical_points(const RationalMap& f) {
    if (f.degree() < 2) throw numeric_error("critical_points: degree must be >= 2");
    Polynomial w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    w.trim(1e-12);
    std::vector<SpherePoint> out;
    if (w.degree() >= 1)
        for (const Complex& r : poly_roots(w)) out.push_back(SpherePoint(r));
    const int at_infinity = 2 * f.degree() - 2 - std::max(w.degree(), 0);
    for (int k = 0; k < at_infinity; ++k) out.push_back(SpherePoint::infinity());
    std::sort(out.begin(), out.end(), sphere_less);
    return out;
}

double spherical_derivative_factor(const RationalMap& f, const RationalMap& f_conj,
                                   const SpherePoint& zp) {
    // |f'(z)| (1 + |z|^2) / (1 + |f(z)|^2), written through P and Q so poles
    // stay finite: (1+|z|^2) |P'Q - PQ'| / (|P|^2 + |Q|^2). For large |z| or
    // infinity, the same formula on the conjugated map 1/f(1/z), under which
    // the chordal metric is invariant.
    const auto finite_formula = [](const RationalMap& g, const Complex& z) {
        const Complex pv = g.num()(z), qv = g.den()(z);
        const Complex w = g.num().eval_derivative(z) * qv - pv * g.den().eval_derivative(z);
        return (1.0 + std::norm(z)) * std::abs(w) / (std::norm(pv) + std::norm(qv));
    };
    if (zp.is_infinity() || std::abs(zp.value()) > 1.0) {
        const Complex w = zp.is_infinity() ? Complex(0.0) : Complex(1.0) / zp.value();
        return finite_formula(f_conj, w);
    }
    return finite_formula(f, zp.value());
}

} // namespace holodyn
