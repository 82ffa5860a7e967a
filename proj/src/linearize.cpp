#include "holodyn/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

constexpr double kPi = std::numbers::pi;

Complex pow_int(Complex z, long long k) {
    if (k < 0) return Complex(1.0) / pow_int(z, -k);
    Complex acc(1.0);
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

Complex pow_exponent(const Complex& w, const Exponent& e) {
    if (e.den == 1) return pow_int(w, e.num);
    // Principal branch, cut along the negative real axis of w.
    return std::exp(Complex(e.value()) * std::log(w));
}

struct KoenigsGerm {
    LocalGerm germ;
    Complex lambda;
    double radius; // contraction disk: |g(w)| <= q |w| with q = (1+|lambda|)/2
};

KoenigsGerm koenigs_setup(const LocalGerm& g) {
    if (g.m != 1)
        throw numeric_error("koenigs: fixed point has local degree " + std::to_string(g.m) +
                            ", need derivative nonzero");
    const Complex lambda = g.lead;
    const double mod = std::abs(lambda);
    if (mod <= 1e-14 || mod >= 1.0 - 1e-12)
        throw numeric_error("koenigs: multiplier modulus " + std::to_string(mod) +
                            " outside (0,1); not an attracting fixed point");
    const double q = (1.0 + mod) / 2.0;
    double hi = (g.clearance > 0.0) ? 0.9 * g.clearance : 1.0;
    hi = std::min(hi, 1e6);
    const auto contracts = [&](double r) {
        if (!(r > 0.0)) return false;
        for (int j = 0; j < 96; ++j) {
            const Complex w = std::polar(r, 2.0 * kPi * (j + 0.5) / 96.0);
            const Complex v = g.eval(w);
            if (!is_finite(v) || std::abs(v) > q * r) return false;
        }
        return true;
    };
    double radius;
    if (contracts(hi)) {
        radius = hi;
    } else {
        double lo = 0.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = (lo + hi) / 2.0;
            if (contracts(mid))
                lo = mid;
            else
                hi = mid;
        }
        radius = lo;
    }
    if (radius < 1e-12) throw numeric_error("koenigs: no contraction disk found");
    return {g, lambda, radius};
}

Complex koenigs_limit(const KoenigsGerm& kg, const Complex& w, int n_max) {
    if (std::abs(w) > kg.radius * (1.0 + 1e-12))
        throw outside_validity_error("point outside the linearization disk");
    Complex t = w;
    Complex lam_pow(1.0);
    Complex prev = w;
    for (int n = 1; n <= n_max; ++n) {
        t = kg.germ.eval(t);
        lam_pow *= kg.lambda;
        const Complex cur = t / lam_pow;
        if (!is_finite(cur)) throw numeric_error("koenigs: iteration overflowed");
        if (std::abs(cur - prev) < 1e-12 * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev; // converged to working accuracy in practice; callers verify residuals
}

CoordinateChart koenigs_chart(const LocalGerm& g, const SpherePoint& center, int n_max) {
    const KoenigsGerm kg = koenigs_setup(g);
    CoordinateChart chart;
    chart.center = center;
    chart.local_degree = 1;
    chart.method = ChartMethod::koenigs;
    chart.multiplier = kg.lambda;
    chart.validity_radius = kg.radius;
    chart.iterations = n_max;
    if (center.is_infinity()) {
        chart.eval = [kg, n_max](const SpherePoint& z) -> Complex {
            if (z.is_infinity()) return Complex(0.0);
            return koenigs_limit(kg, Complex(1.0) / z.value(), n_max);
        };
    } else {
        const Complex x = center.is_finite() ? center.value() : Complex(0.0);
        chart.eval = [kg, x, n_max](const SpherePoint& z) -> Complex {
            if (z.is_infinity()) throw outside_validity_error("finite chart evaluated at infinity");
            return koenigs_limit(kg, z.value() - x, n_max);
        };
    }
    return chart;
}

} // namespace

std::string Exponent::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

CoordinateChart koenigs(const RationalMap& f, const SpherePoint& x, int n_max) {
    return koenigs_chart(local_germ(f, x), x, n_max);
}

CoordinateChart koenigs(const PowerSeries& germ, int n_max) {
    return koenigs_chart(local_germ(germ), SpherePoint(Complex(0.0)), n_max);
}

PowerSeries koenigs_series(const PowerSeries& germ, size_t len) {
    const size_t val = germ.valuation(1e-13);
    if (val != 1) throw numeric_error("koenigs_series: germ must have nonzero linear part");
    const Complex lambda = germ.c[1];
    PowerSeries g = germ.truncated(len);
    g.c[0] = Complex(0.0);

    // b_k (lambda - lambda^k) = [z^k] sum_{j<k} b_j g(z)^j, solved upward.
    std::vector<Complex> b(len, Complex(0.0));
    if (len > 1) b[1] = Complex(1.0);
    std::vector<PowerSeries> gpow(len);
    if (len > 1) gpow[1] = g;
    for (size_t j = 2; j < len; ++j) gpow[j] = ps_mul(gpow[j - 1], g, len);
    for (size_t k = 2; k < len; ++k) {
        Complex rhs(0.0);
        for (size_t j = 1; j < k; ++j) rhs += b[j] * gpow[j].coeff(k);
        const Complex denom = lambda - pow_int(lambda, static_cast<long long>(k));
        if (std::abs(denom) < 1e-14)
            throw numeric_error("koenigs_series: resonant multiplier at order " +
                                std::to_string(k));
        b[k] = rhs / denom;
    }
    return PowerSeries(std::move(b));
}

PowerSeries local_inverse(const PowerSeries& germ, size_t len) {
    return ps_revert(germ.truncated(len), len);
}

namespace {

AbelSolution abel_from_germ(const LocalGerm& g, const Complex& center, const LaurentSeries& F,
                            int n_terms) {
    const KoenigsGerm kg = koenigs_setup(g);
    const Complex lambda = kg.lambda;
    const size_t len = static_cast<size_t>(n_terms);

    const PowerSeries b = koenigs_series(g.taylor, len);
    const PowerSeries binv = ps_revert(b, len);
    // binv(w) = w * u(w) with u(0) = 1.
    std::vector<Complex> uc(len, Complex(0.0));
    for (size_t k = 0; k + 1 < len; ++k) uc[k] = binv.coeff(k + 1);
    const PowerSeries u(uc);

    AbelSolution sol;
    sol.lambda = lambda;
    const Complex log_lambda = std::log(lambda);
    sol.log_coeff = F.constant / log_lambda;

    for (size_t ti = 0; ti < F.terms.size(); ++ti) {
        const LaurentTerm& term = F.terms[ti];
        // (z-x)^e = w^e u(w)^e re-expands the term over exponents e, e+1, ...
        const PowerSeries ue = ps_pow1(u, Complex(term.exponent.value()), len);
        for (size_t k = 0; k < len; ++k) {
            const Complex c = term.coeff * ue.coeff(k);
            if (std::abs(c) < 1e-300) continue;
            const Exponent e = term.exponent.plus(static_cast<long long>(k));
            if (e.num == 0) {
                sol.log_coeff += c / log_lambda; // constant part joins the log term
                continue;
            }
            const Complex denom = pow_exponent(lambda, e) - Complex(1.0);
            if (std::abs(denom) < 1e-10)
                throw numeric_error("abel_solve: resonance at exponent " + e.str() +
                                    " (lambda^e too close to 1)");
            sol.table.push_back({e, c / denom});
        }
    }

    sol.inner_radius = std::max(F.inner_radius, 1e-6 * kg.radius);
    sol.outer_radius = std::min(F.outer_radius, kg.radius);

    const Complex x = center;
    const Complex lg = sol.log_coeff;
    const auto table = sol.table;
    const int n_max = 512;
    sol.eval = [kg, x, lg, table, n_max](const SpherePoint& zp) -> Complex {
        if (zp.is_infinity()) throw outside_validity_error("abel evaluator needs a finite point");
        const Complex w = koenigs_limit(kg, zp.value() - x, n_max);
        Complex acc = (std::abs(lg) > 0.0) ? lg * std::log(w) : Complex(0.0);
        for (const LaurentTerm& t : table) acc += t.coeff * pow_exponent(w, t.exponent);
        return acc;
    };
    return sol;
}

} // namespace

AbelSolution abel_solve(const RationalMap& f, const SpherePoint& x, const LaurentSeries& F,
                        int n_terms) {
    if (x.is_infinity()) throw numeric_error("abel_solve: expansion at infinity not supported");
    return abel_from_germ(local_germ(f, x), x.value(), F, n_terms);
}

AbelSolution abel_solve(const PowerSeries& germ, const LaurentSeries& F, int n_terms) {
    return abel_from_germ(local_germ(germ), Complex(0.0), F, n_terms);
}

namespace {

Polynomial compose_times(const Polynomial& g, int k) {
    Polynomial acc = g;
    for (int i = 1; i < k; ++i) acc = acc.compose(g);
    return acc;
}

} // namespace

std::vector<Polynomial> poly_iter_roots(const Polynomial& F, int p) {
    const int n = F.degree();
    if (p < 2) throw numeric_error("poly_iter_roots: exponent base must be >= 2");
    int k = 0;
    long long pk = 1;
    while (pk < n) {
        pk *= p;
        ++k;
    }
    if (pk != n || k < 1)
        throw numeric_error("poly_iter_roots: degree " + std::to_string(n) +
                            " is not a power of " + std::to_string(p));

    const long long s = (pk - 1) / (p - 1); // leading coefficient order
    const Complex L = F.lead();
    const double mod = std::pow(std::abs(L), 1.0 / double(s));
    const double base_arg = std::arg(L);
    const double fscale = std::max(1.0, F.coeff_scale());

    std::vector<Polynomial> out;
    for (long long j = 0; j < s; ++j) {
        const double ang = (base_arg + 2.0 * kPi * double(j)) / double(s);
        const Complex a0 = std::polar(mod, ang);

        // Coefficients of g, highest first: g = a0 z^p + c[1] z^(p-1) + ...
        std::vector<Complex> c(p + 1, Complex(0.0));
        c[0] = a0;
        auto build = [&](int upto) {
            std::vector<Complex> low(p + 1, Complex(0.0));
            for (int i = 0; i <= upto; ++i) low[p - i] = c[i];
            return Polynomial(std::move(low));
        };

        bool ok = true;
        for (int i = 1; i <= p; ++i) {
            // The composed coefficient at degree n-i is affine in c[i]; probe
            // with 0 and 1 to solve for it.
            c[i] = Complex(0.0);
            const Complex v0 = compose_times(build(i), k).coeff(n - i);
            c[i] = Complex(1.0);
            const Complex v1 = compose_times(build(i), k).coeff(n - i);
            const Complex slope = v1 - v0;
            if (std::abs(slope) < 1e-12 * fscale) {
                ok = false;
                break;
            }
            c[i] = (F.coeff(n - i) - v0) / slope;
        }
        if (!ok) continue;

        const Polynomial g = build(p);
        const Polynomial composed = compose_times(g, k);
        double worst = 0.0;
        for (int i = 0; i <= n; ++i)
            worst = std::max(worst, std::abs(composed.coeff(i) - F.coeff(i)));
        if (worst <= 1e-8 * fscale) out.push_back(g);
    }

    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
        double aa = std::arg(a.lead());
        double ab = std::arg(b.lead());
        if (aa < -1e-12) aa += 2.0 * kPi;
        if (ab < -1e-12) ab += 2.0 * kPi;
        return aa < ab;
    });
    return out;
}

std::optional<Polynomial> poly_iter_root(const Polynomial& F, int p) {
    const std::vector<Polynomial> roots = poly_iter_roots(F, p);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

} // namespace holodyn
