#include "holodyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<Complex> solve_linear(const Polynomial& p) {
    return {-p.coeff(0) / p.coeff(1)};
}

std::vector<Complex> solve_quadratic(const Polynomial& p) {
    const Complex a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in -b +/- disc.
    const Complex s = (std::real(std::conj(b) * disc) >= 0.0) ? disc : -disc;
    const Complex q = -0.5 * (b + s);
    Complex r1, r2;
    if (std::abs(q) > 0.0) {
        r1 = q / a;
        r2 = c / q;
    } else {
        r1 = Complex(0.0);
        r2 = -b / a;
    }
    return {r1, r2};
}

// a z^k + b = 0 via explicit k-th roots; keeps |root| exact to rounding.
std::vector<Complex> solve_binomial(const Polynomial& p) {
    const int k = p.degree();
    const Complex t = -p.coeff(0) / p.lead();
    const double rho = std::pow(std::abs(t), 1.0 / k);
    const double phi = std::arg(t);
    std::vector<Complex> out;
    out.reserve(k);
    for (int j = 0; j < k; ++j) {
        const double ang = (phi + 2.0 * std::numbers::pi * j) / k;
        out.push_back(Complex(rho * std::cos(ang), rho * std::sin(ang)));
    }
    return out;
}

bool is_binomial(const Polynomial& p) {
    if (p.degree() < 1 || std::abs(p.coeff(0)) == 0.0) return false;
    const double s = p.coeff_scale();
    for (int k = 1; k < p.degree(); ++k)
        if (std::abs(p.coeff(k)) > 1e-15 * s) return false;
    return true;
}

double fujiwara_bound(const std::vector<Complex>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    double b = 0.0;
    for (int k = 1; k <= n; ++k)
        b = std::max(b, std::pow(std::abs(monic[n - k]), 1.0 / k));
    return 2.0 * b;
}

std::vector<Complex> aberth(const Polynomial& p, const RootOptions& opts) {
    const int n = p.degree();
    std::vector<Complex> a(p.coeffs());
    const Complex inv_lead = Complex(1.0) / a.back();
    for (Complex& x : a) x *= inv_lead;

    const double r0 = std::clamp(fujiwara_bound(a), 1e-6, 1e8);
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / n + 0.41;
        const double rad = r0 * (0.95 + 0.1 * std::fmod(0.7548776662 * (j + 1), 1.0));
        z[j] = Complex(rad * std::cos(ang), rad * std::sin(ang));
    }

    auto horner = [&](const Complex& x, Complex& val, Complex& der) {
        val = Complex(0.0);
        der = Complex(0.0);
        for (int k = n; k >= 0; --k) {
            der = der * x + val;
            val = val * x + a[k];
        }
    };

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex val, der;
            horner(z[j], val, der);
            if (val == Complex(0.0)) continue;
            if (der == Complex(0.0)) {
                z[j] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[j]));
                continue;
            }
            const Complex w = val / der;
            Complex s(0.0);
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                const Complex d = z[j] - z[k];
                if (std::abs(d) < 1e-300)
                    continue;
                s += Complex(1.0) / d;
            }
            const Complex denom = Complex(1.0) - w * s;
            const Complex step = (std::abs(denom) > 1e-300) ? w / denom : w;
            z[j] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

void polish(const Polynomial& p, std::vector<Complex>& roots, int steps) {
    for (Complex& r : roots) {
        for (int s = 0; s < steps; ++s) {
            const Complex val = p(r);
            const Complex der = p.eval_derivative(r);
            if (std::abs(der) < 1e-300) break;
            const Complex step = val / der;
            if (!is_finite(step)) break;
            const Complex cand = r - step;
            if (std::abs(p(cand)) <= std::abs(val))
                r = cand;
            else
                break;
        }
    }
}

// Roots of real polynomials should come out real when they are; kill stray
// imaginary dust left by the complex iteration.
void snap_real(const Polynomial& p, std::vector<Complex>& roots, double residual_rel) {
    if (!p.has_real_coeffs()) return;
    for (Complex& r : roots) {
        if (r.imag() == 0.0) continue;
        if (std::abs(r.imag()) > 1e-10 * (1.0 + std::abs(r.real()))) continue;
        const Complex cand(r.real(), 0.0);
        const double sc = residual_scale(p, cand);
        if (std::abs(p(cand)) <= std::max(std::abs(p(r)), residual_rel * sc)) r = cand;
    }
}

} // namespace

double residual_scale(const Polynomial& p, const Complex& z) {
    double s = 0.0, pw = 1.0;
    const double az = std::abs(z);
    for (int k = 0; k <= p.degree(); ++k) {
        s += std::abs(p.coeff(k)) * pw;
        pw *= az;
    }
    return std::max(s, 1e-300);
}

std::vector<Complex> poly_roots(const Polynomial& p, const RootOptions& opts) {
    if (p.degree() < 1) throw numeric_error("poly_roots: degree must be >= 1");

    // Exact zero roots first: strip the valuation.
    std::vector<Complex> c(p.coeffs());
    const double scale = p.coeff_scale();
    size_t val = 0;
    while (val < c.size() - 1 && std::abs(c[val]) <= 1e-15 * scale) ++val;
    std::vector<Complex> roots(val, Complex(0.0));
    Polynomial q(std::vector<Complex>(c.begin() + val, c.end()));

    std::vector<Complex> rest;
    if (q.degree() >= 1) {
        if (q.degree() == 1)
            rest = solve_linear(q);
        else if (q.degree() == 2)
            rest = solve_quadratic(q);
        else if (is_binomial(q))
            rest = solve_binomial(q);
        else {
            rest = aberth(q, opts);
            polish(q, rest, opts.polish_steps);
        }
        snap_real(q, rest, opts.residual_rel);

        double worst = 0.0;
        for (const Complex& r : rest)
            worst = std::max(worst, std::abs(q(r)) / residual_scale(q, r));
        if (worst > opts.residual_rel)
            throw numeric_error("poly_roots: no convergence, worst relative residual " +
                                std::to_string(worst));
    }
    roots.insert(roots.end(), rest.begin(), rest.end());
    std::sort(roots.begin(), roots.end(), lex_less);
    return roots;
}

std::vector<RootCluster> cluster_points(const std::vector<Complex>& pts, double tol) {
    const size_t n = pts.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return lex_less(pts[i], pts[j]); });

    std::vector<bool> used(n, false);
    std::vector<RootCluster> out;
    for (size_t oi = 0; oi < n; ++oi) {
        const size_t seed = order[oi];
        if (used[seed]) continue;
        // Transitive closure of the "within tol" relation.
        std::vector<size_t> group{seed};
        used[seed] = true;
        for (size_t gi = 0; gi < group.size(); ++gi) {
            for (size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                if (std::abs(pts[group[gi]] - pts[j]) < tol) {
                    used[j] = true;
                    group.push_back(j);
                }
            }
        }
        Complex sum(0.0);
        for (size_t idx : group) sum += pts[idx];
        out.push_back({sum / Complex(double(group.size())), static_cast<int>(group.size())});
    }
    std::sort(out.begin(), out.end(),
              [](const RootCluster& a, const RootCluster& b) { return lex_less(a.center, b.center); });
    return out;
}

} // namespace holodyn
