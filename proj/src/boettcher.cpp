#include "holodyn/boettcher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

constexpr double kPi = std::numbers::pi;

Complex pow_int(Complex z, int k) {
    Complex acc(1.0);
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

// Principal (m-1)-th root of the leading coefficient: the scaling conjugacy
// z -> alpha z with alpha^(m-1) = lead makes the germ monic.
Complex principal_scale(const Complex& lead, int m) {
    if (std::abs(lead) == 0.0) throw numeric_error("degenerate germ: zero leading coefficient");
    return std::exp(std::log(lead) / double(m - 1));
}

void zero_small_prefix(std::vector<Complex>& c, double rel) {
    double s = 0.0;
    for (const Complex& a : c) s = std::max(s, std::abs(a));
    for (Complex& a : c)
        if (std::abs(a) <= rel * s)
            a = Complex(0.0);
        else
            break;
}

struct NormalizedGerm {
    std::function<Complex(Complex)> eval; // monic: h(w) = w^m (1 + O(w))
    PowerSeries taylor;
    int m;
    Complex alpha;   // the scaling that was applied
    double radius;   // contraction disk: |h(w)| <= 2|w|^m and h(disk) in disk
};

NormalizedGerm normalize_germ(const LocalGerm& g, int min_degree) {
    if (g.m < min_degree)
        throw numeric_error("germ has local degree " + std::to_string(g.m) +
                            ", expected at least " + std::to_string(min_degree));
    NormalizedGerm h;
    h.m = g.m;
    h.alpha = principal_scale(g.lead, g.m);
    const Complex a = h.alpha;
    h.eval = [a, ge = g.eval](const Complex& w) { return a * ge(w / a); };
    h.taylor = g.taylor;
    Complex pw(1.0);
    for (size_t k = 0; k < h.taylor.c.size(); ++k) {
        h.taylor.c[k] *= a / pw; // coefficient of w^k picks up alpha^(1-k)
        pw *= a;
    }

    // Contraction disk by bisection on the boundary maximum of |h(w)/w^m|
    // (h(w)/w^m is analytic, so the boundary max bounds the disk).
    const double clear_h = g.clearance * std::abs(a);
    double hi = 0.99 * std::pow(0.5, 1.0 / (h.m - 1));
    if (clear_h > 0.0) hi = std::min(hi, 0.9 * clear_h);
    const auto contracts = [&](double r) {
        if (!(r > 0.0)) return false;
        for (int j = 0; j < 96; ++j) {
            const double th = 2.0 * kPi * (j + 0.5) / 96.0;
            const Complex w = std::polar(r, th);
            const Complex v = h.eval(w);
            if (!is_finite(v)) return false;
            if (std::abs(v) > 2.0 * std::pow(r, h.m)) return false;
            if (std::abs(v) > 0.999 * r) return false;
        }
        return true;
    };
    if (contracts(hi)) {
        h.radius = hi;
    } else {
        double lo = 0.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = (lo + hi) / 2.0;
            if (contracts(mid))
                lo = mid;
            else
                hi = mid;
        }
        h.radius = lo;
    }
    if (h.radius < 1e-12)
        throw numeric_error("no contraction disk found around the fixed point");
    return h;
}

// Successive-roots limit: F(w) = w * prod_p (h(t_p)/t_p^m)^(1/m^(p+1)) with
// principal logs; each factor is the m-th root branch nearest the previous
// value. Works on monic germs (Ritt, limit_ratio 1) and raw germs (the 1904
// scheme, limit_ratio a_m) alike: the constant part of the product sums to
// limit_ratio^(1/(m-1)) exactly, so the prefactor carries the principal
// branch and truncating the remainder costs only O(|t_p|).
Complex root_chain(const std::function<Complex(Complex)>& germ, int m, double disk_radius,
                   const Complex& limit_ratio, const Complex& w, int n_max) {
    if (std::abs(w) < 1e-300) return Complex(0.0);
    if (std::abs(w) > disk_radius * (1.0 + 1e-12))
        throw outside_validity_error("point outside the chart's validity disk");
    Complex t = w;
    Complex sum = std::log(limit_ratio) / double(m - 1);
    double mpow = double(m);
    for (int p = 0; p < n_max; ++p) {
        const Complex tn = germ(t);
        if (!is_finite(tn))
            throw outside_validity_error("orbit left the superattracting basin disk");
        const Complex tm = pow_int(t, m);
        if (std::abs(tm) < 1e-280) break; // deep in the basin: converged
        const Complex rho = tn / (tm * limit_ratio);
        if (!is_finite(rho) || std::abs(rho) == 0.0)
            throw outside_validity_error("orbit degenerated before convergence");
        if (kPi - std::abs(std::arg(rho)) < 1e-13)
            throw numeric_error("branch ambiguity: root candidates equidistant");
        const Complex corr = std::log(rho) / mpow;
        sum += corr;
        if (std::abs(corr) < 1e-17) break;
        t = tn;
        if (std::abs(t) > disk_radius * 1.0000001)
            throw outside_validity_error("orbit left the superattracting basin disk");
        mpow *= m;
    }
    return w * std::exp(sum);
}

// Shared assembly: wrap a normalized-coordinate evaluator Fh into a chart at
// a finite center or at infinity.
CoordinateChart assemble_chart(const SpherePoint& center, int m, const Complex& alpha,
                               double norm_radius, ChartMethod method,
                               std::function<Complex(Complex)> Fh) {
    CoordinateChart chart;
    chart.center = center;
    chart.local_degree = m;
    chart.method = method;
    chart.validity_radius = norm_radius / std::abs(alpha);
    const double r_local = chart.validity_radius;
    if (center.is_infinity()) {
        chart.eval = [alpha, r_local, Fh](const SpherePoint& z) -> Complex {
            if (z.is_infinity())
                throw outside_validity_error("chart value at the center of an infinity chart "
                                             "is not a finite complex number");
            const Complex w = Complex(1.0) / z.value();
            if (std::abs(w) > r_local * (1.0 + 1e-12))
                throw outside_validity_error("point outside the chart's validity region");
            const Complex v = Fh(alpha * w);
            if (std::abs(v) == 0.0)
                throw outside_validity_error("chart value degenerated to the center");
            return Complex(1.0) / v;
        };
    } else {
        const Complex x = center.value();
        chart.eval = [x, alpha, r_local, Fh](const SpherePoint& z) -> Complex {
            if (z.is_infinity())
                throw outside_validity_error("finite chart evaluated at infinity");
            const Complex w = z.value() - x;
            if (std::abs(w) > r_local * (1.0 + 1e-12))
                throw outside_validity_error("point outside the chart's validity disk");
            return Fh(alpha * w);
        };
    }
    return chart;
}

double series_convergence_radius(const PowerSeries& s) {
    double best = 0.0;
    int used = 0;
    for (size_t k = s.c.size(); k-- > 2 && used < 8;) {
        const double a = std::abs(s.c[k]);
        if (a < 1e-280) continue;
        best = std::max(best, std::pow(a, 1.0 / double(k)));
        ++used;
    }
    return (best > 0.0) ? 1.0 / best : 0.0;
}

} // namespace

std::string to_string(ChartMethod m) {
    switch (m) {
        case ChartMethod::ritt: return "ritt";
        case ChartMethod::milnor: return "milnor";
        case ChartMethod::series: return "series";
        case ChartMethod::original1904: return "original-1904";
        case ChartMethod::koenigs: return "koenigs";
        case ChartMethod::psi0: return "psi0";
    }
    return "?";
}

LocalGerm local_germ(const RationalMap& f, const SpherePoint& x, size_t len) {
    LocalGerm g;
    if (x.is_infinity()) {
        if (!eval(f, SpherePoint::infinity()).is_infinity())
            throw numeric_error("local germ at infinity: infinity is not fixed");
        Polynomial num = f.den().reversed(f.degree()); // w^d Q(1/w)
        Polynomial den = f.num().reversed(f.degree()); // w^d P(1/w)
        std::vector<Complex> nc(num.coeffs());
        nc.resize(std::max(nc.size(), size_t(1)), Complex(0.0));
        zero_small_prefix(nc, 1e-12);
        num = Polynomial(nc);
        g.eval = [num, den](const Complex& w) { return num(w) / den(w); };
        g.taylor = ps_div(PowerSeries(num.coeffs()), PowerSeries(den.coeffs()), len);
        double clearance = 1e100;
        if (den.degree() >= 1)
            for (const Complex& r : poly_roots(den))
                clearance = std::min(clearance, std::abs(r));
        g.clearance = clearance;
    } else {
        if (chordal(eval(f, x), x) > 1e-8)
            throw numeric_error("local germ: supplied point is not fixed");
        const Complex x0 = x.value();
        Polynomial s = f.num() - f.den() * x0; // f(z) - x has numerator S
        Polynomial s_shift = s.shifted(x0);
        Polynomial q_shift = f.den().shifted(x0);
        std::vector<Complex> sc(s_shift.coeffs());
        zero_small_prefix(sc, 1e-11);
        s_shift = Polynomial(sc);
        g.eval = [s_shift, q_shift](const Complex& w) { return s_shift(w) / q_shift(w); };
        g.taylor = ps_div(PowerSeries(s_shift.coeffs()), PowerSeries(q_shift.coeffs()), len);
        double clearance = 1e100;
        if (q_shift.degree() >= 1)
            for (const Complex& r : poly_roots(q_shift))
                clearance = std::min(clearance, std::abs(r));
        g.clearance = clearance;
    }
    const size_t val = g.taylor.valuation(1e-11);
    if (val >= g.taylor.size())
        throw numeric_error("local germ: map is constant near the fixed point");
    g.m = static_cast<int>(val);
    g.lead = g.taylor.c[val];
    for (size_t k = 0; k < val; ++k) g.taylor.c[k] = Complex(0.0);
    return g;
}

LocalGerm local_germ(const PowerSeries& series) {
    LocalGerm g;
    g.taylor = series;
    const size_t val = series.valuation(1e-13);
    if (val == 0 || val >= series.size())
        throw numeric_error("local germ: series must vanish at 0 and not be identically 0");
    g.m = static_cast<int>(val);
    g.lead = series.c[val];
    g.eval = [series](const Complex& w) { return series(w); };
    const double rho = series_convergence_radius(series);
    g.clearance = (rho > 0.0) ? 0.9 * rho : 1e100;
    return g;
}

namespace {

CoordinateChart make_root_chain_chart(const LocalGerm& g, const SpherePoint& center,
                                      int n_max, ChartMethod method) {
    const NormalizedGerm h = normalize_germ(g, 2);
    CoordinateChart chart;
    if (method == ChartMethod::ritt) {
        auto Fh = [he = h.eval, m = h.m, r = h.radius, n_max](const Complex& w) {
            return root_chain(he, m, r, Complex(1.0), w, n_max);
        };
        chart = assemble_chart(center, h.m, h.alpha, h.radius, method, Fh);
    } else {
        // 1904 scheme: run the chain on the raw germ; the principal-branch
        // prefactor lead^(1/(m-1)) comes out of the constant part of the
        // product.
        const double raw_radius = h.radius / std::abs(h.alpha);
        auto N = [ge = g.eval, m = g.m, lead = g.lead, raw_radius, n_max](const Complex& w) {
            return root_chain(ge, m, raw_radius, lead, w, n_max);
        };
        // Reuse the chart assembly with alpha = 1 on the raw coordinate.
        chart = assemble_chart(center, g.m, Complex(1.0), raw_radius, method, N);
    }
    chart.iterations = n_max;
    return chart;
}

} // namespace

CoordinateChart boettcher_ritt(const RationalMap& f, const SpherePoint& x, int n_max) {
    return make_root_chain_chart(local_germ(f, x), x, n_max, ChartMethod::ritt);
}

CoordinateChart boettcher_ritt(const PowerSeries& germ, int n_max) {
    return make_root_chain_chart(local_germ(germ), SpherePoint(Complex(0.0)), n_max,
                                 ChartMethod::ritt);
}

CoordinateChart boettcher_original(const RationalMap& f, const SpherePoint& x, int n_max) {
    return make_root_chain_chart(local_germ(f, x), x, n_max, ChartMethod::original1904);
}

CoordinateChart boettcher_original(const PowerSeries& germ, int n_max) {
    return make_root_chain_chart(local_germ(germ), SpherePoint(Complex(0.0)), n_max,
                                 ChartMethod::original1904);
}

namespace {

struct MilnorData {
    std::vector<Complex> norm_coeffs; // monic normalized polynomial
    Complex alpha;
    int m;
    double sigma_use;
};

// log(ptilde(e^Z)) - m Z computed through u = e^{-Z}; stays bounded and
// overflow-free arbitrarily deep in the half-plane.
Complex milnor_delta(const std::vector<Complex>& c, int m, const Complex& Z) {
    const Complex u = std::exp(-Z);
    Complex val(1.0);
    Complex up(1.0);
    for (int i = m - 1; i >= 0; --i) {
        up *= u;
        val += c[i] * up;
    }
    return std::log(val); // principal: |delta| < 1 inside the half-plane
}

MilnorData milnor_setup(const RationalMap& f) {
    if (!f.is_polynomial())
        throw numeric_error("milnor chart: the map must be a polynomial");
    const Polynomial p = f.as_polynomial();
    const int m = p.degree();
    if (m < 2) throw numeric_error("milnor chart: degree must be >= 2");
    MilnorData d;
    d.m = m;
    d.alpha = principal_scale(p.lead(), m);
    d.norm_coeffs.resize(m + 1);
    Complex apow(1.0); // alpha^(1-i) applied to a_i
    for (int i = 0; i <= m; ++i) {
        d.norm_coeffs[i] = p.coeff(i) * d.alpha / apow;
        apow *= d.alpha;
    }
    // Smallest sigma with |log ptilde(e^Z) - mZ| < 1 on the boundary line,
    // then a +1 safety margin.
    double coeff_sum = 0.0;
    for (int i = 0; i < m; ++i) coeff_sum += std::abs(d.norm_coeffs[i]);
    const double sigma_hi = std::log(2.0 * (1.0 + coeff_sum)) + 3.0;
    double found = sigma_hi;
    for (double s = -2.0; s <= sigma_hi; s += 0.05) {
        double worst = 0.0;
        for (int j = 0; j < 96; ++j) {
            const double th = 2.0 * kPi * j / 96.0;
            const Complex delta = milnor_delta(d.norm_coeffs, m, Complex(s, th));
            worst = std::max(worst, std::abs(delta));
            if (worst >= 1.0) break;
        }
        if (worst < 1.0) {
            found = s;
            break;
        }
    }
    // The half-plane must also map into itself: Re F(Z) >= m sigma - 1 needs
    // sigma >= 1/(m-1) on top of the +1 safety margin.
    d.sigma_use = std::max(found + 1.0, 1.0 / double(m - 1) + 0.05);
    return d;
}

Complex milnor_lift(const MilnorData& d, Complex Z, int n_max) {
    if (Z.real() <= d.sigma_use)
        throw outside_validity_error("point below the half-plane threshold");
    Complex phi = Z;
    Complex cur = Z;
    double mpow = double(d.m);
    for (int k = 0; k < n_max; ++k) {
        const Complex delta = milnor_delta(d.norm_coeffs, d.m, cur);
        if (!is_finite(delta) || std::abs(delta) >= 1.0)
            throw outside_validity_error("log-chart orbit left the half-plane bound");
        phi += delta / mpow;
        if (std::abs(delta) / mpow < 1e-17) break;
        cur = double(d.m) * cur + delta;
        mpow *= d.m;
    }
    return phi;
}

} // namespace

Complex milnor_phi(const RationalMap& f, const Complex& Z, int n_max) {
    const MilnorData d = milnor_setup(f);
    return milnor_lift(d, Z, n_max);
}

CoordinateChart boettcher_milnor(const RationalMap& f, int n_max) {
    const MilnorData d = milnor_setup(f);
    CoordinateChart chart;
    chart.center = SpherePoint::infinity();
    chart.local_degree = d.m;
    chart.method = ChartMethod::milnor;
    chart.half_plane_sigma = d.sigma_use;
    chart.iterations = n_max;
    chart.validity_radius = std::abs(d.alpha) * std::exp(-d.sigma_use);
    const Complex alpha = d.alpha;
    chart.eval = [d, alpha, n_max](const SpherePoint& z) -> Complex {
        if (z.is_infinity())
            throw outside_validity_error("chart value at the center of an infinity chart "
                                         "is not a finite complex number");
        const Complex zeta = alpha * z.value();
        const Complex Z0 = std::log(zeta);
        const Complex phi = milnor_lift(d, Z0, n_max);
        return std::exp(phi);
    };
    return chart;
}

namespace {

CoordinateChart make_series_chart(const LocalGerm& g, const SpherePoint& center, int n_terms) {
    const NormalizedGerm h = normalize_germ(g, 2);
    const size_t len = static_cast<size_t>(n_terms) + 1;
    const PowerSeries hs = h.taylor.truncated(len + h.m);

    // h(z)/z^m as a series with constant term 1.
    std::vector<Complex> shifted(len, Complex(0.0));
    for (size_t k = 0; k < len && k + h.m < hs.size(); ++k) shifted[k] = hs.c[k + h.m];
    shifted[0] = Complex(1.0); // exact by normalization
    const PowerSeries hlog = ps_log1(PowerSeries(shifted), len);

    // G = sum_k hlog(h_k(z)) / m^(k+1); valuation of h_k is m^k, so the sum
    // is finite at any truncation order.
    PowerSeries G(std::vector<Complex>(len, Complex(0.0)));
    PowerSeries cur = PowerSeries::identity(len);
    double mpow = double(h.m);
    for (int k = 0; k < 64; ++k) {
        const PowerSeries term = (k == 0) ? hlog : ps_compose(hlog, cur, len);
        for (size_t i = 0; i < len; ++i) G.c[i] += term.coeff(i) / mpow;
        cur = ps_compose(cur, hs.truncated(len), len);
        mpow *= h.m;
        if (cur.valuation() >= len) break;
    }
    PowerSeries F = ps_mul(PowerSeries::identity(len + 1), ps_exp0(G, len), len + 1);

    auto Fh = [F](const Complex& w) { return F(w); };
    double radius = h.radius;
    const double rho = series_convergence_radius(F);
    if (rho > 0.0) radius = std::min(radius, 0.45 * rho);
    CoordinateChart chart = assemble_chart(center, h.m, h.alpha, radius,
                                           ChartMethod::series, Fh);
    chart.iterations = n_terms;
    // Report coefficients in the chart's own local coordinate (pull the
    // normalization back in).
    chart.series_coeffs.resize(F.c.size());
    Complex apow(1.0);
    for (size_t k = 0; k < F.c.size(); ++k) {
        chart.series_coeffs[k] = F.c[k] * apow;
        apow *= h.alpha;
    }
    return chart;
}

} // namespace

CoordinateChart boettcher_series(const RationalMap& f, const SpherePoint& x, int n_terms) {
    return make_series_chart(local_germ(f, x, n_terms + 8), x, n_terms);
}

CoordinateChart boettcher_series(const PowerSeries& germ, int n_terms) {
    return make_series_chart(local_germ(germ), SpherePoint(Complex(0.0)), n_terms);
}

double escape_rate(const RationalMap& f, const SpherePoint& z0, int n_max) {
    if (!f.is_polynomial()) throw numeric_error("escape_rate: the map must be a polynomial");
    const Polynomial p = f.as_polynomial();
    const int m = p.degree();
    if (m < 2) throw numeric_error("escape_rate: degree must be >= 2");
    if (z0.is_infinity()) return std::numeric_limits<double>::infinity();

    const double lead_term = std::log(std::abs(p.lead())) / double(m - 1);
    Complex z = z0.value();
    double mpow = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        const double az = std::abs(z);
        if (az > 1e12) {
            // Beyond this radius the remaining tail of log|f_k|/m^k is the
            // geometric series of log|lead| plus O(1/|z|).
            return (std::log(az) + lead_term) / mpow;
        }
        z = p(z);
        mpow *= m;
        if (!is_finite(z)) return std::numeric_limits<double>::infinity();
    }
    return 0.0; // no escape seen within the horizon
}

double chart_residual(const CoordinateChart& chart, const RationalMap& f, const SpherePoint& z) {
    const Complex fz_chart = chart.eval(eval(f, z));
    const Complex base = chart.eval(z);
    Complex pw(1.0);
    for (int i = 0; i < chart.local_degree; ++i) pw *= base;
    return std::abs(fz_chart - pw) / std::max(1.0, std::abs(pw));
}

std::vector<SpherePoint> chart_samples(const CoordinateChart& chart, int count) {
    std::vector<SpherePoint> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double frac = std::fmod(0.618033988749895 * (k + 1), 1.0);
        const double r = chart.validity_radius * (0.25 + 0.65 * frac);
        const double th = 2.0 * kPi * k / std::max(count, 1);
        const Complex w = std::polar(r, th);
        if (chart.center.is_infinity())
            out.push_back(SpherePoint(Complex(1.0) / w));
        else
            out.push_back(SpherePoint(chart.center.value() + w));
    }
    return out;
}

} // namespace holodyn
