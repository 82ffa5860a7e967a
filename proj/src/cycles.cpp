#include "holodyn/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

constexpr double kCycleTol = 1e-7;   // chordal tolerance for grouping
constexpr double kClusterTol = 1e-6; // root-collision collapse distance

// Newton polish of a candidate periodic point on the pointwise map
// G(z) = f^k(z) - z, whose derivative comes from the chain rule. Far more
// accurate than polishing on the composed polynomial's coefficients.
Complex polish_periodic(const RationalMap& f, Complex z, int k) {
    for (int step = 0; step < 8; ++step) {
        Complex w = z;
        Complex der(1.0);
        bool ok = true;
        for (int j = 0; j < k; ++j) {
            const Complex qv = f.den()(w);
            if (std::abs(qv) == 0.0 || std::abs(w) > 1e9) {
                ok = false;
                break;
            }
            der *= f.derivative_at(w);
            w = f.num()(w) / qv;
        }
        if (!ok || !is_finite(w) || !is_finite(der)) break;
        const Complex g = w - z;
        const Complex dg = der - Complex(1.0);
        if (std::abs(dg) < 1e-8) break; // parabolic: Newton stalls, keep root
        const Complex corr = g / dg;
        if (!is_finite(corr) || std::abs(corr) > 1e-2 * (1.0 + std::abs(z))) break;
        z -= corr;
        if (std::abs(corr) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

SpherePoint snap_to_set(const SpherePoint& p, const std::vector<Complex>& centers) {
    if (p.is_infinity()) return p;
    for (const Complex& c : centers)
        if (chordal(p, SpherePoint(c)) < kClusterTol) return SpherePoint(c);
    return p;
}

} // namespace

std::string to_string(MultiplierClass c) {
    switch (c) {
        case MultiplierClass::superattracting: return "superattracting";
        case MultiplierClass::attracting: return "attracting";
        case MultiplierClass::repelling: return "repelling";
        case MultiplierClass::rationally_neutral: return "rationally-neutral";
        case MultiplierClass::irrationally_neutral: return "irrationally-neutral";
    }
    return "?";
}

MultiplierInfo classify_multiplier(const Complex& lambda) {
    MultiplierInfo out;
    const double mod = std::abs(lambda);
    if (mod < 1e-12) {
        out.cls = MultiplierClass::superattracting;
        return out;
    }
    if (std::abs(mod - 1.0) < 1e-9) {
        const double angle = std::arg(lambda) / (2.0 * std::numbers::pi);
        if (auto pq = rational_angle(angle)) {
            out.cls = MultiplierClass::rationally_neutral;
            out.parabolic = (pq->second == 1 || pq->first == 0);
            return out;
        }
        out.cls = MultiplierClass::irrationally_neutral;
        return out;
    }
    out.cls = (mod < 1.0) ? MultiplierClass::attracting : MultiplierClass::repelling;
    return out;
}

std::vector<SpherePoint> fixed_points(const RationalMap& f) {
    if (f.degree() < 1) throw numeric_error("fixed_points: degree must be >= 1");
    Polynomial phi = f.num() - Polynomial::identity() * f.den();
    phi.trim(1e-12);
    std::vector<SpherePoint> out;
    if (phi.degree() >= 1) {
        std::vector<Complex> roots = poly_roots(phi);
        for (Complex& r : roots) r = polish_periodic(f, r, 1);
        for (const RootCluster& c : cluster_points(roots, kClusterTol))
            out.push_back(SpherePoint(c.center));
    }
    if (eval(f, SpherePoint::infinity()).is_infinity()) out.push_back(SpherePoint::infinity());
    std::sort(out.begin(), out.end(), sphere_less);
    return out;
}

Complex cycle_multiplier(const RationalMap& f, const std::vector<SpherePoint>& points) {
    if (points.empty()) throw numeric_error("cycle_multiplier: empty cycle");
    const int k = static_cast<int>(points.size());
    for (int i = 0; i < k; ++i) {
        const double res = chordal(eval(f, points[i]), points[(i + 1) % k]);
        if (res > 1e-6)
            throw numeric_error("cycle_multiplier: points do not close up, residual " +
                                std::to_string(res));
    }

    bool tame = true;
    for (const SpherePoint& p : points)
        if (p.is_infinity() || std::abs(p.value()) > 1e3) tame = false;

    if (tame) {
        Complex mult(1.0);
        for (const SpherePoint& p : points) mult *= f.derivative_at(p.value());
        return mult;
    }

    // Move the cycle into a bounded chart with w = 1/(z - c), picking the
    // candidate center farthest (chordally) from every cycle point.
    static const Complex candidates[] = {
        Complex(0.0),         Complex(1.0),         Complex(-1.0),
        Complex(0.0, 1.0),    Complex(0.62, -0.37), Complex(-1.41, 0.83),
        Complex(2.17, 1.29),
    };
    Complex best = candidates[0];
    double best_d = -1.0;
    for (const Complex& c : candidates) {
        double dmin = 4.0;
        for (const SpherePoint& p : points) dmin = std::min(dmin, chordal(SpherePoint(c), p));
        if (dmin > best_d) {
            best_d = dmin;
            best = c;
        }
    }
    const MoebiusMap h = MoebiusMap::inversion_about(best);
    const RationalMap g = f.conjugated(h);
    Complex mult(1.0);
    for (const SpherePoint& p : points) {
        const SpherePoint w = h(p);
        if (w.is_infinity()) throw numeric_error("cycle_multiplier: chart selection failed");
        mult *= g.derivative_at(w.value());
    }
    return mult;
}

std::vector<Cycle> periodic_cycles(const RationalMap& f, int n) {
    if (n < 1 || n > 6) throw numeric_error("periodic_cycles: period must be in 1..6");
    double deg_pow = 1.0;
    for (int i = 0; i < n; ++i) deg_pow *= f.degree();
    if (deg_pow > 4096.0)
        throw numeric_error("periodic_cycles: degree^n exceeds the 4096 symbolic cap");

    std::vector<Cycle> out;
    std::vector<SpherePoint> taken; // points already assigned to some cycle

    RationalMap fk = f;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) fk = f.compose(fk);
        Polynomial phi = fk.num() - Polynomial::identity() * fk.den();
        phi.trim(1e-12);
        if (phi.degree() < 1) continue;

        std::vector<Complex> roots = poly_roots(phi);
        for (Complex& r : roots) r = polish_periodic(f, r, k);
        const std::vector<RootCluster> clusters = cluster_points(roots, kClusterTol);
        std::vector<Complex> centers;
        for (const RootCluster& c : clusters) centers.push_back(c.center);

        for (const RootCluster& c : clusters) {
            const SpherePoint start(c.center);
            bool seen = false;
            for (const SpherePoint& t : taken)
                if (chordal(start, t) < kCycleTol) seen = true;
            if (seen) continue;

            // Walk the orbit, snapping to cluster centers to keep the cycle
            // points consistent with the root set.
            std::vector<SpherePoint> pts{start};
            bool lower_period = false;
            SpherePoint z = start;
            for (int j = 1; j < k; ++j) {
                z = snap_to_set(eval(f, z), centers);
                if (chordal(z, start) < kCycleTol) {
                    lower_period = true; // proper divisor period, handled earlier
                    break;
                }
                pts.push_back(z);
            }
            if (lower_period) continue;
            if (chordal(eval(f, pts.back()), start) > kCycleTol) continue; // not closed

            Cycle cyc;
            cyc.points = pts;
            cyc.exact_period = k;
            cyc.multiplicity = c.multiplicity;
            cyc.multiplier = cycle_multiplier(f, pts);
            const MultiplierInfo info = classify_multiplier(cyc.multiplier);
            cyc.cls = info.cls;
            cyc.parabolic = info.parabolic;

            // Deterministic representative: rotate so the minimal point leads.
            int min_at = 0;
            for (int j = 1; j < k; ++j)
                if (sphere_less(cyc.points[j], cyc.points[min_at])) min_at = j;
            std::rotate(cyc.points.begin(), cyc.points.begin() + min_at, cyc.points.end());

            for (const SpherePoint& p : cyc.points) taken.push_back(p);
            out.push_back(std::move(cyc));
        }
    }
    return out;
}

std::optional<Cycle> infinity_cycle(const RationalMap& f, int n) {
    std::vector<SpherePoint> pts{SpherePoint::infinity()};
    SpherePoint z = SpherePoint::infinity();
    for (int k = 1; k <= n; ++k) {
        z = eval(f, z);
        if (chordal(z, SpherePoint::infinity()) < 1e-6) {
            // Returned to infinity: period k.
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j)
                    if (chordal(pts[i], pts[j]) < kCycleTol)
                        return std::nullopt; // degenerate orbit, not a clean cycle
            Cycle cyc;
            cyc.points = pts;
            cyc.exact_period = k;
            cyc.multiplier = cycle_multiplier(f, pts);
            const MultiplierInfo info = classify_multiplier(cyc.multiplier);
            cyc.cls = info.cls;
            cyc.parabolic = info.parabolic;
            return cyc;
        }
        pts.push_back(z);
    }
    return std::nullopt;
}

NonRepellingCount nonrepelling_count(const RationalMap& f, int max_period) {
    NonRepellingCount out;
    out.bound = 2 * f.degree() - 2;
    for (const Cycle& c : periodic_cycles(f, max_period))
        if (c.cls != MultiplierClass::repelling) ++out.count;
    if (auto inf = infinity_cycle(f, max_period))
        if (inf->cls != MultiplierClass::repelling) ++out.count;
    out.within_bound = out.count <= out.bound;
    return out;
}

} // namespace holodyn
