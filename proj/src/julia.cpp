#include "holodyn/julia.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

// Deterministic partial Fisher-Yates: pick `take` elements without
// replacement. Inputs must already be in a canonical order for
// reproducibility.
template <typename T>
void subsample(std::vector<T>& v, size_t take, std::uint64_t seed) {
    if (v.size() <= take) return;
    std::uint64_t s = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    for (size_t i = 0; i < take; ++i) {
        const size_t j = i + static_cast<size_t>(next() % (v.size() - i));
        std::swap(v[i], v[j]);
    }
    v.resize(take);
}

} // namespace

std::vector<SpherePoint> preimages(const RationalMap& f, const SpherePoint& target) {
    std::vector<SpherePoint> out;
    Polynomial poly;
    if (target.is_infinity()) {
        poly = f.den();
        if (f.num().degree() > f.den().degree()) out.push_back(SpherePoint::infinity());
    } else {
        poly = f.num() - f.den() * target.value();
        poly.trim(1e-13);
        // Degree drop means infinity maps to the target.
        if (poly.degree() < f.degree()) out.push_back(SpherePoint::infinity());
    }
    if (poly.degree() >= 1)
        for (const Complex& r : poly_roots(poly)) out.push_back(SpherePoint(r));
    std::sort(out.begin(), out.end(), sphere_less);
    return out;
}

namespace {

bool is_exceptional(const RationalMap& f, const SpherePoint& seed) {
    std::vector<SpherePoint> level{seed};
    std::vector<SpherePoint> all;
    for (int j = 0; j < 3; ++j) {
        std::vector<SpherePoint> next;
        for (const SpherePoint& t : level) {
            std::vector<SpherePoint> pre;
            try {
                pre = preimages(f, t);
            } catch (const numeric_error&) {
                continue;
            }
            next.insert(next.end(), pre.begin(), pre.end());
        }
        // Dedupe within the level.
        std::sort(next.begin(), next.end(), sphere_less);
        std::vector<SpherePoint> uniq;
        for (const SpherePoint& p : next)
            if (uniq.empty() || chordal(uniq.back(), p) > 1e-7) uniq.push_back(p);
        level = uniq;
        all.insert(all.end(), uniq.begin(), uniq.end());
    }
    std::sort(all.begin(), all.end(), sphere_less);
    int distinct = 0;
    for (size_t i = 0; i < all.size(); ++i)
        if (i == 0 || chordal(all[i - 1], all[i]) > 1e-7) ++distinct;
    return distinct <= 2;
}

} // namespace

PointCloud inverse_iteration(const RationalMap& f, const SpherePoint& seed, int depth, int cap,
                             std::uint64_t rng_seed) {
    if (depth < 1) throw numeric_error("inverse_iteration: depth must be >= 1");
    if (cap < depth) throw numeric_error("inverse_iteration: cap must be >= depth");
    if (is_exceptional(f, seed))
        throw numeric_error("inverse_iteration: seed has a finite backward orbit (exceptional)");

    PointCloud cloud;
    cloud.seed = seed;
    cloud.depth = depth;
    cloud.cap = cap;
    cloud.rng_seed = rng_seed;

    const size_t per_level = static_cast<size_t>(cap) / static_cast<size_t>(depth);
    std::vector<SpherePoint> level{seed};
    cloud.points.push_back({seed, 0});
    for (int j = 1; j <= depth; ++j) {
        std::vector<SpherePoint> next;
        for (const SpherePoint& t : level) {
            std::vector<SpherePoint> pre;
            try {
                pre = preimages(f, t);
            } catch (const numeric_error&) {
                ++cloud.skipped_nodes;
                continue;
            }
            for (const SpherePoint& w : pre) {
                if (chordal(eval(f, w), t) < 1e-8)
                    next.push_back(w);
                else
                    ++cloud.skipped_nodes;
            }
        }
        std::sort(next.begin(), next.end(), sphere_less);
        if (next.size() > per_level) subsample(next, per_level, rng_seed ^ (0x9e37ULL * j));
        for (const SpherePoint& w : next) cloud.points.push_back({w, j});
        level = std::move(next);
        if (level.empty()) break;
    }
    return cloud;
}

double default_escape_radius(const RationalMap& f) {
    double sum = 0.0;
    if (f.is_polynomial()) {
        for (const Complex& c : f.as_polynomial().coeffs()) sum += std::abs(c);
    } else {
        for (const Complex& c : f.num().coeffs()) sum += std::abs(c);
        for (const Complex& c : f.den().coeffs()) sum += std::abs(c);
    }
    return std::max(4.0, 2.0 * (1.0 + sum));
}

RasterGrid escape_time_raster(const RationalMap& f, const Viewport& v, int max_iter, double R) {
    if (!f.is_polynomial())
        throw numeric_error("escape_time_raster: escape time needs a polynomial map");
    const Polynomial p = f.as_polynomial();
    RasterGrid grid;
    grid.view = v;
    grid.max_iter = max_iter;
    grid.escape_radius = R;
    grid.cells.assign(static_cast<size_t>(v.px) * v.py, -1);
    for (int row = 0; row < v.py; ++row) {
        for (int col = 0; col < v.px; ++col) {
            Complex z = grid.pixel_center(row, col);
            int32_t value = -1;
            for (int it = 0; it <= max_iter; ++it) {
                if (!is_finite(z) || std::abs(z) >= R) {
                    value = it;
                    break;
                }
                z = p(z);
            }
            grid.cells[static_cast<size_t>(row) * v.px + col] = value;
        }
    }
    return grid;
}

std::vector<double> marty_diagnostic(const RationalMap& f, const Complex& center, double radius,
                                     int n_max) {
    const RationalMap f_conj = f.infinity_conjugate();

    // ~314 samples: a 20x20 grid over the bounding square, clipped.
    std::vector<SpherePoint> samples;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const Complex w((i + 0.5 - 10.0) / 10.0, (j + 0.5 - 10.0) / 10.0);
            if (std::abs(w) <= 1.0) samples.push_back(SpherePoint(center + radius * w));
        }

    std::vector<double> out(n_max, 0.0);
    for (const SpherePoint& z0 : samples) {
        SpherePoint z = z0;
        double acc = 1.0 / (1.0 + std::norm(z0.value()));
        for (int n = 1; n <= n_max; ++n) {
            acc *= spherical_derivative_factor(f, f_conj, z);
            z = eval(f, z);
            if (!std::isfinite(acc)) acc = std::numeric_limits<double>::infinity();
            out[n - 1] = std::max(out[n - 1], acc);
        }
    }
    return out;
}

std::optional<int> transitivity_probe(const RationalMap& f, const Complex& center_u,
                                      double radius_u, const Complex& center_v, double radius_v,
                                      int max_n) {
    std::vector<SpherePoint> pts;
    pts.reserve(10000);
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const Complex w((i + 0.5 - 50.0) / 50.0, (j + 0.5 - 50.0) / 50.0);
            if (std::abs(w) <= 1.0) pts.push_back(SpherePoint(center_u + radius_u * w));
        }
    for (int n = 0; n <= max_n; ++n) {
        for (const SpherePoint& p : pts)
            if (p.is_finite() && std::abs(p.value() - center_v) <= radius_v) return n;
        if (n == max_n) break;
        for (SpherePoint& p : pts) p = eval(f, p);
    }
    return std::nullopt;
}

} // namespace holodyn
