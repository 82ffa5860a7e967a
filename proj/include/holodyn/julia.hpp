#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holodyn/rational_map.hpp"

namespace holodyn {

struct Viewport {
    Complex center{0.0};
    double half_width = 2.0; // world half-width; half-height scales by py/px
    int px = 512;
    int py = 512;
};

// Per-pixel escape data (or basin labels); row-major, top row first.
struct RasterGrid {
    Viewport view;
    int max_iter = 0;
    double escape_radius = 0.0;
    std::vector<int32_t> cells; // escape index, or -1 for the bounded marker

    Complex pixel_center(int row, int col) const {
        const double step = 2.0 * view.half_width / view.px;
        const double x = view.center.real() + (col + 0.5 - view.px / 2.0) * step;
        const double y = view.center.imag() + (view.py / 2.0 - row - 0.5) * step;
        return Complex(x, y);
    }
};

struct PointCloud {
    struct Node {
        SpherePoint point;
        int level;
    };
    std::vector<Node> points;
    SpherePoint seed;
    int depth = 0;
    int cap = 0;
    std::uint64_t rng_seed = 0;
    int skipped_nodes = 0; // solver failures or residual rejections
};

// Breadth-first preimage tree from a non-exceptional seed (a point whose
// backward orbit across 3 pullback levels holds more than 2 distinct
// values). Levels larger than cap/depth are subsampled uniformly without
// replacement by a deterministic generator; every kept point satisfies
// chordal(f(w), parent) < 1e-8.
PointCloud inverse_iteration(const RationalMap& f, const SpherePoint& seed, int depth, int cap,
                             std::uint64_t rng_seed = 1);

// All sphere preimages of a single target value.
std::vector<SpherePoint> preimages(const RationalMap& f, const SpherePoint& target);

double default_escape_radius(const RationalMap& f); // max(4, 2(1 + sum |coeffs|))

// First-escape index per pixel under |z| >= R, bounded marker -1 otherwise.
RasterGrid escape_time_raster(const RationalMap& f, const Viewport& v, int max_iter, double R);

// Max over a disk sample grid of the spherical derivative of f_n,
// |f_n'(z)| / (1 + |f_n(z)|^2), for n = 1..n_max (chain-rule accumulation).
// Growth beyond 1e3 flags non-normality; the threshold is a diagnostic, not
// a proof.
std::vector<double> marty_diagnostic(const RationalMap& f, const Complex& center, double radius,
                                     int n_max);

constexpr double kMartyNonNormalThreshold = 1e3;

// First n <= max_n with f^n(U) meeting V (dense push-forward of a ~10^4
// sample grid on U), or nullopt.
std::optional<int> transitivity_probe(const RationalMap& f, const Complex& center_u, double radius_u,
                                      const Complex& center_v, double radius_v, int max_n);

} // namespace holodyn
