#include "holodyn/newton.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

RationalMap newton_map(const Polynomial& p) {
    if (p.degree() < 2) throw numeric_error("newton_map: degree must be >= 2");
    const std::vector<Complex> roots = poly_roots(p);
    for (const RootCluster& c : cluster_points(roots, 1e-7))
        if (c.multiplicity > 1)
            throw numeric_error("newton_map: polynomial has a repeated root near " +
                                SpherePoint(c.center).str());
    const Polynomial dp = p.derivative();
    return RationalMap(Polynomial::identity() * dp - p, dp);
}

BasinGrid cayley_basins(const Polynomial& p, const Viewport& v, int max_iter, double tol) {
    const RationalMap n_map = newton_map(p);
    BasinGrid grid;
    grid.view = v;
    grid.max_iter = max_iter;
    grid.tol = tol;
    grid.roots = poly_roots(p);
    grid.labels.assign(static_cast<size_t>(v.px) * v.py, -1);

    RasterGrid geom;
    geom.view = v;
    for (int row = 0; row < v.py; ++row) {
        for (int col = 0; col < v.px; ++col) {
            SpherePoint z(geom.pixel_center(row, col));
            int candidate = -1;
            int streak = 0;
            int32_t label = -1;
            for (int it = 0; it < max_iter; ++it) {
                int hit = -1;
                if (z.is_finite()) {
                    for (size_t ri = 0; ri < grid.roots.size(); ++ri) {
                        if (chordal(z, SpherePoint(grid.roots[ri])) < tol) {
                            hit = static_cast<int>(ri);
                            break;
                        }
                    }
                }
                if (hit >= 0 && hit == candidate) {
                    if (++streak >= 3) {
                        label = hit;
                        break;
                    }
                } else if (hit >= 0) {
                    candidate = hit;
                    streak = 1;
                } else {
                    candidate = -1;
                    streak = 0;
                }
                z = eval(n_map, z);
            }
            grid.labels[static_cast<size_t>(row) * v.px + col] = label;
        }
    }
    return grid;
}

} // namespace holodyn
