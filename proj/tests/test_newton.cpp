#include <cmath>

#include "doctest.h"
#include "holodyn/cycles.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/newton.hpp"

using namespace holodyn;

TEST_CASE("newton map: closed forms and superattracting roots") {
    const RationalMap n2 = newton_map(Polynomial({-1.0, 0.0, 1.0})); // z^2 - 1
    CHECK(n2.equals(RationalMap(Polynomial({1.0, 0.0, 1.0}), Polynomial({0.0, 2.0})), 1e-13));
    CHECK(std::abs(cycle_multiplier(n2, {SpherePoint(Complex(1.0))})) < 1e-13);
    CHECK(std::abs(cycle_multiplier(n2, {SpherePoint(Complex(-1.0))})) < 1e-13);

    const RationalMap n3 = newton_map(Polynomial({-1.0, 0.0, 0.0, 1.0})); // z^3 - 1
    CHECK(n3.equals(RationalMap(Polynomial({1.0, 0.0, 0.0, 2.0}), Polynomial({0.0, 0.0, 3.0})),
                    1e-13));

    // Superattraction persists under iteration: (N o N)'(root) = 0.
    const RationalMap nn = n2.compose(n2);
    CHECK(std::abs(nn.derivative_at(Complex(1.0))) < 1e-12);
    CHECK(std::abs(nn.derivative_at(Complex(-1.0))) < 1e-12);
}

TEST_CASE("newton map rejects repeated roots") {
    // (z-1)^2 (z+2) = z^3 - 3z + 2.
    CHECK_THROWS_AS(newton_map(Polynomial({2.0, -3.0, 0.0, 1.0})), numeric_error);
}

TEST_CASE("quadratic newton is conjugate to the square: h(N(z)) = h(z)^2") {
    const RationalMap n2 = newton_map(Polynomial({-1.0, 0.0, 1.0}));
    auto h = [](const Complex& z) { return (z - 1.0) / (z + 1.0); };
    for (int k = 0; k < 20; ++k) {
        const Complex z(0.3 + 0.21 * k, -1.1 + 0.13 * k);
        const SpherePoint img = eval(n2, SpherePoint(z));
        REQUIRE(img.is_finite());
        const Complex lhs = h(img.value());
        const Complex rhs = h(z) * h(z);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("newton on the imaginary axis never settles for z^2 - 1") {
    const RationalMap n2 = newton_map(Polynomial({-1.0, 0.0, 1.0}));
    // Algebra: N(it) = i(t^2-1)/(2t) stays purely imaginary.
    for (const double t : {0.3, 1.7, -2.4}) {
        const SpherePoint img = eval(n2, SpherePoint(Complex(0.0, t)));
        REQUIRE(img.is_finite());
        CHECK(std::abs(img.value().real()) < 1e-15);
    }
    SpherePoint z(Complex(0.0, 1.0));
    for (int it = 0; it < 200; ++it) {
        z = eval(n2, z);
        if (z.is_finite()) {
            CHECK(chordal(z, SpherePoint(Complex(1.0))) > 1e-8);
            CHECK(chordal(z, SpherePoint(Complex(-1.0))) > 1e-8);
        }
    }
}

TEST_CASE("cayley basins: half-plane dichotomy for z^2 - 1") {
    Viewport v;
    v.center = Complex(0.0);
    v.half_width = 2.0;
    v.px = v.py = 128;
    const BasinGrid grid = cayley_basins(Polynomial({-1.0, 0.0, 1.0}), v);
    REQUIRE(grid.roots.size() == 2);
    const double pixel = 2.0 * v.half_width / v.px;

    RasterGrid geom;
    geom.view = v;
    int mislabeled_off_band = 0;
    for (int row = 0; row < v.py; ++row)
        for (int col = 0; col < v.px; ++col) {
            const Complex z = geom.pixel_center(row, col);
            const int32_t label = grid.labels[size_t(row) * v.px + col];
            // Bisector of -1,1 is the imaginary axis.
            if (std::abs(z.real()) <= pixel) continue;
            const int expect = (std::abs(z - grid.roots[0]) < std::abs(z - grid.roots[1])) ? 0 : 1;
            if (label != expect) ++mislabeled_off_band;
        }
    CHECK(mislabeled_off_band == 0);

    // Specific probes: 1+i to the right root, -2 to the left, i to none.
    auto label_at = [&](const Complex& z) {
        Viewport one;
        one.center = z;
        one.px = one.py = 1;
        one.half_width = 1e-9;
        return cayley_basins(Polynomial({-1.0, 0.0, 1.0}), one).labels[0];
    };
    CHECK(grid.roots[1] == Complex(1.0));
    CHECK(label_at(Complex(1.0, 1.0)) == 1);
    CHECK(label_at(Complex(-2.0, 0.0)) == 0);
    CHECK(label_at(Complex(0.0, 1.0)) == -1);
}

TEST_CASE("cayley basins: random quadratics respect their bisector") {
    for (int t = 0; t < 5; ++t) {
        const Complex r1(0.4 * t - 1.0, 0.3 * t - 0.6);
        const Complex r2(1.1 - 0.2 * t, 0.5 + 0.25 * t);
        const Polynomial p = Polynomial::from_roots({r1, r2});
        Viewport v;
        v.center = (r1 + r2) / 2.0;
        v.half_width = 1.5 * std::abs(r1 - r2);
        v.px = v.py = 64;
        const BasinGrid grid = cayley_basins(p, v);
        const double pixel = 2.0 * v.half_width / v.px;
        RasterGrid geom;
        geom.view = v;

        int bad = 0;
        for (int row = 0; row < v.py; ++row)
            for (int col = 0; col < v.px; ++col) {
                const Complex z = geom.pixel_center(row, col);
                const int32_t label = grid.labels[size_t(row) * v.px + col];
                const double d0 = std::abs(z - grid.roots[0]);
                const double d1 = std::abs(z - grid.roots[1]);
                const int expect = (d0 < d1) ? 0 : 1;
                // Distance to the bisector of the two roots.
                const double dist_bisector = std::abs(d0 - d1) *
                                             (d0 + d1) / (2.0 * std::abs(grid.roots[0] - grid.roots[1]));
                if (label != expect && dist_bisector > pixel * 1.5) ++bad;
            }
        CHECK(bad == 0);
    }
}
