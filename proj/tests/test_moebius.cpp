#include <cmath>

#include "doctest.h"
#include "holodyn/moebius.hpp"
#include "holodyn/rational_map.hpp"

using namespace holodyn;

TEST_CASE("moebius basics: apply, inverse, determinant guard") {
    const MoebiusMap m(Complex(1.0), Complex(2.0), Complex(3.0), Complex(5.0));
    const SpherePoint img = m(SpherePoint(Complex(1.0)));
    CHECK(std::abs(img.value() - Complex(3.0 / 8.0)) < 1e-15);
    CHECK(m.compose(m.inverse()).is_identity(1e-12));
    CHECK_THROWS(MoebiusMap(Complex(1.0), Complex(2.0), Complex(2.0), Complex(4.0)));
}

TEST_CASE("classification: the four example maps") {
    // -1/z: elliptic with iterative period 2, fixed points +-i.
    const MoebiusMap neg_inv(Complex(0.0), Complex(-1.0), Complex(1.0), Complex(0.0));
    const auto c1 = moebius_classify(neg_inv);
    CHECK(c1.kind == MoebiusClass::elliptic_rational);
    CHECK(c1.period == 2);
    REQUIRE(c1.fixed_points.size() == 2);
    CHECK(chordal(c1.fixed_points[0], SpherePoint(Complex(0.0, -1.0))) < 1e-12);
    CHECK(chordal(c1.fixed_points[1], SpherePoint(Complex(0.0, 1.0))) < 1e-12);
    CHECK(std::abs(c1.multiplier_ratio - Complex(-1.0)) < 1e-12);
    // f . f is the identity (matrix square proportional to I).
    CHECK(neg_inv.compose(neg_inv).is_identity(1e-12));

    const MoebiusMap shift(Complex(1.0), Complex(1.0), Complex(0.0), Complex(1.0));
    CHECK(moebius_classify(shift).kind == MoebiusClass::parabolic);

    const MoebiusMap dbl(Complex(2.0), Complex(0.0), Complex(0.0), Complex(1.0));
    const auto c3 = moebius_classify(dbl);
    CHECK(c3.kind == MoebiusClass::loxodromic);
    CHECK(std::abs(c3.multiplier_ratio - Complex(2.0)) < 1e-12);

    CHECK(moebius_classify(MoebiusMap::identity()).kind == MoebiusClass::identity_like);
}

TEST_CASE("classification: unitary-shaped coefficients give |ratio| = 1") {
    // ((a+bi)z + (c+di)) / ((-c+di)z + (a-bi)) is a rigid sphere rotation.
    const double a = 1.0, b = 2.0, c = 0.5, d = -0.3;
    const MoebiusMap rot(Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b));
    const auto cls = moebius_classify(rot);
    CHECK(std::abs(std::abs(cls.multiplier_ratio) - 1.0) < 1e-12);
    CHECK((cls.kind == MoebiusClass::elliptic_rational ||
           cls.kind == MoebiusClass::elliptic_irrational));
}

TEST_CASE("classification: rotation numbers, rational vs irrational") {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const Complex irr = std::polar(1.0, 2.0 * std::acos(-1.0) * golden);
    const MoebiusMap m_irr(irr, Complex(0.0), Complex(0.0), Complex(1.0));
    CHECK(moebius_classify(m_irr).kind == MoebiusClass::elliptic_irrational);

    const Complex fifth = std::polar(1.0, 2.0 * std::acos(-1.0) * 2.0 / 5.0);
    const MoebiusMap m_5(fifth, Complex(0.0), Complex(0.0), Complex(1.0));
    const auto c5 = moebius_classify(m_5);
    CHECK(c5.kind == MoebiusClass::elliptic_rational);
    CHECK(c5.period == 5);
}

TEST_CASE("closed-form iterates match explicit composition") {
    const MoebiusMap dbl(Complex(2.0), Complex(0.0), Complex(0.0), Complex(1.0));
    const MoebiusMap d5 = moebius_iterate_closed(dbl, 5);
    CHECK(d5.equals(MoebiusMap(Complex(32.0), Complex(0.0), Complex(0.0), Complex(1.0)), 1e-12));

    const MoebiusMap neg_inv(Complex(0.0), Complex(-1.0), Complex(1.0), Complex(0.0));
    CHECK(moebius_iterate_closed(neg_inv, 2).is_identity(1e-12));

    const MoebiusMap para(Complex(1.0), Complex(0.0), Complex(1.0), Complex(1.0)); // z/(z+1)
    const MoebiusMap p3 = moebius_iterate_closed(para, 3);
    CHECK(p3.equals(MoebiusMap(Complex(1.0), Complex(0.0), Complex(3.0), Complex(1.0)), 1e-10));

    // All four classes, compared pointwise against n-fold composition.
    const MoebiusMap cases[] = {
        dbl,
        neg_inv,
        para,
        MoebiusMap(Complex(1.0, 2.0), Complex(0.5, -0.3), Complex(0.5, -0.3) * Complex(-1.0),
                   Complex(1.0, -2.0)), // elliptic-ish rotation shape
        MoebiusMap(Complex(3.0, 1.0), Complex(1.0), Complex(0.2), Complex(1.0, -0.5)),
    };
    const Complex probes[] = {Complex(0.3, 0.1), Complex(-1.2, 0.7), Complex(2.0, -2.0)};
    for (const MoebiusMap& m : cases) {
        MoebiusMap acc = MoebiusMap::identity();
        for (int n = 0; n <= 20; ++n) {
            const MoebiusMap closed = moebius_iterate_closed(m, n);
            for (const Complex& z : probes) {
                const SpherePoint a = closed(SpherePoint(z));
                const SpherePoint b = acc(SpherePoint(z));
                CHECK(chordal(a, b) < 1e-10);
            }
            acc = m.compose(acc);
        }
    }
}

TEST_CASE("iterate exponents add up to composition") {
    const MoebiusMap m(Complex(1.0, 0.4), Complex(-0.2), Complex(0.1), Complex(0.9, -0.1));
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            const MoebiusMap lhs = moebius_iterate_closed(m, a + b);
            const MoebiusMap rhs =
                moebius_iterate_closed(m, a).compose(moebius_iterate_closed(m, b));
            CHECK(lhs.equals(rhs, 1e-9));
        }
}

TEST_CASE("quadratic canonical form: T value and conjugacy identities") {
    // Triple (A,B,C) encodes f(z) = A z^2 + 2 B z + C.
    auto as_map = [](const Complex& A, const Complex& B, const Complex& C) {
        return RationalMap(Polynomial({C, 2.0 * B, A}));
    };
    auto phi_map = [](const Complex& T) { return RationalMap(Polynomial({T, 0.0, 1.0})); };

    SUBCASE("(1,0,c): already in canonical form") {
        const auto nf = normalize_quadratic(Complex(1.0), Complex(0.0), Complex(0.7, 0.2));
        CHECK(std::abs(nf.t - Complex(0.7, 0.2)) < 1e-15);
        CHECK(nf.omega1.is_identity(1e-12));
        CHECK(nf.omega2.is_identity(1e-12));
    }

    SUBCASE("(2,1,1): T = 2, coefficient-level conjugacy") {
        const auto nf = normalize_quadratic(Complex(2.0), Complex(1.0), Complex(1.0));
        CHECK(std::abs(nf.t - Complex(2.0)) < 1e-15);
        const RationalMap f = as_map(Complex(2.0), Complex(1.0), Complex(1.0));
        const RationalMap phi = phi_map(nf.t);
        // omega2 . f == phi . omega2 and f . omega1 == omega1 . phi, exactly.
        CHECK(f.postcompose(nf.omega2).equals(phi.precompose(nf.omega2), 1e-13));
        CHECK(f.precompose(nf.omega1).equals(phi.postcompose(nf.omega1), 1e-13));
    }

    SUBCASE("(1,1,0): T = 0, conjugate to the pure square") {
        const auto nf = normalize_quadratic(Complex(1.0), Complex(1.0), Complex(0.0));
        CHECK(std::abs(nf.t) < 1e-15);
        const RationalMap f = as_map(Complex(1.0), Complex(1.0), Complex(0.0));
        const RationalMap phi = phi_map(Complex(0.0));
        CHECK(f.postcompose(nf.omega2).equals(phi.precompose(nf.omega2), 1e-13));
        CHECK(f.precompose(nf.omega1).equals(phi.postcompose(nf.omega1), 1e-13));
    }

    CHECK_THROWS(normalize_quadratic(Complex(0.0), Complex(1.0), Complex(1.0)));
}
