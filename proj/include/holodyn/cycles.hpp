#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holodyn/rational_map.hpp"

namespace holodyn {

enum class MultiplierClass {
    superattracting,
    attracting,
    repelling,
    rationally_neutral,
    irrationally_neutral,
};

std::string to_string(MultiplierClass c);

struct MultiplierInfo {
    MultiplierClass cls;
    bool parabolic = false; // rationally neutral with multiplier 1
};

// Classification from the multiplier alone. |lambda| within 1e-9 of 1 counts
// as neutral; root-of-unity detection runs the same continued-fraction
// policy as the Moebius classifier.
MultiplierInfo classify_multiplier(const Complex& lambda);

struct Cycle {
    std::vector<SpherePoint> points; // in orbit order, points[0] minimal
    int exact_period = 1;
    Complex multiplier{0.0};
    MultiplierClass cls = MultiplierClass::superattracting;
    bool parabolic = false;
    int multiplicity = 1; // root-cluster multiplicity at the cycle (1 generically)
};

// Distinct fixed points on the sphere: roots of P(z) - z Q(z) (collapsed
// when they collide) plus infinity whenever f fixes it.
std::vector<SpherePoint> fixed_points(const RationalMap& f);

// Chain-rule multiplier of a verified cycle. Cycles through infinity (or far
// out) are moved by an exact Moebius conjugacy into a bounded chart first.
Complex cycle_multiplier(const RationalMap& f, const std::vector<SpherePoint>& points);

// All cycles of exact period k <= n whose points are roots of the iterated
// fixed-point polynomials. Requires 1 <= n <= 6 and degree^n <= 4096. Root
// collisions (parabolic points) are collapsed to cluster centroids; cycles
// already accounted for by a divisor period are not repeated. The cycle
// through infinity, when present, is reported by infinity_cycle instead.
std::vector<Cycle> periodic_cycles(const RationalMap& f, int n);

// The cycle of the point at infinity if it is periodic with period <= n.
std::optional<Cycle> infinity_cycle(const RationalMap& f, int n);

struct NonRepellingCount {
    int count = 0;
    int bound = 0; // 2d - 2
    bool within_bound = true;
};

// Counts non-repelling cycles (finite ones and the one through infinity) up
// to max_period and compares against the 2d-2 bound. Periods beyond
// max_period are not examined, so this is a partial check by construction.
NonRepellingCount nonrepelling_count(const RationalMap& f, int max_period);

} // namespace holodyn
