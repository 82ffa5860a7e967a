#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holodyn/power_series.hpp"
#include "holodyn/rational_map.hpp"

namespace holodyn {

enum class ChartMethod { ritt, milnor, series, original1904, koenigs, psi0 };
std::string to_string(ChartMethod m);

// A conjugating coordinate at a fixed point: F solves F(f(z)) = F(z)^m near
// a superattracting point (m >= 2), or B(f(z)) = lambda B(z) for Koenigs
// charts (m = 1). The evaluator takes global sphere points; validity_radius
// lives in the local coordinate (z - center, or 1/z for charts at infinity)
// and is the computed safe disk, with no claim of maximality.
struct CoordinateChart {
    SpherePoint center;
    int local_degree = 2;
    double validity_radius = 0.0;
    ChartMethod method = ChartMethod::ritt;
    std::function<Complex(const SpherePoint&)> eval;

    // method metadata
    int iterations = 0;                 // limit steps or series terms used
    double half_plane_sigma = 0.0;      // milnor log-chart threshold
    std::vector<Complex> series_coeffs; // series method: coefficients of F
    Complex multiplier{0.0};            // koenigs charts: lambda
};

// The local germ of f at a fixed point x, moved to the origin. Evaluation is
// exact rational arithmetic arranged to avoid cancellation at small w; the
// Taylor series, local degree m and leading coefficient come along.
struct LocalGerm {
    std::function<Complex(Complex)> eval;
    PowerSeries taylor;
    int m = 0;
    Complex lead{0.0};
    double clearance = 0.0; // distance from 0 to the nearest pole of the germ
};

LocalGerm local_germ(const RationalMap& f, const SpherePoint& x, size_t len = 48);
LocalGerm local_germ(const PowerSeries& series);

// Successive-roots limit F(z) = lim f_p(z)^(1/m^p) on the germ normalized to
// leading coefficient 1 (scaling conjugacy with the principal root), branch
// chosen nearest the previous value at every step.
CoordinateChart boettcher_ritt(const RationalMap& f, const SpherePoint& x, int n_max = 64);
CoordinateChart boettcher_ritt(const PowerSeries& germ, int n_max = 64);

// Log-chart construction at infinity for a polynomial of degree m >= 2:
// the lift Z -> log f(e^Z) contracts Z/m^k to the linearizer Phi on a right
// half-plane; the chart is exp(Phi(log z)).
CoordinateChart boettcher_milnor(const RationalMap& f, int n_max = 64);
// The lift itself (for the functional-equation checks Phi(F(Z)) = m Phi(Z)
// and Phi(Z + 2 pi i) = Phi(Z) + 2 pi i).
Complex milnor_phi(const RationalMap& f, const Complex& Z, int n_max = 64);

// Resolvent/Neumann series: G = sum h(f_k(z))/m^(k+1) with h = log(f/z^m),
// F = z exp(G), computed as an explicit truncated power series.
CoordinateChart boettcher_series(const RationalMap& f, const SpherePoint& x, int n_terms = 32);
CoordinateChart boettcher_series(const PowerSeries& germ, int n_terms = 32);

// The 1904 scheme: the same successive-roots limit but on the raw germ,
// without pre-normalization; the prefactor lead^(1/(m-1)) (principal branch)
// emerges in the limit.
CoordinateChart boettcher_original(const RationalMap& f, const SpherePoint& x, int n_max = 64);
CoordinateChart boettcher_original(const PowerSeries& germ, int n_max = 64);

// lim log+|f_n(z)| / m^n for a polynomial of degree m: 0 on bounded orbits
// (heuristic horizon), log|chart value| where the chart at infinity holds.
double escape_rate(const RationalMap& f, const SpherePoint& z, int n_max = 256);

// max |F(f(z)) - F(z)^m| / max(1, |F(z)|^m) at z: the functional-equation
// residual the chart promises to keep below tolerance on its validity disk.
double chart_residual(const CoordinateChart& chart, const RationalMap& f, const SpherePoint& z);

// Deterministic sample points spread over the chart's validity region.
std::vector<SpherePoint> chart_samples(const CoordinateChart& chart, int count);

} // namespace holodyn
