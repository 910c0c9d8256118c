#pragma once

// Equivalence of vectors defined through the world function, and solvers for
// the equivalence equations that expose zero-, single- and multivariance.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "worldfunc/geometry.hpp"

namespace worldfunc {

/// Outcome of the parallelism + equal-length test for two vectors a, b.
///
/// residual_length   = |a|^2 - |b|^2 = 2 sigma_a - 2 sigma_b
/// residual_parallel = (a.b) - (sigma_a + sigma_b)
///
/// The parallel residual reduces to (a.b) - 2 sigma_a whenever the lengths
/// agree, and is written symmetrically so that swapping a and b only flips
/// the sign of residual_length.
struct EquivalenceReport {
    bool equivalent = false;
    double residual_parallel = 0.0;
    double residual_length = 0.0;
    /// Magnitude the residuals are compared against (largest |2 sigma| involved).
    double scale = 0.0;
};

EquivalenceReport is_equivalent(const GeometrySpec& g, const GeomVector& a, const GeomVector& b,
                                double tol = kDefaultTolerance);

struct SolverConfig {
    int starts = 256;
    int max_iter = 100;
    double tol = 1e-9;
    /// Relative to max(1, chart length of P0P1).
    double dedupe_radius = 1e-4;
    /// Half width of the start box around Q0, relative to max(1, chart length of P0P1).
    double box_half_width = 5.0;
    std::uint64_t seed = 0;
};

enum class Variance { zero, single, multi };

const char* to_string(Variance v) noexcept;

struct SolverDiagnostics {
    int starts_attempted = 0;
    int converged = 0;
    double dedupe_radius = 0.0;
};

struct SolutionSet {
    std::vector<Point> representatives;
    Variance variance = Variance::zero;
    int manifold_dim_estimate = 0;
    /// (residual_length, residual_parallel) for each representative.
    std::vector<std::pair<double, double>> residuals;
    SolverDiagnostics diagnostics;
};

/// Solves P0P1 eqv Q0Q1 for Q1 by multistart damped Newton with
/// minimum-norm steps. Representatives are deduplicated by chart distance.
SolutionSet solve_equivalent(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q0,
                             const SolverConfig& cfg = {});

/// Member of the family of vectors equivalent to a spacelike Minkowski vector
/// y: x^0 = y^0 + alpha, x_vec = y_vec + alpha * n_hat, with n_hat a unit
/// spatial direction obeying y_vec . n_hat = y^0 (so that alpha^k is null and
/// orthogonal to y). Operates on chart coordinates of a Minkowski chart.
GeomVector minkowski_spacelike_family(const GeomVector& y, double alpha, const std::vector<double>& n_hat);

/// Unit spatial direction admissible for minkowski_spacelike_family(y, ...),
/// parametrised by the azimuth psi around y_vec. Needs at least 3 spatial
/// dimensions for a full circle of directions.
std::vector<double> spacelike_family_direction(const GeomVector& y, double psi);

struct IntransitivityWitness {
    GeomVector a;
    GeomVector b;
    GeomVector c;
    EquivalenceReport ab;
    EquivalenceReport bc;
    EquivalenceReport ac;
    int samples_used = 0;
};

/// Randomised search for a eqv b, b eqv c with a not eqv c. Deterministic in
/// the seed; gives up after `budget` samples.
std::optional<IntransitivityWitness> find_intransitivity_witness(const GeometrySpec& g, std::uint64_t seed,
                                                                 int budget = 10000,
                                                                 double tol = kDefaultTolerance);

}  // namespace worldfunc
