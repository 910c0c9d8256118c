#pragma once

// World chains of free pointlike particles in deformed Minkowski geometries.
// Chains are generated in the Minkowski chart; deformed-geometry checks go
// through verify_link_equivalence.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "worldfunc/equivalence.hpp"
#include "worldfunc/geometry.hpp"
#include "worldfunc/objects.hpp"
#include "worldfunc/rng.hpp"

namespace worldfunc {

/// d as a function of sigma_M.
using DeformationFn = std::function<double(double)>;

/// d(Pk_s,Pl_s1) + d(Pl_s,Pk_s1) - d(Pk_s,Pk_s1) - d(Pl_s,Pl_s1), each d taken
/// at the Minkowski world function of its two points.
double w_correction(const DeformationFn& d, const Point& pk_s, const Point& pl_s, const Point& pk_s1,
                    const Point& pl_s1);
double w_correction(const GeometrySpec& g, const Point& pk_s, const Point& pl_s, const Point& pk_s1,
                    const Point& pl_s1);

/// Hyperbolic angle between consecutive links: 2 asinh(sqrt(d / (2 sigma_M))).
double deflection_angle(double d, double sigma_m_link);

/// m = b * sqrt(2 sigma) for a link of squared length two_sigma_link.
double particle_mass(const UnitConstants& units, double two_sigma_link);
/// m = sqrt(2 sigma_M + hbar / (b c)) / b, the discrete-geometry form.
double particle_mass_discrete(const UnitConstants& units, double two_sigma_m);

struct ChainParams {
    GeometrySpec geometry = GeometrySpec::minkowski();
    /// Minkowski world function of every link; 2 sigma_M is the squared link length.
    double link_sigma_m = 0.5;
    int steps = 100;
    int ensemble = 100;
    std::uint64_t seed = 0;
    bool keep_chains = false;

    /// d(sigma_M) at the link length.
    double deformation() const;
    /// Cone angle between consecutive links.
    double delta_phi() const;
    void validate() const;
};

using Coords4 = std::array<double, 4>;

struct Link {
    Coords4 p0{};
    Coords4 p1{};
};

/// Next link of a pointlike chain: starts at prev.p1, has Minkowski length
/// sqrt(2 link_sigma_m) and hyperbolic angle delta_phi to prev. The cone
/// azimuth is drawn from rng.
Link step_chain(const Link& prev, double delta_phi, double link_sigma_m, CounterRng& rng);
Link step_chain(const Link& prev, const ChainParams& params, CounterRng& rng);

/// Hyperbolic angle between two timelike Minkowski vectors.
double hyperbolic_angle(const Coords4& a, const Coords4& b);

/// Links of a pointlike chain through the given points.
std::vector<Skeleton> pointlike_chain(const std::vector<Coords4>& points);

struct LinkPairReport {
    std::size_t k = 0;
    std::size_t l = 0;
    EquivalenceReport report;
};

struct LinkStepReport {
    /// Links step and step + 1 are compared.
    std::size_t step = 0;
    bool equivalent = true;
    std::vector<LinkPairReport> pairs;
};

/// Checks Pk_s Pl_s eqv Pk_s1 Pl_s1 for every adjacent pair of links and every
/// skeleton pair k < l, in the geometry g.
std::vector<LinkStepReport> verify_link_equivalence(const GeometrySpec& g, const std::vector<Skeleton>& chain,
                                                    double tol = kDefaultTolerance);

struct StepStats {
    int step = 0;
    double mean_t = 0.0;
    /// Sum over spatial coordinates of the ensemble variance.
    double var_transverse = 0.0;
    double mean_angle = 0.0;
    double var_angle = 0.0;
};

struct ChainStats {
    double delta_phi = 0.0;
    /// One row per step 0..steps; row s describes the end point of link s.
    std::vector<StepStats> rows;
    /// Per chain: largest relative deviation of a link's 2 sigma_M from nominal.
    std::vector<double> link_length_drift;
    /// Largest |measured angle - delta_phi| over the ensemble.
    double max_angle_error = 0.0;
};

struct EnsembleResult {
    ChainStats stats;
    /// Per chain, the points P_0 .. P_{steps+1}; link s joins P_s and P_{s+1}.
    std::vector<std::vector<Coords4>> chains;
};

/// Runs params.ensemble chains from the link O -> (sqrt(2 sigma_M), 0, 0, 0).
/// Output is identical for every thread count.
EnsembleResult simulate_ensemble(const ChainParams& params);

}  // namespace worldfunc
