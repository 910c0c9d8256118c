#pragma once

// Straights built from the world function: collinearity, lines through a
// point, and segments as sets of points saturating the triangle inequality.

#include <cstdint>
#include <vector>

#include "worldfunc/geometry.hpp"

namespace worldfunc {

struct CollinearityReport {
    bool collinear = false;
    /// |a|^2 |b|^2 - (a.b)^2
    double residual = 0.0;
};

CollinearityReport is_collinear(const GeometrySpec& g, const GeomVector& a, const GeomVector& b,
                                double tol = kDefaultTolerance);

/// Is R on the straight through Q0 collinear to P0P1? R == Q0 counts as a member.
bool line_membership(const GeometrySpec& g, const Point& q0, const GeomVector& p0p1, const Point& r,
                     double tol = kDefaultTolerance);

struct SegmentMembership {
    bool member = false;
    /// sqrt(2 sigma(P0,R)) + sqrt(2 sigma(R,P1)) - sqrt(2 sigma(P0,P1)); NaN out of domain.
    double defect = 0.0;
    /// False when one of the sigmas is negative (or sigma(P0,P1) is not positive).
    bool in_domain = true;
};

SegmentMembership segment_membership(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& r,
                                     double tol = kDefaultTolerance);

struct TubeSamplerConfig {
    int stations = 64;
    int directions = 16;
    double tol = kDefaultTolerance;
    /// Largest transverse radius scanned, relative to the chart length of P0P1.
    double max_radius = 1.0;
    int scan_steps = 512;
    std::uint64_t seed = 0;
};

struct TubeStation {
    /// Chart distance from P0 along P0P1.
    double t = 0.0;
    /// Largest transverse radius of a segment point at this station.
    double radius = 0.0;
    /// No direction bracketed a root.
    bool empty = false;
};

struct TubePoint {
    double t = 0.0;
    double r = 0.0;
    Point point;
};

struct TubeSample {
    std::vector<TubeStation> profile;
    std::vector<TubePoint> points;
};

/// Stations are spaced evenly over [0, |P0P1|_chart], both ends included.
TubeSample sample_segment_tube(const GeometrySpec& g, const Point& p0, const Point& p1,
                               const TubeSamplerConfig& cfg = {});

}  // namespace worldfunc
