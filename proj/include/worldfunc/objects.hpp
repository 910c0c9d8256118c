#pragma once

// Elementary geometrical objects: a skeleton of points plus an envelope
// function of world-function values whose zero set is the object.

#include <cstdint>
#include <string>
#include <vector>

#include "worldfunc/equivalence.hpp"
#include "worldfunc/geometry.hpp"

namespace worldfunc {

class Skeleton {
public:
    explicit Skeleton(std::vector<Point> points);

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::size_t dim() const noexcept { return points_.front().dim(); }

private:
    std::vector<Point> points_;
};

/// Expression tree over sigma values. Leaves are constants or sigma(X, Y)
/// with X, Y either the running point R or a skeleton point P_i.
class Envelope {
public:
    enum class Op { add, sub, mul, div, constant, sigma };
    /// Point reference for R; skeleton points are referenced by index.
    static constexpr int kR = -1;

    static Envelope constant(double value);
    static Envelope sigma(int a, int b);
    /// + and * take one or more arguments, - one or two, / exactly two.
    static Envelope node(Op op, std::vector<Envelope> args);
    /// F2(P0,P1,P2) - F2(P0,P1,R) on a skeleton {P0, P1, Q}.
    static Envelope cylinder();

    Op op() const noexcept { return op_; }
    const std::vector<Envelope>& args() const noexcept { return args_; }
    double value() const noexcept { return value_; }
    int point_a() const noexcept { return a_; }
    int point_b() const noexcept { return b_; }
    /// Name of the built-in this tree was expanded from, empty otherwise.
    const std::string& builtin() const noexcept { return builtin_; }

    /// Largest skeleton index referenced, -1 if none.
    int max_point_index() const;

private:
    Envelope() = default;

    Op op_ = Op::constant;
    std::vector<Envelope> args_;
    double value_ = 0.0;
    int a_ = kR;
    int b_ = kR;
    std::string builtin_;
};

const char* to_string(Envelope::Op op) noexcept;

struct EnvelopeValue {
    double value = 0.0;
    /// Bound on the size of the terms that produced value; membership is
    /// judged relative to it.
    double magnitude = 0.0;
};

EnvelopeValue evaluate_envelope_detailed(const GeometrySpec& g, const Skeleton& sk, const Envelope& env,
                                         const Point& r);
double evaluate_envelope(const GeometrySpec& g, const Skeleton& sk, const Envelope& env, const Point& r);

bool object_membership(const GeometrySpec& g, const Skeleton& sk, const Envelope& env, const Point& r,
                       double tol = kDefaultTolerance);

/// Gram determinant of P0P1 and P0Q.
double gram_F2(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q);

double cylinder_envelope(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q, const Point& r);

struct SkeletonPairReport {
    std::size_t i = 0;
    std::size_t k = 0;
    EquivalenceReport report;
};

struct SkeletonEquivalence {
    bool equivalent = true;
    /// One entry per pair i < k.
    std::vector<SkeletonPairReport> pairs;
};

SkeletonEquivalence skeletons_equivalent(const GeometrySpec& g, const Skeleton& a, const Skeleton& b,
                                         double tol = kDefaultTolerance);

struct SurfaceProbeConfig {
    int count = 1000;
    /// Rays are cast from the centre out to this chart radius.
    double radius = 3.0;
    int scan_steps = 256;
    double tol = kDefaultTolerance;
    std::uint64_t seed = 0;
    /// Give up after count * max_attempts_factor rays.
    int max_attempts_factor = 20;
};

/// Points of the object found by casting random chart rays from centre and
/// bisecting sign changes of the envelope. Only points that pass
/// object_membership are returned.
std::vector<Point> sample_surface_probes(const GeometrySpec& g, const Skeleton& sk, const Envelope& env,
                                         const Point& centre, const SurfaceProbeConfig& cfg = {});

}  // namespace worldfunc
