#pragma once

// Points, vectors and world functions of the supported physical geometries,
// together with the primitives derived from the world function alone.

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "worldfunc/errors.hpp"

namespace worldfunc {

/// Relative tolerance used by equality-style checks on unit-scale data.
inline constexpr double kDefaultTolerance = 1e-9;

/// A point of the background manifold, given by its chart coordinates.
/// For Minkowski-based geometries coordinate 0 is c-scaled time.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// A vector is an ordered pair of points; there is no linear structure.
class GeomVector {
public:
    GeomVector(Point origin, Point end);

    const Point& origin() const noexcept { return origin_; }
    const Point& end() const noexcept { return end_; }
    std::size_t dim() const noexcept { return origin_.dim(); }

private:
    Point origin_;
    Point end_;
};

struct UnitConstants {
    double hbar = 1.0;
    double c = 1.0;
    double b = 1.0;

    /// d = lambda0^2 = hbar / (2 b c)
    double elementary_length_sq() const;
    void validate() const;
};

/// Real function F with F(0) = 0 that deforms the Minkowski world function:
/// sigma = F(sigma_M).
class DeformationFunction {
public:
    enum class Kind { identity, discrete_shift, grainy_ramp, table };

    static DeformationFunction identity();
    static DeformationFunction discrete_shift(double lambda0_sq);
    static DeformationFunction grainy_ramp(double lambda0_sq, double sigma0);
    /// Piecewise-linear table of (sigma_M, sigma) breakpoints. Values outside
    /// the table are extrapolated along the end segments.
    static DeformationFunction table(std::vector<std::pair<double, double>> breakpoints);

    double operator()(double sigma_m) const;
    double derivative(double sigma_m) const;

    Kind kind() const noexcept { return kind_; }
    double lambda0_sq() const noexcept { return lambda0_sq_; }
    double sigma0() const noexcept { return sigma0_; }
    const std::vector<std::pair<double, double>>& breakpoints() const noexcept { return table_; }

private:
    DeformationFunction() = default;
    std::size_t segment(double x) const;

    Kind kind_ = Kind::identity;
    double lambda0_sq_ = 0.0;
    double sigma0_ = 0.0;
    std::vector<std::pair<double, double>> table_;
};

enum class GeometryKind { euclidean, minkowski, discrete, grainy, deformed };

const char* to_string(GeometryKind kind) noexcept;

class GeometrySpec {
public:
    static GeometrySpec euclidean(std::size_t dim);
    static GeometrySpec minkowski(std::size_t dim = 4);
    static GeometrySpec discrete(double lambda0_sq, std::size_t dim = 4);
    /// Discrete geometry with lambda0^2 = hbar / (2 b c) taken from the units.
    static GeometrySpec discrete(const UnitConstants& units, std::size_t dim = 4);
    static GeometrySpec grainy(double lambda0_sq, double sigma0, std::size_t dim = 4);
    static GeometrySpec deformed(DeformationFunction f, std::size_t dim = 4);

    GeometryKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    double lambda0_sq() const noexcept { return lambda0_sq_; }
    double sigma0() const noexcept { return sigma0_; }
    const std::optional<DeformationFunction>& deformation() const noexcept { return f_; }
    const UnitConstants& units() const noexcept { return units_; }

    GeometrySpec& with_units(const UnitConstants& units);

    /// Every variant except Euclidean is a function of sigma_M.
    bool minkowski_based() const noexcept { return kind_ != GeometryKind::euclidean; }

    /// sigma as a function of sigma_M. Minkowski-based geometries only.
    double from_minkowski(double sigma_m) const;
    /// dsigma / dsigma_M. Minkowski-based geometries only.
    double from_minkowski_derivative(double sigma_m) const;
    /// d(sigma_M) = sigma - sigma_M. Minkowski-based geometries only.
    double deformation_at(double sigma_m) const;

    /// True when the deformation vanishes identically, so the geometry is
    /// exactly Euclidean or Minkowski.
    bool undeformed() const;

private:
    GeometrySpec() = default;

    GeometryKind kind_ = GeometryKind::euclidean;
    std::size_t dim_ = 0;
    double lambda0_sq_ = 0.0;
    double sigma0_ = 0.0;
    std::optional<DeformationFunction> f_;
    UnitConstants units_;
};

/// sgn with sgn(0) = 0.
double sgn(double x) noexcept;

/// Minkowski world function (signature +---) on raw chart coordinates.
double sigma_minkowski(std::span<const double> p, std::span<const double> q) noexcept;
double sigma_minkowski(const Point& p, const Point& q);

double sigma(const GeometrySpec& g, const Point& p, const Point& q);
/// Unchecked evaluation on raw coordinates; both spans must have g.dim() entries.
double sigma_raw(const GeometrySpec& g, std::span<const double> p, std::span<const double> q);
/// Gradient of sigma(p, q) with respect to q, written into out.
void sigma_gradient_raw(const GeometrySpec& g, std::span<const double> p, std::span<const double> q,
                        std::span<double> out);

/// (a.b) = sigma(P0,Q1) + sigma(P1,Q0) - sigma(P0,Q0) - sigma(P1,Q1)
double scalar_product(const GeometrySpec& g, const GeomVector& a, const GeomVector& b);
double squared_length(const GeometrySpec& g, const GeomVector& a);

struct Density {
    double rho = 1.0;
    /// sigma0 = 0 inside the gap: the point density has collapsed to zero.
    bool discrete_limit = false;
};

/// Relative density of points of a grainy geometry with respect to Minkowski.
Density relative_density(double lambda0_sq, double sigma0, double sigma_g);

struct TriangleReport {
    bool holds = true;
    double slack = 0.0;
    bool skipped = false;
};

struct Triple {
    Point p0;
    Point r;
    Point p1;
};

/// sqrt(2 sigma(P0,R)) + sqrt(2 sigma(R,P1)) >= sqrt(2 sigma(P0,P1)) for each
/// triple; triples with a negative sigma are skipped.
std::vector<TriangleReport> check_triangle_axiom(const GeometrySpec& g, std::span<const Triple> triples,
                                                 double tol = kDefaultTolerance);

struct Basis {
    Point origin;
    std::vector<Point> ends;
};

struct MetricTensor {
    Eigen::MatrixXd lower;  ///< g_kl = (OS_k . OS_l)
    Eigen::MatrixXd upper;  ///< g^kl, the inverse
};

MetricTensor metric_tensor(const GeometrySpec& g, const Basis& basis);

/// Contravariant coordinates x^k = g^kl (v . OS_l).
std::vector<double> sigma_coordinates(const GeometrySpec& g, const GeomVector& v, const Basis& basis);

/// Angle from |a||b| cos(theta) = (a.b). Requires real, nonzero lengths.
double euclidean_angle(const GeometrySpec& g, const GeomVector& a, const GeomVector& b,
                       double tol = kDefaultTolerance);

void require_dim(const GeometrySpec& g, const Point& p);

}  // namespace worldfunc
