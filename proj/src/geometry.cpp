#include "worldfunc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace worldfunc {

namespace {

void require(bool condition, ErrorKind kind, const std::string& message)
{
    if (!condition) {
        throw Error(kind, message);
    }
}

double discrete_value(double x, double lambda0_sq) noexcept
{
    return x + lambda0_sq * sgn(x);
}

// Outside the ramp this is the same expression as discrete_value, so a zero
// ramp width reproduces the discrete geometry bit for bit.
double grainy_value(double x, double lambda0_sq, double sigma0) noexcept
{
    if (std::abs(x) > sigma0) {
        return x + lambda0_sq * sgn(x);
    }
    if (sigma0 == 0.0) {
        return x + lambda0_sq * 0.0;
    }
    return x + lambda0_sq * (x / sigma0);
}

double grainy_derivative(double x, double lambda0_sq, double sigma0) noexcept
{
    if (std::abs(x) > sigma0 || sigma0 == 0.0) {
        return 1.0;
    }
    return 1.0 + lambda0_sq / sigma0;
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    for (double c : coords_) {
        require(std::isfinite(c), ErrorKind::invalid_input, "point coordinates must be finite");
    }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

GeomVector::GeomVector(Point origin, Point end) : origin_(std::move(origin)), end_(std::move(end))
{
    require(origin_.dim() == end_.dim(), ErrorKind::invalid_input,
            "vector end points have different dimensions (" + std::to_string(origin_.dim()) + " vs " +
                std::to_string(end_.dim()) + ")");
}

double UnitConstants::elementary_length_sq() const
{
    validate();
    return hbar / (2.0 * b * c);
}

void UnitConstants::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(hbar) && positive(c) && positive(b), ErrorKind::invalid_input,
            "unit constants hbar, c and b must be positive");
}

// --- DeformationFunction -----------------------------------------------------

DeformationFunction DeformationFunction::identity()
{
    return DeformationFunction{};
}

DeformationFunction DeformationFunction::discrete_shift(double lambda0_sq)
{
    require(std::isfinite(lambda0_sq) && lambda0_sq >= 0.0, ErrorKind::invalid_input,
            "lambda0_sq must be finite and non-negative");
    DeformationFunction f;
    f.kind_ = Kind::discrete_shift;
    f.lambda0_sq_ = lambda0_sq;
    return f;
}

DeformationFunction DeformationFunction::grainy_ramp(double lambda0_sq, double sigma0)
{
    require(std::isfinite(lambda0_sq) && lambda0_sq >= 0.0, ErrorKind::invalid_input,
            "lambda0_sq must be finite and non-negative");
    require(std::isfinite(sigma0) && sigma0 >= 0.0, ErrorKind::invalid_input,
            "sigma0 must be finite and non-negative");
    DeformationFunction f;
    f.kind_ = Kind::grainy_ramp;
    f.lambda0_sq_ = lambda0_sq;
    f.sigma0_ = sigma0;
    return f;
}

DeformationFunction DeformationFunction::table(std::vector<std::pair<double, double>> breakpoints)
{
    require(breakpoints.size() >= 2, ErrorKind::invalid_input, "deformation table needs at least two breakpoints");
    double y_scale = 1.0;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const auto [x, y] = breakpoints[i];
        require(std::isfinite(x) && std::isfinite(y), ErrorKind::invalid_input,
                "deformation table entries must be finite");
        if (i > 0) {
            require(x > breakpoints[i - 1].first, ErrorKind::invalid_input,
                    "deformation table breakpoints must be strictly increasing in sigma_M");
        }
        y_scale = std::max(y_scale, std::abs(y));
    }
    DeformationFunction f;
    f.kind_ = Kind::table;
    f.table_ = std::move(breakpoints);
    require(std::abs(f(0.0)) <= 1e-12 * y_scale, ErrorKind::invalid_input, "deformation table must satisfy F(0) = 0");
    return f;
}

std::size_t DeformationFunction::segment(double x) const
{
    auto it = std::upper_bound(table_.begin(), table_.end(), x,
                               [](double v, const std::pair<double, double>& bp) { return v < bp.first; });
    auto idx = static_cast<std::size_t>(std::distance(table_.begin(), it));
    if (idx == 0) {
        return 0;
    }
    return std::min(idx - 1, table_.size() - 2);
}

double DeformationFunction::operator()(double x) const
{
    switch (kind_) {
    case Kind::identity: return x;
    case Kind::discrete_shift: return discrete_value(x, lambda0_sq_);
    case Kind::grainy_ramp: return grainy_value(x, lambda0_sq_, sigma0_);
    case Kind::table: {
        const std::size_t i = segment(x);
        const auto [x0, y0] = table_[i];
        const auto [x1, y1] = table_[i + 1];
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
    }
    }
    return x;
}

double DeformationFunction::derivative(double x) const
{
    switch (kind_) {
    case Kind::identity:
    case Kind::discrete_shift: return 1.0;
    case Kind::grainy_ramp: return grainy_derivative(x, lambda0_sq_, sigma0_);
    case Kind::table: {
        const std::size_t i = segment(x);
        return (table_[i + 1].second - table_[i].second) / (table_[i + 1].first - table_[i].first);
    }
    }
    return 1.0;
}

// --- GeometrySpec ------------------------------------------------------------

const char* to_string(GeometryKind kind) noexcept
{
    switch (kind) {
    case GeometryKind::euclidean: return "euclidean";
    case GeometryKind::minkowski: return "minkowski";
    case GeometryKind::discrete: return "discrete";
    case GeometryKind::grainy: return "grainy";
    case GeometryKind::deformed: return "deformed";
    }
    return "unknown";
}

GeometrySpec GeometrySpec::euclidean(std::size_t dim)
{
    require(dim >= 1, ErrorKind::invalid_input, "euclidean geometry needs dim >= 1");
    GeometrySpec g;
    g.kind_ = GeometryKind::euclidean;
    g.dim_ = dim;
    return g;
}

GeometrySpec GeometrySpec::minkowski(std::size_t dim)
{
    require(dim >= 2, ErrorKind::invalid_input, "minkowski-based geometry needs dim >= 2");
    GeometrySpec g;
    g.kind_ = GeometryKind::minkowski;
    g.dim_ = dim;
    return g;
}

GeometrySpec GeometrySpec::discrete(double lambda0_sq, std::size_t dim)
{
    require(std::isfinite(lambda0_sq) && lambda0_sq > 0.0, ErrorKind::invalid_input,
            "discrete geometry needs lambda0_sq > 0");
    GeometrySpec g = minkowski(dim);
    g.kind_ = GeometryKind::discrete;
    g.lambda0_sq_ = lambda0_sq;
    return g;
}

GeometrySpec GeometrySpec::discrete(const UnitConstants& units, std::size_t dim)
{
    GeometrySpec g = discrete(units.elementary_length_sq(), dim);
    g.units_ = units;
    return g;
}

GeometrySpec GeometrySpec::grainy(double lambda0_sq, double sigma0, std::size_t dim)
{
    require(std::isfinite(lambda0_sq) && lambda0_sq >= 0.0, ErrorKind::invalid_input,
            "grainy geometry needs lambda0_sq >= 0");
    require(std::isfinite(sigma0) && sigma0 >= 0.0, ErrorKind::invalid_input, "grainy geometry needs sigma0 >= 0");
    GeometrySpec g = minkowski(dim);
    g.kind_ = GeometryKind::grainy;
    g.lambda0_sq_ = lambda0_sq;
    g.sigma0_ = sigma0;
    return g;
}

GeometrySpec GeometrySpec::deformed(DeformationFunction f, std::size_t dim)
{
    GeometrySpec g = minkowski(dim);
    g.kind_ = GeometryKind::deformed;
    g.lambda0_sq_ = f.lambda0_sq();
    g.sigma0_ = f.sigma0();
    g.f_ = std::move(f);
    return g;
}

GeometrySpec& GeometrySpec::with_units(const UnitConstants& units)
{
    units.validate();
    units_ = units;
    return *this;
}

double GeometrySpec::from_minkowski(double x) const
{
    switch (kind_) {
    case GeometryKind::minkowski: return x;
    case GeometryKind::discrete: return discrete_value(x, lambda0_sq_);
    case GeometryKind::grainy: return grainy_value(x, lambda0_sq_, sigma0_);
    case GeometryKind::deformed: return (*f_)(x);
    case GeometryKind::euclidean: break;
    }
    throw Error(ErrorKind::invalid_input, "euclidean geometry is not a deformation of Minkowski");
}

double GeometrySpec::from_minkowski_derivative(double x) const
{
    switch (kind_) {
    case GeometryKind::minkowski:
    case GeometryKind::discrete: return 1.0;
    case GeometryKind::grainy: return grainy_derivative(x, lambda0_sq_, sigma0_);
    case GeometryKind::deformed: return f_->derivative(x);
    case GeometryKind::euclidean: break;
    }
    throw Error(ErrorKind::invalid_input, "euclidean geometry is not a deformation of Minkowski");
}

double GeometrySpec::deformation_at(double x) const
{
    return from_minkowski(x) - x;
}

bool GeometrySpec::undeformed() const
{
    switch (kind_) {
    case GeometryKind::euclidean:
    case GeometryKind::minkowski: return true;
    case GeometryKind::discrete:
    case GeometryKind::grainy: return lambda0_sq_ == 0.0;
    case GeometryKind::deformed:
        switch (f_->kind()) {
        case DeformationFunction::Kind::identity: return true;
        case DeformationFunction::Kind::discrete_shift:
        case DeformationFunction::Kind::grainy_ramp: return f_->lambda0_sq() == 0.0;
        case DeformationFunction::Kind::table:
            return std::all_of(f_->breakpoints().begin(), f_->breakpoints().end(),
                               [](const auto& bp) { return bp.first == bp.second; });
        }
    }
    return false;
}

// --- world functions ---------------------------------------------------------

double sgn(double x) noexcept
{
    if (x > 0.0) {
        return 1.0;
    }
    if (x < 0.0) {
        return -1.0;
    }
    return 0.0;
}

double sigma_minkowski(std::span<const double> p, std::span<const double> q) noexcept
{
    const double dt = p[0] - q[0];
    double space = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double dx = p[i] - q[i];
        space += dx * dx;
    }
    return 0.5 * (dt * dt - space);
}

double sigma_minkowski(const Point& p, const Point& q)
{
    require(p.dim() == q.dim() && p.dim() >= 2, ErrorKind::invalid_input,
            "minkowski sigma needs two points of equal dimension >= 2");
    return sigma_minkowski(p.coords(), q.coords());
}

double sigma_raw(const GeometrySpec& g, std::span<const double> p, std::span<const double> q)
{
    if (g.kind() == GeometryKind::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double dx = p[i] - q[i];
            s += dx * dx;
        }
        return 0.5 * s;
    }
    return g.from_minkowski(sigma_minkowski(p, q));
}

void sigma_gradient_raw(const GeometrySpec& g, std::span<const double> p, std::span<const double> q,
                        std::span<double> out)
{
    if (g.kind() == GeometryKind::euclidean) {
        for (std::size_t i = 0; i < q.size(); ++i) {
            out[i] = q[i] - p[i];
        }
        return;
    }
    const double factor = g.from_minkowski_derivative(sigma_minkowski(p, q));
    out[0] = factor * (q[0] - p[0]);
    for (std::size_t i = 1; i < q.size(); ++i) {
        out[i] = -factor * (q[i] - p[i]);
    }
}

void require_dim(const GeometrySpec& g, const Point& p)
{
    require(p.dim() == g.dim(), ErrorKind::invalid_input,
            "point has dimension " + std::to_string(p.dim()) + ", geometry expects " + std::to_string(g.dim()));
}

double sigma(const GeometrySpec& g, const Point& p, const Point& q)
{
    require_dim(g, p);
    require_dim(g, q);
    return sigma_raw(g, p.coords(), q.coords());
}

double scalar_product(const GeometrySpec& g, const GeomVector& a, const GeomVector& b)
{
    const Point& p0 = a.origin();
    const Point& p1 = a.end();
    const Point& q0 = b.origin();
    const Point& q1 = b.end();
    // Grouping the two positive and the two negative terms keeps the result
    // exactly symmetric under a <-> b.
    return (sigma(g, p0, q1) + sigma(g, p1, q0)) - (sigma(g, p0, q0) + sigma(g, p1, q1));
}

double squared_length(const GeometrySpec& g, const GeomVector& a)
{
    return 2.0 * sigma(g, a.origin(), a.end());
}

Density relative_density(double lambda0_sq, double sigma0, double sigma_g)
{
    require(std::isfinite(lambda0_sq) && lambda0_sq >= 0.0, ErrorKind::invalid_input,
            "relative density needs lambda0_sq >= 0");
    require(std::isfinite(sigma0) && sigma0 >= 0.0, ErrorKind::invalid_input, "relative density needs sigma0 >= 0");
    require(std::isfinite(sigma_g), ErrorKind::invalid_input, "relative density needs a finite sigma_g");
    if (std::abs(sigma_g) > sigma0 + lambda0_sq) {
        return {1.0, false};
    }
    if (sigma0 == 0.0) {
        return {0.0, true};
    }
    return {sigma0 / (sigma0 + lambda0_sq), false};
}

std::vector<TriangleReport> check_triangle_axiom(const GeometrySpec& g, std::span<const Triple> triples, double tol)
{
    std::vector<TriangleReport> out;
    out.reserve(triples.size());
    for (const Triple& t : triples) {
        const double s_left = sigma(g, t.p0, t.r);
        const double s_right = sigma(g, t.r, t.p1);
        const double s_base = sigma(g, t.p0, t.p1);
        TriangleReport rep;
        if (s_left < 0.0 || s_right < 0.0 || s_base < 0.0) {
            rep.skipped = true;
            out.push_back(rep);
            continue;
        }
        const double l_left = std::sqrt(2.0 * s_left);
        const double l_right = std::sqrt(2.0 * s_right);
        const double l_base = std::sqrt(2.0 * s_base);
        rep.slack = l_left + l_right - l_base;
        const double scale = std::max({l_left, l_right, l_base});
        rep.holds = rep.slack >= -tol * scale;
        out.push_back(rep);
    }
    return out;
}

MetricTensor metric_tensor(const GeometrySpec& g, const Basis& basis)
{
    const std::size_t n = basis.ends.size();
    require(n >= 1, ErrorKind::invalid_input, "basis needs at least one reference point");
    std::vector<GeomVector> axes;
    axes.reserve(n);
    for (const Point& s : basis.ends) {
        axes.emplace_back(basis.origin, s);
    }
    MetricTensor m;
    m.lower.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k; l < n; ++l) {
            const double v = scalar_product(g, axes[k], axes[l]);
            m.lower(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = v;
            m.lower(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = v;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.lower);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) <= 1e-12 * sv(0)) {
        throw Error(ErrorKind::degenerate_basis, "metric tensor of the basis is singular");
    }
    m.upper = m.lower.inverse();
    const Eigen::MatrixXd check = m.upper * m.lower - Eigen::MatrixXd::Identity(m.lower.rows(), m.lower.cols());
    if (!(check.cwiseAbs().maxCoeff() < 1e-10)) {
        throw Error(ErrorKind::degenerate_basis, "metric tensor inverse is not accurate enough");
    }
    return m;
}

std::vector<double> sigma_coordinates(const GeometrySpec& g, const GeomVector& v, const Basis& basis)
{
    const MetricTensor m = metric_tensor(g, basis);
    const auto n = static_cast<Eigen::Index>(basis.ends.size());
    Eigen::VectorXd covariant(n);
    for (Eigen::Index l = 0; l < n; ++l) {
        covariant(l) = scalar_product(g, v, GeomVector(basis.origin, basis.ends[static_cast<std::size_t>(l)]));
    }
    const Eigen::VectorXd x = m.upper * covariant;
    return {x.data(), x.data() + x.size()};
}

double euclidean_angle(const GeometrySpec& g, const GeomVector& a, const GeomVector& b, double tol)
{
    const double la = squared_length(g, a);
    const double lb = squared_length(g, b);
    if (!(la > 0.0) || !(lb > 0.0)) {
        throw Error(ErrorKind::undefined_angle, "angle needs strictly positive squared lengths");
    }
    const double ratio = scalar_product(g, a, b) / std::sqrt(la * lb);
    if (ratio > 1.0 + tol || ratio < -1.0 - tol) {
        throw Error(ErrorKind::non_euclidean_regime,
                    "cosine " + std::to_string(ratio) + " lies outside [-1, 1]");
    }
    return std::acos(std::clamp(ratio, -1.0, 1.0));
}

}  // namespace worldfunc
