#include "worldfunc/equivalence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "worldfunc/detail/vecmath.hpp"
#include "worldfunc/parallel.hpp"
#include "worldfunc/rng.hpp"

namespace worldfunc {

const char* to_string(Variance v) noexcept
{
    switch (v) {
    case Variance::zero: return "zero";
    case Variance::single: return "single";
    case Variance::multi: return "multi";
    }
    return "unknown";
}

EquivalenceReport is_equivalent(const GeometrySpec& g, const GeomVector& a, const GeomVector& b, double tol)
{
    const Point& p0 = a.origin();
    const Point& p1 = a.end();
    const Point& q0 = b.origin();
    const Point& q1 = b.end();
    const double sa = sigma(g, p0, p1);
    const double sb = sigma(g, q0, q1);
    const double s_p0q1 = sigma(g, p0, q1);
    const double s_p1q0 = sigma(g, p1, q0);
    const double s_p0q0 = sigma(g, p0, q0);
    const double s_p1q1 = sigma(g, p1, q1);
    const double ab = (s_p0q1 + s_p1q0) - (s_p0q0 + s_p1q1);

    EquivalenceReport rep;
    rep.residual_length = 2.0 * sa - 2.0 * sb;
    rep.residual_parallel = ab - (sa + sb);
    rep.scale = 2.0 * std::max({std::abs(sa), std::abs(sb), std::abs(s_p0q1), std::abs(s_p1q0), std::abs(s_p0q0),
                                std::abs(s_p1q1)});
    rep.equivalent = std::abs(rep.residual_length) <= tol * rep.scale &&
                     std::abs(rep.residual_parallel) <= tol * rep.scale;
    return rep;
}

namespace {

// Residual map of the equivalence equations in the unknown end point x of
// the vector Q0X:
//   r0 = 2 sigma(Q0, X) - 2 sigma(P0, P1)
//   r1 = (P0P1 . Q0X)   - 2 sigma(P0, P1)
class EquivalenceEquations {
public:
    EquivalenceEquations(const GeometrySpec& g, std::span<const double> p0, std::span<const double> p1,
                         std::span<const double> q0)
        : g_(g), p0_(p0), p1_(p1), q0_(q0), n_(p0.size()), grad_a_(n_), grad_b_(n_)
    {
        target_ = 2.0 * sigma_raw(g, p0, p1);
        s_p1q0_ = sigma_raw(g, p1, q0);
        s_p0q0_ = sigma_raw(g, p0, q0);
        scale_ = target_ != 0.0 ? std::abs(target_) : 1.0;
        chart_scale_ = std::max(1.0, detail::chart_distance(p0, p1));
    }

    std::size_t dim() const noexcept { return n_; }
    double scale() const noexcept { return scale_; }
    double chart_scale() const noexcept { return chart_scale_; }
    std::span<const double> q0() const noexcept { return q0_; }

    std::array<double, 2> residual(std::span<const double> x) const
    {
        const double r0 = 2.0 * sigma_raw(g_, q0_, x) - target_;
        const double ab = (sigma_raw(g_, p0_, x) + s_p1q0_) - (s_p0q0_ + sigma_raw(g_, p1_, x));
        return {r0, ab - target_};
    }

    // Rows of the 2 x n Jacobian.
    void jacobian(std::span<const double> x, std::vector<double>& row0, std::vector<double>& row1)
    {
        sigma_gradient_raw(g_, q0_, x, row0);
        for (double& v : row0) {
            v *= 2.0;
        }
        sigma_gradient_raw(g_, p0_, x, grad_a_);
        sigma_gradient_raw(g_, p1_, x, grad_b_);
        for (std::size_t i = 0; i < n_; ++i) {
            row1[i] = grad_a_[i] - grad_b_[i];
        }
    }

private:
    const GeometrySpec& g_;
    std::span<const double> p0_, p1_, q0_;
    std::size_t n_;
    double target_ = 0.0;
    double s_p1q0_ = 0.0;
    double s_p0q0_ = 0.0;
    double scale_ = 1.0;
    double chart_scale_ = 1.0;
    std::vector<double> grad_a_, grad_b_;
};

struct NewtonOutcome {
    std::vector<double> x;
    double residual = std::numeric_limits<double>::infinity();  // max |r_i|
    bool converged = false;
};

double max_abs(const std::array<double, 2>& r)
{
    return std::max(std::abs(r[0]), std::abs(r[1]));
}

double norm2(const std::array<double, 2>& r)
{
    return r[0] * r[0] + r[1] * r[1];
}

// Damped Gauss-Newton with minimum-norm steps dx = -J^T (J J^T)^+ r. The
// iteration keeps polishing after the residual test passes: at tangential
// solutions (Euclidean, timelike Minkowski) convergence is only linear and
// the residual is quadratic in the chart error.
NewtonOutcome newton(EquivalenceEquations& eq, std::vector<double> x, int max_iter, double tol)
{
    const std::size_t n = eq.dim();
    std::vector<double> row0(n), row1(n), step(n), trial(n);
    auto r = eq.residual(x);
    for (int it = 0; it < max_iter; ++it) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1])) {
            break;
        }
        eq.jacobian(x, row0, row1);
        Eigen::Matrix2d m;
        m(0, 0) = detail::dot(row0, row0);
        m(0, 1) = m(1, 0) = detail::dot(row0, row1);
        m(1, 1) = detail::dot(row1, row1);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
        es.computeDirect(m);
        const Eigen::Vector2d ev = es.eigenvalues();
        const double top = std::max(std::abs(ev(0)), std::abs(ev(1)));
        if (!(top > 0.0)) {
            break;
        }
        Eigen::Vector2d inv_ev;
        for (int k = 0; k < 2; ++k) {
            inv_ev(k) = std::abs(ev(k)) > 1e-14 * top ? 1.0 / ev(k) : 0.0;
        }
        const Eigen::Matrix2d pinv = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
        const Eigen::Vector2d w = pinv * Eigen::Vector2d(r[0], r[1]);
        for (std::size_t i = 0; i < n; ++i) {
            step[i] = -(row0[i] * w(0) + row1[i] * w(1));
        }
        const double step_norm = detail::norm(step);
        const double x_norm = detail::norm(x);
        if (!(step_norm > 1e-15 * (1.0 + x_norm))) {
            break;
        }
        const double f0 = norm2(r);
        double lambda = 1.0;
        bool accepted = false;
        std::array<double, 2> rt{};
        for (int k = 0; k < 40; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = x[i] + lambda * step[i];
            }
            rt = eq.residual(trial);
            if (norm2(rt) < f0) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            break;
        }
        x.swap(trial);
        r = rt;
        if (max_abs(r) == 0.0 || lambda * step_norm <= 1e-14 * (1.0 + x_norm)) {
            break;
        }
    }
    NewtonOutcome out;
    out.residual = max_abs(r);
    out.converged = std::isfinite(out.residual) && out.residual <= tol * eq.scale();
    out.x = std::move(x);
    return out;
}

std::vector<double> random_in_box(CounterRng& rng, std::span<const double> center, double half_width)
{
    std::vector<double> x(center.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = center[i] + rng.uniform(-half_width, half_width);
    }
    return x;
}

std::vector<double> random_unit(CounterRng& rng, std::size_t n)
{
    std::vector<double> v(n);
    double len = 0.0;
    while (!(len > 1e-12)) {
        for (double& c : v) {
            c = rng.normal();
        }
        len = detail::norm(v);
    }
    for (double& c : v) {
        c /= len;
    }
    return v;
}

// Local dimension of the solution set at x: re-project nearby points onto it
// and count the directions the projections spread into.
std::optional<int> local_solution_dim(EquivalenceEquations& eq, std::span<const double> x, const SolverConfig& cfg,
                                      std::uint64_t stream)
{
    const std::size_t n = eq.dim();
    const double rho = 1e-3 * eq.chart_scale();
    const int probes = static_cast<int>(2 * n + 2);
    std::vector<std::vector<double>> disp;
    for (int k = 0; k < probes; ++k) {
        CounterRng rng(cfg.seed ^ 0x5bd1e995ULL, stream * 1000 + static_cast<std::uint64_t>(k));
        const auto dir = random_unit(rng, n);
        auto out = newton(eq, detail::axpy(x, rho, dir), cfg.max_iter, cfg.tol);
        if (out.converged) {
            disp.push_back(detail::sub(out.x, x));
        }
    }
    if (disp.size() < n + 1) {
        return std::nullopt;
    }
    Eigen::MatrixXd d(static_cast<Eigen::Index>(disp.size()), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < disp.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = disp[k][i];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > 0.1 * rho) {
            ++rank;
        }
    }
    return rank;
}

bool solution_known_to_exist(const GeometrySpec& g, const Point& p0, const Point& q0)
{
    return g.undeformed() || p0 == q0;
}

}  // namespace

SolutionSet solve_equivalent(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q0,
                             const SolverConfig& cfg)
{
    require_dim(g, p0);
    require_dim(g, p1);
    require_dim(g, q0);
    if (p0 == p1) {
        throw Error(ErrorKind::invalid_input, "solve_equivalent needs P0 != P1");
    }
    if (cfg.starts < 1 || cfg.max_iter < 1 || !(cfg.tol > 0.0) || !(cfg.dedupe_radius > 0.0) ||
        !(cfg.box_half_width > 0.0)) {
        throw Error(ErrorKind::invalid_input, "solver config needs positive starts, max_iter, tol, radii");
    }

    EquivalenceEquations proto(g, p0.coords(), p1.coords(), q0.coords());
    const double chart_scale = proto.chart_scale();
    const double radius = cfg.dedupe_radius * chart_scale;
    const auto starts = static_cast<std::size_t>(cfg.starts);

    std::vector<NewtonOutcome> outcomes(starts);
    parallel_for(starts, [&](std::size_t i) {
        EquivalenceEquations eq(g, p0.coords(), p1.coords(), q0.coords());
        std::vector<double> x0;
        if (i == 0) {
            x0 = detail::axpy(q0.coords(), 1.0, detail::sub(p1.coords(), p0.coords()));
        } else {
            CounterRng rng(cfg.seed, i);
            x0 = random_in_box(rng, q0.coords(), cfg.box_half_width * chart_scale);
        }
        outcomes[i] = newton(eq, std::move(x0), cfg.max_iter, cfg.tol);
    });

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < starts; ++i) {
        if (outcomes[i].converged) {
            order.push_back(i);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return outcomes[a].residual < outcomes[b].residual; });

    SolutionSet set;
    set.diagnostics.starts_attempted = cfg.starts;
    set.diagnostics.converged = static_cast<int>(order.size());
    set.diagnostics.dedupe_radius = radius;

    const GeomVector target(p0, p1);
    std::vector<std::vector<double>> kept;
    for (std::size_t i : order) {
        const auto& x = outcomes[i].x;
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const std::vector<double>& k) {
            return detail::chart_distance(k, x) <= radius;
        });
        if (duplicate) {
            continue;
        }
        Point q1(x);
        const EquivalenceReport rep = is_equivalent(g, target, GeomVector(q0, q1), cfg.tol);
        if (!rep.equivalent) {
            continue;
        }
        kept.push_back(x);
        set.representatives.push_back(std::move(q1));
        set.residuals.emplace_back(rep.residual_length, rep.residual_parallel);
    }

    if (set.representatives.empty()) {
        if (solution_known_to_exist(g, p0, q0)) {
            throw Error(ErrorKind::solver_failure, "no start converged although a solution exists");
        }
        set.variance = Variance::zero;
        return set;
    }

    std::optional<int> dim;
    const std::size_t probe_reps = std::min<std::size_t>(kept.size(), 4);
    for (std::size_t k = 0; k < probe_reps; ++k) {
        if (auto d = local_solution_dim(proto, kept[k], cfg, k)) {
            dim = dim ? std::min(*dim, *d) : *d;
        }
    }
    set.manifold_dim_estimate = dim.value_or(0);
    set.variance = (set.representatives.size() == 1 && set.manifold_dim_estimate == 0) ? Variance::single
                                                                                         : Variance::multi;
    return set;
}

GeomVector minkowski_spacelike_family(const GeomVector& y, double alpha, const std::vector<double>& n_hat)
{
    const std::size_t n = y.dim();
    if (n < 2 || n_hat.size() != n - 1) {
        throw Error(ErrorKind::invalid_input, "direction must have one entry per spatial coordinate");
    }
    if (!std::isfinite(alpha)) {
        throw Error(ErrorKind::invalid_input, "alpha must be finite");
    }
    const auto yv = detail::sub(y.end().coords(), y.origin().coords());
    const std::span<const double> spatial(yv.data() + 1, n - 1);
    const double spatial_len = detail::norm(spatial);
    if (yv[0] * yv[0] - spatial_len * spatial_len > 0.0) {
        throw Error(ErrorKind::family_undefined, "vector is timelike; its equivalence class is a single vector");
    }
    if (spatial_len == 0.0) {
        throw Error(ErrorKind::family_undefined, "vector has no spatial part");
    }
    const double n_len = detail::norm(n_hat);
    if (std::abs(n_len - 1.0) > 1e-9) {
        throw Error(ErrorKind::invalid_direction, "direction is not a unit vector");
    }
    if (std::abs(detail::dot(spatial, n_hat) - yv[0]) > 1e-9 * spatial_len) {
        throw Error(ErrorKind::invalid_direction, "direction must satisfy y_vec . n = y^0 (angle constraint)");
    }
    std::vector<double> end(y.origin().values());
    end[0] += yv[0] + alpha;
    for (std::size_t i = 1; i < n; ++i) {
        end[i] += yv[i] + alpha * n_hat[i - 1];
    }
    return GeomVector(y.origin(), Point(std::move(end)));
}

std::vector<double> spacelike_family_direction(const GeomVector& y, double psi)
{
    const std::size_t n = y.dim();
    if (n < 2) {
        throw Error(ErrorKind::invalid_input, "family needs at least one spatial coordinate");
    }
    const auto yv = detail::sub(y.end().coords(), y.origin().coords());
    std::vector<double> unit(yv.begin() + 1, yv.end());
    const double len = detail::norm(unit);
    if (len == 0.0 || std::abs(yv[0]) > len) {
        throw Error(ErrorKind::family_undefined, "vector is not spacelike or null");
    }
    for (double& c : unit) {
        c /= len;
    }
    const double cos_phi = yv[0] / len;
    const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
    const auto comp = detail::orthonormal_complement(unit);
    std::vector<double> dir(unit.size());
    for (std::size_t i = 0; i < dir.size(); ++i) {
        double transverse = 0.0;
        if (comp.size() >= 2) {
            transverse = std::cos(psi) * comp[0][i] + std::sin(psi) * comp[1][i];
        } else if (comp.size() == 1) {
            transverse = (std::cos(psi) >= 0.0 ? 1.0 : -1.0) * comp[0][i];
        }
        dir[i] = cos_phi * unit[i] + sin_phi * transverse;
    }
    return dir;
}


namespace {

struct Candidate {
    std::vector<double> y;
    std::vector<double> a;
    std::vector<double> c;
};

// y spacelike, a = y + alpha (1, sj e_j), c = y + beta (1, sk e_k). The
// components of y are chosen so both shifts are orthogonal to y, and the
// shifted coordinate differences cancel exactly in floating point, so
// step-like deformations of sigma_M see exactly null separations.
std::optional<Candidate> null_shift_candidate(CounterRng& rng, std::size_t n)
{
    const std::size_t spatial = n - 1;
    auto pick_axis = [&] { return 1 + std::min(spatial - 1, static_cast<std::size_t>(rng.uniform() * spatial)); };
    const std::size_t j = pick_axis();
    const std::size_t k = pick_axis();
    const double sj = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double sk = j == k ? -sj : (rng.uniform() < 0.5 ? -1.0 : 1.0);

    Candidate cand;
    cand.y.resize(n);
    for (double& v : cand.y) {
        v = rng.uniform(-2.0, 2.0);
    }
    const double u = j == k ? 0.0 : rng.uniform(-1.0, 1.0);
    cand.y[0] = u;
    cand.y[j] = sj * u;
    cand.y[k] = sk * u;
    const std::vector<double> origin(n, 0.0);
    if (!(2.0 * sigma_minkowski(origin, cand.y) < -1e-3)) {
        return std::nullopt;
    }
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    cand.a = cand.y;
    cand.a[0] = cand.y[0] + alpha;
    cand.a[j] = cand.y[j] + sj * alpha;
    cand.c = cand.y;
    cand.c[0] = cand.y[0] + beta;
    cand.c[k] = cand.y[k] + sk * beta;
    return cand;
}

// y random, a and c projected onto the solution set of O->y from two random
// starts.
std::optional<Candidate> projected_candidate(const GeometrySpec& g, CounterRng& rng, double tol)
{
    const std::size_t n = g.dim();
    Candidate cand;
    cand.y.resize(n);
    for (double& v : cand.y) {
        v = rng.uniform(-2.0, 2.0);
    }
    const std::vector<double> origin(n, 0.0);
    EquivalenceEquations eq(g, origin, cand.y, origin);
    const double box = 5.0 * eq.chart_scale();
    auto a = newton(eq, random_in_box(rng, origin, box), 100, tol);
    auto c = newton(eq, random_in_box(rng, origin, box), 100, tol);
    if (!a.converged || !c.converged) {
        return std::nullopt;
    }
    cand.a = std::move(a.x);
    cand.c = std::move(c.x);
    return cand;
}

}  // namespace

std::optional<IntransitivityWitness> find_intransitivity_witness(const GeometrySpec& g, std::uint64_t seed,
                                                                 int budget, double tol)
{
    if (budget < 1 || !(tol > 0.0)) {
        throw Error(ErrorKind::invalid_input, "witness search needs a positive budget and tolerance");
    }
    const std::size_t n = g.dim();
    if (n < 2) {
        throw Error(ErrorKind::invalid_input, "witness search needs dimension >= 2");
    }
    const Point origin(std::vector<double>(n, 0.0));
    for (int s = 0; s < budget; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        const bool exact = g.minkowski_based() && s % 2 == 0;
        auto cand = exact ? null_shift_candidate(rng, n) : projected_candidate(g, rng, tol);
        if (!cand) {
            continue;
        }
        GeomVector a(origin, Point(std::move(cand->a)));
        GeomVector b(origin, Point(std::move(cand->y)));
        GeomVector c(origin, Point(std::move(cand->c)));
        const auto ab = is_equivalent(g, a, b, tol);
        if (!ab.equivalent) {
            continue;
        }
        const auto bc = is_equivalent(g, b, c, tol);
        if (!bc.equivalent) {
            continue;
        }
        const auto ac = is_equivalent(g, a, c, tol);
        if (ac.equivalent) {
            continue;
        }
        return IntransitivityWitness{std::move(a), std::move(b), std::move(c), ab, bc, ac, s + 1};
    }
    return std::nullopt;
}

}  // namespace worldfunc
