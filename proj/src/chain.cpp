#include "worldfunc/chain.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "worldfunc/detail/vecmath.hpp"
#include "worldfunc/parallel.hpp"

namespace worldfunc {

double w_correction(const DeformationFn& d, const Point& pk_s, const Point& pl_s, const Point& pk_s1,
                    const Point& pl_s1)
{
    auto at = [&](const Point& a, const Point& b) { return d(sigma_minkowski(a, b)); };
    return at(pk_s, pl_s1) + at(pl_s, pk_s1) - at(pk_s, pk_s1) - at(pl_s, pl_s1);
}

double w_correction(const GeometrySpec& g, const Point& pk_s, const Point& pl_s, const Point& pk_s1,
                    const Point& pl_s1)
{
    if (!g.minkowski_based()) {
        throw Error(ErrorKind::invalid_input, "w correction needs a Minkowski-based geometry");
    }
    return w_correction([&](double s) { return g.deformation_at(s); }, pk_s, pl_s, pk_s1, pl_s1);
}

double deflection_angle(double d, double sigma_m_link)
{
    if (!(sigma_m_link > 0.0) || !std::isfinite(sigma_m_link)) {
        throw Error(ErrorKind::invalid_input, "link sigma_M must be positive");
    }
    if (!(d >= 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::invalid_input, "deformation must be non-negative for a real cone angle");
    }
    return 2.0 * std::asinh(std::sqrt(d / (2.0 * sigma_m_link)));
}

double particle_mass(const UnitConstants& units, double two_sigma_link)
{
    units.validate();
    if (!(two_sigma_link > 0.0) || !std::isfinite(two_sigma_link)) {
        throw Error(ErrorKind::invalid_input, "link squared length must be positive");
    }
    return units.b * std::sqrt(two_sigma_link);
}

double particle_mass_discrete(const UnitConstants& units, double two_sigma_m)
{
    units.validate();
    if (!(two_sigma_m > 0.0) || !std::isfinite(two_sigma_m)) {
        throw Error(ErrorKind::invalid_input, "link squared length must be positive");
    }
    return std::sqrt(two_sigma_m + units.hbar / (units.b * units.c)) / units.b;
}

double ChainParams::deformation() const
{
    return geometry.deformation_at(link_sigma_m);
}

double ChainParams::delta_phi() const
{
    return deflection_angle(deformation(), link_sigma_m);
}

void ChainParams::validate() const
{
    if (!geometry.minkowski_based() || geometry.dim() != 4) {
        throw Error(ErrorKind::invalid_input, "chains need a 4-dimensional Minkowski-based geometry");
    }
    if (steps < 0 || ensemble < 1) {
        throw Error(ErrorKind::invalid_input, "chains need steps >= 0 and ensemble >= 1");
    }
    delta_phi();
}

namespace {

double minkowski_dot(const Coords4& a, const Coords4& b)
{
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

Coords4 diff(const Coords4& a, const Coords4& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

}  // namespace

double hyperbolic_angle(const Coords4& a, const Coords4& b)
{
    const double aa = minkowski_dot(a, a);
    const double bb = minkowski_dot(b, b);
    if (!(aa > 0.0) || !(bb > 0.0)) {
        throw Error(ErrorKind::invalid_state, "hyperbolic angle needs timelike vectors");
    }
    const double c = minkowski_dot(a, b) / std::sqrt(aa * bb);
    return std::acosh(std::max(1.0, c));
}

Link step_chain(const Link& prev, double delta_phi, double link_sigma_m, CounterRng& rng)
{
    const Coords4 v = diff(prev.p1, prev.p0);
    const double vv = minkowski_dot(v, v);
    if (!(vv > 0.0) || !(v[0] > 0.0)) {
        throw Error(ErrorKind::invalid_state, "previous link is not future timelike");
    }
    const double len = std::sqrt(vv);
    const Coords4 u{v[0] / len, v[1] / len, v[2] / len, v[3] / len};

    // Lab direction of motion; a link at rest uses the x3 axis.
    std::array<double, 3> beta{u[1], u[2], u[3]};
    const double speed = detail::norm(beta);
    if (speed > 0.0) {
        for (double& c : beta) {
            c /= speed;
        }
    } else {
        beta = {0.0, 0.0, 1.0};
    }
    const auto plane = detail::orthonormal_complement(beta);
    const double psi = rng.angle();
    std::array<double, 3> m{};
    for (std::size_t i = 0; i < 3; ++i) {
        m[i] = std::cos(psi) * plane[0][i] + std::sin(psi) * plane[1][i];
    }
    // e = (0, m) is unit spacelike and orthogonal to u because m is
    // orthogonal to the spatial part of u.
    const double ch = std::cosh(delta_phi);
    const double sh = std::sinh(delta_phi);
    Coords4 un{ch * u[0], ch * u[1] + sh * m[0], ch * u[2] + sh * m[1], ch * u[3] + sh * m[2]};
    const double norm_un = std::sqrt(minkowski_dot(un, un));
    const double target = std::sqrt(2.0 * link_sigma_m);
    Link next;
    next.p0 = prev.p1;
    for (std::size_t i = 0; i < 4; ++i) {
        next.p1[i] = prev.p1[i] + target * un[i] / norm_un;
    }
    return next;
}

Link step_chain(const Link& prev, const ChainParams& params, CounterRng& rng)
{
    return step_chain(prev, params.delta_phi(), params.link_sigma_m, rng);
}

std::vector<Skeleton> pointlike_chain(const std::vector<Coords4>& points)
{
    std::vector<Skeleton> links;
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const auto& a = points[s];
        const auto& b = points[s + 1];
        links.emplace_back(std::vector<Point>{Point(std::vector<double>(a.begin(), a.end())),
                                              Point(std::vector<double>(b.begin(), b.end()))});
    }
    return links;
}

std::vector<LinkStepReport> verify_link_equivalence(const GeometrySpec& g, const std::vector<Skeleton>& chain,
                                                    double tol)
{
    std::vector<LinkStepReport> out;
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) {
        const Skeleton& a = chain[s];
        const Skeleton& b = chain[s + 1];
        if (a.size() != b.size()) {
            throw Error(ErrorKind::invalid_input, "links " + std::to_string(s) + " and " + std::to_string(s + 1) +
                                                      " have different sizes");
        }
        if (!(a[1] == b[0])) {
            throw Error(ErrorKind::invalid_input, "chain is not connected at link " + std::to_string(s));
        }
        LinkStepReport rep;
        rep.step = s;
        for (std::size_t k = 0; k < a.size(); ++k) {
            for (std::size_t l = k + 1; l < a.size(); ++l) {
                LinkPairReport pr{k, l, is_equivalent(g, GeomVector(a[k], a[l]), GeomVector(b[k], b[l]), tol)};
                rep.equivalent = rep.equivalent && pr.report.equivalent;
                rep.pairs.push_back(pr);
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

namespace {

struct Welford {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n) : 0.0; }
};

struct ChainTrace {
    std::vector<Coords4> points;
    std::vector<double> angles;  // angles[s] between links s-1 and s; angles[0] = 0
    double drift = 0.0;
    double angle_error = 0.0;
};

ChainTrace run_chain(const ChainParams& params, double delta_phi, std::size_t index)
{
    CounterRng rng(params.seed, index);
    const double two_sigma = 2.0 * params.link_sigma_m;
    const auto steps = static_cast<std::size_t>(params.steps);
    ChainTrace tr;
    tr.points.reserve(steps + 2);
    tr.angles.assign(steps + 1, 0.0);
    Link link{{0.0, 0.0, 0.0, 0.0}, {std::sqrt(two_sigma), 0.0, 0.0, 0.0}};
    tr.points.push_back(link.p0);
    tr.points.push_back(link.p1);
    Coords4 prev_v = diff(link.p1, link.p0);
    for (std::size_t s = 1; s <= steps; ++s) {
        link = step_chain(link, delta_phi, params.link_sigma_m, rng);
        tr.points.push_back(link.p1);
        const Coords4 v = diff(link.p1, link.p0);
        tr.drift = std::max(tr.drift, std::abs(minkowski_dot(v, v) - two_sigma) / two_sigma);
        tr.angles[s] = hyperbolic_angle(prev_v, v);
        tr.angle_error = std::max(tr.angle_error, std::abs(tr.angles[s] - delta_phi));
        prev_v = v;
    }
    return tr;
}

}  // namespace

EnsembleResult simulate_ensemble(const ChainParams& params)
{
    params.validate();
    const double delta_phi = params.delta_phi();
    const auto steps = static_cast<std::size_t>(params.steps);
    const auto ensemble = static_cast<std::size_t>(params.ensemble);

    std::vector<Welford> t_acc(steps + 1), angle_acc(steps + 1);
    std::vector<std::array<Welford, 3>> x_acc(steps + 1);

    EnsembleResult result;
    result.stats.delta_phi = delta_phi;
    result.stats.link_length_drift.resize(ensemble);

    // Chains are computed in blocks and merged in chain order, so the
    // accumulation sequence is fixed whatever the schedule.
    const std::size_t block = std::max<std::size_t>(64, 4 * thread_count());
    std::vector<ChainTrace> traces;
    for (std::size_t first = 0; first < ensemble; first += block) {
        const std::size_t count = std::min(block, ensemble - first);
        traces.assign(count, ChainTrace{});
        parallel_for(count, [&](std::size_t i) { traces[i] = run_chain(params, delta_phi, first + i); });
        for (std::size_t i = 0; i < count; ++i) {
            ChainTrace& tr = traces[i];
            for (std::size_t s = 0; s <= steps; ++s) {
                const Coords4& p = tr.points[s + 1];
                t_acc[s].add(p[0]);
                for (std::size_t k = 0; k < 3; ++k) {
                    x_acc[s][k].add(p[k + 1]);
                }
                angle_acc[s].add(tr.angles[s]);
            }
            result.stats.link_length_drift[first + i] = tr.drift;
            result.stats.max_angle_error = std::max(result.stats.max_angle_error, tr.angle_error);
            if (params.keep_chains) {
                result.chains.push_back(std::move(tr.points));
            }
        }
    }

    result.stats.rows.resize(steps + 1);
    for (std::size_t s = 0; s <= steps; ++s) {
        StepStats& row = result.stats.rows[s];
        row.step = static_cast<int>(s);
        row.mean_t = t_acc[s].mean;
        row.var_transverse = x_acc[s][0].variance() + x_acc[s][1].variance() + x_acc[s][2].variance();
        row.mean_angle = angle_acc[s].mean;
        row.var_angle = angle_acc[s].variance();
    }
    return result;
}

}  // namespace worldfunc
