#include "worldfunc/straights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "worldfunc/detail/vecmath.hpp"
#include "worldfunc/parallel.hpp"
#include "worldfunc/rng.hpp"

namespace worldfunc {

CollinearityReport is_collinear(const GeometrySpec& g, const GeomVector& a, const GeomVector& b, double tol)
{
    const double aa = squared_length(g, a);
    const double bb = squared_length(g, b);
    const double ab = scalar_product(g, a, b);
    CollinearityReport rep;
    rep.residual = aa * bb - ab * ab;
    const double scale = std::max({std::abs(aa), std::abs(bb), std::abs(ab)});
    rep.collinear = std::abs(rep.residual) <= tol * scale * scale;
    return rep;
}

bool line_membership(const GeometrySpec& g, const Point& q0, const GeomVector& p0p1, const Point& r, double tol)
{
    if (p0p1.origin() == p0p1.end()) {
        throw Error(ErrorKind::invalid_input, "line direction P0P1 must have P0 != P1");
    }
    require_dim(g, q0);
    require_dim(g, r);
    if (r == q0) {
        return true;
    }
    return is_collinear(g, GeomVector(q0, r), p0p1, tol).collinear;
}

namespace {

SegmentMembership segment_raw(const GeometrySpec& g, std::span<const double> p0, std::span<const double> p1,
                              std::span<const double> r, double tol)
{
    SegmentMembership out;
    const double s01 = sigma_raw(g, p0, p1);
    const double s0r = sigma_raw(g, p0, r);
    const double sr1 = sigma_raw(g, r, p1);
    if (!(s01 > 0.0) || s0r < 0.0 || sr1 < 0.0) {
        out.in_domain = false;
        out.defect = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double base = std::sqrt(2.0 * s01);
    out.defect = std::sqrt(2.0 * s0r) + std::sqrt(2.0 * sr1) - base;
    out.member = std::abs(out.defect) <= tol * base;
    return out;
}

}  // namespace

SegmentMembership segment_membership(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& r,
                                     double tol)
{
    require_dim(g, p0);
    require_dim(g, p1);
    require_dim(g, r);
    return segment_raw(g, p0.coords(), p1.coords(), r.coords(), tol);
}

namespace {

std::vector<std::vector<double>> transverse_directions(std::span<const double> axis, int count, std::uint64_t seed)
{
    auto dirs = detail::orthonormal_complement(axis);
    if (static_cast<int>(dirs.size()) >= count) {
        dirs.resize(static_cast<std::size_t>(count));
        return dirs;
    }
    const auto basis = dirs;
    CounterRng rng(seed, 0xd1ec7);
    while (static_cast<int>(dirs.size()) < count && !basis.empty()) {
        std::vector<double> v(axis.size(), 0.0);
        for (const auto& b : basis) {
            const double w = rng.normal();
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] += w * b[i];
            }
        }
        const double len = detail::norm(v);
        if (len < 1e-12) {
            continue;
        }
        for (double& c : v) {
            c /= len;
        }
        dirs.push_back(std::move(v));
    }
    return dirs;
}

struct StationResult {
    TubeStation station;
    std::vector<TubePoint> points;
};

}  // namespace

TubeSample sample_segment_tube(const GeometrySpec& g, const Point& p0, const Point& p1, const TubeSamplerConfig& cfg)
{
    require_dim(g, p0);
    require_dim(g, p1);
    if (cfg.stations < 1 || cfg.directions < 1 || cfg.scan_steps < 1 || !(cfg.tol > 0.0) || !(cfg.max_radius > 0.0)) {
        throw Error(ErrorKind::invalid_input, "tube sampler needs positive stations, directions, steps, tol, radius");
    }
    const double s01 = sigma(g, p0, p1);
    if (!(s01 > 0.0)) {
        throw Error(ErrorKind::invalid_input, "segment needs sigma(P0,P1) > 0");
    }
    const double base = std::sqrt(2.0 * s01);
    const double length = detail::chart_distance(p0.coords(), p1.coords());
    auto axis = detail::sub(p1.coords(), p0.coords());
    for (double& c : axis) {
        c /= length;
    }
    const auto dirs = transverse_directions(axis, cfg.directions, cfg.seed);
    const double max_r = cfg.max_radius * length;
    const double accept = cfg.tol * base;

    const auto n_st = static_cast<std::size_t>(cfg.stations) + 1;
    std::vector<StationResult> results(n_st);
    parallel_for(n_st, [&](std::size_t s) {
        const double t = length * static_cast<double>(s) / static_cast<double>(cfg.stations);
        const auto centre = detail::axpy(p0.coords(), t, axis);
        StationResult& res = results[s];
        res.station.t = t;
        bool any = false;
        std::vector<double> x(centre.size());
        auto f = [&](const std::vector<double>& dir, double r) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = centre[i] + r * dir[i];
            }
            return segment_raw(g, p0.coords(), p1.coords(), x, cfg.tol).defect;
        };
        for (const auto& dir : dirs) {
            std::optional<double> root;
            const double f0 = f(dir, 0.0);
            if (std::isfinite(f0) && std::abs(f0) <= accept) {
                root = 0.0;
            } else {
                double lo = 0.0;
                double flo = f0;
                for (int k = 1; k <= cfg.scan_steps && !root; ++k) {
                    const double hi = max_r * static_cast<double>(k) / static_cast<double>(cfg.scan_steps);
                    const double fhi = f(dir, hi);
                    if (std::isfinite(flo) && std::isfinite(fhi) && (flo < 0.0) != (fhi < 0.0)) {
                        double a = lo, b = hi, fa = flo;
                        for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + b); ++it) {
                            const double m = 0.5 * (a + b);
                            const double fm = f(dir, m);
                            if (!std::isfinite(fm)) {
                                break;
                            }
                            if ((fm < 0.0) == (fa < 0.0)) {
                                a = m;
                                fa = fm;
                            } else {
                                b = m;
                            }
                        }
                        const double m = std::abs(f(dir, a)) <= std::abs(f(dir, b)) ? a : b;
                        if (std::abs(f(dir, m)) <= accept) {
                            root = m;
                        }
                    }
                    lo = hi;
                    flo = fhi;
                }
            }
            if (!root) {
                continue;
            }
            any = true;
            res.station.radius = std::max(res.station.radius, *root);
            res.points.push_back(TubePoint{t, *root, Point(detail::axpy(centre, *root, dir))});
        }
        res.station.empty = !any;
    });

    TubeSample out;
    for (auto& res : results) {
        out.profile.push_back(res.station);
        for (auto& p : res.points) {
            out.points.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace worldfunc
