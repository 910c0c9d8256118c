#include "worldfunc/objects.hpp"

#include <algorithm>
#include <cmath>

#include "worldfunc/detail/vecmath.hpp"
#include "worldfunc/rng.hpp"

namespace worldfunc {

Skeleton::Skeleton(std::vector<Point> points) : points_(std::move(points))
{
    if (points_.size() < 2) {
        throw Error(ErrorKind::invalid_input, "a skeleton needs at least 2 points");
    }
    for (const auto& p : points_) {
        if (p.dim() != points_.front().dim()) {
            throw Error(ErrorKind::invalid_input, "skeleton points have mixed dimensions");
        }
    }
}

const char* to_string(Envelope::Op op) noexcept
{
    switch (op) {
    case Envelope::Op::add: return "+";
    case Envelope::Op::sub: return "-";
    case Envelope::Op::mul: return "*";
    case Envelope::Op::div: return "/";
    case Envelope::Op::constant: return "const";
    case Envelope::Op::sigma: return "sigma";
    }
    return "?";
}

Envelope Envelope::constant(double value)
{
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::invalid_input, "envelope constant must be finite");
    }
    Envelope e;
    e.op_ = Op::constant;
    e.value_ = value;
    return e;
}

Envelope Envelope::sigma(int a, int b)
{
    if (a < kR || b < kR) {
        throw Error(ErrorKind::invalid_input, "bad envelope point reference");
    }
    Envelope e;
    e.op_ = Op::sigma;
    e.a_ = a;
    e.b_ = b;
    return e;
}

Envelope Envelope::node(Op op, std::vector<Envelope> args)
{
    const std::size_t n = args.size();
    bool ok = false;
    switch (op) {
    case Op::add:
    case Op::mul: ok = n >= 1; break;
    case Op::sub: ok = n == 1 || n == 2; break;
    case Op::div: ok = n == 2; break;
    case Op::constant:
    case Op::sigma: ok = false; break;
    }
    if (!ok) {
        throw Error(ErrorKind::invalid_input,
                    std::string("wrong number of arguments for envelope op '") + to_string(op) + "'");
    }
    Envelope e;
    e.op_ = op;
    e.args_ = std::move(args);
    return e;
}

namespace {

// F2(P0, P1, X) as an expression in sigma values.
Envelope f2_tree(int x)
{
    using Op = Envelope::Op;
    const auto two = [] { return Envelope::constant(2.0); };
    Envelope a = Envelope::node(Op::mul, {two(), Envelope::sigma(0, 1)});
    Envelope b = Envelope::node(Op::mul, {two(), Envelope::sigma(0, x)});
    auto c = [&] {
        return Envelope::node(Op::sub, {Envelope::node(Op::add, {Envelope::sigma(0, x), Envelope::sigma(1, 0)}),
                                        Envelope::node(Op::add, {Envelope::sigma(0, 0), Envelope::sigma(1, x)})});
    };
    return Envelope::node(Op::sub, {Envelope::node(Op::mul, {std::move(a), std::move(b)}),
                                    Envelope::node(Op::mul, {c(), c()})});
}

}  // namespace

Envelope Envelope::cylinder()
{
    Envelope e = node(Op::sub, {f2_tree(2), f2_tree(kR)});
    e.builtin_ = "cylinder";
    return e;
}

int Envelope::max_point_index() const
{
    int m = -1;
    if (op_ == Op::sigma) {
        m = std::max(a_, b_);
    }
    for (const auto& a : args_) {
        m = std::max(m, a.max_point_index());
    }
    return m;
}

namespace {

const Point& resolve(const Skeleton& sk, const Point& r, int ref)
{
    return ref == Envelope::kR ? r : sk[static_cast<std::size_t>(ref)];
}

EnvelopeValue eval(const GeometrySpec& g, const Skeleton& sk, const Envelope& e, const Point& r,
                   const std::string& path)
{
    using Op = Envelope::Op;
    switch (e.op()) {
    case Op::constant: return {e.value(), std::abs(e.value())};
    case Op::sigma: {
        const double s = sigma(g, resolve(sk, r, e.point_a()), resolve(sk, r, e.point_b()));
        return {s, std::abs(s)};
    }
    default: break;
    }
    std::vector<EnvelopeValue> v;
    v.reserve(e.args().size());
    for (std::size_t i = 0; i < e.args().size(); ++i) {
        v.push_back(eval(g, sk, e.args()[i], r, path + "/args/" + std::to_string(i)));
    }
    EnvelopeValue out;
    switch (e.op()) {
    case Op::add:
        for (const auto& x : v) {
            out.value += x.value;
            out.magnitude += x.magnitude;
        }
        break;
    case Op::sub:
        if (v.size() == 1) {
            out = {-v[0].value, v[0].magnitude};
        } else {
            out = {v[0].value - v[1].value, v[0].magnitude + v[1].magnitude};
        }
        break;
    case Op::mul:
        out = {1.0, 1.0};
        for (const auto& x : v) {
            out.value *= x.value;
            out.magnitude *= x.magnitude;
        }
        break;
    case Op::div:
        if (v[1].value == 0.0) {
            throw Error(ErrorKind::evaluation_error, "division by zero: divisor " + path + "/args/1" + " is 0");
        }
        out = {v[0].value / v[1].value, v[0].magnitude / std::abs(v[1].value)};
        break;
    default: break;
    }
    return out;
}

void check_arity(const Skeleton& sk, const Envelope& env, const Point& r)
{
    if (env.max_point_index() >= static_cast<int>(sk.size())) {
        throw Error(ErrorKind::invalid_input, "envelope references P" + std::to_string(env.max_point_index()) +
                                                  " but the skeleton has " + std::to_string(sk.size()) + " points");
    }
    if (r.dim() != sk.dim()) {
        throw Error(ErrorKind::invalid_input, "probe point dimension differs from the skeleton");
    }
}

}  // namespace

EnvelopeValue evaluate_envelope_detailed(const GeometrySpec& g, const Skeleton& sk, const Envelope& env,
                                         const Point& r)
{
    check_arity(sk, env, r);
    return eval(g, sk, env, r, "");
}

double evaluate_envelope(const GeometrySpec& g, const Skeleton& sk, const Envelope& env, const Point& r)
{
    return evaluate_envelope_detailed(g, sk, env, r).value;
}

bool object_membership(const GeometrySpec& g, const Skeleton& sk, const Envelope& env, const Point& r, double tol)
{
    const auto v = evaluate_envelope_detailed(g, sk, env, r);
    return std::abs(v.value) <= tol * v.magnitude;
}

double gram_F2(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q)
{
    const GeomVector a(p0, p1);
    const GeomVector b(p0, q);
    const double ab = scalar_product(g, a, b);
    return squared_length(g, a) * squared_length(g, b) - ab * ab;
}

double cylinder_envelope(const GeometrySpec& g, const Point& p0, const Point& p1, const Point& q, const Point& r)
{
    if (p0 == p1) {
        throw Error(ErrorKind::invalid_input, "cylinder axis needs P0 != P1");
    }
    return gram_F2(g, p0, p1, q) - gram_F2(g, p0, p1, r);
}

SkeletonEquivalence skeletons_equivalent(const GeometrySpec& g, const Skeleton& a, const Skeleton& b, double tol)
{
    if (a.size() != b.size()) {
        throw Error(ErrorKind::invalid_input, "skeletons have different sizes");
    }
    SkeletonEquivalence out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = i + 1; k < a.size(); ++k) {
            SkeletonPairReport pr{i, k, is_equivalent(g, GeomVector(a[i], a[k]), GeomVector(b[i], b[k]), tol)};
            out.equivalent = out.equivalent && pr.report.equivalent;
            out.pairs.push_back(pr);
        }
    }
    return out;
}

std::vector<Point> sample_surface_probes(const GeometrySpec& g, const Skeleton& sk, const Envelope& env,
                                         const Point& centre, const SurfaceProbeConfig& cfg)
{
    if (cfg.count < 0 || cfg.scan_steps < 1 || !(cfg.radius > 0.0) || !(cfg.tol > 0.0) ||
        cfg.max_attempts_factor < 1) {
        throw Error(ErrorKind::invalid_input, "bad surface probe configuration");
    }
    check_arity(sk, env, centre);
    const std::size_t n = centre.dim();
    std::vector<Point> out;
    const long attempts = static_cast<long>(cfg.count) * cfg.max_attempts_factor;
    std::vector<double> x(n);
    for (long k = 0; k < attempts && static_cast<int>(out.size()) < cfg.count; ++k) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(k));
        std::vector<double> dir(n);
        double len = 0.0;
        while (!(len > 1e-12)) {
            for (double& c : dir) {
                c = rng.normal();
            }
            len = detail::norm(dir);
        }
        for (double& c : dir) {
            c /= len;
        }
        auto f = [&](double t) {
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = centre[i] + t * dir[i];
            }
            return evaluate_envelope_detailed(g, sk, env, Point(x));
        };
        // Start slightly off the centre so rays through a degenerate centre
        // still bracket.
        double lo = cfg.radius * rng.uniform() / cfg.scan_steps;
        double flo = f(lo).value;
        for (int s = 1; s <= cfg.scan_steps; ++s) {
            const double hi = lo + (cfg.radius - lo) / (cfg.scan_steps - s + 1);
            const double fhi = f(hi).value;
            if ((flo < 0.0) != (fhi < 0.0)) {
                double a = lo, b = hi, fa = flo;
                for (int it = 0; it < 200 && b - a > 1e-16 * (1.0 + b); ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = f(m).value;
                    if ((fm < 0.0) == (fa < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                bool found = false;
                for (double t : {a, b}) {
                    const auto v = f(t);
                    if (std::abs(v.value) <= cfg.tol * v.magnitude) {
                        out.emplace_back(x);
                        found = true;
                        break;
                    }
                }
                // a sign change without a small value is a jump; keep scanning
                if (found) {
                    break;
                }
            }
            lo = hi;
            flo = fhi;
        }
    }
    return out;
}

}  // namespace worldfunc
