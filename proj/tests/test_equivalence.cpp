#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <worldfunc/equivalence.hpp>
#include <worldfunc/rng.hpp>

using namespace worldfunc;

namespace {

const Point O4{0, 0, 0, 0};

Point random_point(CounterRng& rng, std::size_t n, double half = 2.0)
{
    std::vector<double> c(n);
    for (double& v : c) {
        v = rng.uniform(-half, half);
    }
    return Point(std::move(c));
}

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::invalid_state;
}

double chart_distance(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("reflexive and symmetric")
{
    CounterRng rng(1, 0);
    const std::vector<GeometrySpec> gs{GeometrySpec::euclidean(3), GeometrySpec::minkowski(),
                                       GeometrySpec::discrete(0.01)};
    for (const auto& g : gs) {
        for (int i = 0; i < 300; ++i) {
            const GeomVector a(random_point(rng, g.dim()), random_point(rng, g.dim()));
            const GeomVector b(random_point(rng, g.dim()), random_point(rng, g.dim()));
            const auto aa = is_equivalent(g, a, a);
            CHECK(aa.equivalent);
            CHECK(aa.residual_length == 0.0);
            CHECK(aa.residual_parallel == 0.0);
            const auto ab = is_equivalent(g, a, b);
            const auto ba = is_equivalent(g, b, a);
            CHECK(ab.equivalent == ba.equivalent);
            CHECK(ab.residual_length == -ba.residual_length);
            CHECK(ab.residual_parallel == ba.residual_parallel);
        }
    }
}

TEST_CASE("equivalence examples")
{
    const auto e = GeometrySpec::euclidean(3);
    CHECK(is_equivalent(e, GeomVector({0, 0, 0}, {1, 0, 0}), GeomVector({5, 5, 5}, {6, 5, 5})).equivalent);
    CHECK_FALSE(is_equivalent(e, GeomVector({0, 0, 0}, {1, 0, 0}), GeomVector({5, 5, 5}, {5, 6, 5})).equivalent);

    const auto m = GeometrySpec::minkowski();
    const auto r = is_equivalent(m, GeomVector(O4, {0.7, 1, 0, 0.7}), GeomVector(O4, {0, 1, 0, 0}));
    CHECK(r.equivalent);
    CHECK(std::abs(r.residual_length) < 1e-15);
    CHECK(std::abs(r.residual_parallel) < 1e-15);
}

TEST_CASE("euclidean solve gives the translation")
{
    const auto e = GeometrySpec::euclidean(3);
    const auto s = solve_equivalent(e, {0, 0, 0}, {1, 0, 0}, {2, 3, 4});
    REQUIRE(s.representatives.size() == 1);
    CHECK(s.variance == Variance::single);
    CHECK(s.manifold_dim_estimate == 0);
    CHECK(chart_distance(s.representatives[0], {3, 3, 4}) < 1e-9);
    CHECK(s.diagnostics.starts_attempted == 256);
    CHECK(s.diagnostics.converged >= 1);
}

TEST_CASE("euclidean single variance over random problems")
{
    CounterRng rng(77, 0);
    const auto e = GeometrySpec::euclidean(3);
    SolverConfig cfg;
    cfg.starts = 16;
    for (int i = 0; i < 100; ++i) {
        const Point p0 = random_point(rng, 3), p1 = random_point(rng, 3), q0 = random_point(rng, 3);
        cfg.seed = static_cast<std::uint64_t>(i);
        const auto s = solve_equivalent(e, p0, p1, q0, cfg);
        REQUIRE(s.representatives.size() == 1);
        CHECK(s.variance == Variance::single);
        std::vector<double> expect(3);
        for (std::size_t k = 0; k < 3; ++k) {
            expect[k] = q0[k] + p1[k] - p0[k];
        }
        CHECK(chart_distance(s.representatives[0], Point(expect)) < 1e-6);
    }
}

TEST_CASE("minkowski timelike solution is unique")
{
    const auto m = GeometrySpec::minkowski();
    const auto s = solve_equivalent(m, O4, {1, 0, 0, 0}, O4);
    REQUIRE(s.representatives.size() == 1);
    CHECK(s.variance == Variance::single);
    CHECK(chart_distance(s.representatives[0], {1, 0, 0, 0}) < 1e-9);

    const auto s2 = solve_equivalent(m, {0, 1, 2, 3}, {2, 1.5, 2, 3}, {5, -1, 0, 0});
    REQUIRE(s2.representatives.size() == 1);
    CHECK(chart_distance(s2.representatives[0], {7, -0.5, 0, 0}) < 1e-8);
}

TEST_CASE("minkowski spacelike solutions form a manifold")
{
    const auto m = GeometrySpec::minkowski();
    const auto s = solve_equivalent(m, O4, {0, 1, 0, 0}, O4);
    CHECK(s.variance == Variance::multi);
    CHECK(s.manifold_dim_estimate >= 1);
    CHECK(s.representatives.size() >= 3);
    const GeomVector y(O4, {0, 1, 0, 0});
    // y itself is equivalent to every member, but members along different
    // null directions are not equivalent to each other
    int distinct = 0;
    for (std::size_t i = 0; i < s.representatives.size(); ++i) {
        CHECK(is_equivalent(m, y, GeomVector(O4, s.representatives[i])).equivalent);
        for (std::size_t k = i + 1; k < s.representatives.size(); ++k) {
            if (!is_equivalent(m, GeomVector(O4, s.representatives[i]), GeomVector(O4, s.representatives[k]))
                     .equivalent) {
                ++distinct;
            }
        }
    }
    CHECK(distinct >= 1);
    // the translation guess survives dedupe
    bool has_y = false;
    for (const auto& r : s.representatives) {
        has_y = has_y || chart_distance(r, {0, 1, 0, 0}) < 1e-9;
    }
    CHECK(has_y);
}

TEST_CASE("solver is deterministic")
{
    const auto m = GeometrySpec::minkowski();
    SolverConfig cfg;
    cfg.starts = 64;
    cfg.seed = 42;
    const auto a = solve_equivalent(m, O4, {0.3, 1, 0.2, 0}, O4, cfg);
    const auto b = solve_equivalent(m, O4, {0.3, 1, 0.2, 0}, O4, cfg);
    REQUIRE(a.representatives.size() == b.representatives.size());
    for (std::size_t i = 0; i < a.representatives.size(); ++i) {
        CHECK(a.representatives[i] == b.representatives[i]);
    }
}

TEST_CASE("solver input errors")
{
    const auto m = GeometrySpec::minkowski();
    CHECK(kind_of([&] { solve_equivalent(m, O4, O4, O4); }) == ErrorKind::invalid_input);
    SolverConfig bad;
    bad.starts = 0;
    CHECK(kind_of([&] { solve_equivalent(m, O4, {1, 0, 0, 0}, O4, bad); }) == ErrorKind::invalid_input);
}

TEST_CASE("spacelike family")
{
    const auto m = GeometrySpec::minkowski();
    const GeomVector y(O4, {0, 1, 0, 0});
    const auto same = minkowski_spacelike_family(y, 0.0, {0, 0, 1});
    CHECK(same.end() == y.end());
    const auto x = minkowski_spacelike_family(y, 0.7, {0, 0, 1});
    CHECK(x.end() == Point{0.7, 1, 0, 0.7});
    CHECK(kind_of([&] { minkowski_spacelike_family(y, 0.7, {1, 0, 0}); }) == ErrorKind::invalid_direction);
    CHECK(kind_of([&] { minkowski_spacelike_family(y, 0.7, {0, 0, 2}); }) == ErrorKind::invalid_direction);
    CHECK(kind_of([&] { minkowski_spacelike_family(GeomVector(O4, {2, 1, 0, 0}), 0.1, {1, 0, 0}); }) ==
          ErrorKind::family_undefined);

    // family members solve the equivalence equations for a generic spacelike y
    const GeomVector z({1, 2, 3, 4}, {1.5, 3, 2.5, 4.2});
    for (int k = 0; k < 32; ++k) {
        const double psi = 2 * std::numbers::pi * k / 32.0;
        const auto n = spacelike_family_direction(z, psi);
        const auto member = minkowski_spacelike_family(z, -2.0 + 4.0 * k / 31.0, n);
        const auto rep = is_equivalent(m, z, member);
        CHECK(rep.equivalent);
        CHECK(std::abs(rep.residual_length) < 1e-12);
        CHECK(std::abs(rep.residual_parallel) < 1e-12);
    }
}

TEST_CASE("intransitivity witness")
{
    const auto m = GeometrySpec::minkowski();
    const GeomVector a(O4, {0.7, 1, 0, 0.7}), b(O4, {0, 1, 0, 0}), c(O4, {0.7, 1, 0, -0.7});
    CHECK(is_equivalent(m, a, b).equivalent);
    CHECK(is_equivalent(m, b, c).equivalent);
    CHECK_FALSE(is_equivalent(m, a, c).equivalent);
    CHECK(scalar_product(m, a, c) == doctest::Approx(-0.02).epsilon(1e-12));
    CHECK(squared_length(m, a) == doctest::Approx(-1.0));

    for (const auto& g : {GeometrySpec::minkowski(), GeometrySpec::discrete(0.01)}) {
        const auto w = find_intransitivity_witness(g, 7);
        REQUIRE(w.has_value());
        CHECK(is_equivalent(g, w->a, w->b).equivalent);
        CHECK(is_equivalent(g, w->b, w->c).equivalent);
        CHECK_FALSE(is_equivalent(g, w->a, w->c).equivalent);
        CHECK(w->samples_used <= 10000);
        const auto again = find_intransitivity_witness(g, 7);
        CHECK(again->a.end() == w->a.end());
        CHECK(again->c.end() == w->c.end());
    }
    CHECK_FALSE(find_intransitivity_witness(GeometrySpec::euclidean(3), 7, 500).has_value());
}
