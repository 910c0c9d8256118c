#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <worldfunc/rng.hpp>
#include <worldfunc/straights.hpp>

using namespace worldfunc;

namespace {

const Point O4{0, 0, 0, 0};

}  // namespace

TEST_CASE("collinearity")
{
    const auto e2 = GeometrySpec::euclidean(2);
    CHECK(is_collinear(e2, GeomVector({0, 0}, {1, 0}), GeomVector({5, 0}, {7, 0})).collinear);
    const auto r = is_collinear(e2, GeomVector({0, 0}, {1, 0}), GeomVector({0, 0}, {0, 1}));
    CHECK_FALSE(r.collinear);
    CHECK(r.residual == 1.0);
    const auto m = GeometrySpec::minkowski();
    CHECK(is_collinear(m, GeomVector(O4, {1, 0, 0, 0}), GeomVector(O4, {2, 0, 0, 0})).collinear);
}

TEST_CASE("line membership")
{
    const auto e3 = GeometrySpec::euclidean(3);
    const GeomVector dir({0, 0, 0}, {1, 0, 0});
    CHECK(line_membership(e3, {0, 0, 1}, dir, {2, 0, 1}));
    CHECK_FALSE(line_membership(e3, {0, 0, 1}, dir, {2, 1, 1}));
    CHECK(line_membership(e3, {0, 0, 1}, dir, {0, 0, 1}));

    // the straight through O along a spacelike vector is not one-dimensional
    const auto m = GeometrySpec::minkowski();
    CHECK(line_membership(m, O4, GeomVector(O4, {0, 1, 0, 0}), {0.7, 1, 0, 0.7}));
    CHECK(line_membership(m, O4, GeomVector(O4, {0, 1, 0, 0}), {0, 2, 0, 0}));
    CHECK_FALSE(line_membership(m, O4, GeomVector(O4, {0, 1, 0, 0}), {0, 1, 1, 0}));
}

TEST_CASE("segment membership")
{
    const auto e2 = GeometrySpec::euclidean(2);
    const auto mid = segment_membership(e2, {0, 0}, {2, 0}, {1, 0});
    CHECK(mid.member);
    CHECK(mid.defect == 0.0);
    CHECK_FALSE(segment_membership(e2, {0, 0}, {2, 0}, {1, 0.1}).member);

    const auto d = GeometrySpec::discrete(0.02);
    const auto axis = segment_membership(d, O4, {2, 0, 0, 0}, {1, 0, 0, 0});
    CHECK_FALSE(axis.member);
    CHECK(axis.defect == doctest::Approx(0.02963268121293587797).epsilon(1e-13));
    const double r = 0.17320508075688772935;
    const auto ring = segment_membership(d, O4, {2, 0, 0, 0}, {1, r, 0, 0});
    CHECK(ring.member);
    CHECK(std::abs(ring.defect) < 1e-12);

    const auto out = segment_membership(d, O4, {2, 0, 0, 0}, {0, 1, 0, 0});
    CHECK_FALSE(out.in_domain);
    CHECK_FALSE(out.member);
}

TEST_CASE("euclidean segment members are line members")
{
    CounterRng rng(4, 0);
    const auto e3 = GeometrySpec::euclidean(3);
    for (int i = 0; i < 200; ++i) {
        const Point p0{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Point p1{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double t = rng.uniform();
        const Point r{p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]), p0[2] + t * (p1[2] - p0[2])};
        REQUIRE(segment_membership(e3, p0, p1, r).member);
        CHECK(line_membership(e3, p0, GeomVector(p0, p1), r, 1e-9));
    }
}

TEST_CASE("tube radius profile")
{
    const auto d = GeometrySpec::discrete(0.02);
    const auto tube = sample_segment_tube(d, O4, {2, 0, 0, 0});
    REQUIRE(tube.profile.size() == 65);
    const auto& mid = tube.profile[32];
    CHECK(mid.t == 1.0);
    CHECK(mid.radius == doctest::Approx(0.17320508075688772935).epsilon(1e-9));
    // near the ends the defect only changes sign by jumping at the light cone
    for (const auto& st : tube.profile) {
        if (st.t > 0.0 && st.t < 0.15) {
            CHECK(st.empty);
        }
        if (st.t > 0.25 && st.t < 1.75) {
            CHECK_FALSE(st.empty);
            CHECK(st.radius > 0.0);
        }
    }
    for (const auto& p : tube.points) {
        CHECK(segment_membership(d, O4, {2, 0, 0, 0}, p.point, 1e-8).member);
    }

    const auto e3 = GeometrySpec::euclidean(3);
    const auto line = sample_segment_tube(e3, {0.5, -1, 2}, {1, 2, 3});
    for (const auto& s : line.profile) {
        CHECK_FALSE(s.empty);
        CHECK(s.radius <= 1e-6);
    }

    const auto flat = GeometrySpec::deformed(DeformationFunction::table({{-1, -1}, {1, 1}}));
    for (const auto& s : sample_segment_tube(flat, O4, {2, 0, 0, 0}).profile) {
        CHECK(s.radius <= 1e-6);
    }
}

TEST_CASE("tube sampler is deterministic")
{
    const auto d = GeometrySpec::discrete(0.02);
    TubeSamplerConfig cfg;
    cfg.stations = 8;
    cfg.seed = 3;
    const auto a = sample_segment_tube(d, O4, {2, 0.5, 0, 0}, cfg);
    const auto b = sample_segment_tube(d, O4, {2, 0.5, 0, 0}, cfg);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].point == b.points[i].point);
    }
}
