#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <worldfunc/io.hpp>
#include <worldfunc/rng.hpp>

using namespace worldfunc;

namespace {

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

}  // namespace

TEST_CASE("format_double round trips")
{
    CounterRng rng(6, 0);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.uniform(-60, 60)));
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("geometry mini-language")
{
    const auto e = parse_geometry("euclidean:dim=3");
    CHECK(e.kind() == GeometryKind::euclidean);
    CHECK(e.dim() == 3);
    CHECK(parse_geometry("minkowski").dim() == 4);
    const auto d = parse_geometry("discrete:lambda0_sq=0.01");
    CHECK(d.kind() == GeometryKind::discrete);
    CHECK(d.lambda0_sq() == 0.01);
    const auto du = parse_geometry("discrete:hbar=0.02,c=1,b=1");
    CHECK(du.lambda0_sq() == doctest::Approx(0.01));
    CHECK(du.units().hbar == 0.02);
    const auto gr = parse_geometry("grainy:lambda0_sq=0.01,sigma0=0.03");
    CHECK(gr.sigma0() == 0.03);
    const auto df = parse_geometry("deformed:builtin=discrete_shift,lambda0_sq=0.02");
    CHECK(df.from_minkowski(1.0) == doctest::Approx(1.02));

    CHECK(kind_of([] { parse_geometry("hyperbolic"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_geometry("discrete"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_geometry("discrete:lambda0_sq=abc"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_geometry("minkowski:foo=1"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_geometry("euclidean:dim=2.5"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_geometry("deformed:file=/nonexistent/F.json"); }) == ErrorKind::invalid_input);
}

TEST_CASE("deformation files")
{
    const auto dir = std::filesystem::temp_directory_path() / "worldfunc_test_io";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "F.json");
        f << R"({"kind": "table", "breakpoints": [[-1, -1.1], [0, 0], [1, 1.1]]})";
    }
    const auto g = parse_geometry("deformed:file=F.json", dir);
    CHECK(g.from_minkowski(0.5) == doctest::Approx(0.55));
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"kind": "table", "breakpoints": [[-1, 0], [1, 1]]})";
    }
    CHECK(kind_of([&] { parse_geometry("deformed:file=bad.json", dir); }) == ErrorKind::invalid_input);
    std::filesystem::remove_all(dir);
}

TEST_CASE("geometry json round trip")
{
    for (const auto& g : {GeometrySpec::euclidean(2), GeometrySpec::minkowski(3), GeometrySpec::discrete(0.01),
                          GeometrySpec::grainy(0.01, 0.03),
                          GeometrySpec::deformed(DeformationFunction::table({{-1, -2}, {0, 0}, {2, 3}}))}) {
        const json j = to_json(g);
        const GeometrySpec back = geometry_from_json(j);
        CHECK(to_json(back) == j);
        CHECK(back.kind() == g.kind());
        CHECK(back.dim() == g.dim());
    }
}

TEST_CASE("envelope json")
{
    const json j = json::parse(R"({"op": "-", "args": [
        {"op": "sigma", "points": ["P0", "R"]},
        {"op": "*", "args": [{"op": "const", "value": 0.5}, {"op": "sigma", "points": ["P0", "P1"]}]}]})");
    const Envelope e = envelope_from_json(j);
    CHECK(to_json(e) == j);
    CHECK(e.max_point_index() == 1);
    CHECK(to_json(envelope_from_json({{"builtin", "cylinder"}})) == json{{"builtin", "cylinder"}});
    CHECK(kind_of([] { envelope_from_json(json::parse(R"({"op": "sigma", "points": ["Q", "R"]})")); }) ==
          ErrorKind::invalid_input);
    CHECK(kind_of([] { envelope_from_json(json::parse(R"({"op": "^", "args": []})")); }) ==
          ErrorKind::invalid_input);
}

TEST_CASE("points json")
{
    const auto pts = points_from_json(json::parse(R"({"points": [[0, 1], [2.5, -3]]})"));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1] == Point{2.5, -3});
    CHECK(points_from_json(json::parse("[[1, 2, 3]]")).size() == 1);
    CHECK(kind_of([] { points_from_json(json::parse(R"([[1, "a"]])")); }) == ErrorKind::invalid_input);
}

TEST_CASE("csv rows")
{
    std::ostringstream os;
    write_csv_row(os, {"a", csv_number(1.0 / 3.0)});
    CHECK(os.str() == "a,0.3333333333333333\n");
}
