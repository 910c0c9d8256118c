#include "worldfunc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <system_error>

namespace worldfunc {

namespace {

[[noreturn]] void bad(const std::string& msg)
{
    throw Error(ErrorKind::invalid_input, msg);
}

double parse_number(std::string_view text, std::string_view key)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        bad("geometry option '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
    }
    return v;
}

std::size_t parse_dim(std::string_view text)
{
    const double v = parse_number(text, "dim");
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) {
        bad("geometry option 'dim' expects a positive integer");
    }
    return static_cast<std::size_t>(v);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double number_field(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number()) {
        bad(std::string("expected numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

}  // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_number(double x)
{
    return format_double(x);
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            os << ',';
        }
        os << cells[i];
    }
    os << '\n';
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        bad("cannot open file '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

DeformationFunction deformation_from_json(const json& j)
{
    if (j.is_array()) {
        return deformation_from_json(json{{"kind", "table"}, {"breakpoints", j}});
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        bad("deformation must be an object with a 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") {
        return DeformationFunction::identity();
    }
    if (kind == "discrete_shift") {
        return DeformationFunction::discrete_shift(number_field(j, "lambda0_sq"));
    }
    if (kind == "grainy_ramp") {
        return DeformationFunction::grainy_ramp(number_field(j, "lambda0_sq"), number_field(j, "sigma0"));
    }
    if (kind == "table") {
        if (!j.contains("breakpoints") || !j.at("breakpoints").is_array()) {
            bad("table deformation needs a 'breakpoints' array");
        }
        std::vector<std::pair<double, double>> bps;
        for (const auto& bp : j.at("breakpoints")) {
            if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
                bad("each breakpoint must be [sigma_M, sigma]");
            }
            bps.emplace_back(bp[0].get<double>(), bp[1].get<double>());
        }
        return DeformationFunction::table(std::move(bps));
    }
    bad("unknown deformation kind '" + kind + "'");
}

json to_json(const DeformationFunction& f)
{
    switch (f.kind()) {
    case DeformationFunction::Kind::identity: return {{"kind", "identity"}};
    case DeformationFunction::Kind::discrete_shift: return {{"kind", "discrete_shift"}, {"lambda0_sq", f.lambda0_sq()}};
    case DeformationFunction::Kind::grainy_ramp:
        return {{"kind", "grainy_ramp"}, {"lambda0_sq", f.lambda0_sq()}, {"sigma0", f.sigma0()}};
    case DeformationFunction::Kind::table: {
        json bps = json::array();
        for (const auto& [x, y] : f.breakpoints()) {
            bps.push_back({x, y});
        }
        return {{"kind", "table"}, {"breakpoints", bps}};
    }
    }
    return {};
}

GeometrySpec parse_geometry(std::string_view text, const std::filesystem::path& base_dir)
{
    const auto colon = text.find(':');
    const std::string kind = trim(text.substr(0, colon));
    std::map<std::string, std::string> opts;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string item = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            if (item.empty()) {
                continue;
            }
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                bad("geometry option '" + item + "' is not key=value");
            }
            const std::string key = trim(std::string_view(item).substr(0, eq));
            if (!opts.emplace(key, trim(std::string_view(item).substr(eq + 1))).second) {
                bad("geometry option '" + key + "' given twice");
            }
        }
    }

    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = opts.find(key);
        if (it == opts.end()) {
            return std::nullopt;
        }
        std::string v = it->second;
        opts.erase(it);
        return v;
    };
    auto take_number = [&](const char* key) -> std::optional<double> {
        if (auto v = take(key)) {
            return parse_number(*v, key);
        }
        return std::nullopt;
    };

    std::optional<UnitConstants> units;
    for (const char* key : {"hbar", "c", "b"}) {
        if (auto v = take_number(key)) {
            if (!units) {
                units = UnitConstants{};
            }
            (std::string(key) == "hbar" ? units->hbar : std::string(key) == "c" ? units->c : units->b) = *v;
        }
    }
    const auto dim_text = take("dim");

    auto finish = [&](GeometrySpec g) {
        if (!opts.empty()) {
            bad("unknown geometry option '" + opts.begin()->first + "' for " + kind);
        }
        if (units) {
            g.with_units(*units);
        }
        return g;
    };

    if (kind == "euclidean") {
        return finish(GeometrySpec::euclidean(dim_text ? parse_dim(*dim_text) : 3));
    }
    const std::size_t dim = dim_text ? parse_dim(*dim_text) : 4;
    if (kind == "minkowski") {
        return finish(GeometrySpec::minkowski(dim));
    }
    if (kind == "discrete") {
        if (auto l = take_number("lambda0_sq")) {
            return finish(GeometrySpec::discrete(*l, dim));
        }
        if (!units) {
            bad("discrete geometry needs lambda0_sq or unit constants hbar, c, b");
        }
        return finish(GeometrySpec::discrete(*units, dim));
    }
    if (kind == "grainy") {
        auto l = take_number("lambda0_sq");
        if (!l && units) {
            l = units->elementary_length_sq();
        }
        const auto s0 = take_number("sigma0");
        if (!l || !s0) {
            bad("grainy geometry needs lambda0_sq (or units) and sigma0");
        }
        return finish(GeometrySpec::grainy(*l, *s0, dim));
    }
    if (kind == "deformed") {
        const auto file = take("file");
        const auto builtin = take("builtin");
        if (file.has_value() == builtin.has_value()) {
            bad("deformed geometry needs exactly one of file=... or builtin=...");
        }
        if (file) {
            std::filesystem::path p(*file);
            if (p.is_relative() && !base_dir.empty()) {
                p = base_dir / p;
            }
            return finish(GeometrySpec::deformed(deformation_from_json(read_json_file(p)), dim));
        }
        json j{{"kind", *builtin}};
        if (auto l = take_number("lambda0_sq")) {
            j["lambda0_sq"] = *l;
        }
        if (auto s = take_number("sigma0")) {
            j["sigma0"] = *s;
        }
        return finish(GeometrySpec::deformed(deformation_from_json(j), dim));
    }
    bad("unknown geometry kind '" + kind + "' (expected euclidean, minkowski, discrete, grainy or deformed)");
}

json to_json(const GeometrySpec& g)
{
    json j{{"kind", to_string(g.kind())}, {"dim", g.dim()}};
    switch (g.kind()) {
    case GeometryKind::discrete: j["lambda0_sq"] = g.lambda0_sq(); break;
    case GeometryKind::grainy:
        j["lambda0_sq"] = g.lambda0_sq();
        j["sigma0"] = g.sigma0();
        break;
    case GeometryKind::deformed: j["deformation"] = to_json(*g.deformation()); break;
    default: break;
    }
    const auto& u = g.units();
    j["units"] = {{"hbar", u.hbar}, {"c", u.c}, {"b", u.b}};
    return j;
}

GeometrySpec geometry_from_json(const json& j)
{
    if (j.is_string()) {
        return parse_geometry(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("dim")) {
        bad("geometry must be a string or an object with 'kind' and 'dim'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    const auto dim = j.at("dim").get<std::size_t>();
    std::optional<GeometrySpec> g;
    if (kind == "euclidean") {
        g = GeometrySpec::euclidean(dim);
    } else if (kind == "minkowski") {
        g = GeometrySpec::minkowski(dim);
    } else if (kind == "discrete") {
        g = GeometrySpec::discrete(number_field(j, "lambda0_sq"), dim);
    } else if (kind == "grainy") {
        g = GeometrySpec::grainy(number_field(j, "lambda0_sq"), number_field(j, "sigma0"), dim);
    } else if (kind == "deformed") {
        if (!j.contains("deformation")) {
            bad("deformed geometry needs a 'deformation'");
        }
        g = GeometrySpec::deformed(deformation_from_json(j.at("deformation")), dim);
    } else {
        bad("unknown geometry kind '" + kind + "'");
    }
    if (j.contains("units")) {
        const auto& u = j.at("units");
        g->with_units(UnitConstants{number_field(u, "hbar"), number_field(u, "c"), number_field(u, "b")});
    }
    return *g;
}

Point point_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) {
        bad("a point must be a non-empty array of numbers");
    }
    std::vector<double> c;
    for (const auto& v : j) {
        if (!v.is_number()) {
            bad("point coordinates must be numbers");
        }
        c.push_back(v.get<double>());
    }
    return Point(std::move(c));
}

json to_json(const Point& p)
{
    return json(p.values());
}

std::vector<Point> points_from_json(const json& j)
{
    const json& arr = j.is_object() && j.contains("points") ? j.at("points") : j;
    if (!arr.is_array()) {
        bad("expected an array of points");
    }
    std::vector<Point> pts;
    for (const auto& p : arr) {
        pts.push_back(point_from_json(p));
    }
    return pts;
}

namespace {

int point_ref(const json& j)
{
    if (!j.is_string()) {
        bad("envelope point references must be strings like \"R\" or \"P0\"");
    }
    const std::string s = j.get<std::string>();
    if (s == "R") {
        return Envelope::kR;
    }
    if (s.size() >= 2 && s[0] == 'P') {
        int idx = 0;
        const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
        if (ec == std::errc{} && ptr == s.data() + s.size() && idx >= 0) {
            return idx;
        }
    }
    bad("bad envelope point reference '" + s + "'");
}

std::string ref_name(int ref)
{
    return ref == Envelope::kR ? "R" : "P" + std::to_string(ref);
}

}  // namespace

Envelope envelope_from_json(const json& j)
{
    if (!j.is_object()) {
        bad("envelope node must be an object");
    }
    if (j.contains("builtin")) {
        const std::string name = j.at("builtin").get<std::string>();
        if (name == "cylinder") {
            return Envelope::cylinder();
        }
        bad("unknown envelope builtin '" + name + "'");
    }
    if (!j.contains("op") || !j.at("op").is_string()) {
        bad("envelope node needs an 'op'");
    }
    const std::string op = j.at("op").get<std::string>();
    if (op == "const") {
        return Envelope::constant(number_field(j, "value"));
    }
    if (op == "sigma") {
        if (!j.contains("points") || !j.at("points").is_array() || j.at("points").size() != 2) {
            bad("sigma node needs exactly two 'points'");
        }
        return Envelope::sigma(point_ref(j.at("points")[0]), point_ref(j.at("points")[1]));
    }
    static const std::map<std::string, Envelope::Op> ops{
        {"+", Envelope::Op::add}, {"-", Envelope::Op::sub}, {"*", Envelope::Op::mul}, {"/", Envelope::Op::div}};
    const auto it = ops.find(op);
    if (it == ops.end()) {
        bad("unknown envelope op '" + op + "'");
    }
    if (!j.contains("args") || !j.at("args").is_array()) {
        bad("envelope op '" + op + "' needs 'args'");
    }
    std::vector<Envelope> args;
    for (const auto& a : j.at("args")) {
        args.push_back(envelope_from_json(a));
    }
    return Envelope::node(it->second, std::move(args));
}

json to_json(const Envelope& e)
{
    if (!e.builtin().empty()) {
        return {{"builtin", e.builtin()}};
    }
    switch (e.op()) {
    case Envelope::Op::constant: return {{"op", "const"}, {"value", e.value()}};
    case Envelope::Op::sigma: return {{"op", "sigma"}, {"points", {ref_name(e.point_a()), ref_name(e.point_b())}}};
    default: break;
    }
    json args = json::array();
    for (const auto& a : e.args()) {
        args.push_back(to_json(a));
    }
    return {{"op", to_string(e.op())}, {"args", args}};
}

json to_json(const EquivalenceReport& r)
{
    return {{"equivalent", r.equivalent},
            {"residual_parallel", r.residual_parallel},
            {"residual_length", r.residual_length},
            {"scale", r.scale}};
}

json to_json(const SolutionSet& s)
{
    json reps = json::array();
    json res = json::array();
    for (std::size_t i = 0; i < s.representatives.size(); ++i) {
        reps.push_back(to_json(s.representatives[i]));
        res.push_back({{"residual_length", s.residuals[i].first}, {"residual_parallel", s.residuals[i].second}});
    }
    return {{"variance", to_string(s.variance)},
            {"manifold_dim_estimate", s.manifold_dim_estimate},
            {"representatives", reps},
            {"residuals", res},
            {"diagnostics",
             {{"starts_attempted", s.diagnostics.starts_attempted},
              {"converged", s.diagnostics.converged},
              {"dedupe_radius", s.diagnostics.dedupe_radius}}}};
}

json to_json(const IntransitivityWitness& w)
{
    auto vec = [](const GeomVector& v) { return json{{"origin", to_json(v.origin())}, {"end", to_json(v.end())}}; };
    return {{"a", vec(w.a)},        {"b", vec(w.b)},         {"c", vec(w.c)},
            {"ab", to_json(w.ab)},  {"bc", to_json(w.bc)},   {"ac", to_json(w.ac)},
            {"samples_used", w.samples_used}};
}

json to_json(const SkeletonEquivalence& s)
{
    json pairs = json::array();
    for (const auto& p : s.pairs) {
        json r = to_json(p.report);
        r["i"] = p.i;
        r["k"] = p.k;
        pairs.push_back(r);
    }
    return {{"equivalent", s.equivalent}, {"pairs", pairs}};
}

}  // namespace worldfunc
