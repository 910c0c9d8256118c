#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>

#include <worldfunc/parallel.hpp>

namespace worldfunc::cli {

namespace {

[[noreturn]] void bad(const std::string& msg)
{
    throw Error(ErrorKind::invalid_input, msg);
}

std::vector<double> parse_coords(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v = 0.0;
        const char* first = item.data();
        const char* last = item.data() + item.size();
        while (first < last && *first == ' ') {
            ++first;
        }
        while (last > first && last[-1] == ' ') {
            --last;
        }
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (first == last || ec != std::errc{} || ptr != last) {
            bad(what + ": expected comma-separated numbers, got '" + text + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

Point coords_point(const json& cfg, const char* key)
{
    if (!cfg.contains(key)) {
        bad(std::string("missing '") + key + "'");
    }
    return point_from_json(cfg.at(key));
}

std::string dump_json(json j)
{
    j["schema_version"] = kSchemaVersion;
    return j.dump(2) + "\n";
}

// --- commands ------------------------------------------------------------------

std::vector<NamedOutput> cmd_sigma(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const auto pts = points_from_json(cfg.at("points"));
    std::ostringstream os;
    write_csv_row(os, {"i", "j", "sigma"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            write_csv_row(os, {std::to_string(i), std::to_string(j), csv_number(sigma(g, pts[i], pts[j]))});
        }
    }
    return {{"primary", os.str()}};
}

std::vector<NamedOutput> cmd_eqv_check(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const GeomVector a(coords_point(cfg, "p0"), coords_point(cfg, "p1"));
    const GeomVector b(coords_point(cfg, "q0"), coords_point(cfg, "q1"));
    require_dim(g, a.origin());
    require_dim(g, b.origin());
    return {{"primary", dump_json(to_json(is_equivalent(g, a, b, cfg.at("tol").get<double>())))}};
}

std::vector<NamedOutput> cmd_eqv_solve(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const SolverConfig sc = solver_config_from_json(cfg.at("solver"));
    const auto set = solve_equivalent(g, coords_point(cfg, "p0"), coords_point(cfg, "p1"), coords_point(cfg, "q0"), sc);
    return {{"primary", dump_json(to_json(set))}};
}

std::vector<NamedOutput> cmd_eqv_witness(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const auto w = find_intransitivity_witness(g, cfg.at("seed").get<std::uint64_t>(), cfg.at("budget").get<int>(),
                                               cfg.at("tol").get<double>());
    json j{{"found", w.has_value()}};
    if (w) {
        j["witness"] = to_json(*w);
    }
    return {{"primary", dump_json(j)}};
}

std::vector<NamedOutput> cmd_tube(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const auto tc = tube_config_from_json(cfg.at("sampler"));
    const auto sample = sample_segment_tube(g, coords_point(cfg, "p0"), coords_point(cfg, "p1"), tc);
    std::ostringstream pts;
    std::vector<std::string> header{"t", "r"};
    for (std::size_t i = 0; i < g.dim(); ++i) {
        header.push_back("x" + std::to_string(i));
    }
    write_csv_row(pts, header);
    for (const auto& p : sample.points) {
        std::vector<std::string> row{csv_number(p.t), csv_number(p.r)};
        for (double c : p.point.coords()) {
            row.push_back(csv_number(c));
        }
        write_csv_row(pts, row);
    }
    std::vector<NamedOutput> out{{"primary", pts.str()}};
    if (cfg.value("profile", false)) {
        std::ostringstream prof;
        write_csv_row(prof, {"t", "radius", "empty"});
        for (const auto& s : sample.profile) {
            write_csv_row(prof, {csv_number(s.t), csv_number(s.radius), s.empty ? "1" : "0"});
        }
        out.push_back({"profile", prof.str()});
    }
    return out;
}

std::vector<NamedOutput> cmd_object(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    const Skeleton sk(points_from_json(cfg.at("skeleton")));
    const Envelope env = envelope_from_json(cfg.at("envelope"));
    const double tol = cfg.at("tol").get<double>();
    std::vector<Point> probes;
    if (cfg.contains("probes")) {
        probes = points_from_json(cfg.at("probes"));
    } else {
        const json& s = cfg.at("sample");
        SurfaceProbeConfig pc;
        pc.count = s.at("count").get<int>();
        pc.radius = s.at("radius").get<double>();
        pc.tol = tol;
        pc.seed = cfg.at("seed").get<std::uint64_t>();
        probes = sample_surface_probes(g, sk, env, point_from_json(s.at("centre")), pc);
    }
    std::ostringstream os;
    std::vector<std::string> header;
    for (std::size_t i = 0; i < sk.dim(); ++i) {
        header.push_back("x" + std::to_string(i));
    }
    header.insert(header.end(), {"envelope_value", "member"});
    write_csv_row(os, header);
    for (const auto& p : probes) {
        const auto v = evaluate_envelope_detailed(g, sk, env, p);
        std::vector<std::string> row;
        for (double c : p.coords()) {
            row.push_back(csv_number(c));
        }
        row.push_back(csv_number(v.value));
        row.push_back(std::abs(v.value) <= tol * v.magnitude ? "1" : "0");
        write_csv_row(os, row);
    }
    return {{"primary", os.str()}};
}

std::vector<NamedOutput> cmd_chain(const json& cfg)
{
    ChainParams params;
    params.geometry = geometry_from_json(cfg.at("geometry"));
    params.link_sigma_m = cfg.at("link_sigma_m").get<double>();
    params.steps = cfg.at("steps").get<int>();
    params.ensemble = cfg.at("ensemble").get<int>();
    params.seed = cfg.at("seed").get<std::uint64_t>();
    params.keep_chains = cfg.value("raw", false);
    const auto result = simulate_ensemble(params);
    std::ostringstream os;
    write_csv_row(os, {"step", "mean_t", "var_transverse", "mean_angle"});
    for (const auto& r : result.stats.rows) {
        write_csv_row(os, {std::to_string(r.step), csv_number(r.mean_t), csv_number(r.var_transverse),
                           csv_number(r.mean_angle)});
    }
    std::vector<NamedOutput> out{{"primary", os.str()}};
    if (params.keep_chains) {
        std::ostringstream raw;
        write_csv_row(raw, {"chain_id", "step", "x0", "x1", "x2", "x3"});
        for (std::size_t c = 0; c < result.chains.size(); ++c) {
            for (std::size_t s = 0; s < result.chains[c].size(); ++s) {
                const auto& p = result.chains[c][s];
                write_csv_row(raw, {std::to_string(c), std::to_string(s), csv_number(p[0]), csv_number(p[1]),
                                    csv_number(p[2]), csv_number(p[3])});
            }
        }
        out.push_back({"raw", raw.str()});
    }
    return out;
}

std::vector<NamedOutput> cmd_density(const json& cfg)
{
    const GeometrySpec g = geometry_from_json(cfg.at("geometry"));
    double l = 0.0;
    double s0 = 0.0;
    switch (g.kind()) {
    case GeometryKind::discrete: l = g.lambda0_sq(); break;
    case GeometryKind::grainy:
        l = g.lambda0_sq();
        s0 = g.sigma0();
        break;
    case GeometryKind::deformed:
        if (g.deformation()->kind() == DeformationFunction::Kind::grainy_ramp ||
            g.deformation()->kind() == DeformationFunction::Kind::discrete_shift) {
            l = g.lambda0_sq();
            s0 = g.sigma0();
            break;
        }
        [[fallthrough]];
    default: bad("density needs a discrete or grainy geometry");
    }
    const double lo = cfg.at("from").get<double>();
    const double hi = cfg.at("to").get<double>();
    const int n = cfg.at("points").get<int>();
    if (n < 1 || !std::isfinite(lo) || !std::isfinite(hi) || (n > 1 && !(hi > lo))) {
        bad("density grid needs points >= 1 and from < to");
    }
    std::ostringstream os;
    write_csv_row(os, {"sigma_g", "rho", "discrete_limit"});
    for (int i = 0; i < n; ++i) {
        const double sg = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto d = relative_density(l, s0, sg);
        write_csv_row(os, {csv_number(sg), csv_number(d.rho), d.discrete_limit ? "1" : "0"});
    }
    return {{"primary", os.str()}};
}

// --- command line --------------------------------------------------------------

struct Common {
    std::string geometry;
    std::uint64_t seed = 0;
    std::string out;
    std::string manifest;
};

void add_common(CLI::App* sub, Common& c, bool needs_geometry = true)
{
    auto* opt = sub->add_option("--geometry,-g", c.geometry,
                                "euclidean:dim=3 | minkowski | discrete:lambda0_sq=.. | grainy:lambda0_sq=..,sigma0=.. "
                                "| deformed:file=F.json");
    if (needs_geometry) {
        opt->required();
    }
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--out,-o", c.out, "write the main output here instead of stdout");
    sub->add_option("--manifest", c.manifest, "run manifest path (default <out>.manifest.json, else stderr)");
}

json base_config(const std::string& command, const Common& c)
{
    json cfg{{"command", command}, {"seed", c.seed}};
    if (!c.geometry.empty()) {
        cfg["geometry"] = to_json(parse_geometry(c.geometry));
    }
    return cfg;
}

json points_arg(const std::string& text, const char* what)
{
    return json(parse_coords(text, what));
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content) || !f.flush()) {
        bad("cannot write '" + path + "'");
    }
}

void apply_thread_env()
{
    const char* env = std::getenv("WORLDFUNC_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    unsigned v = 0;
    const char* last = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, last, v);
    if (ec != std::errc{} || ptr != last || v == 0) {
        bad("WORLDFUNC_THREADS must be a positive integer");
    }
    set_thread_cap(v);
}

}  // namespace

SolverConfig solver_config_from_json(const json& j, SolverConfig base)
{
    if (!j.is_object()) {
        bad("solver config must be an object");
    }
    base.starts = j.value("starts", base.starts);
    base.max_iter = j.value("max_iter", base.max_iter);
    base.tol = j.value("tol", base.tol);
    base.dedupe_radius = j.value("dedupe_radius", base.dedupe_radius);
    base.box_half_width = j.value("box_half_width", base.box_half_width);
    base.seed = j.value("seed", base.seed);
    return base;
}

TubeSamplerConfig tube_config_from_json(const json& j, TubeSamplerConfig base)
{
    if (!j.is_object()) {
        bad("tube sampler config must be an object");
    }
    base.stations = j.value("stations", base.stations);
    base.directions = j.value("directions", base.directions);
    base.tol = j.value("tol", base.tol);
    base.max_radius = j.value("max_radius", base.max_radius);
    base.scan_steps = j.value("scan_steps", base.scan_steps);
    base.seed = j.value("seed", base.seed);
    return base;
}

std::vector<NamedOutput> run_command(const json& cfg)
{
    const std::string name = cfg.at("command").get<std::string>();
    if (name == "sigma") {
        return cmd_sigma(cfg);
    }
    if (name == "eqv.check") {
        return cmd_eqv_check(cfg);
    }
    if (name == "eqv.solve") {
        return cmd_eqv_solve(cfg);
    }
    if (name == "eqv.witness") {
        return cmd_eqv_witness(cfg);
    }
    if (name == "tube") {
        return cmd_tube(cfg);
    }
    if (name == "object") {
        return cmd_object(cfg);
    }
    if (name == "chain") {
        return cmd_chain(cfg);
    }
    if (name == "density") {
        return cmd_density(cfg);
    }
    bad("unknown command '" + name + "'");
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"World-function geometry toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;
    std::string points_file, p0, p1, q0, q1, config_file, profile_file, raw_file;
    std::string skeleton_file, envelope_file, builtin, probes_file, centre;
    std::string manifest_in;
    double tol = kDefaultTolerance;
    int starts = 256, max_iter = 100, budget = 10000, stations = 64, directions = 16;
    double dedupe_radius = 1e-4, box_half_width = 5.0, max_radius = 1.0;
    int sample = 0;
    double radius = 3.0;
    double link_sigma_m = 0.5;
    int steps = 100, ensemble = 100;
    double from = -0.1, to = 0.1;
    int grid = 201;

    auto* sig = app.add_subcommand("sigma", "world function table for a set of points");
    add_common(sig, common);
    sig->add_option("--points,-p", points_file, "JSON file with an array of points")->required();

    auto* eqv = app.add_subcommand("eqv", "vector equivalence");
    eqv->require_subcommand(1);
    auto* check = eqv->add_subcommand("check", "test P0P1 eqv Q0Q1");
    add_common(check, common);
    for (auto [flag, var] : {std::pair{"--p0", &p0}, {"--p1", &p1}, {"--q0", &q0}, {"--q1", &q1}}) {
        check->add_option(flag, *var, "comma-separated coordinates")->required();
    }
    check->add_option("--tol", tol)->capture_default_str();

    auto* solve = eqv->add_subcommand("solve", "find Q1 with P0P1 eqv Q0Q1");
    add_common(solve, common);
    for (auto [flag, var] : {std::pair{"--p0", &p0}, {"--p1", &p1}, {"--q0", &q0}}) {
        solve->add_option(flag, *var, "comma-separated coordinates")->required();
    }
    solve->add_option("--config", config_file, "solver config JSON");
    auto* o_starts = solve->add_option("--starts", starts);
    auto* o_iter = solve->add_option("--max-iter", max_iter);
    auto* o_tol = solve->add_option("--tol", tol);
    auto* o_dedupe = solve->add_option("--dedupe-radius", dedupe_radius);
    auto* o_box = solve->add_option("--box-half-width", box_half_width);

    auto* wit = eqv->add_subcommand("witness", "search for an intransitive triple");
    add_common(wit, common);
    wit->add_option("--budget", budget)->capture_default_str();
    wit->add_option("--tol", tol)->capture_default_str();

    auto* tube = app.add_subcommand("tube", "sample the segment tube between P0 and P1");
    add_common(tube, common);
    tube->add_option("--p0", p0)->required();
    tube->add_option("--p1", p1)->required();
    tube->add_option("--config", config_file, "tube sampler config JSON");
    auto* o_stations = tube->add_option("--stations", stations);
    auto* o_dirs = tube->add_option("--directions", directions);
    auto* o_maxr = tube->add_option("--max-radius", max_radius, "relative to the chart length of P0P1");
    auto* o_ttol = tube->add_option("--tol", tol);
    tube->add_option("--profile", profile_file, "write the radius profile CSV here");

    auto* obj = app.add_subcommand("object", "envelope values and membership on probe points");
    add_common(obj, common);
    obj->add_option("--skeleton", skeleton_file, "JSON file with the skeleton points")->required();
    auto* o_env = obj->add_option("--envelope", envelope_file, "envelope expression JSON");
    auto* o_builtin = obj->add_option("--builtin", builtin, "built-in envelope (cylinder)");
    o_env->excludes(o_builtin);
    auto* o_probes = obj->add_option("--probes", probes_file, "JSON file with probe points");
    auto* o_sample = obj->add_option("--sample", sample, "number of surface probes to sample");
    o_probes->excludes(o_sample);
    obj->add_option("--centre", centre, "ray origin for --sample (default: skeleton centroid)");
    obj->add_option("--radius", radius, "ray length for --sample")->capture_default_str();
    obj->add_option("--tol", tol)->capture_default_str();

    auto* chain = app.add_subcommand("chain", "Monte Carlo world chains");
    add_common(chain, common);
    chain->add_option("--link-sigma-m", link_sigma_m, "Minkowski world function per link")->capture_default_str();
    chain->add_option("--steps", steps)->capture_default_str();
    chain->add_option("--ensemble", ensemble)->capture_default_str();
    chain->add_option("--raw", raw_file, "write raw chain points CSV here");

    auto* dens = app.add_subcommand("density", "relative point density over a sigma grid");
    add_common(dens, common);
    dens->add_option("--from", from)->capture_default_str();
    dens->add_option("--to", to)->capture_default_str();
    dens->add_option("--points", grid)->capture_default_str();

    auto* replay = app.add_subcommand("replay", "re-run a manifest and compare output digests");
    replay->add_option("manifest", manifest_in, "manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_thread_env();

        if (replay->parsed()) {
            const json manifest = read_json_file(manifest_in);
            if (!manifest.contains("config") || !manifest.contains("outputs")) {
                bad("not a run manifest: '" + manifest_in + "'");
            }
            const auto outputs = run_command(manifest.at("config"));
            bool ok = outputs.size() == manifest.at("outputs").size();
            json report = json::object();
            for (const auto& o : outputs) {
                const std::string actual = sha256_hex(o.content);
                const std::string expected = manifest.at("outputs").value(o.name, std::string{});
                ok = ok && actual == expected;
                report[o.name] = {{"expected", expected}, {"actual", actual}, {"match", actual == expected}};
            }
            out << dump_json({{"reproduced", ok}, {"outputs", report}});
            return ok ? kExitOk : kExitNumerical;
        }

        json cfg;
        if (sig->parsed()) {
            cfg = base_config("sigma", common);
            cfg["points"] = json::array();
            for (const auto& p : points_from_json(read_json_file(points_file))) {
                cfg["points"].push_back(to_json(p));
            }
        } else if (check->parsed()) {
            cfg = base_config("eqv.check", common);
            cfg["p0"] = points_arg(p0, "--p0");
            cfg["p1"] = points_arg(p1, "--p1");
            cfg["q0"] = points_arg(q0, "--q0");
            cfg["q1"] = points_arg(q1, "--q1");
            cfg["tol"] = tol;
        } else if (solve->parsed()) {
            cfg = base_config("eqv.solve", common);
            cfg["p0"] = points_arg(p0, "--p0");
            cfg["p1"] = points_arg(p1, "--p1");
            cfg["q0"] = points_arg(q0, "--q0");
            SolverConfig sc;
            if (!config_file.empty()) {
                sc = solver_config_from_json(read_json_file(config_file));
            }
            if (o_starts->count()) sc.starts = starts;
            if (o_iter->count()) sc.max_iter = max_iter;
            if (o_tol->count()) sc.tol = tol;
            if (o_dedupe->count()) sc.dedupe_radius = dedupe_radius;
            if (o_box->count()) sc.box_half_width = box_half_width;
            if (solve->get_option("--seed")->count() || config_file.empty()) sc.seed = common.seed;
            cfg["seed"] = sc.seed;
            cfg["solver"] = {{"starts", sc.starts},
                             {"max_iter", sc.max_iter},
                             {"tol", sc.tol},
                             {"dedupe_radius", sc.dedupe_radius},
                             {"box_half_width", sc.box_half_width},
                             {"seed", sc.seed}};
        } else if (wit->parsed()) {
            cfg = base_config("eqv.witness", common);
            cfg["budget"] = budget;
            cfg["tol"] = tol;
        } else if (tube->parsed()) {
            cfg = base_config("tube", common);
            cfg["p0"] = points_arg(p0, "--p0");
            cfg["p1"] = points_arg(p1, "--p1");
            TubeSamplerConfig tc;
            if (!config_file.empty()) {
                tc = tube_config_from_json(read_json_file(config_file));
            }
            if (o_stations->count()) tc.stations = stations;
            if (o_dirs->count()) tc.directions = directions;
            if (o_maxr->count()) tc.max_radius = max_radius;
            if (o_ttol->count()) tc.tol = tol;
            if (tube->get_option("--seed")->count() || config_file.empty()) tc.seed = common.seed;
            cfg["seed"] = tc.seed;
            cfg["sampler"] = {{"stations", tc.stations},   {"directions", tc.directions}, {"tol", tc.tol},
                              {"max_radius", tc.max_radius}, {"scan_steps", tc.scan_steps}, {"seed", tc.seed}};
            cfg["profile"] = !profile_file.empty();
        } else if (obj->parsed()) {
            cfg = base_config("object", common);
            const auto sk_pts = points_from_json(read_json_file(skeleton_file));
            cfg["skeleton"] = json::array();
            for (const auto& p : sk_pts) {
                cfg["skeleton"].push_back(to_json(p));
            }
            if (!envelope_file.empty()) {
                cfg["envelope"] = to_json(envelope_from_json(read_json_file(envelope_file)));
            } else if (!builtin.empty()) {
                cfg["envelope"] = to_json(envelope_from_json({{"builtin", builtin}}));
            } else {
                bad("object needs --envelope or --builtin");
            }
            cfg["tol"] = tol;
            if (!probes_file.empty()) {
                cfg["probes"] = json::array();
                for (const auto& p : points_from_json(read_json_file(probes_file))) {
                    cfg["probes"].push_back(to_json(p));
                }
            } else if (sample > 0) {
                json c;
                if (!centre.empty()) {
                    c = points_arg(centre, "--centre");
                } else {
                    Skeleton sk(sk_pts);
                    std::vector<double> m(sk.dim(), 0.0);
                    for (const auto& p : sk.points()) {
                        for (std::size_t i = 0; i < m.size(); ++i) {
                            m[i] += p[i] / static_cast<double>(sk.size());
                        }
                    }
                    c = m;
                }
                cfg["sample"] = {{"count", sample}, {"radius", radius}, {"centre", c}};
            } else {
                bad("object needs --probes or --sample N");
            }
        } else if (chain->parsed()) {
            cfg = base_config("chain", common);
            cfg["link_sigma_m"] = link_sigma_m;
            cfg["steps"] = steps;
            cfg["ensemble"] = ensemble;
            cfg["raw"] = !raw_file.empty();
        } else if (dens->parsed()) {
            cfg = base_config("density", common);
            cfg["from"] = from;
            cfg["to"] = to;
            cfg["points"] = grid;
        }

        const auto started = std::chrono::system_clock::now();
        const auto outputs = run_command(cfg);
        const auto finished = std::chrono::system_clock::now();

        for (const auto& o : outputs) {
            if (o.name == "primary") {
                if (common.out.empty()) {
                    out << o.content;
                } else {
                    write_file(common.out, o.content);
                }
            } else if (o.name == "profile") {
                write_file(profile_file, o.content);
            } else if (o.name == "raw") {
                write_file(raw_file, o.content);
            }
        }
        out.flush();

        const json manifest = build_manifest(cfg, started, finished, outputs);
        std::string manifest_path = common.manifest;
        if (manifest_path.empty() && !common.out.empty()) {
            manifest_path = common.out + ".manifest.json";
        }
        if (manifest_path.empty()) {
            err << manifest.dump() << "\n";
        } else {
            write_file(manifest_path, manifest.dump(2) + "\n");
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "worldfunc: " << e.what() << "\n";
        return is_numerical(e.kind()) ? kExitNumerical : kExitUsage;
    } catch (const json::exception& e) {
        err << "worldfunc: invalid-input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "worldfunc: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace worldfunc::cli
