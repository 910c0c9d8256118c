#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/commands.hpp"

using namespace worldfunc;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

fs::path workdir()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "worldfunc_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the installed executable; stderr goes to err.txt in the work dir.
Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd =
        "cd '" + workdir().string() + "' && " + env + " '" + WORLDFUNC_EXE + "' " + args + " 2> err.txt";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("sigma table")
{
    write(workdir() / "pts.json", R"({"points": [[0,0,0,0],[1,0,0,0],[0,1,0,0]]})");
    const auto r = run("sigma --geometry minkowski --points pts.json");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("i,j,sigma\n", 0) == 0);
    CHECK(r.out.find("0,1,0.5\n") != std::string::npos);
    CHECK(r.out.find("0,2,-0.5\n") != std::string::npos);

    const auto d = run("sigma --geometry discrete:lambda0_sq=0.01 --points pts.json");
    CHECK(d.code == 0);
    CHECK(d.out.find("0,1,0.51\n") != std::string::npos);

    CHECK(run("sigma --geometry minkowski --points missing.json").code == 1);
    CHECK(slurp(workdir() / "err.txt").find("missing.json") != std::string::npos);
    CHECK(run("sigma --geometry nonsense --points pts.json").code == 1);
    CHECK(run("sigma --points pts.json").code == 1);
    CHECK(run("frobnicate").code == 1);
}

TEST_CASE("eqv commands")
{
    const auto c = run("eqv check --geometry minkowski --p0 0,0,0,0 --p1 0,1,0,0 --q0 1,1,1,1 --q1 1,2,1,1");
    CHECK(c.code == 0);
    const json cj = json::parse(c.out);
    CHECK(cj.at("equivalent") == true);
    CHECK(cj.at("schema_version") == 1);

    const auto s = run("eqv solve --geometry minkowski --p0 0,0,0,0 --p1 0,1,0,0 --q0 0,0,0,0 --starts 64");
    CHECK(s.code == 0);
    const json sj = json::parse(s.out);
    CHECK(sj.at("variance") == "multi");
    CHECK(sj.at("manifold_dim_estimate").get<int>() >= 1);

    const auto w = run("eqv witness --geometry minkowski --seed 7");
    CHECK(w.code == 0);
    CHECK(json::parse(w.out).at("found") == true);

    CHECK(run("eqv solve --geometry minkowski --p0 0,0,0,0 --p1 0,0,0,0 --q0 0,0,0,0").code == 1);
    CHECK(run("eqv check --geometry minkowski --p0 0,0 --p1 0,1,0,0 --q0 0,0,0,0 --q1 0,1,0,0").code == 1);
    CHECK(run("eqv check --geometry minkowski --p0 0,x,0,0 --p1 0,1,0,0 --q0 0,0,0,0 --q1 0,1,0,0").code == 1);
}

TEST_CASE("numerical failures exit with 2")
{
    // an envelope dividing by sigma(P0, P0) = 0
    write(workdir() / "sk.json", "[[0,0,0],[1,0,0]]");
    write(workdir() / "div.json", R"({"op": "/", "args": [{"op": "const", "value": 1},
                                      {"op": "sigma", "points": ["P0", "P0"]}]})");
    write(workdir() / "probe.json", "[[1,2,3]]");
    const auto r = run("object --geometry euclidean:dim=3 --skeleton sk.json --envelope div.json --probes probe.json");
    CHECK(r.code == 2);
    CHECK(slurp(workdir() / "err.txt").find("evaluation-error") != std::string::npos);
}

TEST_CASE("tube and object outputs")
{
    const auto t = run("tube --geometry discrete:lambda0_sq=0.02 --p0 0,0,0,0 --p1 2,0,0,0 --stations 4 "
                       "--directions 4 --out tube.csv --profile profile.csv");
    CHECK(t.code == 0);
    CHECK(slurp(workdir() / "tube.csv").rfind("t,r,x0,x1,x2,x3\n", 0) == 0);
    const std::string prof = slurp(workdir() / "profile.csv");
    CHECK(prof.rfind("t,radius,empty\n", 0) == 0);
    CHECK(prof.find("\n1,0.1732050807") != std::string::npos);
    CHECK(fs::exists(workdir() / "tube.csv.manifest.json"));

    write(workdir() / "cyl.json", "[[0,0,0],[0,0,1],[1,0,0]]");
    write(workdir() / "probes.json", "[[0,1,0.5],[2,0,0]]");
    const auto o = run("object --geometry euclidean:dim=3 --skeleton cyl.json --builtin cylinder --probes probes.json");
    CHECK(o.code == 0);
    std::istringstream lines(o.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "x0,x1,x2,envelope_value,member");
    CHECK(first.substr(first.size() - 2) == ",1");
    CHECK(second == "2,0,0,-3,0");

    const auto sampled = run("object --geometry euclidean:dim=3 --skeleton cyl.json --builtin cylinder --sample 20");
    CHECK(sampled.code == 0);
    CHECK(std::count(sampled.out.begin(), sampled.out.end(), '\n') == 21);
}

TEST_CASE("chain and density")
{
    const auto c = run("chain --geometry discrete:lambda0_sq=0.005 --steps 10 --ensemble 20 --seed 3 --raw raw.csv");
    CHECK(c.code == 0);
    CHECK(c.out.rfind("step,mean_t,var_transverse,mean_angle\n", 0) == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 12);
    CHECK(slurp(workdir() / "raw.csv").rfind("chain_id,step,x0,x1,x2,x3\n", 0) == 0);

    const auto d = run("density --geometry grainy:lambda0_sq=0.01,sigma0=0.03 --from 0.02 --to 1 --points 2");
    CHECK(d.code == 0);
    CHECK(d.out == "sigma_g,rho,discrete_limit\n0.02,0.75,0\n1,1,0\n");
    const auto lim = run("density --geometry discrete:lambda0_sq=0.01 --from 0.005 --to 0.005 --points 1");
    CHECK(lim.out == "sigma_g,rho,discrete_limit\n0.005,0,1\n");
    CHECK(run("density --geometry minkowski").code == 1);
}

TEST_CASE("manifest and replay")
{
    const auto c = run("chain --geometry discrete:lambda0_sq=0.005 --steps 30 --ensemble 50 --seed 11 --out stats.csv");
    REQUIRE(c.code == 0);
    const json m = json::parse(slurp(workdir() / "stats.csv.manifest.json"));
    CHECK(m.at("schema_version") == 1);
    CHECK(m.at("seed") == 11);
    CHECK(m.at("config").at("command") == "chain");
    CHECK(m.at("outputs").at("primary") == cli::sha256_hex(slurp(workdir() / "stats.csv")));

    const auto again = run("replay stats.csv.manifest.json", "WORLDFUNC_THREADS=1");
    CHECK(again.code == 0);
    CHECK(json::parse(again.out).at("reproduced") == true);

    json tampered = m;
    tampered["outputs"]["primary"] = std::string(64, '0');
    write(workdir() / "tampered.json", tampered.dump());
    CHECK(run("replay tampered.json").code == 2);

    // stdout runs put the manifest on stderr
    const auto s = run("density --geometry discrete:lambda0_sq=0.01 --points 3");
    CHECK(s.code == 0);
    CHECK(json::parse(slurp(workdir() / "err.txt")).at("tool") == "worldfunc");
}

TEST_CASE("thread cap does not change outputs")
{
    const std::string args = "eqv solve --geometry minkowski --p0 0,0,0,0 --p1 0.2,1,0.3,0 --q0 1,0,0,0 --starts 32";
    const auto one = run(args, "WORLDFUNC_THREADS=1");
    const auto many = run(args, "WORLDFUNC_THREADS=8");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
    CHECK(run(args, "WORLDFUNC_THREADS=zero").code == 1);
}

TEST_CASE("run_command is deterministic in process")
{
    const json cfg{{"command", "eqv.witness"},
                   {"geometry", to_json(GeometrySpec::discrete(0.01))},
                   {"seed", 5},
                   {"budget", 10000},
                   {"tol", 1e-9}};
    const auto a = cli::run_command(cfg);
    const auto b = cli::run_command(cfg);
    REQUIRE(a.size() == 1);
    CHECK(a[0].content == b[0].content);
}
