#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kin/io.hpp"
#include "kin/loops.hpp"

using namespace kin;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;  // stdout and stderr
};

Run run(const std::string& args) {
    std::string cmd = std::string(KIN_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(KIN_DATA) + "/" + name; }

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / "kin_cli_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

double value_after(const std::string& out, const std::string& key) {
    auto pos = out.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(out.substr(pos + key.size() + 2));
}

}  // namespace

TEST_CASE("nac colorings of the NAC-free graph") {
    Run r = run("rigidity nac --graph " + data("fig9.json"));
    CHECK(r.code == 0);
    CHECK(r.out == "colorings: 0\n");

    Run c4 = run("rigidity nac --graph " + data("c4.json"));
    CHECK(c4.code == 0);
    CHECK(value_after(c4.out, "colorings") == 6);
    Run half = run("rigidity nac --collapse --graph " + data("c4.json"));
    CHECK(value_after(half.out, "colorings") == 3);
}

TEST_CASE("ellipse drawer trace") {
    fs::path csv = scratch() / "trace.csv", svg = scratch() / "trace.svg";
    Run r = run("synth draw --curve " + data("ellipse.json") + " --samples 100 --out " + csv.string() + " --svg " +
                svg.string());
    REQUIRE(r.code == 0);
    auto rows = csv_rows(slurp(csv));
    REQUIRE(rows.size() == 100);
    // x = -4 / (1 + t^2), y = 2 t / (1 + t^2): centre (-2, 0), semi-axes 2 and 1
    double worst = 0;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 4);
        double x = row[1], y = row[2];
        worst = std::max(worst, std::abs((x + 2) * (x + 2) / 4 + y * y - 1));
        CHECK(std::abs(row[3]) < 1e-9);
    }
    CHECK(worst < 1e-7);
    CHECK(value_after(r.out, "path_independence") < 1e-9);
    std::string s = slurp(svg);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(!fs::exists(fs::path(csv.string() + ".tmp")));
}

TEST_CASE("bennett linkage from a conic motion") {
    fs::path out = scratch() / "bennett.json";
    Run b = run("synth bennett --poly " + data("conic.json") + " --out " + out.string());
    REQUIRE(b.code == 0);
    CHECK(value_after(b.out, "bennett_residual") < 1e-9);
    Run c = run("loop classify4r --loop " + out.string());
    CHECK(c.code == 0);
    CHECK(c.out == "skew_isogram\n");
    Run fixture = run("loop classify4r --loop " + data("bennett.json"));
    CHECK(fixture.out == "skew_isogram\n");
}

TEST_CASE("factorizations of a conic motion") {
    Run r = run("factor --poly " + data("conic.json"));
    REQUIRE(r.code == 0);
    CHECK(value_after(r.out, "factorizations") == 2);
    auto j = io::json::parse(r.out.substr(r.out.find('{')));
    MotionPoly p = io::motion_poly_from_json(io::read_json(data("conic.json")));
    for (const auto& f : j.at("factorizations")) {
        std::vector<DualQuaternion> h;
        for (const auto& c : f) {
            auto v = c.get<std::vector<double>>();
            h.push_back({Quaternion{v[0], v[1], v[2], v[3]}, Quaternion{v[4], v[5], v[6], v[7]}});
        }
        CHECK(coeff_distance(product_of_linear(h), p) < 1e-9);
    }
}

TEST_CASE("json round trips") {
    fs::path loop = scratch() / "ortho.json";
    Run r = run("loop bricard --kind orthogonal --params 1,1,1,1,1,1 --out " + loop.string());
    REQUIRE(r.code == 0);
    io::json j = io::read_json(loop.string());
    DHLoop l = io::loop_from_json(j);
    CHECK(io::loop_to_json(l) == j);
    CHECK(io::loop_to_json(bricard_orthogonal({1, 1, 1, 1, 1, 1})) == j);

    io::GraphFile g = io::graph_from_json(io::read_json(data("c4.json")));
    io::json gj = io::graph_to_json(g.graph, &g.lengths);
    io::GraphFile g2 = io::graph_from_json(gj);
    CHECK(g2.graph.edges == g.graph.edges);
    CHECK(g2.lengths == g.lengths);

    fs::path dix = scratch() / "dixon2.json";
    REQUIRE(run("rigidity dixon --dixon2 1,2,3,4 --out " + dix.string()).code == 0);
    io::json d = io::read_json(dix.string());
    io::GraphFile f = io::graph_from_json(d);
    Placement p = io::placement_from_json(f.graph, d.at("placement"));
    CHECK(io::placement_to_json(f.graph, p) == d.at("placement"));
    CHECK(edge_residual(f.graph, f.lengths, p) < 1e-12);

    auto legs = io::pod_from_json(io::read_json(data("pentapod.json")));
    CHECK(io::pod_to_json(legs) == io::read_json(data("pentapod.json")));
}

TEST_CASE("seeded output is reproducible") {
    fs::path a = scratch() / "m1.csv", b = scratch() / "m2.csv", c = scratch() / "m3.csv";
    std::string base = "rigidity motion --graph " + data("c4.json") + " --samples 20";
    REQUIRE(run(base + " --seed 5 --out " + a.string()).code == 0);
    REQUIRE(run(base + " --seed 5 --out " + b.string()).code == 0);
    REQUIRE(run(base + " --seed 6 --out " + c.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));

    Run m = run(base + " --seed 5");
    CHECK(value_after(m.out, "length_residual") < 1e-12);
}

TEST_CASE("exit codes") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("loop").code == 2);
    CHECK(run("rigidity nac").code == 2);
    CHECK(run("rigidity nac --graph /nonexistent.json").code == 2);

    Run domain = run("rigidity dixon --graph " + data("c4.json") + " --tau 0.1");
    CHECK(domain.code == 1);
    auto err = io::json::parse(domain.out);
    CHECK(err.at("error") == "NotDixonCompatible");

    Run motion = run("rigidity motion --graph " + data("fig9.json"));
    CHECK(motion.code == 1);
    CHECK(io::json::parse(motion.out).at("error") == "NoNACColoring");
}

TEST_CASE("loop commands") {
    Run closed = run("loop closure --loop " + data("bennett.json") + " --angles 0,0,0,0");
    CHECK(closed.code == 0);
    CHECK(value_after(closed.out, "residual") > 1e-3);

    fs::path loop = scratch() / "ortho6.json";
    REQUIRE(run("loop bricard --kind orthogonal --params 1,1,1,1,1,1 --out " + loop.string()).code == 0);
    fs::path csv = scratch() / "ortho_trace.csv";
    Run t = run("loop trace --loop " + loop.string() + " --samples 6 --span 0.5 --out " + csv.string());
    REQUIRE(t.code == 0);
    auto rows = csv_rows(slurp(csv));
    REQUIRE(rows.size() == 6);
    DHLoop l = io::loop_from_json(io::read_json(loop.string()));
    for (const auto& row : rows) {
        std::vector<double> phi(row.begin(), row.begin() + 6);
        CHECK(closure_residual(l, phi) < 1e-9);
    }

    Run bonds = run("loop bonds --loop " + loop.string());
    CHECK(bonds.code == 0);
    CHECK(bonds.out.find("signs 1 1: shared") != std::string::npos);
}

TEST_CASE("pod commands") {
    Run pair = run("pod pair --pod " + data("pentapod.json") + " --pose " + data("pose2.json"));
    REQUIRE(pair.code == 0);
    std::istringstream in(pair.out);
    std::string w1, w2;
    double p, d;
    int rows = 0;
    while (in >> w1 >> p >> w2 >> d) {
        CHECK(p == doctest::Approx(d).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 5);

    Run dup = run("pod duporcq --pod " + data("pentapod.json"));
    REQUIRE(dup.code == 0);
    CHECK(value_after(dup.out, "span_residual") < 1e-8);
    CHECK(value_after(dup.out, "planar_residual") < 1e-8);

    Run cls = run("pod classify --point " + data("borel_bond.json"));
    CHECK(cls.out == "Zi_inversion\n");

    Run bor = run("pod borel --alpha 1 --beta -1 --legs 6 --samples 40");
    REQUIRE(bor.code == 0);
    CHECK(value_after(bor.out, "length_residual") < 1e-10);

    Run hil = run("pod hilbert --numerator 1,10,18,10,1 --pole 2 --terms 4");
    CHECK(hil.out.find("coefficients: 1 12 41 80") != std::string::npos);
    CHECK(value_after(hil.out, "degree") == 40);
    CHECK(value_after(hil.out, "genus") == 41);

    Run ico = run("pod icosapod --pod " + data("twins.json"));
    REQUIRE(ico.code == 0);
    double extra = value_after(ico.out, "additional_pairs");
    CHECK(extra >= 1);
    CHECK(extra <= 7);
}

TEST_CASE("every emitted json is readable again") {
    fs::path d = scratch();
    auto out = [&](const std::string& name) { return (d / name).string(); };
    auto ok = [](const std::string& args) {
        Run r = run(args);
        INFO(args << "\n" << r.out);
        CHECK(r.code == 0);
        return r;
    };
    ok("factor --poly " + data("conic.json") + " --out " + out("f.json"));
    ok("factor --poly " + out("f.json"));
    ok("synth bennett --poly " + out("f.json") + " --out " + out("b.json"));
    ok("loop classify4r --loop " + out("b.json"));

    ok("rigidity nac --graph " + data("c4.json") + " --out " + out("n.json"));
    ok("rigidity laman --graph " + out("n.json"));
    ok("rigidity dixon --dixon2 1.573,1.490,0.636,0.949 --out " + out("d2.json"));
    Run flex = ok("rigidity matrix --graph " + out("d2.json") + " --placement " + out("d2.json"));
    CHECK(value_after(flex.out, "flex_count") >= 1);
    ok("rigidity dixon --graph " + data("square.json") + " --tau 0.2 --out " + out("p.json"));
    ok("rigidity matrix --graph " + data("square.json") + " --placement " + out("p.json"));

    ok("loop bricard --kind orthogonal --params 2,1,2,1,2,3.1622776601683795 --out " + out("o.json"));
    ok("loop bonds --loop " + out("o.json") + " --out " + out("ob.json"));
    ok("loop bricard --kind line --params 1,0.5,0.8,1.1,0.7,1.9,0.2,-0.3,0.4 --out " + out("l.json"));
    ok("loop bricard --kind plane --params 0.4,1,0.6,1.2,0.9,2.1,0.3,-0.5 --out " + out("pl.json"));
    ok("loop bonds --loop " + out("ob.json"));
    ok("loop closure --loop " + out("l.json") + " --angles 0,0,0,0,0,0");
    ok("loop closure --loop " + out("pl.json") + " --angles 0,0,0,0,0,0");

    ok("pod pair --pod " + data("pentapod.json") + " --pose " + data("pose2.json") + " --out " + out("pp.json"));
    ok("pod duporcq --pod " + out("pp.json") + " --out " + out("six.json"));
    auto six = io::pod_from_json(io::read_json(out("six.json")));
    CHECK(six.size() == 6);
    ok("pod pair --pod " + out("six.json") + " --pose " + out("pp.json"));
    ok("pod borel --legs 4 --out " + out("bo.json"));
    ok("pod pair --pod " + out("bo.json") + " --pose " + data("pose2.json"));
    ok("pod classify --point " + data("borel_bond.json") + " --out " + out("c.json"));
    CHECK(run("pod classify --point " + out("c.json")).out == "Zi_inversion\n");
    ok("pod icosapod --pod " + data("twins.json") + " --out " + out("i.json"));
    ok("pod icosapod --pod " + out("i.json"));
}
