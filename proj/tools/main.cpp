#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "kin/error.hpp"
#include "kin/io.hpp"
#include "kin/loops.hpp"
#include "kin/pods.hpp"
#include "kin/rigidity.hpp"
#include "kin/synth.hpp"

using namespace kin;
using io::json;
using io::num;

namespace {

struct Globals {
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::string out;
    std::string svg;
};

Globals G;

// the artifact goes to --out when given, else to stdout
void emit(const std::string& text) {
    if (G.out.empty())
        std::cout << text;
    else
        io::write_file(G.out, text);
}

void emit_json(const json& j) { emit(j.dump(2) + "\n"); }

void line(const std::string& key, double v) { std::cout << key << ": " << num(v) << "\n"; }
void line(const std::string& key, const std::string& v) { std::cout << key << ": " << v << "\n"; }

std::string joined(const std::vector<double>& v, char sep = ',') {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + num(v[i]);
    return s;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return v;
}

std::string svg_polyline(const std::vector<Eigen::Vector3d>& pts) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& p : pts) {
        x0 = std::min(x0, p(0)), x1 = std::max(x1, p(0));
        y0 = std::min(y0, p(1)), y1 = std::max(y1, p(1));
    }
    double w = std::max(x1 - x0, 1e-9), h = std::max(y1 - y0, 1e-9), m = 0.05 * std::max(w, h);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0 - m) << " " << num(-y1 - m) << " "
       << num(w + 2 * m) << " " << num(h + 2 * m) << "\">\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
       << num(0.005 * std::max(w, h)) << "\" points=\"";
    for (const auto& p : pts) os << num(p(0)) << "," << num(-p(1)) << " ";
    os << "\"/>\n</svg>\n";
    return os.str();
}

// ---- factor

void cmd_factor(const std::string& path) {
    MotionPoly p = io::motion_poly_from_json(io::read_json(path));
    auto all = all_factorizations(p, G.tol);
    line("factorizations", double(all.size()));
    json out = json::array();
    for (const auto& f : all) {
        json row = json::array();
        std::string s;
        for (const auto& h : f) row.push_back(io::dq_to_json(h));
        double res = coeff_distance(product_of_linear(f), p) / std::max(1.0, p.max_abs());
        line("residual", res);
        out.push_back(row);
    }
    json doc = io::motion_poly_to_json(p);
    doc["factorizations"] = out;
    emit_json(doc);
}

// ---- synth

void cmd_draw(const std::string& path, int samples, double c, double d) {
    RationalPlaneCurve curve = io::curve_from_json(io::read_json(path));
    CurveMotion cm = curve_to_motion_poly(curve, qk, G.tol);
    if (cm.poly.degree() != 3) fail("Unsupported", "the drawer needs a cubic motion polynomial");
    Drawer dr = build_drawer(cm.poly, DualQuaternion{qk * 2, qj * d}, qj * -c, G.tol);
    std::vector<double> ts = default_grid(samples);
    auto pts = trace(dr.graph, dr.fixed, dr.marked, ts, G.tol);
    double curve_res = 0;
    for (size_t k = 0; k < ts.size(); ++k) curve_res = std::max(curve_res, (pts[k] - curve.at(ts[k])).norm());
    line("path_independence", dr.graph.path_independence_residual());
    line("curve_residual", curve_res);
    std::string csv = "t,x,y,z\n";
    for (size_t k = 0; k < ts.size(); ++k)
        csv += num(ts[k]) + "," + num(pts[k](0)) + "," + num(pts[k](1)) + "," + num(pts[k](2)) + "\n";
    emit(csv);
    if (!G.svg.empty()) io::write_file(G.svg, svg_polyline(pts));
}

void cmd_bennett(const std::string& path) {
    MotionPoly p = io::motion_poly_from_json(io::read_json(path));
    SkewIsogram b = bennett_from_conic(p, G.tol);
    line("bennett_residual", bennett_residual(b.dh));
    line("class", to_string(classify_4r(b.dh, 1e-7)));
    emit_json(io::loop_to_json(b.dh));
}

// ---- rigidity

io::GraphFile graph_arg(const std::string& path) { return io::graph_from_json(io::read_json(path)); }

std::string edge_list(const Graph& g, const Coloring& c, bool red) {
    std::string s;
    for (int e = 0; e < g.m(); ++e)
        if (bool(c.red[e]) == red) s += (s.empty() ? "" : " ") + std::to_string(g.edges[e].first) + "-" +
                                        std::to_string(g.edges[e].second);
    return s;
}

void cmd_cgk(const std::string& path, int dim) {
    line("cgk", double(cgk_estimate(graph_arg(path).graph, dim)));
}

void cmd_laman(const std::string& path) {
    LamanResult r = laman_check(graph_arg(path).graph);
    line("laman", r.laman ? "true" : "false");
    if (!r.laman) {
        std::string w;
        for (int v : r.witness) w += (w.empty() ? "" : " ") + std::to_string(v);
        line("witness", w);
        line("witness_edges", double(r.witness_edges));
        line("reason", r.reason);
    }
}

void cmd_nac(const std::string& path, bool collapse, int max_edges) {
    io::GraphFile gf = graph_arg(path);
    const Graph& g = gf.graph;
    auto cs = nac_enumerate(g, {max_edges, collapse});
    line("colorings", double(cs.size()));
    json out = json::array();
    for (const auto& c : cs) {
        std::cout << "red: " << edge_list(g, c, true) << " | blue: " << edge_list(g, c, false) << "\n";
        json red = json::array(), blue = json::array();
        for (int e = 0; e < g.m(); ++e) (c.red[e] ? red : blue).push_back({g.edges[e].first, g.edges[e].second});
        out.push_back({{"red", red}, {"blue", blue}});
    }
    if (!G.out.empty()) {
        json doc = io::graph_to_json(g, gf.lengths.empty() ? nullptr : &gf.lengths);
        doc["colorings"] = out;
        emit_json(doc);
    }
}

void cmd_motion(const std::string& path, int samples, int index) {
    Graph g = graph_arg(path).graph;
    auto cs = nac_enumerate(g, {30, true});
    if (cs.empty()) fail("NoNACColoring", "the graph has no NAC coloring");
    if (index < 0 || index >= int(cs.size())) fail("BadInput", "coloring index out of range");
    Labeling l0 = induced_lengths(g, nac_motion(g, cs[index], 0.0, G.seed));
    std::string csv = "t";
    for (int v : g.vertices) csv += "," + std::to_string(v) + "_x," + std::to_string(v) + "_y";
    csv += "\n";
    double res = 0;
    for (double t : linspace(0, 2 * M_PI, samples)) {
        Placement p = nac_motion(g, cs[index], t, G.seed);
        res = std::max(res, edge_residual(g, l0, p));
        csv += num(t);
        for (int v = 0; v < g.n(); ++v) csv += "," + num(p(v, 0)) + "," + num(p(v, 1));
        csv += "\n";
    }
    line("coloring", "red " + edge_list(g, cs[index], true));
    line("length_residual", res);
    emit(csv);
}

void cmd_matrix(const std::string& path, const std::string& placement, int dim) {
    Graph g = graph_arg(path).graph;
    Placement p;
    if (!placement.empty()) {
        json pj = io::read_json(placement);
        p = io::placement_from_json(g, pj.contains("placement") ? pj.at("placement") : pj);
    } else {
        std::mt19937_64 rng(G.seed);
        std::uniform_real_distribution<double> u(-1, 1);
        p.resize(g.n(), dim);
        for (int i = 0; i < p.size(); ++i) p(i) = u(rng);
    }
    RigidityMatrix r = rigidity_matrix(g, p);
    line("rank", double(r.rank));
    line("trivial", double(r.trivial));
    line("flex_count", double(r.flex_count));
}

void cmd_dixon(const std::string& path, std::optional<double> tau, const std::vector<double>& second) {
    if (!second.empty()) {
        if (second.size() != 4) fail("BadInput", "--dixon2 takes p,q,r,s");
        Framework f = dixon2_config(second[0], second[1], second[2], second[3]);
        line("flex_count", double(rigidity_matrix(f.graph, f.placement).flex_count));
        json doc = io::graph_to_json(f.graph, &f.lengths);
        doc["placement"] = io::placement_to_json(f.graph, f.placement);
        emit_json(doc);
        return;
    }
    io::GraphFile gf = graph_arg(path);
    if (gf.lengths.empty()) fail("BadInput", "the graph needs lengths");
    DixonData d = dixon1_prepare(gf.graph, gf.lengths, G.tol);
    line("tau_min", d.tau_min);
    line("tau_max", d.tau_max);
    if (tau) {
        Placement p = dixon1_motion(gf.graph, gf.lengths, *tau, {}, G.tol);
        line("residual", edge_residual(gf.graph, gf.lengths, p));
        emit_json(io::placement_to_json(gf.graph, p));
    }
}

// ---- loops

DHLoop loop_arg(const std::string& path) { return io::loop_from_json(io::read_json(path)); }

void cmd_closure(const std::string& path, const std::vector<double>& angles) {
    DHLoop l = loop_arg(path);
    if (int(angles.size()) != l.n()) fail("BadInput", "one angle per joint");
    line("residual", closure_residual(l, angles));
}

void cmd_trace(const std::string& path, int drive, int samples, double span, const std::vector<double>& start) {
    DHLoop l = loop_arg(path);
    std::vector<double> s = start;
    if (s.empty()) {
        auto found = find_configuration(l, unsigned(G.seed));
        if (!found) fail("NoConfiguration", "no closed configuration found");
        s = *found;
    }
    if (int(s.size()) != l.n() || drive < 0 || drive >= l.n()) fail("BadInput", "bad start or drive joint");
    auto sweep = linspace(s[drive], s[drive] + span, samples);
    MobilityTrace tr = trace_mobility(l, s, drive, sweep);
    std::string csv = "driven";
    for (int r = 0; r < l.n(); ++r)
        if (r != drive) csv += ",phi" + std::to_string(r + 1);
    csv += ",residual\n";
    double worst = 0;
    for (size_t k = 0; k < tr.configs.size(); ++k) {
        csv += num(tr.configs[k][drive]);
        for (int r = 0; r < l.n(); ++r)
            if (r != drive) csv += "," + num(tr.configs[k][r]);
        csv += "," + num(tr.residuals[k]) + "\n";
        worst = std::max(worst, tr.residuals[k]);
    }
    line("steps", double(tr.configs.size()));
    line("max_residual", worst);
    emit(csv);
}

void cmd_classify4r(const std::string& path) { std::cout << to_string(classify_4r(loop_arg(path), G.tol)) << "\n"; }

void cmd_bonds(const std::string& path, int first) {
    DHLoop l = loop_arg(path);
    if (l.n() != 6) fail("BadInput", "bond quadratics need a 6R loop");
    json out = json::array();
    for (int s1 : {1, -1})
        for (int s4 : {1, -1}) {
            BondQuadratics q = bond_quadratics(l, s1, s4, first);
            CommonRoot c = common_root(q.q1, q.q4, std::max(G.tol, 1e-8));
            std::cout << "signs " << s1 << " " << s4 << ": shared " << (c.shared ? "true" : "false")
                      << ", resultant " << num(c.resultant) << "\n";
            out.push_back({{"signs", {s1, s4}}, {"shared", c.shared}, {"resultant", c.resultant}});
        }
    if (!G.out.empty()) {
        json doc = io::loop_to_json(l);
        doc["bonds"] = out;
        emit_json(doc);
    }
}

void cmd_bricard(const std::string& kind, const std::vector<double>& p) {
    DHLoop l;
    if (kind == "orthogonal") {
        if (p.size() != 6) fail("BadInput", "orthogonal takes six distances");
        std::array<double, 6> b;
        std::copy(p.begin(), p.end(), b.begin());
        line("relation", bricard_orthogonal_relation(b));
        l = bricard_orthogonal(b);
    } else if (kind == "line") {
        if (p.size() != 9) fail("BadInput", "line takes d1..d3, alpha1..alpha3, s1..s3");
        l = bricard_line_symmetric({p[0], p[1], p[2]}, {p[3], p[4], p[5]}, {p[6], p[7], p[8]});
    } else if (kind == "plane") {
        if (p.size() != 8) fail("BadInput", "plane takes d1..d3, alpha1..alpha3, s1, s2");
        l = bricard_plane_symmetric(PlaneSymmetricData{{p[0], p[1], p[2]}, {p[3], p[4], p[5]}, p[6], p[7]});
        line("plane_violation", plane_symmetric_violation(l));
    } else {
        fail("BadInput", "kind is orthogonal, line or plane");
    }
    emit_json(io::loop_to_json(l));
}

// ---- pods

void cmd_pair(const std::string& pod, const std::string& pose) {
    auto legs = io::pod_from_json(io::read_json(pod));
    json pj = io::read_json(pose);
    Isometry g = io::isometry_from_json(pj.contains("pose") ? pj.at("pose") : pj);
    GroupSpacePoint gp = group_point(g);
    json out = json::array();
    for (const Leg& l : legs) {
        cplx p = pairing(gp, leg_point(l));
        double direct = (g.apply(l.a) - l.b).squaredNorm() - l.d * l.d;
        std::cout << "pairing " << num(p.real()) << " direct " << num(direct) << "\n";
        out.push_back(p.real());
    }
    if (!G.out.empty()) {
        json doc = io::pod_to_json(legs);
        doc["pose"] = io::isometry_to_json(g);
        doc["pairing"] = out;
        emit_json(doc);
    }
}

void cmd_duporcq(const std::string& pod, bool require_real) {
    auto legs = io::pod_from_json(io::read_json(pod));
    DuporcqOptions opt;
    opt.seed = G.seed;
    opt.tol = G.tol;
    opt.require_real = require_real;
    DuporcqResult r = duporcq_sixth(legs, opt);
    line("real", r.real ? "true" : "false");
    line("finite", r.finite ? "true" : "false");
    line("span_residual", r.span_residual);
    line("planar_residual", r.planar_residual);
    json a = json::array(), b = json::array();
    for (int k = 0; k < 3; ++k) a.push_back(io::complex_to_json(r.a(k))), b.push_back(io::complex_to_json(r.b(k)));
    // the five legs, plus the sixth when it is a real leg
    if (r.real && r.finite && r.d_squared.real() > 0) legs.push_back(r.leg);
    json doc = io::pod_to_json(legs);
    doc["sixth"] = {{"a", a}, {"b", b}, {"d_squared", io::complex_to_json(r.d_squared)}, {"real", r.real}};
    emit_json(doc);
}

void cmd_borel(double alpha, double beta, int count, int samples) {
    std::mt19937_64 rng(G.seed);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<Leg> legs;
    while (int(legs.size()) < count) {
        Eigen::Vector3d a(u(rng), u(rng), u(rng));
        try {
            legs.push_back(borel_leg(a, alpha, beta));
        } catch (const Error& e) {
            if (e.kind != "ImaginaryLength" && e.kind != "OnAxis") throw;
        }
    }
    double worst = 0;
    int poses = 0;
    for (double th : linspace(-M_PI, M_PI, samples)) {
        if (2 * alpha * std::cos(th) - beta < 0) continue;
        for (bool up : {true, false}) {
            Isometry g = borel_motion(alpha, beta, th, up);
            ++poses;
            for (const Leg& l : legs) worst = std::max(worst, std::abs((g.apply(l.a) - l.b).norm() - l.d));
        }
    }
    line("poses", double(poses));
    line("length_residual", worst);
    emit_json(io::pod_to_json(legs));
}

void cmd_classify(const std::string& path) {
    json j = io::read_json(path);
    if (j.is_object() && !j.contains("coords")) fail("BadInput", "missing field coords");
    GroupSpacePoint g{io::vec17_from_json(j.is_object() ? j.at("coords") : j)};
    BondOptions opt;
    opt.tol = G.tol;
    Stratum s = classify_bond(g, opt);
    std::cout << to_string(s) << "\n";
    if (!G.out.empty()) emit_json({{"stratum", to_string(s)}, {"coords", io::vec17_to_json(g.c)}});
}

void cmd_icosapod(const std::string& pod) {
    auto legs = io::pod_from_json(io::read_json(pod));
    if (legs.size() != 3) fail("BadInput", "three legs, each standing for a twin pair");
    std::vector<TwinPair> pairs;
    for (const Leg& l : legs) pairs.push_back(TwinPair::from(l));
    IcosapodOptions opt;
    opt.seed = G.seed;
    IcosapodResult r = icosapod_complete(pairs, opt);
    line("additional_pairs", double(r.pairs.size()));
    line("real_pairs", double(r.real_count));
    if (!r.warning.empty()) line("warning", r.warning);
    json out = json::array();
    for (size_t k = 0; k < r.pairs.size(); ++k) {
        const TwinPair& t = r.pairs[k];
        json a = json::array(), b = json::array();
        for (int i = 0; i < 3; ++i) a.push_back(io::complex_to_json(t.a(i))), b.push_back(io::complex_to_json(t.b(i)));
        out.push_back({{"a", a}, {"b", b}, {"l", io::complex_to_json(t.l)}, {"span_residual", r.span_residuals[k]}});
        line("span_residual", r.span_residuals[k]);
    }
    json doc = io::pod_to_json(legs);
    doc["pairs"] = out;
    emit_json(doc);
}

void cmd_hilbert(const std::vector<long long>& numerator, int pole, int terms) {
    auto s = hilbert_expand(numerator, pole, terms);
    std::string t;
    for (size_t i = 0; i < s.size(); ++i) t += (i ? " " : "") + std::to_string(s[i]);
    line("coefficients", t);
    if (pole == 2) {
        CurveInvariants c = curve_invariants(numerator);
        line("degree", double(c.degree));
        line("genus", double(c.genus));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinematics: motion polynomials, rigidity, loops and multipods"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--tol", G.tol, "numerical tolerance")->capture_default_str();
    app.add_option("--seed", G.seed, "random seed")->capture_default_str();
    app.add_option("--out", G.out, "output file");
    app.add_option("--svg", G.svg, "SVG polyline output");

    std::function<void()> run;
    std::string file, file2, kind;
    int samples = 100, index = 0, dim = 2, drive = 0, first = 1, count = 20, pole = 2, terms = 5, max_edges = 30;
    double c = 0, d = 1, span = 2 * M_PI, alpha = 1, beta = -1;
    std::optional<double> tau;
    std::vector<double> values, second;
    std::vector<long long> numerator{1, 10, 18, 10, 1};
    bool flag = false;

    auto* f = app.add_subcommand("factor", "all factorizations of a motion polynomial");
    f->add_option("--poly", file, "motion polynomial JSON")->required();
    f->callback([&] { run = [&] { cmd_factor(file); }; });

    auto* synth = app.add_subcommand("synth", "linkage synthesis")->require_subcommand(1);
    auto* draw = synth->add_subcommand("draw", "trace a curve drawer");
    draw->add_option("--curve", file, "rational curve JSON")->required();
    draw->add_option("--samples", samples)->capture_default_str();
    draw->add_option("--c", c, "free dual part")->capture_default_str();
    draw->add_option("--d", d, "spare offset")->capture_default_str();
    draw->callback([&] { run = [&] { cmd_draw(file, samples, c, d); }; });
    auto* ben = synth->add_subcommand("bennett", "Bennett linkage of a conic motion");
    ben->add_option("--poly", file, "quadratic motion polynomial JSON")->required();
    ben->callback([&] { run = [&] { cmd_bennett(file); }; });

    auto* rig = app.add_subcommand("rigidity", "graph rigidity")->require_subcommand(1);
    auto* cgk = rig->add_subcommand("cgk", "mobility estimate");
    cgk->add_option("--graph", file)->required();
    cgk->add_option("--dim", dim)->capture_default_str();
    cgk->callback([&] { run = [&] { cmd_cgk(file, dim); }; });
    auto* lam = rig->add_subcommand("laman", "pebble game");
    lam->add_option("--graph", file)->required();
    lam->callback([&] { run = [&] { cmd_laman(file); }; });
    auto* nac = rig->add_subcommand("nac", "NAC colorings");
    nac->add_option("--graph", file)->required();
    nac->add_flag("--collapse", flag, "identify a coloring with its swap");
    nac->add_option("--max-edges", max_edges)->capture_default_str();
    nac->callback([&] { run = [&] { cmd_nac(file, flag, max_edges); }; });
    auto* mot = rig->add_subcommand("motion", "flexible motion from a NAC coloring");
    mot->add_option("--graph", file)->required();
    mot->add_option("--samples", samples)->capture_default_str();
    mot->add_option("--coloring", index)->capture_default_str();
    mot->callback([&] { run = [&] { cmd_motion(file, samples, index); }; });
    auto* mat = rig->add_subcommand("matrix", "rigidity matrix rank");
    mat->add_option("--graph", file)->required();
    mat->add_option("--placement", file2, "placement JSON; random when absent");
    mat->add_option("--dim", dim)->capture_default_str();
    mat->callback([&] { run = [&] { cmd_matrix(file, file2, dim); }; });
    auto* dix = rig->add_subcommand("dixon", "Dixon motions of bipartite frameworks");
    dix->add_option("--graph", file);
    dix->add_option("--tau", tau);
    dix->add_option("--dixon2", second, "p,q,r,s")->delimiter(',');
    dix->callback([&] {
        if (file.empty() && second.empty()) throw CLI::ValidationError("dixon", "--graph or --dixon2 required");
        run = [&] { cmd_dixon(file, tau, second); };
    });

    auto* loop = app.add_subcommand("loop", "closed revolute loops")->require_subcommand(1);
    auto* clo = loop->add_subcommand("closure", "closure residual");
    clo->add_option("--loop", file)->required();
    clo->add_option("--angles", values)->delimiter(',')->required();
    clo->callback([&] { run = [&] { cmd_closure(file, values); }; });
    auto* tr = loop->add_subcommand("trace", "numerical continuation");
    tr->add_option("--loop", file)->required();
    tr->add_option("--drive", drive)->capture_default_str();
    tr->add_option("--samples", samples)->capture_default_str();
    tr->add_option("--span", span, "sweep length of the driven angle")->capture_default_str();
    tr->add_option("--start", values, "start angles")->delimiter(',');
    tr->callback([&] { run = [&] { cmd_trace(file, drive, samples, span, values); }; });
    auto* c4 = loop->add_subcommand("classify4r", "classify a 4R loop");
    c4->add_option("--loop", file)->required();
    c4->callback([&] { run = [&] { cmd_classify4r(file); }; });
    auto* bonds = loop->add_subcommand("bonds", "bond quadratics of a 6R loop");
    bonds->add_option("--loop", file)->required();
    bonds->add_option("--first", first)->capture_default_str();
    bonds->callback([&] { run = [&] { cmd_bonds(file, first); }; });
    auto* bri = loop->add_subcommand("bricard", "Bricard 6R loops");
    bri->add_option("--kind", kind, "orthogonal, line or plane")->required();
    bri->add_option("--params", values)->delimiter(',')->required();
    bri->callback([&] { run = [&] { cmd_bricard(kind, values); }; });

    auto* pod = app.add_subcommand("pod", "multipods")->require_subcommand(1);
    auto* pair = pod->add_subcommand("pair", "group-leg pairing");
    pair->add_option("--pod", file)->required();
    pair->add_option("--pose", file2)->required();
    pair->callback([&] { run = [&] { cmd_pair(file, file2); }; });
    auto* dup = pod->add_subcommand("duporcq", "sixth leg of a planar pentapod");
    dup->add_option("--pod", file)->required();
    dup->add_flag("--require-real", flag);
    dup->callback([&] { run = [&] { cmd_duporcq(file, flag); }; });
    auto* bor = pod->add_subcommand("borel", "Bricard-Borel legs");
    bor->add_option("--alpha", alpha)->capture_default_str();
    bor->add_option("--beta", beta)->capture_default_str();
    bor->add_option("--legs", count)->capture_default_str();
    bor->add_option("--samples", samples)->capture_default_str();
    bor->callback([&] { run = [&] { cmd_borel(alpha, beta, count, samples); }; });
    auto* cls = pod->add_subcommand("classify", "stratum of a bond");
    cls->add_option("--point", file)->required();
    cls->callback([&] { run = [&] { cmd_classify(file); }; });
    auto* ico = pod->add_subcommand("icosapod", "complete three twin pairs");
    ico->add_option("--pod", file)->required();
    ico->callback([&] { run = [&] { cmd_icosapod(file); }; });
    auto* hil = pod->add_subcommand("hilbert", "expand a Hilbert series");
    hil->add_option("--numerator", numerator)->delimiter(',')->capture_default_str();
    hil->add_option("--pole", pole)->capture_default_str();
    hil->add_option("--terms", terms)->capture_default_str();
    hil->callback([&] { run = [&] { cmd_hilbert(numerator, pole, terms); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    std::cout.precision(17);
    try {
        run();
    } catch (const Error& e) {
        json err{{"error", e.kind}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return e.kind == "BadInput" ? 2 : 1;
    } catch (const json::exception& e) {
        json err{{"error", "BadInput"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
