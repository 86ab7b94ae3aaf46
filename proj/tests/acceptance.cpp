#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "graph_oracles.hpp"
#include "kin/io.hpp"
#include "kin/loops.hpp"
#include "kin/ncpoly.hpp"
#include "kin/pods.hpp"
#include "kin/rigidity.hpp"
#include "kin/synth.hpp"
#include "support.hpp"

using namespace kin;
using namespace testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DualQuaternion kj(double kc, double jc) { return {qk * kc, qj * jc}; }

// ---- 1

void factorization_counts(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int d = 2; d <= 4; ++d) {
        const int expect = d == 2 ? 2 : d == 3 ? 6 : 24;
        int right = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Quaternion> h;
            for (int i = 0; i < d; ++i) h.push_back(random_quat(rng, 2.0));
            QuatPoly a = product_of_linear(h);
            auto all = all_factorizations(a);
            right += int(all.size()) == expect;
            for (const auto& f : all) worst = std::max(worst, coeff_distance(product_of_linear(f), a) / a.max_abs());
        }
        o.require(right == 100, "degree " + std::to_string(d) + " count");
        o.note << " deg" << d << ":" << right << "/100";
    }
    double secs = seconds_since(t0);
    o.require(worst < 1e-9, "product residual");
    o.require(secs < 10, "runtime");
    o.note << " max_rel_residual=" << worst << " runtime=" << secs << "s";
}

// ---- 2

void ellipse_drawer_trace(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    Drawer dr = ellipse_drawer(2, 1, 1, 1);
    auto ts = default_grid(100);
    auto pts = trace(dr.graph, dr.fixed, dr.marked, ts);
    double path = dr.graph.path_independence_residual(), on = 0;
    for (const auto& p : pts) on = std::max(on, std::abs((p.x() + 2) * (p.x() + 2) / 4 + p.y() * p.y() - 1));
    Drawer flat = ellipse_drawer(2, 0, 1, 1);
    double y = 0;
    for (const auto& p : trace(flat.graph, flat.fixed, flat.marked, ts)) y = std::max(y, std::abs(p.y()));
    double secs = seconds_since(t0);
    o.require(path < 1e-8, "path independence");
    o.require(on < 1e-7, "ellipse equation");
    o.require(y < 1e-8, "b=0 on the x-axis");
    o.require(secs < 1, "runtime");
    o.note << " path=" << path << " ellipse=" << on << " b0_max|y|=" << y << " runtime=" << secs << "s";
}

// ---- 3

void drawer_constants(Outcome& o) {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(-3, 3);
    double worst = 0, h7_printed = 0, h7_ninth = 0;
    for (int i = 0; i < 10;) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (std::abs(a - b) < 0.1 || std::abs(a + b) < 0.1) continue;
        ++i;
        const auto& h = ellipse_drawer(a, b, c, d).h;
        worst = std::max({worst, (h[4] - kj(1, (a + b + 4 * d) / 6)).max_abs(),
                          (h[5] - kj(2, (-2 * a - 2 * b + d) / 3)).max_abs(),
                          (h[6] - kj(1, (-11 * a - 5 * b - 6 * c + 4 * d) / 18)).max_abs(),
                          (h[8] - kj(-1, (-8 * a + 16 * b + 3 * c - 2 * d) / 9)).max_abs(),
                          (h[9] - kj(2, (4 * a - 8 * b + d) / 3)).max_abs()});
        h7_printed = std::max(h7_printed, (h[7] - kj(2, 4 * a - 8 * b + 12 * c + d)).max_abs());
        h7_ninth = std::max(h7_ninth, (h[7] - kj(2, (4 * a - 8 * b + 12 * c + d) / 9)).max_abs());
    }
    o.require(worst < 1e-9, "h4 h5 h6 h8 h9");
    o.note << " h4,h5,h6,h8,h9 max_dev=" << worst << "; h7 recomputed: dev from printed=" << h7_printed
           << ", dev from (4a-8b+12c+d)/9=" << h7_ninth;
}

// ---- 4

void bennett_synthesis(Outcome& o) {
    std::mt19937_64 rng(107);
    double eq = 0, closure = 0;
    int diverged = 0, trials = 0;
    for (int i = 0; i < 50;) {
        DualQuaternion r = random_revolution(rng), w = random_revolution(rng);
        if (std::abs(r.p.w - w.p.w) < 0.1 || std::abs(r.p.vec().norm() - w.p.vec().norm()) < 0.1) continue;
        ++i;
        SkewIsogram s = bennett_from_conic(MotionPoly::linear(r) * MotionPoly::linear(w));
        eq = std::max(eq, bennett_residual(s.dh));
        for (double t : default_grid(50)) {
            auto ax = s.axes_at(t);
            LoopGeometry g = loop_from_lines({ax.begin(), ax.end()});
            closure = std::max(closure, closure_residual(s.dh, g.phi));
        }
        DHLoop bad = s.dh;
        bad.d[1] += 1e-2;
        std::vector<double> start = s.phi, sweep;
        for (int k = 1; k <= 50; ++k) sweep.push_back(start[0] + 0.05 * k);
        std::vector<int> all{0, 1, 2, 3};
        newton_correct(bad, start, all);
        ++trials;
        try {
            trace_mobility(bad, start, 0, sweep, {}, false);
        } catch (const NewtonDiverged& e) {
            diverged += e.step < 5;
        }
    }
    o.require(eq < 1e-8, "Bennett conditions");
    o.require(closure < 1e-9, "closure");
    o.require(diverged == trials, "perturbed loops diverge");
    o.note << " bennett=" << eq << " closure=" << closure << " perturbed_diverged_within_5=" << diverged << "/"
           << trials;
}

// ---- 5

void nac_suite(Outcome& o) {
    long checked = 0, mismatches = 0;
    for (const auto& s : all_small_graphs(8)) {
        const int m = int(s.edges.size());
        if (m < 2) continue;
        Graph g = to_graph(s);
        auto cycles = cycles_brute(s);
        unsigned all = (1u << m) - 1;
        for (unsigned red = 1; red < all; ++red, ++checked)
            mismatches += nac_check(g, coloring_of(red, m)) != nac_brute(cycles, red, all);
    }
    size_t fig9 = nac_enumerate(nac_free_graph()).size(), c4 = nac_enumerate(cycle_graph(4)).size();
    double motion = 0;
    for (const Graph& g : {complete_bipartite(3, 3), three_prism(), parallel_laman_graph(), cycle_graph(4)}) {
        for (const Coloring& c : nac_enumerate(g)) {
            Labeling l0 = induced_lengths(g, nac_motion(g, c, 0.0, 5));
            for (int k = 0; k < 50; ++k)
                motion = std::max(motion, edge_residual(g, l0, nac_motion(g, c, 2 * M_PI * k / 50, 5)));
        }
    }
    o.require(mismatches == 0, "nac_check vs brute force");
    o.require(fig9 == 0, "Fig. 9 graph");
    o.require(c4 == 6, "C4");
    o.require(motion < 1e-12, "motion lengths");
    o.note << " colorings_checked=" << checked << " mismatches=" << mismatches << " fig9=" << fig9 << " C4=" << c4
           << " motion_residual=" << motion;
}

// ---- 6

void laman_suite(Outcome& o) {
    long checked = 0, mismatches = 0;
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        const int p = int(pairs.size());
        for (int mask = 0; mask < (1 << p); ++mask) {
            if (__builtin_popcount(mask) != 2 * n - 3) continue;
            Small s{n, {}};
            for (int i = 0; i < p; ++i)
                if (mask >> i & 1) s.edges.push_back(pairs[i]);
            ++checked;
            mismatches += laman_check(to_graph(s)).laman != laman_brute(s);
        }
    }
    o.require(mismatches == 0, "pebble game vs subgraph counting");
    o.note << " labeled_graphs=" << checked << " mismatches=" << mismatches;
}

// ---- 7

void dixon_suite(Outcome& o) {
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> u(0.2, 2);
    double worst = 0;
    for (auto [a, b] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 4}, std::pair{4, 4}}) {
        Graph g = complete_bipartite(a, b);
        std::vector<double> c(a + b);
        for (auto& x : c) x = u(rng);
        Labeling lam(g.m());
        for (int e = 0; e < g.m(); ++e) {
            auto [x, y] = g.ends(e);
            lam[e] = std::sqrt(c[x] + c[y]);
        }
        auto data = dixon1_prepare(g, lam);
        for (int k = 0; k <= 100; ++k) {
            double tau = data.tau_min + (data.tau_max - data.tau_min) * k / 100.0;
            worst = std::max(worst, edge_residual(g, lam, dixon1_motion(g, lam, tau)));
        }
    }
    Framework f = dixon2_config(1.573, 1.490, 0.636, 0.949);
    int special = rigidity_matrix(f.graph, f.placement).flex_count;
    std::uniform_real_distribution<double> v(-1, 1);
    Placement generic(8, 2);
    for (int i = 0; i < generic.size(); ++i) generic(i) = v(rng);
    int plain = rigidity_matrix(f.graph, generic).flex_count;
    o.require(worst < 1e-12, "Dixon I residual");
    o.require(special >= 1, "Dixon II flex");
    o.require(plain == 0, "generic K4,4 rigid");
    o.note << " dixon1_residual=" << worst << " dixon2_flex=" << special << " generic_flex=" << plain;
}

// ---- 8

void symmetric_suite(Outcome& o) {
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto [name, g] : {std::pair{"octahedron", octahedron()}, std::pair{"icosahedron", icosahedron()}}) {
        Involution tau(g.n());
        for (int v = 0; v < g.n(); ++v) tau[v] = v ^ 1;
        int sym = rigidity_matrix(g, symmetric_embedding_line(g, tau, 7).placement).flex_count;
        Placement p(g.n(), 3);
        for (int i = 0; i < p.size(); ++i) p(i) = u(rng);
        int generic = rigidity_matrix(g, p).flex_count;
        o.require(sym >= 1, std::string(name) + " symmetric");
        o.require(generic == 0, std::string(name) + " generic");
        o.note << " " << name << ": symmetric_flex=" << sym << " generic_flex=" << generic;
    }
}

// ---- 9

void pairing_equivalence(Outcome& o) {
    std::mt19937_64 rng(127);
    std::uniform_real_distribution<double> gap(0.01, 1);
    int agree = 0;
    double on = 0, off = 1e300;
    for (int i = 0; i < 1000; ++i) {
        Isometry g = random_isometry(rng);
        Leg l{random_vec(rng, 2), random_vec(rng, 2), 0};
        double d = (g.apply(l.a) - l.b).norm();
        l.d = d;
        double p_on = std::abs(pairing(group_point(g), leg_point(l)));
        l.d = d + gap(rng);
        double p_off = std::abs(pairing(group_point(g), leg_point(l)));
        on = std::max(on, p_on);
        off = std::min(off, p_off);
        agree += (p_on < 1e-9) && !(p_off < 1e-9);
    }
    o.require(agree == 1000, "two-sided equivalence");
    o.note << " agree=" << agree << "/1000 max_on=" << on << " min_off=" << off;
}

// ---- 10

void duporcq_suite(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(131);
    double span = 0, planar = 0;
    int real = 0;
    for (int t = 0; t < 20; ++t) {
        Isometry g0 = random_isometry(rng);
        std::vector<Leg> legs;
        for (int k = 0; k < 5; ++k) {
            Leg l{random_vec(rng, 2), random_vec(rng, 2), 0};
            l.a(2) = l.b(2) = 0;
            l.d = (g0.apply(l.a) - l.b).norm();
            legs.push_back(l);
        }
        DuporcqResult r = duporcq_sixth(legs);
        span = std::max(span, r.span_residual);
        planar = std::max(planar, r.planar_residual);
        real += r.real;
    }
    double secs = seconds_since(t0);
    o.require(span < 1e-8, "span residual");
    o.require(planar < 1e-8, "planar residual");
    o.require(secs < 30, "runtime");
    o.note << " span=" << span << " planar=" << planar << " real=" << real << "/20 complex=" << 20 - real
           << " runtime=" << secs << "s";
}

// ---- 11

void borel_suite(Outcome& o) {
    const double alpha = 1, beta = -1;
    std::mt19937_64 rng(137);
    std::vector<Leg> legs;
    for (int k = 0; k < 20; ++k) legs.push_back(borel_leg(random_vec(rng, 2), alpha, beta));
    double worst = 0;
    int poses = 0;
    for (int s = 0; s <= 200; ++s) {
        double th = -M_PI + 2 * M_PI * s / 200;
        if (2 * alpha * std::cos(th) - beta < 0) continue;
        for (bool upper : {true, false}) {
            Isometry g = borel_motion(alpha, beta, th, upper);
            ++poses;
            for (const Leg& l : legs) worst = std::max(worst, std::abs((g.apply(l.a) - l.b).norm() - l.d));
        }
    }
    double spot = std::abs(borel_leg({1, 0, 0}, alpha, beta).d - std::sqrt(3.0));
    o.require(worst < 1e-10, "leg lengths");
    o.require(spot < 1e-12, "a=(1,0,0) gives sqrt 3");
    o.note << " poses=" << poses << " length_residual=" << worst << " spot_dev=" << spot;
}

// ---- 12

void bond_suite(Outcome& o) {
    std::mt19937_64 rng(139);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    int agree = 0, total = 0, with_relation = 0;
    while (total < 100) {
        std::array<double, 6> b;
        for (double& x : b) x = u(rng);
        if (total % 2 == 0) {
            double b5sq = b[0] * b[0] - b[1] * b[1] + b[2] * b[2] - b[3] * b[3] + b[4] * b[4];
            if (b5sq <= 0) continue;
            b[5] = std::sqrt(b5sq);
        }
        DHLoop l{{b.begin(), b.end()}, std::vector<double>(6, M_PI / 2), std::vector<double>(6, 0.0)};
        auto q = bond_quadratics(l);
        bool relation = std::abs(bricard_orthogonal_relation(b)) < 1e-9;
        with_relation += relation;
        agree += common_root(q.q1, q.q4, 1e-8).shared == relation;
        ++total;
    }
    DHLoop ortho = bricard_orthogonal({2, 1, 2, 1, 2, std::sqrt(10.0)});
    double sweep_res = INFINITY;
    if (auto start = find_configuration(ortho, 7)) {
        std::vector<double> sweep;
        for (int k = 1; k <= 30; ++k) sweep.push_back((*start)[0] + 0.02 * k);
        try {
            auto tr = trace_mobility(ortho, *start, 0, sweep);
            sweep_res = *std::max_element(tr.residuals.begin(), tr.residuals.end());
        } catch (const NewtonDiverged&) {
        }
    }
    std::vector<LineAxis> ax;
    for (int i = 0; i < 6; ++i) ax.push_back(LineAxis::through(random_vec(rng, 2), random_vec(rng)));
    LoopGeometry generic = loop_from_lines(ax);
    std::vector<double> sweep;
    for (int k = 1; k <= 5; ++k) sweep.push_back(generic.phi[0] + 0.05 * k);
    bool rigid = false;
    try {
        trace_mobility(generic.loop, generic.phi, 0, sweep);
    } catch (const NewtonDiverged&) {
        rigid = true;
    }
    o.require(agree == 100, "shared root iff relation");
    o.require(sweep_res < 1e-8, "orthogonal loop sweep");
    o.require(rigid, "generic 6R rigid");
    o.note << " agree=" << agree << "/100 (relation holds in " << with_relation << ") orthogonal_sweep=" << sweep_res
           << " generic_diverges=" << (rigid ? "yes" : "no");
}

// ---- 13

void hilbert(Outcome& o) {
    auto s = hilbert_expand({1, 10, 18, 10, 1}, 2, 5);
    o.require(s == std::vector<long long>{1, 12, 41, 80, 120}, "coefficients");
    for (long long v : s) o.note << " " << v;
}

// ---- 14

void declared(Outcome& o) {
    o.note << " declared not reproduced: degree-40 configuration count, genus-41 certification, 16 configurations of"
              " a generic 6R, maximum of 7 inversion projections";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"quaternion factorization counts", factorization_counts},
        {"ellipse drawer", ellipse_drawer_trace},
        {"Fig. 8 constants", drawer_constants},
        {"Bennett synthesis", bennett_synthesis},
        {"NAC suite", nac_suite},
        {"Laman pebble game", laman_suite},
        {"Dixon frameworks", dixon_suite},
        {"symmetric embeddings", symmetric_suite},
        {"pairing equivalence", pairing_equivalence},
        {"Duporcq sixth leg", duporcq_suite},
        {"Bricard-Borel legs", borel_suite},
        {"bond quadratics", bond_suite},
        {"Hilbert expansion", hilbert},
        {"not reproducible at desk scale", declared},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        std::printf("%s %2zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.note.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
