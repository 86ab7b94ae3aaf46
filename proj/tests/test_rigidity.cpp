#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "graph_oracles.hpp"
#include "kin/rigidity.hpp"

using namespace kin;
using namespace testing;

namespace {

const std::uint64_t seeds[] = {1, 2, 3};

Placement random_placement(int n, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    Placement p(n, dim);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < dim; ++k) p(i, k) = u(rng);
    return p;
}

double max_pair_change(const Placement& a, const Placement& b) {
    double r = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.rows(); ++j)
            r = std::max(r, std::abs((a.row(i) - a.row(j)).norm() - (b.row(i) - b.row(j)).norm()));
    return r;
}

}  // namespace

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph::indexed(3, {{0, 0}}), Error);
    CHECK_THROWS_AS(Graph::indexed(3, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(Graph::indexed(3, {{0, 5}}), Error);
    Graph p = path_graph(3);
    CHECK(p.dangling() == std::vector<int>{0, 2});
    Graph g = Graph::from_edges({{10, 20}, {20, 30}});
    CHECK(g.n() == 3);
    CHECK(g.index(30) == 2);
    CHECK(g.edge_between(g.index(20), g.index(10)) == 0);
}

TEST_CASE("cgk estimate") {
    CHECK(cgk_estimate(cycle_graph(4), 2) == 1);
    CHECK(cgk_estimate(octahedron(), 3) == 0);
    CHECK(octahedron().m() == 12);
    CHECK(double_banana().n() == 8);
    CHECK(double_banana().m() == 18);
    CHECK(cgk_estimate(double_banana(), 3) == 0);
    CHECK(icosahedron().m() == 30);
    CHECK(cgk_estimate(icosahedron(), 3) == 0);
    CHECK(cgk_estimate(three_prism(), 2) == 0);
    CHECK(cgk_estimate(complete_graph(4), 2) == -1);
}

TEST_CASE("laman examples") {
    CHECK(laman_check(complete_graph(3)).laman);
    CHECK(laman_check(three_prism()).laman);
    CHECK(laman_check(parallel_laman_graph()).laman);
    CHECK(laman_check(complete_bipartite(3, 3)).laman);

    // K4 on 0..3, padded so that |E| = 2|V| - 3 overall
    Graph k4plus = Graph::indexed(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 0}, {4, 5}, {5, 1}});
    CHECK(k4plus.m() == 2 * k4plus.n() - 3);
    auto r = laman_check(k4plus);
    CHECK_FALSE(r.laman);
    CHECK(r.witness == std::vector<int>{0, 1, 2, 3});
    CHECK(r.witness_edges == 6);

    auto few = laman_check(path_graph(4));
    CHECK_FALSE(few.laman);
    CHECK(few.witness.empty());
}

TEST_CASE("pebble game agrees with subgraph counting") {
    std::vector<int> laman_count(7, 0);
    int total = 0;
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        const int p = int(pairs.size());
        for (int mask = 0; mask < (1 << p); ++mask) {
            Small s{n, {}};
            for (int i = 0; i < p; ++i)
                if (mask >> i & 1) s.edges.push_back(pairs[i]);
            auto res = laman_check(to_graph(s));
            bool brute = laman_brute(s);
            ++total;
            laman_count[n] += brute;
            if (res.laman != brute) {
                FAIL("mismatch on n=" << n << " mask=" << mask);
            }
            if (!res.witness.empty()) {
                int k = int(res.witness.size());
                if (res.witness_edges <= 2 * k - 3) FAIL("witness does not violate");
            }
            if (!brute && int(s.edges.size()) == 2 * n - 3 && res.witness.empty()) FAIL("missing witness");
        }
    }
    CHECK(total == 2 + 8 + 64 + 1024 + 32768);
    // a single edge, the triangle, and K4 minus any one of its six edges
    CHECK(laman_count[2] == 1);
    CHECK(laman_count[3] == 1);
    CHECK(laman_count[4] == 6);
}

TEST_CASE("laman graphs are generically infinitesimally rigid") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        const int p = int(pairs.size());
        for (int mask = 0; mask < (1 << p); ++mask) {
            if (__builtin_popcount(mask) != 2 * n - 3) continue;
            Small s{n, {}};
            for (int i = 0; i < p; ++i)
                if (mask >> i & 1) s.edges.push_back(pairs[i]);
            Graph g = to_graph(s);
            auto rm = rigidity_matrix(g, random_placement(n, 2, std::uint64_t(mask)), 1e-8);
            if ((rm.flex_count == 0) != laman_check(g).laman) FAIL("rank disagrees on n=" << n << " mask=" << mask);
        }
    }
}

TEST_CASE("nac examples") {
    Graph c4 = cycle_graph(4);
    CHECK(nac_check(c4, Coloring{{1, 0, 1, 0}}));
    CHECK_FALSE(nac_check(c4, Coloring{{1, 0, 0, 0}}));
    CHECK_THROWS_AS(nac_check(c4, Coloring{{1, 1, 1, 1}}), Error);
    try {
        nac_check(c4, Coloring{{0, 0, 0, 0}});
    } catch (const Error& e) {
        CHECK(e.kind == "EmptyColorClass");
    }

    Graph tri = complete_graph(3);
    for (unsigned red = 1; red < 7; ++red) CHECK_FALSE(nac_check(tri, coloring_of(red, 3)));

    Graph g9 = nac_free_graph();
    CHECK(g9.n() == 7);
    CHECK(g9.m() == 12);
    int any = 0;
    for (unsigned red = 1; red + 1 < (1u << 12); ++red) any += nac_check(g9, coloring_of(red, 12));
    CHECK(any == 0);
    CHECK(nac_enumerate(g9).empty());
    CHECK_FALSE(flexible_labeling_exists(g9).exists);
    CHECK_FALSE(flexible_labeling_exists(tri).exists);
}

TEST_CASE("nac enumeration") {
    Graph c4 = cycle_graph(4);
    CHECK(nac_enumerate(c4).size() == 6);
    CHECK(nac_enumerate(c4, {30, true}).size() == 3);
    CHECK(nac_enumerate(complete_graph(3)).empty());
    CHECK_FALSE(nac_enumerate(complete_bipartite(3, 3)).empty());
    for (const auto& c : nac_enumerate(complete_bipartite(3, 3))) CHECK(nac_check(complete_bipartite(3, 3), c));
    CHECK(nac_enumerate(icosahedron()).empty());
    CHECK(nac_enumerate(revolute_loop_graph(6)).empty());

    // triangulated strip with 31 edges, all in one triangle class
    std::vector<std::pair<int, int>> strip;
    for (int i = 0; i + 1 < 17; ++i) strip.push_back({i, i + 1});
    for (int i = 0; i + 2 < 17; ++i) strip.push_back({i, i + 2});
    Graph big = Graph::indexed(17, strip);
    REQUIRE(big.m() == 31);
    CHECK_THROWS_AS(nac_enumerate(big), Error);
    CHECK(nac_enumerate(big, {40, false}).empty());
    CHECK(nac_enumerate(path_graph(6), {30, false}).size() == 30);
}

TEST_CASE("nac check agrees with cycle enumeration on all graphs with at most 8 edges") {
    auto levels = connected_classes(8);
    std::vector<std::size_t> counts;
    for (int e = 1; e <= 8; ++e) counts.push_back(levels[e].size());
    CHECK(counts == std::vector<std::size_t>{1, 1, 3, 5, 12, 30, 79, 227});

    auto graphs = all_small_graphs(8);
    CHECK(graphs.size() == 788);
    long checked = 0;
    for (const auto& s : graphs) {
        const int m = int(s.edges.size());
        if (m < 2) continue;
        Graph g = to_graph(s);
        auto cycles = cycles_brute(s);
        unsigned all = (1u << m) - 1;
        std::vector<Coloring> brute;
        for (unsigned red = 1; red < all; ++red) {
            bool b = nac_brute(cycles, red, all);
            Coloring c = coloring_of(red, m);
            if (nac_check(g, c) != b) FAIL("nac_check disagrees on a graph with " << m << " edges");
            if (b) brute.push_back(c);
            ++checked;
        }
        if (!same_colorings(nac_enumerate(g), brute)) FAIL("nac_enumerate disagrees");
    }
    CHECK(checked > 50000);
}

TEST_CASE("nac motion") {
    std::vector<Graph> graphs{complete_bipartite(3, 3), three_prism(), parallel_laman_graph(), cycle_graph(5)};
    for (const Graph& g : graphs) {
        auto cols = nac_enumerate(g);
        REQUIRE_FALSE(cols.empty());
        for (std::uint64_t seed : seeds) {
            const Coloring& c = cols[seed % cols.size()];
            Placement p0 = nac_motion(g, c, 0.0, seed);
            Placement p2 = nac_motion(g, c, 2 * M_PI, seed);
            CHECK((p0 - p2).cwiseAbs().maxCoeff() < 1e-12);
            auto l0 = induced_lengths(g, p0);
            for (double t : {0.3, 1.7, -2.5, 4.0}) {
                Placement pt = nac_motion(g, c, t, seed);
                CHECK(edge_residual(g, l0, pt) < 1e-12);
                for (int e = 0; e < g.m(); ++e) {
                    if (c.red[e]) continue;
                    auto [a, b] = g.ends(e);
                    Eigen::RowVector2d d0 = p0.row(a) - p0.row(b), dt = pt.row(a) - pt.row(b);
                    CHECK((d0 - dt).norm() < 1e-12);
                }
            }
        }
    }
    Graph c4 = cycle_graph(4);
    CHECK_THROWS_AS(nac_motion(c4, Coloring{{1, 0, 0, 0}}, 0.0, 1), Error);
}

TEST_CASE("flexible labelings") {
    for (std::uint64_t seed : seeds) {
        auto f = flexible_labeling_exists(three_prism(), seed);
        REQUIRE(f.exists);
        CHECK(nac_check(three_prism(), f.coloring));
        Placement later = nac_motion(three_prism(), f.coloring, f.z, f.w, 1.1);
        CHECK(edge_residual(three_prism(), f.lengths, later) < 1e-12);
        // not a rigid motion: some vertex pair changes its distance
        CHECK(max_pair_change(f.placement, later) > 1e-3);
    }
    CHECK(flexible_labeling_exists(complete_bipartite(3, 3)).exists);
}

TEST_CASE("figure configurations") {
    // mobile prism: the second triangle is a translate of the first
    Placement right(6, 2);
    right << 0, 0, 1, 0, 0.5, 0.5, 0, 1, 1, 1, 0.5, 1.5;
    CHECK(rigidity_matrix(three_prism(), right).flex_count >= 1);
    for (std::uint64_t seed : seeds) CHECK(rigidity_matrix(three_prism(), random_placement(6, 2, seed)).flex_count == 0);

    // two drawn configurations of the parallel Laman graph share their edge lengths
    Placement a(8, 2), b(8, 2);
    a << 0, 0, 5, 0, -2, 1, 3, 1, 2.411, 3.766, 7.411, 3.766, 0.411, 4.766, 5.411, 4.766;
    b << 0, 0, 5, 0, -1, 2, 4, 2, 2, 4, 7, 4, 1, 6, 6, 6;
    Graph oj = parallel_laman_graph();
    CHECK(edge_residual(oj, induced_lengths(oj, a), b) < 2e-3);

    // three drawn K44 configurations share their edge lengths
    auto f1 = dixon2_config(1.573, 1.490, 0.636, 0.949);
    auto f2 = dixon2_config(1.307, 1.747, 0.765, 0.810);
    auto f3 = dixon2_config(1.307, 0.810, 0.765, 1.747);
    CHECK(edge_residual(f1.graph, f1.lengths, f2.placement) < 2e-3);
    CHECK(edge_residual(f1.graph, f1.lengths, f3.placement) < 2e-3);
}

TEST_CASE("homogeneous configurations and boundary colorings") {
    Graph g = three_prism();
    for (std::uint64_t seed : seeds) {
        Placement p = random_placement(6, 2, seed);
        auto lam = induced_lengths(g, p);
        auto pt = HomogeneousConfigPoint::from_placement(p);
        CHECK(pt.real());
        CHECK(homogeneous_residual(g, lam, pt) < 1e-10);
        // scaling both factors does not matter
        HomogeneousConfigPoint scaled{pt.z * std::complex<double>(2, 1), pt.w * std::complex<double>(-0.3, 4)};
        CHECK(homogeneous_residual(g, lam, scaled) < 1e-10);
        CHECK(scaled.real());
        CHECK_THROWS_AS(boundary_coloring(g, pt), Error);
        try {
            boundary_coloring(g, pt);
        } catch (const Error& e) {
            CHECK(e.kind == "NotBoundary");
        }

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1, 1);
        HomogeneousConfigPoint rnd{Eigen::VectorXcd(6), Eigen::VectorXcd(6)};
        for (int i = 0; i < 6; ++i) {
            rnd.z(i) = std::complex<double>(u(rng), u(rng));
            rnd.w(i) = std::complex<double>(u(rng), u(rng));
        }
        CHECK(homogeneous_residual(g, lam, rnd) > 1e-3);
        CHECK_FALSE(rnd.real());
    }

    // limit of a uniform speed motion: z collapses onto the red components
    for (Graph h : {three_prism(), complete_bipartite(3, 3), parallel_laman_graph()}) {
        for (const Coloring& c : nac_enumerate(h)) {
            auto mc = monochrome_components(h, c);
            std::mt19937_64 rng(7);
            std::uniform_real_distribution<double> u(-1, 1);
            std::vector<std::complex<double>> a(mc.red_count), b(mc.blue_count);
            for (auto& x : a) x = std::complex<double>(u(rng), u(rng));
            for (auto& x : b) x = std::complex<double>(u(rng), u(rng));
            HomogeneousConfigPoint lim{Eigen::VectorXcd(h.n()), Eigen::VectorXcd(h.n())};
            for (int v = 0; v < h.n(); ++v) {
                lim.z(v) = a[mc.red[v]] - a[mc.red[0]];
                lim.w(v) = std::conj(b[mc.blue[v]] - b[mc.blue[0]]);
            }
            auto lam = nac_motion(h, c, a, b, 0.0);
            auto lengths = induced_lengths(h, lam);
            CHECK(homogeneous_residual(h, lengths, lim) < 1e-12);
            CHECK(boundary_defect(h, lim) < 1e-12);
            Coloring back = boundary_coloring(h, lim, 1e-9, &lengths);
            CHECK(back == c);
            CHECK(nac_check(h, back));
        }
    }
}

TEST_CASE("rigidity matrix") {
    Placement tri(3, 2);
    tri << 0, 0, 1, 0.2, 0.3, 0.9;
    auto r = rigidity_matrix(complete_graph(3), tri);
    CHECK(r.flex_count == 0);
    CHECK(r.trivial == 3);
    CHECK(r.matrix.rows() == 3);
    CHECK(r.matrix.cols() == 6);

    for (std::uint64_t seed : seeds) {
        // squared-length Jacobian matches central differences
        Graph g = three_prism();
        Placement p = random_placement(6, 2, seed);
        auto rm = rigidity_matrix(g, p);
        const double h = 1e-6;
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < 2; ++k) {
                Placement pp = p, pm = p;
                pp(i, k) += h;
                pm(i, k) -= h;
                auto lp = induced_lengths(g, pp), lm = induced_lengths(g, pm);
                for (int e = 0; e < g.m(); ++e)
                    CHECK(rm.matrix(e, 2 * i + k) == doctest::Approx((lp[e] * lp[e] - lm[e] * lm[e]) / (2 * h)).epsilon(1e-6));
            }

        CHECK(rigidity_matrix(Graph::indexed(5, {}), random_placement(5, 2, seed)).trivial == 3);
        CHECK(rigidity_matrix(Graph::indexed(5, {}), random_placement(5, 3, seed)).trivial == 6);
        CHECK(rigidity_matrix(complete_graph(5), random_placement(5, 3, seed)).flex_count == 0);
        CHECK(rigidity_matrix(complete_bipartite(4, 4), random_placement(8, 2, seed)).flex_count == 0);
        CHECK(rigidity_matrix(double_banana(), random_placement(8, 3, seed)).flex_count >= 1);
        CHECK(rigidity_matrix(octahedron(), random_placement(6, 3, seed)).flex_count == 0);
        CHECK(rigidity_matrix(cycle_graph(4), random_placement(4, 2, seed)).flex_count == 1);
    }
    auto d2 = dixon2_config(1.573, 1.490, 0.636, 0.949);
    CHECK(d2.coincident.empty());
    CHECK(rigidity_matrix(d2.graph, d2.placement).flex_count >= 1);
}

TEST_CASE("dixon constructions") {
    Graph k22 = complete_bipartite(2, 2);
    Labeling root2(4, std::sqrt(2.0));
    auto dd = dixon1_prepare(k22, root2);
    for (double c : dd.constant) CHECK(c == doctest::Approx(1));
    Placement p = dixon1_motion(k22, root2, 0.0);
    for (int v = 0; v < 4; ++v) CHECK(p.row(v).norm() == doctest::Approx(1));
    CHECK(edge_residual(k22, root2, p) < 1e-15);

    for (std::uint64_t seed : seeds) {
        for (auto [a, b] : {std::pair{3, 3}, std::pair{2, 4}, std::pair{4, 4}}) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.2, 2);
            Graph g = complete_bipartite(a, b);
            std::vector<double> c(a + b);
            for (auto& x : c) x = u(rng);
            Labeling lam(g.m());
            for (int e = 0; e < g.m(); ++e) {
                auto [x, y] = g.ends(e);
                lam[e] = std::sqrt(c[x] + c[y]);
            }
            auto data = dixon1_prepare(g, lam);
            REQUIRE(data.tau_min < data.tau_max);
            double worst = 0;
            for (int k = 0; k <= 100; ++k) {
                double tau = data.tau_min + (data.tau_max - data.tau_min) * k / 100.0;
                worst = std::max(worst, edge_residual(g, lam, dixon1_motion(g, lam, tau)));
            }
            CHECK(worst < 1e-12);
            double mid = (data.tau_min + data.tau_max) / 2;
            CHECK(rigidity_matrix(g, dixon1_motion(g, lam, mid)).flex_count >= 1);
            CHECK_THROWS_AS(dixon1_motion(g, lam, data.tau_max + 1), Error);

            Labeling bad = lam;
            for (auto& l : bad) l = u(rng) + 0.5;
            if (a * b > a + b - 1) CHECK_THROWS_AS(dixon1_prepare(g, bad), Error);
        }
    }
    CHECK_THROWS_AS(dixon1_prepare(complete_graph(3), Labeling(3, 1.0)), Error);

    auto f = dixon2_config(1.573, 1.490, 0.636, 0.949);
    CHECK(f.graph.m() == 16);
    CHECK(f.placement(0, 0) == 1.573);
    CHECK(f.placement(4, 1) == 0.949);
    auto degenerate = dixon2_config(1, 2, 1, 2);
    CHECK(degenerate.coincident.size() == 4);
}

TEST_CASE("graph square") {
    Graph p3 = graph_square(path_graph(3));
    CHECK(p3.m() == 3);
    CHECK(p3.edge_between(0, 2) >= 0);
    Graph star = graph_square(Graph::indexed(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(star.m() == 6);
    Graph c6 = cycle_graph(6);
    Graph sq = graph_square(c6);
    CHECK(sq.n() == 6);
    // distance one or two on the cycle
    int expect = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            int d = std::min(b - a, 6 - (b - a));
            expect += d <= 2;
            CHECK((sq.edge_between(a, b) >= 0) == (d <= 2));
        }
    CHECK(sq.m() == expect);
    CHECK(sq.m() == 12);
}

TEST_CASE("line symmetric embeddings") {
    auto antipodal = [](int n) {
        Involution t(n);
        for (int v = 0; v < n; ++v) t[v] = v ^ 1;
        return t;
    };
    for (Graph g : {octahedron(), icosahedron()}) {
        for (std::uint64_t seed : seeds) {
            auto s = symmetric_embedding_line(g, antipodal(g.n()), seed);
            CHECK(s.variables == 3 * g.n() / 2 - 2);
            CHECK(s.equations == 3 * g.n() / 2 - 3);
            for (int e = 0; e < g.m(); ++e) {
                auto [a, b] = g.ends(e);
                int f = g.edge_between(a ^ 1, b ^ 1);
                REQUIRE(f >= 0);
                CHECK(std::abs(s.lengths[e] - s.lengths[f]) < 1e-14);
            }
            CHECK(rigidity_matrix(g, s.placement).flex_count >= 1);
            CHECK(rigidity_matrix(g, random_placement(g.n(), 3, seed)).flex_count == 0);
        }
    }
    // swaps the ends of edge (0,1)
    Graph c4 = cycle_graph(4);
    CHECK_THROWS_AS(symmetric_embedding_line(c4, {1, 0, 3, 2}, 1), Error);
    CHECK_THROWS_AS(symmetric_embedding_line(octahedron(), {1, 0, 2, 3, 5, 4}, 1), Error);
    CHECK_THROWS_AS(symmetric_embedding_line(octahedron(), {2, 3, 0, 1, 4, 5, 0}, 1), Error);
}

TEST_CASE("plane symmetric counts") {
    // half turn about the axis through vertices 4 and 5
    auto c = symmetric_count_plane(octahedron(), {1, 0, 3, 2, 4, 5});
    CHECK(c.m == 1);
    CHECK(c.variables == 7);
    CHECK(c.equations == 6);

    Graph loop = revolute_loop_graph(6);
    CHECK(loop.n() == 12);
    CHECK(loop.m() == 30);
    CHECK(cgk_estimate(loop, 3) == 0);
    Involution tau(12);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 2; ++k) tau[2 * j + k] = 2 * ((6 - j) % 6) + k;
    auto c6 = symmetric_count_plane(loop, tau);
    CHECK(c6.m == 2);
    CHECK(c6.variables == 17);
    CHECK(c6.equations == 16);

    Involution anti{1, 0, 3, 2, 5, 4};
    CHECK_THROWS_AS(symmetric_count_plane(octahedron(), anti), Error);
    CHECK_THROWS_AS(symmetric_count_plane(octahedron(), {0, 1, 2, 3, 4, 5}), Error);
    try {
        symmetric_count_plane(octahedron(), anti);
    } catch (const Error& e) {
        CHECK(e.kind == "BadInvolution");
    }
}
