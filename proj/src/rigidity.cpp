#include "kin/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace kin {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

Graph::Graph(std::vector<int> v, std::vector<std::pair<int, int>> e) : vertices(std::move(v)), edges(std::move(e)) {
    build();
}

Graph Graph::from_edges(std::vector<std::pair<int, int>> e) {
    std::set<int> vs;
    for (auto [a, b] : e) vs.insert({a, b});
    return Graph(std::vector<int>(vs.begin(), vs.end()), std::move(e));
}

Graph Graph::indexed(int n, std::vector<std::pair<int, int>> e) {
    std::vector<int> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    return Graph(std::move(vs), std::move(e));
}

void Graph::build() {
    pos_.clear();
    for (int i = 0; i < n(); ++i)
        if (!pos_.emplace(vertices[i], i).second) fail("InvalidGraph", "duplicate vertex " + std::to_string(vertices[i]));
    ends_.clear();
    edge_pos_.clear();
    for (int e = 0; e < m(); ++e) {
        auto [a, b] = edges[e];
        if (a == b) fail("InvalidGraph", "loop at " + std::to_string(a));
        if (!has_vertex(a) || !has_vertex(b)) fail("InvalidGraph", "edge with unknown endpoint");
        int ia = pos_.at(a), ib = pos_.at(b);
        if (!edge_pos_.emplace(ordered(ia, ib), e).second)
            fail("InvalidGraph", "duplicate edge " + std::to_string(a) + "," + std::to_string(b));
        ends_.push_back({ia, ib});
    }
}

int Graph::index(int label) const {
    auto it = pos_.find(label);
    if (it == pos_.end()) fail("InvalidGraph", "unknown vertex " + std::to_string(label));
    return it->second;
}

int Graph::edge_between(int a, int b) const {
    auto it = edge_pos_.find(ordered(a, b));
    return it == edge_pos_.end() ? -1 : it->second;
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n());
    for (auto [a, b] : ends_) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n(), 0);
    for (auto [a, b] : ends_) ++d[a], ++d[b];
    return d;
}

std::vector<int> Graph::dangling() const {
    std::vector<int> out;
    auto d = degrees();
    for (int i = 0; i < n(); ++i)
        if (d[i] == 1) out.push_back(vertices[i]);
    return out;
}

Labeling induced_lengths(const Graph& g, const Placement& p) {
    Labeling l(g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        l[e] = (p.row(a) - p.row(b)).norm();
    }
    return l;
}

double edge_residual(const Graph& g, const Labeling& lambda, const Placement& p) {
    if (int(lambda.size()) != g.m()) fail("InvalidArgument", "labeling size");
    double r = 0;
    auto l = induced_lengths(g, p);
    for (int e = 0; e < g.m(); ++e) r = std::max(r, std::abs(l[e] - lambda[e]));
    return r;
}

// ---- named graphs

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) e.push_back({a, b});
    return Graph::indexed(n, e);
}

Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.push_back({i, a + j});
    return Graph::indexed(a + b, e);
}

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return Graph::indexed(n, e);
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph::indexed(n, e);
}

Graph three_prism() {
    return Graph::indexed(6, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 5}, {5, 3}, {1, 4}, {2, 5}});
}

Graph double_banana() {
    return Graph::from_edges({{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5},
                              {1, 6}, {1, 7}, {1, 8}, {2, 6}, {2, 7}, {2, 8}, {6, 7}, {6, 8}, {7, 8}});
}

Graph octahedron() {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (b != (a ^ 1)) e.push_back({a, b});
    return Graph::indexed(6, e);
}

Graph icosahedron() {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<Eigen::Vector3d> reps{{0, 1, phi}, {0, 1, -phi}, {1, phi, 0}, {1, -phi, 0}, {phi, 0, 1}, {-phi, 0, 1}};
    std::vector<Eigen::Vector3d> pts;
    for (const auto& r : reps) {
        pts.push_back(r);
        pts.push_back(-r);
    }
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b)
            if (std::abs((pts[a] - pts[b]).squaredNorm() - 4) < 1e-9) e.push_back({a, b});
    return Graph::indexed(12, e);
}

Graph nac_free_graph() {
    return Graph::indexed(7, {{0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 5}, {6, 0}, {6, 1}, {6, 3}});
}

Graph parallel_laman_graph() {
    return Graph::indexed(8, {{0, 1}, {1, 3}, {3, 4}, {0, 4}, {0, 2}, {1, 5}, {2, 3}, {4, 5}, {5, 7}, {3, 7}, {2, 6}, {4, 6}, {6, 7}});
}

Graph revolute_loop_graph(int n) {
    if (n < 3) fail("InvalidArgument", "need at least three axes");
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < n; ++r) {
        int s = (r + 1) % n;
        e.push_back({2 * r, 2 * r + 1});
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) e.push_back({2 * r + a, 2 * s + b});
    }
    return Graph::indexed(2 * n, e);
}

// ---- counting

int cgk_estimate(const Graph& g, int dimension) {
    if (dimension == 2) return 2 * g.n() - 3 - g.m();
    if (dimension == 3) return 3 * g.n() - 6 - g.m();
    fail("InvalidArgument", "dimension must be 2 or 3");
}

LamanResult laman_check(const Graph& g) {
    const int n = g.n();
    std::vector<int> pebbles(n, 2);
    std::vector<std::vector<int>> out(n);

    // move a free pebble to root along a directed path, avoiding the pebbles of a and b
    std::vector<int> parent(n);
    std::vector<char> seen(n);
    auto collect = [&](int root, int a, int b) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<int> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x != a && x != b && pebbles[x] > 0) {
                --pebbles[x];
                ++pebbles[root];
                while (x != root) {
                    int p = parent[x];
                    auto& o = out[p];
                    o.erase(std::find(o.begin(), o.end(), x));
                    out[x].push_back(p);
                    x = p;
                }
                return true;
            }
            for (int y : out[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    stack.push_back(y);
                }
        }
        return false;
    };
    auto reach = [&](int u, int v) {
        std::vector<char> r(n, 0);
        std::vector<int> stack{u, v};
        r[u] = r[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : out[x])
                if (!r[y]) r[y] = 1, stack.push_back(y);
        }
        return r;
    };

    LamanResult res;
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.ends(e);
        while (pebbles[u] < 2 && collect(u, u, v)) {}
        while (pebbles[v] < 2 && collect(v, u, v)) {}
        if (pebbles[u] + pebbles[v] == 4) {
            out[u].push_back(v);
            --pebbles[u];
            continue;
        }
        auto r = reach(u, v);
        for (int i = 0; i < n; ++i)
            if (r[i]) res.witness.push_back(g.vertices[i]);
        for (int f = 0; f < g.m(); ++f) {
            auto [a, b] = g.ends(f);
            if (r[a] && r[b]) ++res.witness_edges;
        }
        res.reason = "subgraph on " + std::to_string(res.witness.size()) + " vertices has " +
                     std::to_string(res.witness_edges) + " edges";
        return res;
    }
    if (g.m() != 2 * n - 3) {
        res.reason = "edge count " + std::to_string(g.m()) + " differs from 2|V|-3 = " + std::to_string(2 * n - 3);
        return res;
    }
    res.laman = true;
    return res;
}

// ---- colorings

int Coloring::red_count() const { return int(std::count(red.begin(), red.end(), 1)); }

Coloring Coloring::swapped() const {
    Coloring c = *this;
    for (auto& r : c.red) r = !r;
    return c;
}

MonochromeComponents monochrome_components(const Graph& g, const Coloring& c) {
    if (int(c.red.size()) != g.m()) fail("InvalidArgument", "coloring size");
    UnionFind ur(g.n()), ub(g.n());
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        (c.red[e] ? ur : ub).unite(a, b);
    }
    MonochromeComponents mc;
    auto label = [&](UnionFind& uf, std::vector<int>& id, int& count) {
        std::map<int, int> root_id;
        id.resize(g.n());
        for (int v = 0; v < g.n(); ++v) {
            auto [it, added] = root_id.emplace(uf.find(v), count);
            if (added) ++count;
            id[v] = it->second;
        }
    };
    label(ur, mc.red, mc.red_count);
    label(ub, mc.blue, mc.blue_count);
    return mc;
}

bool nac_check(const Graph& g, const Coloring& c) {
    if (int(c.red.size()) != g.m()) fail("InvalidArgument", "coloring size");
    int r = c.red_count();
    if (r == 0 || r == g.m()) fail("EmptyColorClass", "both colors must be used");
    auto mc = monochrome_components(g, c);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        if (c.red[e] && mc.blue[a] == mc.blue[b]) return false;
        if (!c.red[e] && mc.red[a] == mc.red[b]) return false;
    }
    return true;
}

std::vector<Coloring> nac_enumerate(const Graph& g, const NacOptions& opt) {
    if (g.m() > opt.max_edges)
        fail("TooLarge", std::to_string(g.m()) + " edges exceed the limit " + std::to_string(opt.max_edges));
    // edges of a triangle share their color
    UnionFind tri(g.m());
    auto adj = g.adjacency();
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        for (int c : adj[a]) {
            int f = g.edge_between(b, c);
            if (c != b && f >= 0) {
                tri.unite(e, f);
                tri.unite(e, g.edge_between(a, c));
            }
        }
    }
    std::vector<std::vector<int>> classes;
    {
        std::map<int, int> id;
        for (int e = 0; e < g.m(); ++e) {
            auto [it, added] = id.emplace(tri.find(e), int(classes.size()));
            if (added) classes.emplace_back();
            classes[it->second].push_back(e);
        }
    }
    const int k = int(classes.size());
    std::vector<Coloring> found;
    if (k < 2) return found;

    std::vector<int> state(g.m(), -1);  // -1 open, 1 red, 0 blue
    // an almost unicolored cycle among assigned edges persists in every completion
    auto consistent = [&]() {
        UnionFind ur(g.n()), ub(g.n());
        for (int e = 0; e < g.m(); ++e) {
            if (state[e] < 0) continue;
            auto [a, b] = g.ends(e);
            (state[e] ? ur : ub).unite(a, b);
        }
        for (int e = 0; e < g.m(); ++e) {
            if (state[e] < 0) continue;
            auto [a, b] = g.ends(e);
            if (state[e] == 1 && ub.find(a) == ub.find(b)) return false;
            if (state[e] == 0 && ur.find(a) == ur.find(b)) return false;
        }
        return true;
    };
    std::vector<int> used(2, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            if (used[0] && used[1]) {
                Coloring c;
                c.red.assign(state.begin(), state.end());
                found.push_back(std::move(c));
            }
            return;
        }
        for (int col : {1, 0}) {
            if (i == 0 && opt.collapse_swap && col == 0) continue;
            for (int e : classes[i]) state[e] = col;
            ++used[col];
            if (consistent()) self(self, i + 1);
            --used[col];
        }
        for (int e : classes[i]) state[e] = -1;
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end());
    return found;
}

Placement nac_motion(const Graph& g, const Coloring& c, const std::vector<std::complex<double>>& z,
                     const std::vector<std::complex<double>>& w, double t) {
    if (!nac_check(g, c)) fail("NotNAC", "coloring has an almost unicolored cycle");
    auto mc = monochrome_components(g, c);
    if (int(z.size()) != mc.red_count || int(w.size()) != mc.blue_count)
        fail("InvalidArgument", "need one z per red component and one w per blue component");
    const std::complex<double> rot = std::polar(1.0, t);
    Placement p(g.n(), 2);
    for (int v = 0; v < g.n(); ++v) {
        auto q = z[mc.red[v]] + rot * w[mc.blue[v]];
        p(v, 0) = q.real();
        p(v, 1) = q.imag();
    }
    return p;
}

namespace {

std::vector<std::complex<double>> random_points(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<std::complex<double>> out(n);
    for (auto& c : out) c = {u(rng), u(rng)};
    return out;
}

}  // namespace

Placement nac_motion(const Graph& g, const Coloring& c, double t, std::uint64_t seed) {
    auto mc = monochrome_components(g, c);
    std::mt19937_64 rng(seed);
    auto z = random_points(mc.red_count, rng);
    auto w = random_points(mc.blue_count, rng);
    return nac_motion(g, c, z, w, t);
}

FlexibleLabeling flexible_labeling_exists(const Graph& g, std::uint64_t seed, const NacOptions& opt) {
    NacOptions o = opt;
    o.collapse_swap = true;
    auto all = nac_enumerate(g, o);
    FlexibleLabeling out;
    if (all.empty()) return out;
    out.exists = true;
    out.coloring = all.front();
    auto mc = monochrome_components(g, out.coloring);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        out.z = random_points(mc.red_count, rng);
        out.w = random_points(mc.blue_count, rng);
        out.placement = nac_motion(g, out.coloring, out.z, out.w, 0.0);
        out.lengths = induced_lengths(g, out.placement);
        if (*std::min_element(out.lengths.begin(), out.lengths.end()) > 1e-6) return out;
    }
    fail("NotGeneric", "random components produced a zero length");
}

// ---- homogeneous configurations

HomogeneousConfigPoint HomogeneousConfigPoint::from_placement(const Placement& p) {
    HomogeneousConfigPoint h;
    h.z.resize(p.rows());
    h.w.resize(p.rows());
    for (int v = 0; v < p.rows(); ++v) {
        std::complex<double> q(p(v, 0) - p(0, 0), p(v, 1) - p(0, 1));
        h.z(v) = q;
        h.w(v) = std::conj(q);
    }
    return h;
}

bool HomogeneousConfigPoint::real(double tol) const {
    double s = std::max(z.cwiseAbs().maxCoeff(), w.cwiseAbs().maxCoeff());
    if (s == 0) return false;
    // the flip of the two factors equals the conjugate, up to the projective scalings
    Eigen::VectorXcd zn = z / s, wn = w / s;
    Eigen::Index i;
    zn.cwiseAbs().maxCoeff(&i);
    if (std::abs(wn(i)) < tol) return false;
    std::complex<double> k = std::conj(zn(i)) / wn(i);
    return (wn * k - zn.conjugate()).cwiseAbs().maxCoeff() < tol;
}

namespace {

struct Normalized {
    Eigen::VectorXcd z, w;
};

Normalized normalize(const Graph& g, const HomogeneousConfigPoint& pt) {
    if (pt.z.size() != g.n() || pt.w.size() != g.n()) fail("InvalidArgument", "point size");
    Normalized n{pt.z.array() - pt.z(0), pt.w.array() - pt.w(0)};
    double sz = n.z.cwiseAbs().maxCoeff(), sw = n.w.cwiseAbs().maxCoeff();
    if (sz == 0 || sw == 0) fail("InvalidArgument", "projective coordinates all zero");
    n.z /= sz;
    n.w /= sw;
    return n;
}

}  // namespace

double homogeneous_residual(const Graph& g, const Labeling& lambda, const HomogeneousConfigPoint& pt) {
    if (int(lambda.size()) != g.m()) fail("InvalidArgument", "labeling size");
    auto n = normalize(g, pt);
    double lmax = *std::max_element(lambda.begin(), lambda.end());
    std::vector<double> l2(g.m());
    std::vector<std::complex<double>> q(g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        l2[e] = (lambda[e] / lmax) * (lambda[e] / lmax);
        q[e] = (n.z(a) - n.z(b)) * (n.w(a) - n.w(b));
    }
    double r = 0;
    for (int e = 0; e < g.m(); ++e)
        for (int f = e + 1; f < g.m(); ++f) r = std::max(r, std::abs(l2[e] * q[f] - l2[f] * q[e]));
    return r;
}

double boundary_defect(const Graph& g, const HomogeneousConfigPoint& pt) {
    auto n = normalize(g, pt);
    double r = 0;
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        r = std::max(r, std::abs((n.z(a) - n.z(b)) * (n.w(a) - n.w(b))));
    }
    return r;
}

Coloring boundary_coloring(const Graph& g, const HomogeneousConfigPoint& pt, double tol, const Labeling* lambda) {
    if (lambda && homogeneous_residual(g, *lambda, pt) > tol) fail("NotBoundary", "point is off the configuration variety");
    if (boundary_defect(g, pt) > tol) fail("NotBoundary", "some edge form does not vanish");
    auto n = normalize(g, pt);
    Coloring c;
    c.red.resize(g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        c.red[e] = std::abs(n.z(a) - n.z(b)) <= std::sqrt(tol);
    }
    int r = c.red_count();
    if (r == 0 || r == g.m()) fail("NotBoundary", "coloring would be unicolored");
    return c;
}

// ---- rigidity matrix

RigidityMatrix rigidity_matrix(const Graph& g, const Placement& p, double rel_threshold) {
    const int dim = int(p.cols());
    if (dim != 2 && dim != 3) fail("InvalidArgument", "placement must be 2D or 3D");
    if (p.rows() != g.n()) fail("InvalidArgument", "placement size");
    const int n = g.n();
    RigidityMatrix rm;
    rm.matrix = Eigen::MatrixXd::Zero(g.m(), dim * n);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        Eigen::RowVectorXd d = 2 * (p.row(a) - p.row(b));
        rm.matrix.block(e, dim * a, 1, dim) = d;
        rm.matrix.block(e, dim * b, 1, dim) = -d;
    }
    auto rank_of = [&](const Eigen::MatrixXd& m, Eigen::VectorXd* sv) {
        if (m.size() == 0) return 0;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
        Eigen::VectorXd s = svd.singularValues();
        if (sv) *sv = s;
        if (s.size() == 0 || s(0) == 0) return 0;
        return int((s.array() > rel_threshold * s(0)).count());
    };
    rm.rank = rank_of(rm.matrix, &rm.singular_values);

    // velocities of translations and infinitesimal rotations
    const int ntriv = dim == 2 ? 3 : 6;
    Eigen::MatrixXd triv = Eigen::MatrixXd::Zero(dim * n, ntriv);
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < dim; ++k) triv(dim * v + k, k) = 1;
        if (dim == 2) {
            triv(2 * v, 2) = -p(v, 1);
            triv(2 * v + 1, 2) = p(v, 0);
        } else {
            Eigen::Vector3d x = p.row(v).transpose();
            for (int k = 0; k < 3; ++k) triv.block(3 * v, 3 + k, 3, 1) = Eigen::Vector3d::Unit(k).cross(x);
        }
    }
    rm.trivial = rank_of(triv, nullptr);
    rm.flex_count = dim * n - rm.rank - rm.trivial;
    return rm;
}

// ---- Dixon

Bipartition bipartition(const Graph& g) {
    Bipartition bp;
    bp.side.assign(g.n(), -1);
    auto adj = g.adjacency();
    for (int s = 0; s < g.n(); ++s) {
        if (bp.side[s] >= 0) continue;
        bp.side[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (bp.side[y] < 0) {
                    bp.side[y] = 1 - bp.side[x];
                    q.push(y);
                } else if (bp.side[y] == bp.side[x]) {
                    fail("NotBipartite", "odd cycle through vertex " + std::to_string(g.vertices[y]));
                }
            }
        }
    }
    return bp;
}

DixonData dixon1_prepare(const Graph& g, const Labeling& lambda, double tol) {
    if (int(lambda.size()) != g.m()) fail("InvalidArgument", "labeling size");
    DixonData dd;
    try {
        dd.parts = bipartition(g);
    } catch (const Error& e) {
        fail("NotDixonCompatible", e.what());
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.m(), g.n());
    Eigen::VectorXd b(g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.ends(e);
        a(e, u) = a(e, v) = 1;
        b(e) = lambda[e] * lambda[e];
    }
    Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
    double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if ((a * x - b).cwiseAbs().maxCoeff() > tol * scale)
        fail("NotDixonCompatible", "squared lengths are not of the form c_u + d_v");
    dd.constant.assign(x.data(), x.data() + x.size());
    dd.tau_min = -std::numeric_limits<double>::infinity();
    dd.tau_max = std::numeric_limits<double>::infinity();
    for (int v = 0; v < g.n(); ++v) {
        if (dd.parts.side[v] == 0)
            dd.tau_min = std::max(dd.tau_min, -x(v));
        else
            dd.tau_max = std::min(dd.tau_max, x(v));
    }
    if (dd.tau_min > dd.tau_max + tol * scale) fail("NotDixonCompatible", "empty parameter domain");
    return dd;
}

Placement dixon1_motion(const Graph& g, const Labeling& lambda, double tau, const std::vector<int>& signs, double tol) {
    DixonData dd = dixon1_prepare(g, lambda, tol);
    double scale = std::max(1.0, std::abs(tau));
    if (tau < dd.tau_min - tol * scale || tau > dd.tau_max + tol * scale)
        fail("OutOfDomain", "tau outside [" + std::to_string(dd.tau_min) + ", " + std::to_string(dd.tau_max) + "]");
    if (!signs.empty() && int(signs.size()) != g.n()) fail("InvalidArgument", "one sign per vertex");
    Placement p = Placement::Zero(g.n(), 2);
    int count[2] = {0, 0};
    for (int v = 0; v < g.n(); ++v) {
        int side = dd.parts.side[v];
        double sign = signs.empty() ? (count[side]++ % 2 == 0 ? 1.0 : -1.0) : (signs[v] < 0 ? -1.0 : 1.0);
        double sq = side == 0 ? dd.constant[v] + tau : dd.constant[v] - tau;
        p(v, side) = sign * std::sqrt(std::max(0.0, sq));
    }
    return p;
}

Framework dixon2_config(double p, double q, double r, double s) {
    if (!(p > 0 && q > 0 && r > 0 && s > 0)) fail("InvalidArgument", "half-dimensions must be positive");
    Framework f;
    f.graph = complete_bipartite(4, 4);
    f.placement.resize(8, 2);
    const double sx[4] = {1, 1, -1, -1}, sy[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) {
        f.placement.row(i) << sx[i] * p, sy[i] * q;
        f.placement.row(4 + i) << sx[i] * r, sy[i] * s;
    }
    f.lengths = induced_lengths(f.graph, f.placement);
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            if ((f.placement.row(a) - f.placement.row(b)).norm() < 1e-12) f.coincident.push_back({a, b});
    return f;
}

Graph graph_square(const Graph& g) {
    auto adj = g.adjacency();
    std::set<std::pair<int, int>> extra;
    for (int v = 0; v < g.n(); ++v)
        for (size_t i = 0; i < adj[v].size(); ++i)
            for (size_t j = i + 1; j < adj[v].size(); ++j) {
                int a = adj[v][i], b = adj[v][j];
                if (g.edge_between(a, b) < 0) extra.insert(ordered(a, b));
            }
    auto edges = g.edges;
    for (auto [a, b] : extra) edges.push_back({g.vertices[a], g.vertices[b]});
    return Graph(g.vertices, edges);
}

// ---- symmetry

namespace {

void require_involution(const Graph& g, const Involution& tau) {
    if (int(tau.size()) != g.n()) fail("BadInvolution", "map size differs from |V|");
    bool identity = true;
    for (int v = 0; v < g.n(); ++v) {
        if (tau[v] < 0 || tau[v] >= g.n() || tau[tau[v]] != v) fail("BadInvolution", "map is not an involution");
        identity = identity && tau[v] == v;
    }
    if (identity) fail("BadInvolution", "identity has order one");
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        if (g.edge_between(tau[a], tau[b]) < 0) fail("BadInvolution", "map is not a graph automorphism");
    }
}

}  // namespace

SymmetricEmbedding symmetric_embedding_line(const Graph& g, const Involution& tau, std::uint64_t seed) {
    require_involution(g, tau);
    for (int v = 0; v < g.n(); ++v)
        if (tau[v] == v) fail("BadInvolution", "fixed vertex " + std::to_string(g.vertices[v]));
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        if (tau[a] == b) fail("BadInvolution", "fixed edge");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    SymmetricEmbedding out;
    out.placement.resize(g.n(), 3);
    for (int v = 0; v < g.n(); ++v) {
        if (tau[v] < v) continue;
        Eigen::Vector3d x(u(rng), u(rng), u(rng));
        out.placement.row(v) = x.transpose();
        // half turn about the z-axis
        out.placement.row(tau[v]) << -x.x(), -x.y(), x.z();
    }
    out.lengths = induced_lengths(g, out.placement);
    const int n = g.n() / 2;
    out.variables = 3 * n - 2;
    out.equations = g.m() / 2;
    return out;
}

SymmetricCount symmetric_count_plane(const Graph& g, const Involution& tau) {
    require_involution(g, tau);
    int fixed_v = 0, fixed_e = 0;
    for (int v = 0; v < g.n(); ++v) fixed_v += tau[v] == v;
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.ends(e);
        fixed_e += ordered(tau[a], tau[b]) == ordered(a, b);
    }
    if (fixed_v < 2 || fixed_v % 2) fail("BadInvolution", "needs an even, positive number of fixed vertices");
    SymmetricCount c;
    c.m = fixed_v / 2;
    if (fixed_e != 2 * c.m - 2)
        fail("BadInvolution", "fixes " + std::to_string(fixed_e) + " edges, expected " + std::to_string(2 * c.m - 2));
    c.variables = 3 * g.n() / 2 + c.m - 3;
    c.equations = 3 * g.n() / 2 + c.m - 4;
    return c;
}

}  // namespace kin
