#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kin/error.hpp"

namespace kin {

// Simple undirected graph with integer vertex labels. Internally vertices are
// addressed by their position in `vertices`, edges by their position in `edges`.
class Graph {
public:
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    Graph(std::vector<int> vertices, std::vector<std::pair<int, int>> edges);
    // vertex set read off the edges
    static Graph from_edges(std::vector<std::pair<int, int>> edges);
    // vertices 0..n-1
    static Graph indexed(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return int(vertices.size()); }
    int m() const { return int(edges.size()); }
    int index(int label) const;
    bool has_vertex(int label) const { return pos_.count(label) > 0; }
    // endpoints of edge e as vertex indices
    std::pair<int, int> ends(int e) const { return ends_[e]; }
    // edge index joining two vertex indices, or -1
    int edge_between(int a, int b) const;
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    // vertices of degree one; allowed, but such joints rotate freely
    std::vector<int> dangling() const;

private:
    std::map<int, int> pos_;
    std::vector<std::pair<int, int>> ends_;
    std::map<std::pair<int, int>, int> edge_pos_;
    void build();
};

// Edge lengths aligned with Graph::edges.
using Labeling = std::vector<double>;
// One row per vertex (Graph::vertices order), two or three columns.
using Placement = Eigen::MatrixXd;

Labeling induced_lengths(const Graph& g, const Placement& p);
double edge_residual(const Graph& g, const Labeling& lambda, const Placement& p);

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph three_prism();
Graph double_banana();
// vertex 2k and 2k+1 are antipodal
Graph octahedron();
Graph icosahedron();
// seven vertices, twelve edges, no NAC coloring
Graph nac_free_graph();
// eight vertices, thirteen edges; Laman and mobile with parallel edges
Graph parallel_laman_graph();
// two vertices per joint axis, a tetrahedron per link: 2n vertices, 5n edges
Graph revolute_loop_graph(int n);

int cgk_estimate(const Graph& g, int dimension);

struct LamanResult {
    bool laman = false;
    // vertex labels of a subgraph with |E'| > 2|V'| - 3 when one was found
    std::vector<int> witness;
    int witness_edges = 0;
    std::string reason;
};

// (2,3) pebble game.
LamanResult laman_check(const Graph& g);

struct Coloring {
    std::vector<char> red;  // per edge; blue otherwise

    int red_count() const;
    int blue_count() const { return int(red.size()) - red_count(); }
    Coloring swapped() const;
    bool operator==(const Coloring& o) const { return red == o.red; }
    bool operator<(const Coloring& o) const { return red < o.red; }
};

struct MonochromeComponents {
    std::vector<int> red;  // component id per vertex in (V, E_red)
    std::vector<int> blue;
    int red_count = 0;
    int blue_count = 0;
};

MonochromeComponents monochrome_components(const Graph& g, const Coloring& c);

bool nac_check(const Graph& g, const Coloring& c);

struct NacOptions {
    int max_edges = 30;
    bool collapse_swap = false;
};

std::vector<Coloring> nac_enumerate(const Graph& g, const NacOptions& opt = {});

// v in R_i and B_j goes to z_i + e^{it} w_j
Placement nac_motion(const Graph& g, const Coloring& c, const std::vector<std::complex<double>>& z,
                     const std::vector<std::complex<double>>& w, double t);
Placement nac_motion(const Graph& g, const Coloring& c, double t, std::uint64_t seed);

struct FlexibleLabeling {
    bool exists = false;
    Coloring coloring;
    Labeling lengths;
    Placement placement;
    std::vector<std::complex<double>> z, w;
};

FlexibleLabeling flexible_labeling_exists(const Graph& g, std::uint64_t seed = 1, const NacOptions& opt = {});

// z and w indexed like Graph::vertices, the first vertex at the origin
struct HomogeneousConfigPoint {
    Eigen::VectorXcd z, w;

    static HomogeneousConfigPoint from_placement(const Placement& p);
    bool real(double tol = 1e-9) const;
};

// Uses the squared lengths as coefficients.
double homogeneous_residual(const Graph& g, const Labeling& lambda, const HomogeneousConfigPoint& pt);
// max over edges of the normalized |(z_i - z_j)(w_i - w_j)|
double boundary_defect(const Graph& g, const HomogeneousConfigPoint& pt);

Coloring boundary_coloring(const Graph& g, const HomogeneousConfigPoint& pt, double tol = 1e-9,
                           const Labeling* lambda = nullptr);

struct RigidityMatrix {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd singular_values;
    int rank = 0;
    int trivial = 0;
    int flex_count = 0;
};

RigidityMatrix rigidity_matrix(const Graph& g, const Placement& p, double rel_threshold = 1e-8);

struct Bipartition {
    std::vector<int> side;  // 0 on the x-axis, 1 on the y-axis
};

Bipartition bipartition(const Graph& g);

struct DixonData {
    Bipartition parts;
    std::vector<double> constant;  // c_u on side 0, d_v on side 1
    double tau_min = 0;
    double tau_max = 0;
};

DixonData dixon1_prepare(const Graph& g, const Labeling& lambda, double tol = 1e-9);
// signs default to alternating within each side
Placement dixon1_motion(const Graph& g, const Labeling& lambda, double tau, const std::vector<int>& signs = {},
                        double tol = 1e-9);

struct Framework {
    Graph graph;
    Placement placement;
    Labeling lengths;
    std::vector<std::pair<int, int>> coincident;  // vertex labels
};

Framework dixon2_config(double p, double q, double r, double s);

Graph graph_square(const Graph& g);

// vertex index -> vertex index
using Involution = std::vector<int>;

struct SymmetricEmbedding {
    Placement placement;
    Labeling lengths;
    int variables = 0;
    int equations = 0;
};

SymmetricEmbedding symmetric_embedding_line(const Graph& g, const Involution& tau, std::uint64_t seed);

struct SymmetricCount {
    int variables = 0;
    int equations = 0;
    int m = 0;
};

SymmetricCount symmetric_count_plane(const Graph& g, const Involution& tau);

}  // namespace kin
