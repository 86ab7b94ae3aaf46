#include "kin/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kin/error.hpp"

namespace kin::io {

namespace {

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) fail("BadInput", std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) fail("BadInput", std::string(what) + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Eigen::Vector3d point3(const json& j) {
    auto v = numbers(j, "point");
    if (v.size() != 3) fail("BadInput", "points need three coordinates");
    return {v[0], v[1], v[2]};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail("BadInput", std::string("missing field ") + key);
    return j.at(key);
}

std::string edge_key(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

}  // namespace

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadInput", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail("BadInput", path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) fail("BadInput", "cannot write " + path);
        out << text;
        if (!out) fail("BadInput", "cannot write " + path);
    }
    std::filesystem::rename(tmp, p);
}

GraphFile graph_from_json(const json& j) {
    GraphFile f;
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) fail("BadInput", "edges are pairs");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    if (j.contains("vertices")) {
        std::vector<int> vs;
        for (const auto& v : j.at("vertices")) vs.push_back(v.get<int>());
        f.graph = Graph(vs, edges);
    } else {
        f.graph = Graph::from_edges(edges);
    }
    if (j.contains("lengths")) {
        const json& L = j.at("lengths");
        f.lengths.resize(f.graph.m());
        for (int e = 0; e < f.graph.m(); ++e) {
            auto [a, b] = f.graph.edges[e];
            std::string k1 = edge_key(a, b), k2 = edge_key(b, a);
            if (L.contains(k1))
                f.lengths[e] = L.at(k1).get<double>();
            else if (L.contains(k2))
                f.lengths[e] = L.at(k2).get<double>();
            else
                fail("BadInput", "no length for edge " + k1);
        }
    }
    return f;
}

json graph_to_json(const Graph& g, const Labeling* lengths) {
    json j;
    j["vertices"] = g.vertices;
    j["edges"] = json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    if (lengths) {
        json L = json::object();
        for (int e = 0; e < g.m(); ++e) L[edge_key(g.edges[e].first, g.edges[e].second)] = (*lengths)[e];
        j["lengths"] = L;
    }
    return j;
}

Placement placement_from_json(const Graph& g, const json& j) {
    int dim = -1;
    Placement p;
    for (int v = 0; v < g.n(); ++v) {
        auto c = numbers(field(j, std::to_string(g.vertices[v]).c_str()), "placement");
        if (dim < 0) {
            dim = int(c.size());
            if (dim != 2 && dim != 3) fail("BadInput", "placements are 2D or 3D");
            p.resize(g.n(), dim);
        }
        if (int(c.size()) != dim) fail("BadInput", "mixed placement dimensions");
        for (int k = 0; k < dim; ++k) p(v, k) = c[k];
    }
    return p;
}

json placement_to_json(const Graph& g, const Placement& p) {
    json j = json::object();
    for (int v = 0; v < g.n(); ++v) {
        json row = json::array();
        for (int k = 0; k < p.cols(); ++k) row.push_back(p(v, k));
        j[std::to_string(g.vertices[v])] = row;
    }
    return j;
}

RationalPlaneCurve curve_from_json(const json& j) {
    RationalPlaneCurve c;
    c.x_num = RealPoly(numbers(field(j, "x_num"), "x_num"));
    c.y_num = RealPoly(numbers(field(j, "y_num"), "y_num"));
    c.den = RealPoly(numbers(field(j, "den"), "den"));
    if (c.den.zero()) fail("BadInput", "zero denominator");
    return c;
}

json curve_to_json(const RationalPlaneCurve& c) {
    return {{"x_num", c.x_num.c}, {"y_num", c.y_num.c}, {"den", c.den.c}};
}

DHLoop loop_from_json(const json& j) {
    DHLoop l{numbers(field(j, "d"), "d"), numbers(field(j, "alpha"), "alpha"), numbers(field(j, "s"), "s")};
    l.check();
    return l;
}

json loop_to_json(const DHLoop& l) { return {{"d", l.d}, {"alpha", l.alpha}, {"s", l.s}}; }

std::vector<Leg> pod_from_json(const json& j) {
    const json &B = field(j, "base"), &P = field(j, "platform");
    auto d = numbers(field(j, "lengths"), "lengths");
    if (B.size() != P.size() || B.size() != d.size()) fail("BadInput", "base, platform and lengths differ in size");
    std::vector<Leg> legs;
    for (size_t k = 0; k < d.size(); ++k) legs.push_back({point3(B[k]), point3(P[k]), d[k]});
    return legs;
}

json pod_to_json(const std::vector<Leg>& legs) {
    json j{{"base", json::array()}, {"platform", json::array()}, {"lengths", json::array()}};
    for (const Leg& l : legs) {
        j["base"].push_back({l.a(0), l.a(1), l.a(2)});
        j["platform"].push_back({l.b(0), l.b(1), l.b(2)});
        j["lengths"].push_back(l.d);
    }
    return j;
}

MotionPoly motion_poly_from_json(const json& j) {
    std::vector<DualQuaternion> c;
    for (const auto& e : field(j, "coeffs")) {
        auto v = numbers(e, "coefficient");
        if (v.size() != 4 && v.size() != 8) fail("BadInput", "coefficients have four or eight entries");
        v.resize(8, 0.0);
        c.push_back({Quaternion{v[0], v[1], v[2], v[3]}, Quaternion{v[4], v[5], v[6], v[7]}});
    }
    return MotionPoly(c);
}

json dq_to_json(const DualQuaternion& h) {
    return {h.p.w, h.p.x, h.p.y, h.p.z, h.d.w, h.d.x, h.d.y, h.d.z};
}

json motion_poly_to_json(const MotionPoly& p) {
    json c = json::array();
    for (const auto& h : p.c) c.push_back(dq_to_json(h));
    return {{"coeffs", c}};
}

Isometry isometry_from_json(const json& j) {
    Isometry g;
    const json& R = field(j, "rotation");
    if (!R.is_array() || R.size() != 3) fail("BadInput", "rotation is a 3x3 array");
    for (int i = 0; i < 3; ++i) g.rotation.row(i) = point3(R[i]).transpose();
    g.translation = point3(field(j, "translation"));
    if (!g.valid(1e-9)) fail("BadInput", "rotation is not orthogonal");
    return g;
}

json isometry_to_json(const Isometry& g) {
    json R = json::array();
    for (int i = 0; i < 3; ++i) R.push_back({g.rotation(i, 0), g.rotation(i, 1), g.rotation(i, 2)});
    return {{"rotation", R}, {"translation", {g.translation(0), g.translation(1), g.translation(2)}}};
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    auto v = numbers(j, "complex number");
    if (v.size() != 2) fail("BadInput", "complex numbers are [re, im]");
    return {v[0], v[1]};
}

json complex_to_json(cplx z) { return z.imag() == 0 ? json(z.real()) : json{z.real(), z.imag()}; }

Vec17 vec17_from_json(const json& j) {
    if (!j.is_array() || j.size() != 17) fail("BadInput", "17 coordinates expected");
    Vec17 v;
    for (int k = 0; k < 17; ++k) v(k) = complex_from_json(j[k]);
    return v;
}

json vec17_to_json(const Vec17& v) {
    json j = json::array();
    for (int k = 0; k < 17; ++k) j.push_back(complex_to_json(v(k)));
    return j;
}

}  // namespace kin::io
