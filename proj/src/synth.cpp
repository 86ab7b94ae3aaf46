#include "kin/synth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace kin {

Eigen::Vector3d RationalPlaneCurve::at(double t) const {
    double q = den.eval_right(t);
    return {x_num.eval_right(t) / q, y_num.eval_right(t) / q, 0.0};
}

RationalPlaneCurve ellipse_curve(double a, double b) {
    return {RealPoly({-2 * a}), RealPoly({0.0, 2 * b}), RealPoly({1.0, 0.0, 1.0})};
}

namespace {

// First factor order (in lexicographic sequence) that factorizes a.
std::optional<std::vector<DualQuaternion>> try_orders(const MotionPoly& a, double tol,
                                                      const std::vector<std::optional<Quaternion>>& hints = {}) {
    std::vector<RealPoly> fac = norm_factors(a, tol);
    if ((int)fac.size() != a.degree()) return std::nullopt;
    std::vector<int> idx(fac.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
        for (size_t j = 0; j < i; ++j)
            if (coeff_distance(fac[i], fac[j]) <= 1e-7 * std::max(1.0, fac[j].max_abs())) {
                idx[i] = idx[j];
                break;
            }
    }
    std::sort(idx.begin(), idx.end());
    do {
        std::vector<RealPoly> order;
        for (int i : idx) order.push_back(fac[i]);
        try {
            return factorize(a, order, tol, hints);
        } catch (const Error&) {
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return std::nullopt;
}

DualQuaternion factor_value(const DualQuaternion& h, double t, bool reverse) {
    DualQuaternion k = reverse ? h.conj() : h;
    if (!std::isfinite(t)) return DualQuaternion(1.0);
    if (std::abs(t) <= 1) return DualQuaternion(t) - k;
    return DualQuaternion(1.0) - k / t;
}

}  // namespace

CurveMotion curve_to_motion_poly(const RationalPlaneCurve& c, const Quaternion& unit, double tol) {
    if (c.den.zero()) fail("NotRealizable", "zero denominator");
    int deg = c.den.degree();
    if (c.x_num.degree() > deg || c.y_num.degree() > deg) fail("NotRealizable", "curve passes through infinity");
    double lead = c.den.lead();
    std::vector<DualQuaternion> coeffs;
    for (int i = 0; i <= deg; ++i) {
        Eigen::Vector3d v(c.x_num[i] / 2, c.y_num[i] / 2, 0);
        coeffs.push_back(DualQuaternion{Quaternion{c.den[i]}, Quaternion::pure(v)} / lead);
    }
    CurveMotion out;
    out.poly = MotionPoly(coeffs);
    if (auto h = try_orders(out.poly, tol)) {
        out.factors = *h;
        return out;
    }
    Quaternion u = unit / std::sqrt(unit.norm());
    out.poly = MotionPoly::linear(DualQuaternion(u)) * out.poly;
    out.premultiplied = true;
    out.unit = u;
    if (auto h = try_orders(out.poly, tol)) {
        out.factors = *h;
        return out;
    }
    fail("NotRealizable", "factorization obstructed after one premultiplication");
}

std::vector<MotionPoly> FactorizationGraph::path_products(int from, int to) const {
    std::vector<MotionPoly> out;
    std::function<void(int, MotionPoly)> walk = [&](int v, MotionPoly acc) {
        if (v == to) {
            out.push_back(acc);
            return;
        }
        for (const auto& e : edges)
            if (e.from == v) walk(e.to, acc * MotionPoly::linear(e.h));
    };
    walk(from, MotionPoly({DualQuaternion(1.0)}));
    return out;
}

double FactorizationGraph::path_independence_residual() const {
    double worst = 0;
    for (int u : vertices)
        for (int v : vertices) {
            if (u == v) continue;
            auto prods = path_products(u, v);
            for (size_t i = 1; i < prods.size(); ++i) worst = std::max(worst, coeff_distance(prods[0], prods[i]));
        }
    return worst;
}

LineAxis factor_axis(const DualQuaternion& h, double tol) {
    DualQuaternion k{Quaternion::pure(h.p.vec()), Quaternion::pure(h.d.vec())};
    double scale = std::max(1.0, h.max_abs());
    if (std::abs(h.d.w) > tol * scale || std::abs(k.study()) > tol * scale * scale)
        fail("NotOnStudyQuadric", "t - h is not a motion polynomial");
    if (k.p.vec().norm() <= tol * scale) fail("NotARevolution", "linear factor parametrizes a translation");
    return halfturn_line(k, tol * scale);
}

Drawer build_drawer(const MotionPoly& q, const DualQuaternion& spare, std::optional<Quaternion> free_dual, double tol) {
    if (q.degree() != 3) fail("BadDrawer", "expected a cubic motion polynomial");
    auto f = try_orders(q, tol, {std::nullopt, std::nullopt, free_dual});
    if (!f) fail("DegenerateRemainder", "cubic does not factor");
    Drawer dr;
    auto& h = dr.h;
    h[0] = spare;
    h[1] = (*f)[0];
    h[2] = (*f)[1];
    h[3] = (*f)[2];
    std::tie(h[4], h[5]) = flip(h[0], h[1], tol);
    std::tie(h[6], h[7]) = flip(h[5], h[2], tol);
    std::tie(h[8], h[9]) = flip(h[7], h[3], tol);
    dr.graph.vertices = {1, 2, 3, 4, 5, 6, 7, 8};
    dr.graph.edges = {{1, 2, h[1]}, {2, 3, h[2]}, {3, 4, h[3]}, {5, 1, h[0]}, {5, 6, h[4]},
                      {6, 2, h[5]}, {6, 7, h[6]}, {7, 3, h[7]}, {7, 8, h[8]}, {8, 4, h[9]}};
    for (const auto& e : dr.graph.edges) factor_axis(e.h, 1e-7);
    return dr;
}

Drawer ellipse_drawer(double a, double b, double c, double d) {
    RationalPlaneCurve e = ellipse_curve(a, b);
    std::vector<DualQuaternion> coeffs;
    for (int i = 0; i <= 2; ++i)
        coeffs.push_back(DualQuaternion{Quaternion{e.den[i]}, Quaternion::pure(Eigen::Vector3d(e.x_num[i] / 2, e.y_num[i] / 2, 0))});
    MotionPoly q = MotionPoly::linear(DualQuaternion(qk)) * MotionPoly(coeffs);
    return build_drawer(q, DualQuaternion{qk * 2, qj * d}, qj * -c);
}

Isometry link_pose(const FactorizationGraph& g, int fixed, int v, double t, double tol) {
    // breadth-first search over edges in both directions
    std::map<int, std::pair<int, int>> parent;  // vertex -> (edge index, previous vertex)
    std::queue<int> todo;
    todo.push(fixed);
    parent[fixed] = {-1, fixed};
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop();
        for (size_t i = 0; i < g.edges.size(); ++i) {
            const auto& e = g.edges[i];
            int y = e.from == x ? e.to : e.to == x ? e.from : -1;
            if (y < 0 || parent.count(y)) continue;
            parent[y] = {(int)i, x};
            todo.push(y);
        }
    }
    if (!parent.count(v)) fail("Disconnected", "no path between the links");
    DualQuaternion acc(1.0);
    for (int x = v; x != fixed; x = parent[x].second) {
        const auto& e = g.edges[parent[x].first];
        DualQuaternion fv = factor_value(e.h, t, e.from != x);
        if (std::sqrt(fv.p.norm()) <= tol) fail("PoleAtSample", "edge label vanishes at the sample");
        acc = acc * fv;
    }
    return dq_to_isometry(acc, 1e-7);
}

std::vector<Eigen::Vector3d> trace(const FactorizationGraph& g, int fixed, int marked, const std::vector<double>& ts,
                                   double tol) {
    std::vector<Eigen::Vector3d> out;
    for (double t : ts) out.push_back(link_pose(g, fixed, marked, t, tol).apply(Eigen::Vector3d::Zero()));
    return out;
}

std::vector<double> default_grid(int n) {
    std::vector<double> ts;
    for (int k = 0; k < n; ++k) ts.push_back(std::tan(M_PI * (k + 0.5) / n - M_PI / 2));
    return ts;
}

SkewIsogram bennett_from_conic(const MotionPoly& p, double tol) {
    if (p.degree() != 2) fail("NotGeneric", "expected a quadratic motion polynomial");
    RealPoly n = norm_poly(p, tol);
    auto fac = real_poly_factor(n);
    if (fac.factors.size() != 2 || fac.factors[0].poly.degree() != 2 || fac.factors[1].poly.degree() != 2)
        fail("NotGeneric", "norm polynomial needs two distinct irreducible quadratic factors");
    const RealPoly& m1 = fac.factors[0].poly;
    const RealPoly& m2 = fac.factors[1].poly;
    MotionPoly monic = p.lead().inverse() * p;
    SkewIsogram out;
    auto a = factorize(monic, {m2, m1}, tol);
    auto b = factorize(monic, {m1, m2}, tol);
    out.r1 = a[0];
    out.w1 = a[1];
    out.r2 = b[0];
    out.w2 = b[1];
    out.axes = {factor_axis(out.w1), factor_axis(out.r1), factor_axis(out.r2), factor_axis(out.w2)};
    LoopGeometry geo = loop_from_lines({out.axes.begin(), out.axes.end()});
    out.dh = geo.loop;
    out.phi = geo.phi;
    return out;
}

std::array<LineAxis, 4> SkewIsogram::axes_at(double t) const {
    Isometry m1 = dq_to_isometry(factor_value(w1, t, false), 1e-7);
    Isometry m2 = dq_to_isometry(factor_value(w2, t, false), 1e-7);
    return {axes[0], moved(axes[1], m1), moved(axes[2], m2), axes[3]};
}

std::vector<double> bennett_residuals(const DHLoop& dh) {
    if (dh.n() != 4) fail("BadLoop", "Bennett conditions need four joints");
    const auto &d = dh.d, &a = dh.alpha, &s = dh.s;
    return {d[1] - d[3], d[0] - d[2], a[1] - a[3], a[0] - a[2], d[1] / std::sin(a[1]) - d[0] / std::sin(a[0]),
            s[0], s[1], s[2], s[3]};
}

double bennett_residual(const DHLoop& dh) {
    double m = 0;
    for (double r : bennett_residuals(dh)) m = std::max(m, std::abs(r));
    return m;
}

}  // namespace kin
