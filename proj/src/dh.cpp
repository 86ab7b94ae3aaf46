#include "kin/dh.hpp"

namespace kin {

namespace {

Eigen::Vector3d project(const LineAxis& l, const Eigen::Vector3d& p) {
    Eigen::Vector3d u = l.direction.normalized();
    Eigen::Vector3d c = l.point();
    return c + (p - c).dot(u) * u;
}

Eigen::Vector3d any_perpendicular(const Eigen::Vector3d& u) {
    Eigen::Vector3d e = std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    return u.cross(e).normalized();
}

}  // namespace

DHPair dh_between_lines(const LineAxis& a, const LineAxis& b, bool allow_parallel, double tol) {
    Eigen::Vector3d ua = a.direction.normalized(), ub = b.direction.normalized();
    Eigen::Vector3d cr = ub.cross(ua);
    DHPair out;
    if (cr.norm() <= tol) {
        out.parallel = true;
        out.foot_b = project(b, Eigen::Vector3d::Zero());
        out.foot_a = project(a, out.foot_b);
        Eigen::Vector3d gap = out.foot_a - out.foot_b;
        out.alpha = ua.dot(ub) > 0 ? 0.0 : M_PI;
        if (gap.norm() <= tol) {
            out.degenerate = true;
            out.normal = any_perpendicular(ua);
            out.d = 0;
            return out;
        }
        if (!allow_parallel) fail("ParallelAxes", "axes are parallel");
        out.normal = gap.normalized();
        out.d = gap.norm();
        return out;
    }
    out.normal = cr.normalized();
    out.alpha = std::atan2(cr.norm(), ub.dot(ua));
    // closest points: solve for the feet along each line
    Eigen::Vector3d pa = a.point(), pb = b.point(), w = pa - pb;
    double aa = 1, bb = ua.dot(ub), cc = 1, dd = ua.dot(w), ee = ub.dot(w);
    double den = aa * cc - bb * bb;
    double sa = (bb * ee - cc * dd) / den;
    double sb = (aa * ee - bb * dd) / den;
    out.foot_a = pa + sa * ua;
    out.foot_b = pb + sb * ub;
    out.d = (out.foot_a - out.foot_b).dot(out.normal);
    return out;
}

LoopGeometry loop_from_lines(const std::vector<LineAxis>& axes, double tol) {
    const int n = axes.size();
    if (n < 3) fail("BadLoop", "need at least three axes");
    LoopGeometry g;
    g.loop.d.resize(n);
    g.loop.alpha.resize(n);
    g.loop.s.resize(n);
    g.phi.resize(n);
    for (int r = 0; r < n; ++r) {
        g.pairs.push_back(dh_between_lines(axes[r], axes[(r + 1) % n], true, tol));
        g.loop.d[r] = g.pairs[r].d;
        g.loop.alpha[r] = g.pairs[r].alpha;
    }
    for (int r = 0; r < n; ++r) {
        const DHPair& prev = g.pairs[(r + n - 1) % n];
        const DHPair& cur = g.pairs[r];
        Eigen::Vector3d u = axes[r].direction.normalized();
        g.loop.s[r] = (prev.foot_b - cur.foot_a).dot(u);
        g.phi[r] = std::atan2(cur.normal.cross(prev.normal).dot(u), cur.normal.dot(prev.normal));
    }
    return g;
}

}  // namespace kin
