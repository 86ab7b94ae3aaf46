#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kin/dh.hpp"
#include "kin/ncpoly.hpp"

namespace kin {

// p(t) = (x_num / den, y_num / den, 0)
struct RationalPlaneCurve {
    RealPoly x_num, y_num, den;

    Eigen::Vector3d at(double t) const;
};

RationalPlaneCurve ellipse_curve(double a, double b);

struct CurveMotion {
    MotionPoly poly;
    bool premultiplied = false;
    Quaternion unit;                   // the rotation factor t - unit, when premultiplied
    std::vector<DualQuaternion> factors;  // one factorization of poly
};

// Translation polynomial den + eps (x_num i + y_num j) / 2, premultiplied by t - unit
// once if its factorization is obstructed.
CurveMotion curve_to_motion_poly(const RationalPlaneCurve& c, const Quaternion& unit = qk, double tol = 1e-9);

// Directed graph of links; the edge u -> v labelled t - h.
struct FactorizationGraph {
    struct Edge {
        int from, to;
        DualQuaternion h;
    };
    std::vector<int> vertices;
    std::vector<Edge> edges;

    // products of edge labels along all directed paths from -> to
    std::vector<MotionPoly> path_products(int from, int to) const;
    // max coefficient distance between path products with equal endpoints
    double path_independence_residual() const;
};

struct Drawer {
    FactorizationGraph graph;
    std::array<DualQuaternion, 10> h;
    int fixed = 4;
    int marked = 1;
};

// The eight-link graph built from Q = (t-h1)(t-h2)(t-h3) and a spare h0 by three flips.
// free_dual picks the dual part of h3 where the factorization leaves it open.
Drawer build_drawer(const MotionPoly& q, const DualQuaternion& spare, std::optional<Quaternion> free_dual = std::nullopt,
                    double tol = 1e-9);
Drawer ellipse_drawer(double a, double b, double c = 0, double d = 1);

// Pose of link v in the frame of the fixed link at parameter t.
Isometry link_pose(const FactorizationGraph& g, int fixed, int v, double t, double tol = 1e-9);
std::vector<Eigen::Vector3d> trace(const FactorizationGraph& g, int fixed, int marked, const std::vector<double>& ts,
                                   double tol = 1e-9);
// n parameters tan(pi (k + 1/2) / n - pi/2), covering the real line without t = inf
std::vector<double> default_grid(int n);

// Axis of the revolution t - h, oriented by vec(h).
LineAxis factor_axis(const DualQuaternion& h, double tol = 1e-9);

struct SkewIsogram {
    DualQuaternion r1, w1, r2, w2;  // P = (t-r1)(t-w1) = (t-r2)(t-w2)
    std::array<LineAxis, 4> axes;   // loop order w1, r1, r2, w2
    DHLoop dh;
    std::vector<double> phi;        // joint angles at t = inf

    // loop axes in the base frame at parameter t
    std::array<LineAxis, 4> axes_at(double t) const;
};

SkewIsogram bennett_from_conic(const MotionPoly& p, double tol = 1e-9);

// Residuals of d1=d3, d0=d2, a1=a3, a0=a2, d1/sin a1 = d0/sin a0, s_r = 0.
std::vector<double> bennett_residuals(const DHLoop& dh);
double bennett_residual(const DHLoop& dh);

}  // namespace kin
