#pragma once

#include <vector>

#include "kin/dquat.hpp"

namespace kin {

// Invariant Denavit-Hartenberg data of an nR loop; joint r carries (d_r, alpha_r, s_r).
struct DHLoop {
    std::vector<double> d, alpha, s;

    int n() const { return static_cast<int>(d.size()); }
    void check() const {
        if (alpha.size() != d.size() || s.size() != d.size()) fail("BadLoop", "d, alpha, s differ in length");
    }
};

// Relation between consecutive axes a = A_r and b = A_{r+1}.
// normal = unit(u_b x u_a); d = <foot_a - foot_b, normal>; alpha turns u_b into u_a about normal.
struct DHPair {
    double d = 0;
    double alpha = 0;
    Eigen::Vector3d foot_a, foot_b, normal;
    bool parallel = false;
    bool degenerate = false;  // identical lines
};

// Throws ParallelAxes for distinct parallel lines unless allow_parallel is set.
DHPair dh_between_lines(const LineAxis& a, const LineAxis& b, bool allow_parallel = false, double tol = 1e-12);

struct LoopGeometry {
    DHLoop loop;
    std::vector<double> phi;  // joint angles of the given placement
    std::vector<DHPair> pairs;
};

// DH data and joint angles of the closed loop with axes A_0..A_{n-1}.
LoopGeometry loop_from_lines(const std::vector<LineAxis>& axes, double tol = 1e-12);

}  // namespace kin
