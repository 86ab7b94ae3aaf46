#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kin/dh.hpp"
#include "kin/ncpoly.hpp"

namespace kin {

// Joint angles phi_r; the cotangent form is t_r = cot(phi_r / 2), with t = inf at phi = 0.
struct LoopConfiguration {
    std::vector<double> phi;

    static LoopConfiguration from_cot(const std::vector<double>& t);
    std::vector<double> cot() const;
};

// Rotation by phi about the x-axis, proportional to t - i.
DualQuaternion joint_factor(double phi);

// g_r = (1 + (s/2) eps i)(w - k)(1 + (d/2) eps k) with w = cot(alpha/2):
// translate s along x, rotate alpha about z, translate d along z.
DualQuaternion dh_to_dq(const DHLoop& loop, int r);
// Same displacement written with cos and sin of alpha/2; always defined, unit norm.
DualQuaternion dh_to_dq_angle(const DHLoop& loop, int r);

// x = (t_0 - i) g_0 ... (t_{n-1} - i) g_{n-1}, unit representative.
DualQuaternion closure_product(const DHLoop& loop, const std::vector<double>& phi);
// Same with cotangent parameters; infinite entries drop their factor.
DualQuaternion closure_product_cot(const DHLoop& loop, const std::vector<double>& t);
// Max of the seven non-scalar coefficients of the normalized closure product.
double closure_residual(const DHLoop& loop, const std::vector<double>& phi);
double closure_residual(const DualQuaternion& x);

// Vector parts of the closure product and their derivatives in the joint angles.
Eigen::Matrix<double, 6, 1> closure_vector(const DHLoop& loop, const std::vector<double>& phi);
Eigen::MatrixXd closure_jacobian(const DHLoop& loop, const std::vector<double>& phi);

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 60;
    int max_halvings = 20;
    double step_deg = 1.0;
};

struct NewtonDiverged : Error {
    std::vector<double> last_good;
    int step;
    NewtonDiverged(std::vector<double> last, int s, const std::string& detail)
        : Error("NewtonDiverged", detail), last_good(std::move(last)), step(s) {}
};

// Equations in angle-like unknowns; an empty jacobian means central differences.
struct AngleSystem {
    std::function<Eigen::VectorXd(const std::vector<double>&)> residual;
    std::function<Eigen::MatrixXd(const std::vector<double>&)> jacobian;
};

AngleSystem closure_system(const DHLoop& loop);

// Damped Gauss-Newton on the unknowns listed in free; returns the max-abs residual.
double newton_solve(const AngleSystem& sys, std::vector<double>& x, const std::vector<int>& free,
                    const NewtonOptions& opt = {});

// Damped Gauss-Newton on the joints listed in free_joints; returns the max-abs residual.
double newton_correct(const DHLoop& loop, std::vector<double>& phi, const std::vector<int>& free_joints,
                      const NewtonOptions& opt = {});

struct MobilityTrace {
    std::vector<std::vector<double>> configs;  // one per sweep value
    std::vector<double> residuals;
};

// Drives joint `drive` through the sweep angles and solves for the others.
// Throws NewtonDiverged with the index of the sweep value that failed.
MobilityTrace trace_mobility(const DHLoop& loop, const std::vector<double>& start, int drive,
                             const std::vector<double>& sweep, const NewtonOptions& opt = {},
                             bool require_closed_start = true);

// Continuation of sys along the sweep of unknown `drive`; the others are solved.
MobilityTrace continue_system(const AngleSystem& sys, const std::vector<double>& start, int drive,
                              const std::vector<double>& sweep, const NewtonOptions& opt = {});

// Newton from random starts with all joints free.
std::optional<std::vector<double>> find_configuration(const DHLoop& loop, unsigned seed = 1, int attempts = 200,
                                                      const NewtonOptions& opt = {});

enum class FourR { planar, spherical, skew_isogram, rigid };
std::string to_string(FourR c);
FourR classify_4r(const DHLoop& loop, double tol = 1e-9);

enum class ThreeAxes { parallel, concurrent, bennett, none };
std::string to_string(ThreeAxes c);
// Axes r, r+1, r+2: s_{r+1} = 0 and d_r / sin a_r = +-d_{r+1} / sin a_{r+1}.
ThreeAxes bennett3_check(const DHLoop& loop, int r, double tol = 1e-9);

// The two quadratics whose common zero detects bonds entangling joints first and first+3 of a 6R loop.
// sign1, sign4 pick t = +-i at the two entangled joints.
struct BondQuadratics {
    ComplexPoly q1, q4;
};
BondQuadratics bond_quadratics(const DHLoop& loop, int sign1 = 1, int sign4 = 1, int first = 1);

struct CommonRoot {
    bool shared = false;
    double resultant = 0;  // relative to the coefficient sizes
    std::vector<cplx> roots;
};
CommonRoot common_root(const ComplexPoly& p, const ComplexPoly& q, double tol = 1e-8);

// All angles right, all offsets zero, d = b; needs b0^2-b1^2+b2^2-b3^2+b4^2-b5^2 = 0.
DHLoop bricard_orthogonal(const std::array<double, 6>& b, double tol = 1e-12);
double bricard_orthogonal_relation(const std::array<double, 6>& b);

// Period-three repetition of the data.
DHLoop bricard_line_symmetric(const std::array<double, 3>& d, const std::array<double, 3>& alpha,
                              const std::array<double, 3>& s);
// Scalar parts of X = T0 T1 T2 for phi = (phi0, phi1, phi2); zero means X is a half turn.
AngleSystem line_symmetric_system(const DHLoop& loop);
std::vector<double> line_symmetric_extend(const std::vector<double>& half);

// Plane symmetric 6R data: axes 0 and 3 lie in the mirror plane, 1 <-> 5 and 2 <-> 4.
struct PlaneSymmetricData {
    std::array<double, 3> d, alpha;
    double s1 = 0, s2 = 0;
};
DHLoop bricard_plane_symmetric(const PlaneSymmetricData& p);
// Validates d = (d0,d1,d2,-d2,-d1,-d0), mirrored angles, s = (0,s1,s2,0,-s2,-s1).
DHLoop bricard_plane_symmetric(const DHLoop& loop, double tol = 1e-9);
double plane_symmetric_violation(const DHLoop& loop);
// The relations as printed: d0=d5, d1=d4, d2=d3, a0=a5, a1=a4, a2=a3, s1=-s0, s2=-s5, s0=s3=0.
double plane_symmetric_violation_printed(const DHLoop& loop);
// For psi = (psi0, phi1, phi2, psi3): X = J(psi0) g0 J(phi1) g1 J(phi2) g2 J(psi3);
// residual (X.p.x, X.p.z, X.d.y, X.d.w) vanishes when X is a rotation about an axis normal to the mirror.
DualQuaternion plane_symmetric_half(const DHLoop& loop, const std::vector<double>& psi);
AngleSystem plane_symmetric_system(const DHLoop& loop);
std::vector<double> plane_symmetric_extend(const std::vector<double>& psi);

}  // namespace kin
