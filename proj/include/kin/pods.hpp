#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kin/dquat.hpp"

namespace kin {

using Vec17 = Eigen::Matrix<cplx, 17, 1>;

// (h, m11, m12, ..., m33, x1..x3, y1..y3, r)
struct GroupSpacePoint {
    Vec17 c = Vec17::Zero();

    cplx h() const { return c(0); }
    Eigen::Matrix3cd M() const;
    Eigen::Vector3cd x() const { return c.segment<3>(10); }
    Eigen::Vector3cd y() const { return c.segment<3>(13); }
    cplx r() const { return c(16); }

    static GroupSpacePoint from(cplx h, const Eigen::Matrix3cd& M, const Eigen::Vector3cd& x, const Eigen::Vector3cd& y,
                                cplx r);
};

// (u, a1..a3, b1..b3, z11, z12, ..., z33, l)
struct LegSpacePoint {
    Vec17 c = Vec17::Zero();

    cplx u() const { return c(0); }
    Eigen::Vector3cd a() const { return c.segment<3>(1); }
    Eigen::Vector3cd b() const { return c.segment<3>(4); }
    Eigen::Matrix3cd Z() const;
    cplx l() const { return c(16); }
};

struct Leg {
    Eigen::Vector3d a = Eigen::Vector3d::Zero();  // base anchor
    Eigen::Vector3d b = Eigen::Vector3d::Zero();  // platform anchor
    double d = 1;
};

// h = 1, M = rotation, y = translation, x = -M^t y, r = <x, x>
GroupSpacePoint group_point(const Isometry& iso);
// Eq. (3) residuals after scaling to unit norm; includes det M = h^3
double group_residual(const GroupSpacePoint& g);
// Jacobian of the quadrics vanishing on X at g (44 x 17)
Eigen::MatrixXcd group_jacobian(const GroupSpacePoint& g);

LegSpacePoint leg_point(const Leg& leg);
// complex anchors with corrected length l = <a,a> + <b,b> - d^2
LegSpacePoint leg_point(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b, cplx l);
// second singular value of [[u, b^t], [a, Z]] over the first
double leg_variety_residual(const LegSpacePoint& y);
// leg variety residual plus the coordinates that vanish on planar legs
double planar_residual(const LegSpacePoint& y);

// l h + u r - 2 <a, x> - 2 <b, y> - 2 sum z_ij m_ji
cplx pairing(const GroupSpacePoint& g, const LegSpacePoint& y);

struct DuporcqOptions {
    int starts = 400;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool require_real = false;
};

struct DuporcqResult {
    LegSpacePoint point;  // u = 1 when finite
    bool finite = true;
    bool real = false;
    Eigen::Vector3cd a, b;
    cplx d_squared;
    Leg leg;  // meaningful when real and d_squared > 0
    double span_residual = 0;
    double planar_residual = 0;
    int starts_used = 0;
};

DuporcqResult duporcq_sixth(const std::vector<Leg>& legs, const DuporcqOptions& opt = {});

// distance of y from the span of the given points, all scaled to unit norm
double span_residual(const std::vector<LegSpacePoint>& span, const LegSpacePoint& y);

Leg borel_leg(const Eigen::Vector3d& base, double alpha, double beta);
// rotation by theta about the z-axis and translation (0, 0, +-sqrt(2 alpha cos theta - beta))
Isometry borel_motion(double alpha, double beta, double theta, bool upper = true);
// the thirteen linear forms and the two quadrics of the Borel curve
double borel_group_residual(const GroupSpacePoint& g, double alpha, double beta);
// the four linear forms of its dual space
double borel_leg_residual(const LegSpacePoint& y, double alpha, double beta);

enum class Stratum { Zi_inversion, Zb_collineation, Zs_similarity, Zc_conic, Zv_vertex };
std::string to_string(Stratum s);

struct BondOptions {
    double tol = 1e-9;
    double rank_threshold = 1e-7;
};

Stratum classify_bond(const GroupSpacePoint& g, const BondOptions& opt = {});

// rows orthonormal
using Projection = Eigen::Matrix<double, 2, 3>;

struct PlanarSimilarity {
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
    Eigen::Vector2d shift = Eigen::Vector2d::Zero();
    Eigen::Vector2d apply(const Eigen::Vector2d& p) const { return linear * p + shift; }
};

// p -> center + k (p - center) / |p - center|^2; negative k adds the half turn
struct PlanarInversion {
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double k = 1;
    Eigen::Vector2d apply(const Eigen::Vector2d& p) const;
};

bool similarity_projection_verify(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb,
                                  const PlanarSimilarity& s, double tol);
bool inversion_projection_verify(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb,
                                 const PlanarInversion& inv, double tol);

struct SimilarityFit {
    PlanarSimilarity map;
    double residual = 0;  // max distance
};

// least-squares similarity (either orientation) from pa(a_l) to pb(b_l)
SimilarityFit fit_similarity(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb);

Projection vertical_projection();

struct CombinedCollineation {
    LineAxis ga, gb;
    unsigned on_a = 0;  // legs with a on ga
    unsigned on_b = 0;  // legs with b on gb
};

std::vector<CombinedCollineation> combined_collineations(const std::vector<Eigen::Vector3d>& base,
                                                         const std::vector<Eigen::Vector3d>& platform,
                                                         double tol = 1e-9);

struct TwinDistances {
    double leg = 0;   // |sigma(a) - b|
    double twin = 0;  // |sigma(b) - a|
};

TwinDistances twin_distances(const Isometry& sigma, const Leg& leg, double tol = 1e-9);
bool twin_check(const Isometry& sigma, const Leg& leg, double tol = 1e-9);

// a leg together with (b, a, d), possibly complex
struct TwinPair {
    Eigen::Vector3cd a, b;
    cplx l;  // corrected length

    static TwinPair from(const Leg& leg);
    LegSpacePoint point() const { return leg_point(a, b, l); }
    LegSpacePoint twin_point() const { return leg_point(b, a, l); }
    // (u, a+b, z11, z22, z33, z12+z21, z13+z31, z23+z32, l)
    Eigen::Matrix<cplx, 11, 1> symmetrized() const;
    bool real(double tol = 1e-8) const;
};

struct IcosapodOptions {
    int starts = 600;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

struct IcosapodResult {
    std::vector<TwinPair> pairs;        // additional pairs
    std::vector<double> span_residuals;  // one per pair
    int real_count = 0;
    std::string warning;
};

IcosapodResult icosapod_complete(const std::vector<TwinPair>& pairs, const IcosapodOptions& opt = {});
// distance of the pair from span(pairs) and the linear form vanishing on half turns
double icosapod_span_residual(const std::vector<TwinPair>& pairs, const TwinPair& p);

// coefficients of numerator / (1 - t)^pole_order
std::vector<long long> hilbert_expand(const std::vector<long long>& numerator, int pole_order, int terms);

struct CurveInvariants {
    long long degree = 0;
    long long genus = 0;
};

// for a Hilbert series numerator / (1 - t)^2
CurveInvariants curve_invariants(const std::vector<long long>& numerator);

}  // namespace kin
