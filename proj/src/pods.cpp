#include "kin/pods.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "kin/error.hpp"

namespace kin {

namespace {

constexpr int iH = 0, iM = 1, iX = 10, iY = 13, iR = 16;
constexpr int iU = 0, iA = 1, iB = 4, iZ = 7, iL = 16;

Vec17 unit(const Vec17& v) {
    double n = v.norm();
    if (n == 0) fail("BadInput", "zero coordinate vector");
    return v / n;
}

// polynomials of Eq. (3), all quadratic
Eigen::VectorXcd eq3(const Vec17& v) {
    GroupSpacePoint g{v};
    Eigen::Matrix3cd M = g.M();
    cplx h = g.h();
    Eigen::Vector3cd x = g.x(), y = g.y();
    Eigen::Matrix3cd I = Eigen::Matrix3cd::Identity();
    Eigen::Matrix3cd e1 = M * M.transpose() - h * h * I;
    Eigen::Matrix3cd e2 = M.transpose() * M - h * h * I;
    Eigen::Matrix3cd adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // adj(M)_ij = cofactor of m_ji
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj(i, j) = M(r0, c0) * M(r1, c1) - M(r0, c1) * M(r1, c0);
        }
    Eigen::Matrix3cd e3 = adj - h * M.transpose();
    Eigen::Vector3cd e4 = M.transpose() * y + h * x;
    Eigen::Vector3cd e5 = M * x + h * y;
    Eigen::VectorXcd out(35);
    int k = 0;
    for (const auto* m : {&e1, &e2, &e3})
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out(k++) = (*m)(i, j);
    for (int i = 0; i < 3; ++i) out(k++) = e4(i);
    for (int i = 0; i < 3; ++i) out(k++) = e5(i);
    out(k++) = (x.transpose() * x)(0) - g.r() * h;
    out(k++) = (y.transpose() * y)(0) - g.r() * h;
    return out;
}

// bilinear; Eigen's cross conjugates complex results
Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
    return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// Eq. (3) plus y x (M e_k) + M (x x e_k), which complete the quadrics of X
Eigen::VectorXcd ideal_quadrics(const Vec17& v) {
    GroupSpacePoint g{v};
    Eigen::Matrix3cd M = g.M();
    Eigen::Vector3cd x = g.x(), y = g.y();
    Eigen::VectorXcd out(44);
    out.head(35) = eq3(v);
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3cd e = Eigen::Vector3cd::Unit(k);
        out.segment<3>(35 + 3 * k) = cross(y, M.col(k)) + M * cross(x, e);
    }
    return out;
}

template <class F>
bool newton(F&& f, Eigen::VectorXcd& v, int iters = 60, double tol = 1e-13) {
    for (int it = 0; it < iters; ++it) {
        auto [val, jac] = f(v);
        double scale = 1 + v.norm();
        if (!std::isfinite(val.norm()) || scale > 1e8) return false;
        if (val.norm() < tol * scale) {
            // one more step to polish
            Eigen::VectorXcd step = jac.fullPivLu().solve(val);
            if (std::isfinite(step.norm())) v -= step;
            return true;
        }
        Eigen::VectorXcd step = jac.fullPivLu().solve(val);
        if (!std::isfinite(step.norm())) return false;
        v -= step;
    }
    auto [val, jac] = f(v);
    return val.norm() < 1e3 * tol * (1 + v.norm());
}

cplx crandn(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

// sine of the angle between two complex projective points
double proj_distance(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) {
    double np = p.norm(), nq = q.norm();
    if (np == 0 || nq == 0) return 1;
    double c = std::abs(p.dot(q)) / (np * nq);
    return std::sqrt(std::max(0.0, 1 - c * c));
}

double leg_scale(const std::vector<Leg>& legs) {
    double s = 1;
    for (const Leg& l : legs) s = std::max({s, l.a.norm(), l.b.norm(), l.d});
    return s;
}

cplx to_c(const Eigen::Vector2d& v) { return {v(0), v(1)}; }


// exponents of the monomials of degree d in three variables
std::vector<std::array<int, 3>> monomials(int d) {
    std::vector<std::array<int, 3>> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

Eigen::VectorXd monomial_values(int d, const Eigen::Vector3d& p) {
    auto mons = monomials(d);
    Eigen::VectorXd v(mons.size());
    for (size_t k = 0; k < mons.size(); ++k)
        v(k) = std::pow(p(0), mons[k][0]) * std::pow(p(1), mons[k][1]) * std::pow(p(2), mons[k][2]);
    return v;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, int dim) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

// The p-parts of the six solutions of p^t A_m q = 0 are the common zeros of the
// maximal minors of the 4 x 3 matrix with rows p^t A_m; these cubics span the
// cubics through all six. A cubic l * C through the first five, with C their
// conic, is then evaluated at the sixth by a fixed linear form, which is linear in l.
bool sixth_by_cubics(const std::vector<Eigen::Matrix3d>& ann, const std::vector<Eigen::Vector3d>& known,
                     Eigen::Vector3d& p6) {
    auto minors = [&](const Eigen::Vector3d& p) {
        Eigen::Matrix<double, 4, 3> Bm;
        for (int m = 0; m < 4; ++m) Bm.row(m) = p.transpose() * ann[m];
        Eigen::Vector4d d;
        for (int j = 0; j < 4; ++j) {
            Eigen::Matrix3d sub;
            for (int r = 0, k = 0; r < 4; ++r)
                if (r != j) sub.row(k++) = Bm.row(r);
            d(j) = sub.determinant();
        }
        return d;
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::MatrixXd E(10, 10), D(10, 4);
    for (int i = 0; i < 10; ++i) {
        Eigen::Vector3d p(u(rng), u(rng), u(rng));
        E.row(i) = monomial_values(3, p).transpose();
        D.row(i) = minors(p).transpose();
    }
    Eigen::MatrixXd cubics = E.fullPivLu().solve(D);  // 10 x 4

    Eigen::MatrixXd K3(5, 10), K2(5, 6);
    for (int k = 0; k < 5; ++k) {
        K3.row(k) = monomial_values(3, known[k]).transpose();
        K2.row(k) = monomial_values(2, known[k]).transpose();
    }
    Eigen::MatrixXd V5 = null_space(K3, 5);
    Eigen::MatrixXd S = V5.transpose() * cubics;  // 5 x 4
    Eigen::VectorXd phi = null_space(S.transpose(), 1);
    Eigen::VectorXd conic = null_space(K2, 1);

    auto m3 = monomials(3), m2 = monomials(2);
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd lc = Eigen::VectorXd::Zero(10);
        for (size_t k = 0; k < m2.size(); ++k) {
            auto e = m2[k];
            ++e[i];
            auto it = std::find(m3.begin(), m3.end(), e);
            lc(it - m3.begin()) += conic(k);
        }
        p6(i) = phi.dot(V5.transpose() * lc);
    }
    if (p6.norm() == 0) return false;
    p6.normalize();
    Eigen::Vector4d d = minors(p6);
    return d.norm() < 1e-8 * std::pow(1 + ann[0].norm(), 3);
}

}  // namespace

Eigen::Matrix3cd GroupSpacePoint::M() const {
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = c(iM + 3 * i + j);
    return m;
}

GroupSpacePoint GroupSpacePoint::from(cplx h, const Eigen::Matrix3cd& M, const Eigen::Vector3cd& x,
                                      const Eigen::Vector3cd& y, cplx r) {
    GroupSpacePoint g;
    g.c(iH) = h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.c(iM + 3 * i + j) = M(i, j);
    g.c.segment<3>(iX) = x;
    g.c.segment<3>(iY) = y;
    g.c(iR) = r;
    return g;
}

Eigen::Matrix3cd LegSpacePoint::Z() const {
    Eigen::Matrix3cd z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z(i, j) = c(iZ + 3 * i + j);
    return z;
}

GroupSpacePoint group_point(const Isometry& iso) {
    Eigen::Matrix3cd M = iso.rotation.cast<cplx>();
    Eigen::Vector3cd y = iso.translation.cast<cplx>();
    Eigen::Vector3cd x = -(M.transpose() * y);
    return GroupSpacePoint::from(1.0, M, x, y, (x.transpose() * x)(0));
}

double group_residual(const GroupSpacePoint& g) {
    Vec17 v = unit(g.c);
    GroupSpacePoint n{v};
    double det = std::abs(n.M().determinant() - n.h() * n.h() * n.h());
    return std::max(eq3(v).cwiseAbs().maxCoeff(), det);
}

Eigen::MatrixXcd group_jacobian(const GroupSpacePoint& g) {
    // central differences are exact for quadrics
    Eigen::MatrixXcd J(44, 17);
    const double e = 1e-3;
    for (int k = 0; k < 17; ++k) {
        Vec17 p = g.c, m = g.c;
        p(k) += e;
        m(k) -= e;
        J.col(k) = (ideal_quadrics(p) - ideal_quadrics(m)) / (2 * e);
    }
    return J;
}

LegSpacePoint leg_point(const Leg& leg) {
    return leg_point(leg.a.cast<cplx>(), leg.b.cast<cplx>(), leg.a.squaredNorm() + leg.b.squaredNorm() - leg.d * leg.d);
}

LegSpacePoint leg_point(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b, cplx l) {
    LegSpacePoint y;
    y.c(iU) = 1.0;
    y.c.segment<3>(iA) = a;
    y.c.segment<3>(iB) = b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y.c(iZ + 3 * i + j) = a(i) * b(j);
    y.c(iL) = l;
    return y;
}

double leg_variety_residual(const LegSpacePoint& y) {
    Vec17 v = unit(y.c);
    LegSpacePoint n{v};
    Eigen::Matrix4cd S;
    S(0, 0) = n.u();
    S.block<1, 3>(0, 1) = n.b().transpose();
    S.block<3, 1>(1, 0) = n.a();
    S.block<3, 3>(1, 1) = n.Z();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(S);
    auto s = svd.singularValues();
    return s(0) == 0 ? 1.0 : s(1) / s(0);
}

double planar_residual(const LegSpacePoint& y) {
    Vec17 v = unit(y.c);
    double off = std::max({std::abs(v(iA + 2)), std::abs(v(iB + 2))});
    for (int k = 0; k < 3; ++k) off = std::max({off, std::abs(v(iZ + 3 * k + 2)), std::abs(v(iZ + 6 + k))});
    return std::max(off, leg_variety_residual(y));
}

cplx pairing(const GroupSpacePoint& g, const LegSpacePoint& y) {
    cplx s = y.l() * g.h() + y.u() * g.r();
    s -= 2.0 * (y.a().transpose() * g.x())(0);
    s -= 2.0 * (y.b().transpose() * g.y())(0);
    Eigen::Matrix3cd Zm = y.Z(), M = g.M();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s -= 2.0 * Zm(i, j) * M(j, i);
    return s;
}

double span_residual(const std::vector<LegSpacePoint>& span, const LegSpacePoint& y) {
    Eigen::MatrixXcd S(17, span.size());
    for (size_t k = 0; k < span.size(); ++k) S.col(k) = unit(span[k].c);
    Vec17 v = unit(y.c);
    Eigen::VectorXcd c = S.colPivHouseholderQr().solve(v);
    return (S * c - v).norm();
}

DuporcqResult duporcq_sixth(const std::vector<Leg>& legs, const DuporcqOptions& opt) {
    if (legs.size() != 5) fail("BadInput", "five legs required");
    double scale = leg_scale(legs);
    for (const Leg& l : legs)
        if (std::abs(l.a(2)) > opt.tol * scale || std::abs(l.b(2)) > opt.tol * scale) fail("NotPlanar");

    std::vector<LegSpacePoint> pts;
    Eigen::Matrix<double, 9, 5> N;
    for (int k = 0; k < 5; ++k) {
        const Leg& l = legs[k];
        pts.push_back(leg_point(l));
        Eigen::Vector3d p(1, l.a(0), l.a(1)), q(1, l.b(0), l.b(1));
        Eigen::Matrix3d n = p * q.transpose();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) N(3 * i + j, k) = n(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N.transpose(), Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    if (sv(4) < 1e-10 * sv(0)) fail("NotGeneric", "the five leg points are dependent");
    std::vector<Eigen::Matrix3cd> ann;
    for (int m = 0; m < 4; ++m) {
        Eigen::Matrix3cd a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = svd.matrixV()(3 * i + j, 5 + m);
        ann.push_back(a);
    }

    std::mt19937_64 rng(opt.seed);
    Eigen::Vector3cd cp, cq;
    for (int i = 0; i < 3; ++i) cp(i) = crandn(rng), cq(i) = crandn(rng);
    auto system = [&](const Eigen::VectorXcd& v) {
        Eigen::Vector3cd p = v.head<3>(), q = v.tail<3>();
        Eigen::VectorXcd F(6);
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(6, 6);
        for (int m = 0; m < 4; ++m) {
            F(m) = (p.transpose() * ann[m] * q)(0);
            J.block<1, 3>(m, 0) = (ann[m] * q).transpose();
            J.block<1, 3>(m, 3) = (ann[m].transpose() * p).transpose();
        }
        F(4) = cp.dot(p) - 1.0;  // dot conjugates cp; still a fixed linear form
        F(5) = cq.dot(q) - 1.0;
        J.block<1, 3>(4, 0) = cp.adjoint();
        J.block<1, 3>(5, 3) = cq.adjoint();
        return std::pair{F, J};
    };

    std::vector<std::pair<Eigen::Vector3cd, Eigen::Vector3cd>> known;
    for (const Leg& l : legs)
        known.push_back({Eigen::Vector3cd(1, l.a(0), l.a(1)), Eigen::Vector3cd(1, l.b(0), l.b(1))});
    auto is_known = [&](const Eigen::Vector3cd& p, const Eigen::Vector3cd& q) {
        for (auto& [kp, kq] : known)
            if (proj_distance(p, kp) < 1e-6 && proj_distance(q, kq) < 1e-6) return true;
        return false;
    };

    bool found = false;
    Eigen::Vector3cd p6, q6;
    int used = 0;
    std::vector<Eigen::Matrix3d> ann_r;
    std::vector<Eigen::Vector3d> known_p;
    for (auto& a : ann) ann_r.push_back(a.real());
    for (auto& kp : known) known_p.push_back(kp.first.real());
    Eigen::Vector3d lin;
    if (sixth_by_cubics(ann_r, known_p, lin)) {
        Eigen::Matrix<double, 4, 3> Bm;
        for (int m = 0; m < 4; ++m) Bm.row(m) = lin.transpose() * ann_r[m];
        Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> ks(Bm, Eigen::ComputeFullV);
        Eigen::VectorXcd v(6);
        v.head<3>() = lin.cast<cplx>() / cp.dot(lin.cast<cplx>());
        Eigen::Vector3cd q = ks.matrixV().col(2).cast<cplx>();
        v.tail<3>() = q / cq.dot(q);
        if (newton(system, v) && !is_known(v.head<3>(), v.tail<3>())) {
            p6 = v.head<3>();
            q6 = v.tail<3>();
            found = true;
        }
    }
    for (; used < opt.starts && !found; ++used) {
        Eigen::VectorXcd v(6);
        for (int i = 0; i < 6; ++i) v(i) = crandn(rng);
        if (!newton(system, v)) continue;
        Eigen::Vector3cd p = v.head<3>(), q = v.tail<3>();
        if (p.norm() < 1e-8 || q.norm() < 1e-8 || is_known(p, q)) continue;
        p6 = p;
        q6 = q;
        found = true;
    }
    if (!found) fail("NotGeneric", "no sixth intersection point found");

    Eigen::Matrix3cd n6 = p6 * q6.transpose();
    Eigen::VectorXcd rhs(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rhs(3 * i + j) = n6(i, j);
    Eigen::MatrixXcd Nc = N.cast<cplx>();
    Eigen::VectorXcd coef = Nc.colPivHouseholderQr().solve(rhs);
    DuporcqResult res;
    res.starts_used = used;
    Vec17 v6 = Vec17::Zero();
    for (int k = 0; k < 5; ++k) v6 += coef(k) * pts[k].c;
    int big = 0;
    v6.cwiseAbs().maxCoeff(&big);
    res.finite = std::abs(v6(iU)) > 1e-9 * v6.norm();
    v6 /= res.finite ? v6(iU) : v6(big);
    res.point.c = v6;
    res.real = v6.imag().norm() <= 1e-7 * v6.norm();
    if (res.real) res.point.c = v6.real().cast<cplx>();
    res.a = res.point.a();
    res.b = res.point.b();
    res.d_squared = (res.a.transpose() * res.a)(0) + (res.b.transpose() * res.b)(0) - res.point.l();
    res.span_residual = span_residual(pts, res.point);
    res.planar_residual = planar_residual(res.point);
    bool real_leg = res.finite && res.real && res.d_squared.real() > 0;
    if (real_leg) {
        res.leg.a = res.a.real();
        res.leg.b = res.b.real();
        res.leg.d = std::sqrt(res.d_squared.real());
    }
    if (opt.require_real && !real_leg) {
        std::ostringstream os;
        os.precision(17);
        os << "a = (" << res.a(0) << ", " << res.a(1) << "), b = (" << res.b(0) << ", " << res.b(1)
           << "), d^2 = " << res.d_squared;
        fail("NoRealSixth", os.str());
    }
    return res;
}

Leg borel_leg(const Eigen::Vector3d& base, double alpha, double beta) {
    double n2 = base.head<2>().squaredNorm();
    if (n2 < 1e-24) fail("OnAxis", "base point on the rotation axis");
    Leg leg;
    leg.a = base;
    leg.b.head<2>() = alpha * base.head<2>() / n2;
    leg.b(2) = base(2);
    double d2 = n2 + leg.b.head<2>().squaredNorm() - beta;
    if (d2 <= 0) fail("ImaginaryLength");
    leg.d = std::sqrt(d2);
    return leg;
}

Isometry borel_motion(double alpha, double beta, double theta, bool upper) {
    double s = 2 * alpha * std::cos(theta) - beta;
    if (s < 0) fail("OutOfDomain", "2 alpha cos(theta) < beta");
    Isometry iso;
    iso.rotation = Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    iso.translation = Eigen::Vector3d(0, 0, (upper ? 1 : -1) * std::sqrt(s));
    return iso;
}

double borel_group_residual(const GroupSpacePoint& g, double alpha, double beta) {
    GroupSpacePoint n{unit(g.c)};
    Eigen::Matrix3cd M = n.M();
    Eigen::Vector3cd x = n.x(), y = n.y();
    cplx h = n.h();
    cplx forms[] = {n.r() + beta * h - 2 * alpha * M(0, 0),
                    M(0, 0) - M(1, 1),
                    M(0, 1) + M(1, 0),
                    M(2, 2) - h,
                    x(2) + y(2),
                    M(0, 2),
                    M(1, 2),
                    M(2, 0),
                    M(2, 1),
                    x(0),
                    x(1),
                    y(0),
                    y(1),
                    M(0, 0) * M(0, 0) + M(0, 1) * M(0, 1) - h * h,
                    x(2) * x(2) - 2 * alpha * M(0, 0) * h + beta * h * h};
    double r = 0;
    for (cplx f : forms) r = std::max(r, std::abs(f));
    return r;
}

double borel_leg_residual(const LegSpacePoint& y, double alpha, double beta) {
    LegSpacePoint n{unit(y.c)};
    Eigen::Matrix3cd Zm = n.Z();
    cplx forms[] = {Zm(0, 1) - Zm(1, 0), Zm(0, 0) + Zm(1, 1) - alpha * n.u(), n.a()(2) - n.b()(2),
                    n.l() - 2.0 * Zm(2, 2) - beta * n.u()};
    double r = 0;
    for (cplx f : forms) r = std::max(r, std::abs(f));
    return r;
}

std::string to_string(Stratum s) {
    switch (s) {
        case Stratum::Zi_inversion: return "Zi_inversion";
        case Stratum::Zb_collineation: return "Zb_collineation";
        case Stratum::Zs_similarity: return "Zs_similarity";
        case Stratum::Zc_conic: return "Zc_conic";
        case Stratum::Zv_vertex: return "Zv_vertex";
    }
    return "?";
}

Stratum classify_bond(const GroupSpacePoint& g, const BondOptions& opt) {
    GroupSpacePoint n{unit(g.c)};
    if (std::abs(n.h()) > opt.tol) fail("NotBoundary", "h is not zero");
    if (group_residual(n) > opt.tol) fail("NotBoundary", "not on the group variety");
    double zero = std::sqrt(opt.tol);
    bool m = n.c.segment<9>(iM).norm() > zero;
    bool x = n.x().norm() > zero;
    bool y = n.y().norm() > zero;
    if (m) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(group_jacobian(n));
        auto s = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s(i) > opt.rank_threshold * s(0)) ++rank;
        // X has codimension 10
        return rank >= 10 ? Stratum::Zi_inversion : Stratum::Zb_collineation;
    }
    if (x && y) return Stratum::Zs_similarity;
    if (x || y) return Stratum::Zc_conic;
    return Stratum::Zv_vertex;
}

Eigen::Vector2d PlanarInversion::apply(const Eigen::Vector2d& p) const {
    Eigen::Vector2d v = p - center;
    double n2 = v.squaredNorm();
    if (n2 == 0) fail("OutOfDomain", "inversion center");
    return center + k * v / n2;
}

bool similarity_projection_verify(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb,
                                  const PlanarSimilarity& s, double tol) {
    for (const Leg& l : legs)
        if ((s.apply(pa * l.a) - pb * l.b).norm() > tol) return false;
    return true;
}

bool inversion_projection_verify(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb,
                                 const PlanarInversion& inv, double tol) {
    for (const Leg& l : legs) {
        Eigen::Vector2d p = pa * l.a;
        if ((p - inv.center).norm() <= tol) return false;
        if ((inv.apply(p) - pb * l.b).norm() > tol) return false;
    }
    return true;
}

SimilarityFit fit_similarity(const std::vector<Leg>& legs, const Projection& pa, const Projection& pb) {
    if (legs.empty()) fail("BadInput", "no legs");
    int n = int(legs.size());
    SimilarityFit best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int flip = 0; flip < 2; ++flip) {
        Eigen::MatrixXcd Am(n, 2);
        Eigen::VectorXcd q(n);
        for (int i = 0; i < n; ++i) {
            cplx p = to_c(pa * legs[i].a);
            Am(i, 0) = flip ? std::conj(p) : p;
            Am(i, 1) = 1.0;
            q(i) = to_c(pb * legs[i].b);
        }
        Eigen::Vector2cd c = Am.colPivHouseholderQr().solve(q);
        PlanarSimilarity s;
        double re = c(0).real(), im = c(0).imag();
        if (flip)
            s.linear << re, im, im, -re;
        else
            s.linear << re, -im, im, re;
        s.shift = Eigen::Vector2d(c(1).real(), c(1).imag());
        double r = 0;
        for (const Leg& l : legs) r = std::max(r, (s.apply(pa * l.a) - pb * l.b).norm());
        if (r < best.residual) best = {s, r};
    }
    return best;
}

Projection vertical_projection() {
    Projection p;
    p << 1, 0, 0, 0, 1, 0;
    return p;
}

std::vector<CombinedCollineation> combined_collineations(const std::vector<Eigen::Vector3d>& base,
                                                         const std::vector<Eigen::Vector3d>& platform,
                                                         double tol) {
    int n = int(base.size());
    if (n != int(platform.size()) || n < 3 || n > 31) fail("BadInput", "need matching anchor lists");
    double scale = 1;
    for (int i = 0; i < n; ++i) scale = std::max({scale, base[i].norm(), platform[i].norm()});
    double t = tol * scale;

    auto lines = [&](const std::vector<Eigen::Vector3d>& pts) {
        std::vector<std::pair<LineAxis, unsigned>> out;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if ((pts[i] - pts[j]).norm() <= t) continue;
                LineAxis g = LineAxis::through(pts[i], pts[j] - pts[i]);
                unsigned mask = 0;
                for (int k = 0; k < n; ++k)
                    if (g.distance_to(pts[k]) <= t) mask |= 1u << k;
                bool dup = std::any_of(out.begin(), out.end(), [&](auto& o) { return o.second == mask; });
                if (!dup) out.push_back({g, mask});
            }
        return out;
    };
    auto la = lines(base), lb = lines(platform);
    unsigned all = (1u << n) - 1;
    std::vector<CombinedCollineation> out;
    for (auto& [ga, ma] : la)
        for (auto& [gb, mb] : lb)
            if ((ma | mb) == all) out.push_back({ga, gb, ma, mb});
    return out;
}

TwinDistances twin_distances(const Isometry& sigma, const Leg& leg, double tol) {
    Isometry s2 = sigma.then(sigma);
    if ((s2.rotation - Eigen::Matrix3d::Identity()).norm() > tol || s2.translation.norm() > tol * (1 + sigma.translation.norm()))
        fail("NotInvolution");
    return {(sigma.apply(leg.a) - leg.b).norm(), (sigma.apply(leg.b) - leg.a).norm()};
}

bool twin_check(const Isometry& sigma, const Leg& leg, double tol) {
    TwinDistances t = twin_distances(sigma, leg, tol);
    return std::abs(t.leg - leg.d) <= tol * (1 + leg.d) && std::abs(t.twin - leg.d) <= tol * (1 + leg.d);
}

TwinPair TwinPair::from(const Leg& leg) {
    return {leg.a.cast<cplx>(), leg.b.cast<cplx>(), leg.a.squaredNorm() + leg.b.squaredNorm() - leg.d * leg.d};
}

Eigen::Matrix<cplx, 11, 1> TwinPair::symmetrized() const {
    Eigen::Matrix<cplx, 11, 1> s;
    s(0) = 1.0;
    s.segment<3>(1) = a + b;
    for (int i = 0; i < 3; ++i) s(4 + i) = a(i) * b(i);
    s(7) = a(0) * b(1) + a(1) * b(0);
    s(8) = a(0) * b(2) + a(2) * b(0);
    s(9) = a(1) * b(2) + a(2) * b(1);
    s(10) = l;
    return s;
}

bool TwinPair::real(double tol) const {
    double n = std::max(1.0, std::max({a.norm(), b.norm(), std::abs(l)}));
    return a.imag().norm() <= tol * n && b.imag().norm() <= tol * n && std::abs(l.imag()) <= tol * n;
}

namespace {

// span of the given pairs and of the form h + trace M, in symmetrized coordinates
Eigen::MatrixXcd icosapod_span(const std::vector<TwinPair>& pairs) {
    Eigen::MatrixXcd W(11, pairs.size() + 1);
    for (size_t k = 0; k < pairs.size(); ++k) W.col(k) = pairs[k].symmetrized().normalized();
    Eigen::Matrix<cplx, 11, 1> psi = Eigen::Matrix<cplx, 11, 1>::Zero();
    psi.segment<3>(4).setConstant(-0.5);
    psi(10) = 1.0;
    W.col(pairs.size()) = psi.normalized();
    return W;
}

}  // namespace

double icosapod_span_residual(const std::vector<TwinPair>& pairs, const TwinPair& p) {
    Eigen::MatrixXcd W = icosapod_span(pairs);
    Eigen::VectorXcd v = p.symmetrized().normalized();
    Eigen::VectorXcd c = W.colPivHouseholderQr().solve(v);
    return (W * c - v).norm();
}

IcosapodResult icosapod_complete(const std::vector<TwinPair>& pairs, const IcosapodOptions& opt) {
    if (pairs.size() != 3) fail("BadInput", "three twin pairs required");
    Eigen::MatrixXcd W = icosapod_span(pairs);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeFullU);
    auto sv = svd.singularValues();
    if (sv(3) < 1e-9 * sv(0)) fail("NotGeneric", "twin pairs are dependent");
    Eigen::MatrixXcd K = svd.matrixU().rightCols(7).adjoint();

    auto system = [&](const Eigen::VectorXcd& v) {
        TwinPair t{v.head<3>(), v.segment<3>(3), v(6)};
        Eigen::Matrix<cplx, 11, 7> D = Eigen::Matrix<cplx, 11, 7>::Zero();
        for (int i = 0; i < 3; ++i) {
            D(1 + i, i) = D(1 + i, 3 + i) = 1.0;
            D(4 + i, i) = t.b(i);
            D(4 + i, 3 + i) = t.a(i);
        }
        const int pr[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (int k = 0; k < 3; ++k) {
            int i = pr[k][0], j = pr[k][1];
            D(7 + k, i) = t.b(j);
            D(7 + k, j) = t.b(i);
            D(7 + k, 3 + i) = t.a(j);
            D(7 + k, 3 + j) = t.a(i);
        }
        D(10, 6) = 1.0;
        Eigen::VectorXcd F = K * t.symmetrized();
        Eigen::MatrixXcd J = K * D;
        return std::pair{F, J};
    };

    auto as_vec = [](const TwinPair& t) {
        Eigen::VectorXcd v(7);
        v << t.a, t.b, t.l;
        return v;
    };
    auto same = [&](const TwinPair& s, const TwinPair& t) {
        Eigen::VectorXcd u = as_vec(s), w = as_vec(t);
        Eigen::VectorXcd ws(7);
        ws << t.b, t.a, t.l;
        double n = 1 + u.norm();
        return std::min((u - w).norm(), (u - ws).norm()) < 1e-6 * n;
    };

    double scale = 1;
    for (const TwinPair& p : pairs) scale = std::max({scale, p.a.norm(), p.b.norm(), std::sqrt(std::abs(p.l))});
    std::mt19937_64 rng(opt.seed);
    IcosapodResult res;
    for (int s = 0; s < opt.starts && res.pairs.size() < 7; ++s) {
        Eigen::VectorXcd v(7);
        for (int i = 0; i < 6; ++i) v(i) = scale * crandn(rng);
        v(6) = scale * scale * crandn(rng);
        if (!newton(system, v, 80)) continue;
        TwinPair t{v.head<3>(), v.segment<3>(3), v(6)};
        if ((t.a - t.b).norm() < 1e-6 * (1 + t.a.norm())) continue;
        bool old = std::any_of(pairs.begin(), pairs.end(), [&](auto& p) { return same(p, t); }) ||
                   std::any_of(res.pairs.begin(), res.pairs.end(), [&](auto& p) { return same(p, t); });
        if (old) continue;
        double r = icosapod_span_residual(pairs, t);
        if (r > 1e-6) continue;
        if (t.real()) {
            t.a = t.a.real().cast<cplx>();
            t.b = t.b.real().cast<cplx>();
            t.l = t.l.real();
            ++res.real_count;
        }
        res.pairs.push_back(t);
        res.span_residuals.push_back(r);
    }
    if (res.pairs.size() < 7)
        res.warning = "found " + std::to_string(res.pairs.size()) + " of 7 additional twin pairs";
    return res;
}

std::vector<long long> hilbert_expand(const std::vector<long long>& numerator, int pole_order, int terms) {
    if (pole_order < 0 || terms < 0) fail("BadInput", "negative order");
    // coefficients of 1 / (1 - t)^k by repeated prefix sums
    std::vector<long long> series(terms, 0);
    for (int i = 0; i < terms && i < int(numerator.size()); ++i) series[i] = numerator[i];
    for (int k = 0; k < pole_order; ++k)
        for (int i = 1; i < terms; ++i) series[i] += series[i - 1];
    return series;
}

CurveInvariants curve_invariants(const std::vector<long long>& numerator) {
    // a_n = N(1) (n + 1) - N'(1) for large n, and a_n = deg n + 1 - g
    long long n1 = 0, d1 = 0;
    for (size_t i = 0; i < numerator.size(); ++i) {
        n1 += numerator[i];
        d1 += (long long)i * numerator[i];
    }
    return {n1, 1 - n1 + d1};
}

}  // namespace kin
