#include "kin/loops.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "kin/synth.hpp"

namespace kin {

LoopConfiguration LoopConfiguration::from_cot(const std::vector<double>& t) {
    LoopConfiguration c;
    for (double x : t) c.phi.push_back(std::isfinite(x) ? 2 * std::atan2(1.0, x) : 0.0);
    return c;
}

std::vector<double> LoopConfiguration::cot() const {
    std::vector<double> t;
    for (double p : phi) {
        double s = std::sin(p / 2);
        t.push_back(s == 0.0 ? std::numeric_limits<double>::infinity() : std::cos(p / 2) / s);
    }
    return t;
}

DualQuaternion joint_factor(double phi) { return {Quaternion{std::cos(phi / 2), -std::sin(phi / 2), 0, 0}}; }

DualQuaternion dh_to_dq(const DHLoop& loop, int r) {
    loop.check();
    double a = loop.alpha[r];
    if (std::abs(std::sin(a / 2)) < 1e-12) fail("DegenerateAngle", "cot(alpha/2) is infinite");
    double w = std::cos(a / 2) / std::sin(a / 2);
    DualQuaternion tx{Quaternion{1}, qi * (loop.s[r] / 2)};
    DualQuaternion rz{Quaternion{w, 0, 0, -1}};
    DualQuaternion tz{Quaternion{1}, qk * (loop.d[r] / 2)};
    return tx * rz * tz;
}

DualQuaternion dh_to_dq_angle(const DHLoop& loop, int r) {
    loop.check();
    double a = loop.alpha[r];
    DualQuaternion tx{Quaternion{1}, qi * (loop.s[r] / 2)};
    DualQuaternion rz{Quaternion{std::cos(a / 2), 0, 0, -std::sin(a / 2)}};
    DualQuaternion tz{Quaternion{1}, qk * (loop.d[r] / 2)};
    return tx * rz * tz;
}

DualQuaternion closure_product(const DHLoop& loop, const std::vector<double>& phi) {
    loop.check();
    if ((int)phi.size() != loop.n()) fail("BadLoop", "configuration size differs from joint count");
    DualQuaternion x(1.0);
    for (int r = 0; r < loop.n(); ++r) x = x * joint_factor(phi[r]) * dh_to_dq_angle(loop, r);
    return x;
}

DualQuaternion closure_product_cot(const DHLoop& loop, const std::vector<double>& t) {
    loop.check();
    if ((int)t.size() != loop.n()) fail("BadLoop", "configuration size differs from joint count");
    DualQuaternion x(1.0);
    for (int r = 0; r < loop.n(); ++r) {
        if (std::isfinite(t[r])) x = x * DualQuaternion{Quaternion{t[r], -1, 0, 0}};
        x = x * dh_to_dq_angle(loop, r);
    }
    return x;
}

double closure_residual(const DualQuaternion& x) {
    double n = std::sqrt(x.p.norm());
    if (n == 0) return std::numeric_limits<double>::infinity();
    Eigen::Matrix<double, 8, 1> c = x.coeffs() / n;
    double m = 0;
    for (int i = 1; i < 8; ++i) m = std::max(m, std::abs(c(i)));
    return m;
}

double closure_residual(const DHLoop& loop, const std::vector<double>& phi) {
    return closure_residual(closure_product(loop, phi));
}

namespace {

Eigen::Matrix<double, 6, 1> vec6(const DualQuaternion& x, double sign) {
    Eigen::Matrix<double, 6, 1> v;
    v << x.p.x, x.p.y, x.p.z, x.d.x, x.d.y, x.d.z;
    return sign * v;
}

}  // namespace

Eigen::Matrix<double, 6, 1> closure_vector(const DHLoop& loop, const std::vector<double>& phi) {
    DualQuaternion x = closure_product(loop, phi);
    return vec6(x, x.p.w < 0 ? -1.0 : 1.0);
}

Eigen::MatrixXd closure_jacobian(const DHLoop& loop, const std::vector<double>& phi) {
    const int n = loop.n();
    std::vector<DualQuaternion> f(n), g(n), pre(n + 1), suf(n + 1);
    for (int r = 0; r < n; ++r) {
        g[r] = dh_to_dq_angle(loop, r);
        f[r] = joint_factor(phi[r]) * g[r];
    }
    pre[0] = DualQuaternion(1.0);
    for (int r = 0; r < n; ++r) pre[r + 1] = pre[r] * f[r];
    suf[n] = DualQuaternion(1.0);
    for (int r = n - 1; r >= 0; --r) suf[r] = f[r] * suf[r + 1];
    double sign = pre[n].p.w < 0 ? -1.0 : 1.0;
    Eigen::MatrixXd jac(6, n);
    const DualQuaternion half_i{qi * -0.5};
    for (int r = 0; r < n; ++r) {
        DualQuaternion dx = pre[r] * joint_factor(phi[r]) * half_i * g[r] * suf[r + 1];
        jac.col(r) = vec6(dx, sign);
    }
    return jac;
}

AngleSystem closure_system(const DHLoop& loop) {
    return {[loop](const std::vector<double>& phi) -> Eigen::VectorXd { return closure_vector(loop, phi); },
            [loop](const std::vector<double>& phi) { return closure_jacobian(loop, phi); }};
}

namespace {

Eigen::MatrixXd numeric_jacobian(const AngleSystem& sys, const std::vector<double>& x, const std::vector<int>& free) {
    const double h = 1e-6;
    Eigen::MatrixXd jac;
    for (size_t k = 0; k < free.size(); ++k) {
        std::vector<double> a = x, b = x;
        a[free[k]] += h;
        b[free[k]] -= h;
        Eigen::VectorXd col = (sys.residual(a) - sys.residual(b)) / (2 * h);
        if (k == 0) jac.resize(col.size(), free.size());
        jac.col(k) = col;
    }
    return jac;
}

}  // namespace

double newton_solve(const AngleSystem& sys, std::vector<double>& x, const std::vector<int>& free, const NewtonOptions& opt) {
    Eigen::VectorXd fval = sys.residual(x);
    double res = fval.cwiseAbs().maxCoeff();
    for (int it = 0; it < opt.max_iter && res >= opt.tol; ++it) {
        Eigen::MatrixXd jac;
        if (sys.jacobian) {
            Eigen::MatrixXd full = sys.jacobian(x);
            jac.resize(full.rows(), free.size());
            for (size_t k = 0; k < free.size(); ++k) jac.col(k) = full.col(free[k]);
        } else {
            jac = numeric_jacobian(sys, x, free);
        }
        Eigen::VectorXd step = -jac.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(fval);
        double lambda = 1;
        bool accepted = false;
        for (int h = 0; h <= opt.max_halvings; ++h, lambda /= 2) {
            std::vector<double> trial = x;
            for (size_t k = 0; k < free.size(); ++k) trial[free[k]] += lambda * step(k);
            Eigen::VectorXd ft = sys.residual(trial);
            if (ft.norm() < fval.norm()) {
                x = trial;
                fval = ft;
                accepted = true;
                break;
            }
        }
        res = fval.cwiseAbs().maxCoeff();
        if (!accepted) break;
    }
    return res;
}

double newton_correct(const DHLoop& loop, std::vector<double>& phi, const std::vector<int>& free_joints,
                      const NewtonOptions& opt) {
    return newton_solve(closure_system(loop), phi, free_joints, opt);
}

MobilityTrace continue_system(const AngleSystem& sys, const std::vector<double>& start, int drive,
                              const std::vector<double>& sweep, const NewtonOptions& opt) {
    const int n = start.size();
    if (drive < 0 || drive >= n) fail("BadLoop", "bad drive index");
    std::vector<int> free;
    for (int r = 0; r < n; ++r)
        if (r != drive) free.push_back(r);

    MobilityTrace out;
    std::vector<double> phi = start, prev = start;
    bool have_prev = false;
    const double max_step = opt.step_deg * M_PI / 180;
    for (size_t k = 0; k < sweep.size(); ++k) {
        double from = phi[drive], delta = sweep[k] - from;
        int nsub = std::max(1, (int)std::ceil(std::abs(delta) / max_step - 1e-12));
        double res = 0;
        for (int j = 1; j <= nsub; ++j) {
            std::vector<double> guess = phi;
            double target = from + delta * j / nsub;
            double moved = phi[drive] - prev[drive];
            // secant predictor from the previous accepted point
            if (have_prev && std::abs(moved) > 1e-14) {
                double ratio = (target - phi[drive]) / moved;
                for (int r : free) guess[r] += ratio * (phi[r] - prev[r]);
            }
            guess[drive] = target;
            std::vector<double> plain = phi;
            plain[drive] = target;
            res = newton_solve(sys, guess, free, opt);
            if (res >= opt.tol) {
                res = newton_solve(sys, plain, free, opt);
                guess = plain;
            }
            if (res >= opt.tol) throw NewtonDiverged(phi, (int)k, "continuation failed at sweep value " + std::to_string(k));
            prev = phi;
            phi = guess;
            have_prev = true;
        }
        out.configs.push_back(phi);
        out.residuals.push_back(res);
    }
    return out;
}

MobilityTrace trace_mobility(const DHLoop& loop, const std::vector<double>& start, int drive,
                             const std::vector<double>& sweep, const NewtonOptions& opt, bool require_closed_start) {
    loop.check();
    if ((int)start.size() != loop.n()) fail("BadLoop", "start size differs from joint count");
    if (require_closed_start && closure_residual(loop, start) > 1e-8) fail("NotClosed", "start configuration does not close");
    MobilityTrace out = continue_system(closure_system(loop), start, drive, sweep, opt);
    for (size_t k = 0; k < out.configs.size(); ++k) out.residuals[k] = closure_residual(loop, out.configs[k]);
    return out;
}

std::optional<std::vector<double>> find_configuration(const DHLoop& loop, unsigned seed, int attempts,
                                                      const NewtonOptions& opt) {
    loop.check();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<int> all(loop.n());
    std::iota(all.begin(), all.end(), 0);
    AngleSystem sys = closure_system(loop);
    for (int a = 0; a < attempts; ++a) {
        std::vector<double> phi(loop.n());
        for (double& p : phi) p = u(rng);
        newton_solve(sys, phi, all, opt);
        if (closure_residual(loop, phi) < opt.tol) return phi;
    }
    return std::nullopt;
}

namespace {

bool near_pi_multiple(double a, double tol) { return std::abs(std::sin(a)) <= tol; }

}  // namespace

std::string to_string(FourR c) {
    switch (c) {
        case FourR::planar: return "planar";
        case FourR::spherical: return "spherical";
        case FourR::skew_isogram: return "skew_isogram";
        case FourR::rigid: return "rigid";
    }
    return "?";
}

FourR classify_4r(const DHLoop& loop, double tol) {
    loop.check();
    if (loop.n() != 4) fail("BadLoop", "classify_4r needs four joints");
    bool planar = true, spherical = true, skew_ok = true;
    for (int r = 0; r < 4; ++r) {
        planar = planar && near_pi_multiple(loop.alpha[r], tol);
        spherical = spherical && std::abs(loop.d[r]) <= tol && std::abs(loop.s[r]) <= tol;
        skew_ok = skew_ok && !near_pi_multiple(loop.alpha[r], tol);
    }
    if (planar && spherical) fail("Ambiguous", "planar and spherical: all axes coincide");
    if (planar) return FourR::planar;
    if (spherical) return FourR::spherical;
    if (skew_ok && bennett_residual(loop) <= tol) return FourR::skew_isogram;
    return FourR::rigid;
}

std::string to_string(ThreeAxes c) {
    switch (c) {
        case ThreeAxes::parallel: return "parallel";
        case ThreeAxes::concurrent: return "concurrent";
        case ThreeAxes::bennett: return "bennett";
        case ThreeAxes::none: return "none";
    }
    return "?";
}

ThreeAxes bennett3_check(const DHLoop& loop, int r, double tol) {
    loop.check();
    const int n = loop.n();
    int a = ((r % n) + n) % n, b = (a + 1) % n;
    if (near_pi_multiple(loop.alpha[a], tol) && near_pi_multiple(loop.alpha[b], tol)) return ThreeAxes::parallel;
    if (std::abs(loop.s[b]) > tol) return ThreeAxes::none;
    if (std::abs(loop.d[a]) <= tol && std::abs(loop.d[b]) <= tol) return ThreeAxes::concurrent;
    if (near_pi_multiple(loop.alpha[a], tol) || near_pi_multiple(loop.alpha[b], tol)) return ThreeAxes::none;
    double ba = loop.d[a] / std::sin(loop.alpha[a]), bb = loop.d[b] / std::sin(loop.alpha[b]);
    double scale = std::max(1.0, std::max(std::abs(ba), std::abs(bb)));
    if (std::abs(ba - bb) <= tol * scale || std::abs(ba + bb) <= tol * scale) return ThreeAxes::bennett;
    return ThreeAxes::none;
}

namespace {

// Q for the consecutive joints (i, i+1, i+2) with b, c, s read at those indices
ComplexPoly bond_quadratic(const std::array<double, 3>& b, const std::array<double, 3>& c, const std::array<double, 3>& s) {
    const cplx I(0, 1);
    cplx center = (b[2] * c[2] - b[0] * c[0]) / 2 - s[0] / 2 * I;
    cplx rest = I / 2.0 * (b[0] * s[1] + b[2] * s[2] + s[1] * b[2] * c[1] + s[2] * b[0] * c[1]) -
                (b[0] * b[2] * c[1] - s[1] * s[2] * c[1]) / 2 +
                (s[1] * s[1] + s[2] * s[2] - b[0] * b[0] + b[1] * b[1] - b[2] * b[2] - b[1] * b[1] * c[1] * c[1]) / 4;
    return ComplexPoly({center * center + rest, 2.0 * center, cplx(1)});
}

}  // namespace

BondQuadratics bond_quadratics(const DHLoop& loop, int sign1, int sign4, int first) {
    loop.check();
    if (loop.n() != 6) fail("BadLoop", "bond quadratics need six joints");
    std::array<double, 6> b, c, s;
    for (int j = 0; j < 6; ++j) {
        int r = ((j - 1 + first) % 6 + 6) % 6;
        if (near_pi_multiple(loop.alpha[r], 1e-12)) fail("DegenerateAngle", "sin(alpha) vanishes");
        b[j] = loop.d[r] / std::sin(loop.alpha[r]);
        c[j] = std::cos(loop.alpha[r]);
        s[j] = loop.s[r];
    }
    // t = -i at a joint is t = +i for the reversed axis
    auto reverse = [&](int axis) {
        int prev = (axis + 5) % 6;
        for (int r : {prev, axis}) {
            b[r] = -b[r];
            c[r] = -c[r];
        }
        s[axis] = -s[axis];
    };
    if (sign1 < 0) reverse(1);
    if (sign4 < 0) reverse(4);
    BondQuadratics out;
    out.q1 = bond_quadratic({b[1], b[2], b[3]}, {c[1], c[2], c[3]}, {s[1], s[2], s[3]});
    out.q4 = bond_quadratic({b[4], b[5], b[0]}, {c[4], c[5], c[0]}, {s[4], s[5], s[0]});
    return out;
}

CommonRoot common_root(const ComplexPoly& p, const ComplexPoly& q, double tol) {
    if (p.zero() || q.zero()) fail("ZeroDivisor", "zero polynomial");
    if (p.degree() > 2 || q.degree() > 2) fail("BadDegree", "expected quadratics");
    auto coeffs = [](const ComplexPoly& f) {
        std::array<cplx, 3> c{};
        for (int i = 0; i <= f.degree(); ++i) c[i] = f[i];
        return c;
    };
    auto a = coeffs(p), b = coeffs(q);
    // Sylvester matrix of two quadratics
    Eigen::Matrix4cd syl;
    syl << a[2], a[1], a[0], 0, 0, a[2], a[1], a[0], b[2], b[1], b[0], 0, 0, b[2], b[1], b[0];
    double na = std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
    double nb = std::sqrt(std::norm(b[0]) + std::norm(b[1]) + std::norm(b[2]));
    CommonRoot out;
    out.resultant = std::abs(syl.determinant()) / (na * na * nb * nb);
    out.shared = out.resultant <= tol;
    auto roots_of = [](const std::array<cplx, 3>& c) {
        std::vector<cplx> r;
        if (std::abs(c[2]) > 0) {
            cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
            r = {(-c[1] + disc) / (2.0 * c[2]), (-c[1] - disc) / (2.0 * c[2])};
        } else if (std::abs(c[1]) > 0) {
            r = {-c[0] / c[1]};
        }
        return r;
    };
    if (out.shared) {
        auto eval = [](const std::array<cplx, 3>& c, cplx x) { return (c[2] * x + c[1]) * x + c[0]; };
        auto rp = roots_of(a);
        std::sort(rp.begin(), rp.end(), [&](cplx x, cplx y) { return std::abs(eval(b, x)) < std::abs(eval(b, y)); });
        for (cplx x : rp)
            if (std::abs(eval(b, x)) <= std::sqrt(tol) * nb * std::max(1.0, std::norm(x)) || out.roots.empty())
                out.roots.push_back(x);
    }
    return out;
}

double bricard_orthogonal_relation(const std::array<double, 6>& b) {
    double r = 0;
    for (int i = 0; i < 6; ++i) r += (i % 2 ? -1 : 1) * b[i] * b[i];
    return r;
}

DHLoop bricard_orthogonal(const std::array<double, 6>& b, double tol) {
    double scale = 0;
    for (double x : b) scale = std::max(scale, x * x);
    if (std::abs(bricard_orthogonal_relation(b)) > tol * std::max(1.0, scale))
        fail("RelationViolated", "b0^2-b1^2+b2^2-b3^2+b4^2-b5^2 must vanish");
    DHLoop loop;
    loop.d.assign(b.begin(), b.end());
    loop.alpha.assign(6, M_PI / 2);
    loop.s.assign(6, 0.0);
    return loop;
}

DHLoop bricard_line_symmetric(const std::array<double, 3>& d, const std::array<double, 3>& alpha,
                              const std::array<double, 3>& s) {
    DHLoop loop;
    for (int k = 0; k < 6; ++k) {
        loop.d.push_back(d[k % 3]);
        loop.alpha.push_back(alpha[k % 3]);
        loop.s.push_back(s[k % 3]);
    }
    return loop;
}

AngleSystem line_symmetric_system(const DHLoop& loop) {
    loop.check();
    if (loop.n() != 6) fail("BadLoop", "line symmetric loops have six joints");
    return {[loop](const std::vector<double>& phi) -> Eigen::VectorXd {
                DualQuaternion x(1.0);
                for (int r = 0; r < 3; ++r) x = x * joint_factor(phi[r]) * dh_to_dq_angle(loop, r);
                return Eigen::Vector2d(x.p.w, x.d.w);
            },
            {}};
}

std::vector<double> line_symmetric_extend(const std::vector<double>& half) {
    return {half[0], half[1], half[2], half[0], half[1], half[2]};
}

DHLoop bricard_plane_symmetric(const PlaneSymmetricData& p) {
    DHLoop loop;
    loop.d = {p.d[0], p.d[1], p.d[2], -p.d[2], -p.d[1], -p.d[0]};
    loop.alpha = {p.alpha[0], p.alpha[1], p.alpha[2], p.alpha[2], p.alpha[1], p.alpha[0]};
    loop.s = {0.0, p.s1, p.s2, 0.0, -p.s2, -p.s1};
    return loop;
}

double plane_symmetric_violation(const DHLoop& loop) {
    loop.check();
    if (loop.n() != 6) fail("BadLoop", "plane symmetric loops have six joints");
    const auto &d = loop.d, &a = loop.alpha, &s = loop.s;
    double v = 0;
    for (int i = 0; i < 3; ++i) {
        v = std::max(v, std::abs(d[i] + d[5 - i]));
        v = std::max(v, std::abs(a[i] - a[5 - i]));
    }
    for (double x : {s[0], s[3], s[1] + s[5], s[2] + s[4]}) v = std::max(v, std::abs(x));
    return v;
}

double plane_symmetric_violation_printed(const DHLoop& loop) {
    loop.check();
    if (loop.n() != 6) fail("BadLoop", "plane symmetric loops have six joints");
    const auto &d = loop.d, &a = loop.alpha, &s = loop.s;
    double v = 0;
    for (int i = 0; i < 3; ++i) {
        v = std::max(v, std::abs(d[i] - d[5 - i]));
        v = std::max(v, std::abs(a[i] - a[5 - i]));
    }
    for (double x : {s[1] + s[0], s[2] + s[5], s[0], s[3]}) v = std::max(v, std::abs(x));
    return v;
}

DHLoop bricard_plane_symmetric(const DHLoop& loop, double tol) {
    if (plane_symmetric_violation(loop) > tol) fail("RelationViolated", "data is not plane symmetric");
    return loop;
}

DualQuaternion plane_symmetric_half(const DHLoop& loop, const std::vector<double>& psi) {
    return joint_factor(psi[0]) * dh_to_dq_angle(loop, 0) * joint_factor(psi[1]) * dh_to_dq_angle(loop, 1) *
           joint_factor(psi[2]) * dh_to_dq_angle(loop, 2) * joint_factor(psi[3]);
}

AngleSystem plane_symmetric_system(const DHLoop& loop) {
    loop.check();
    if (loop.n() != 6) fail("BadLoop", "plane symmetric loops have six joints");
    return {[loop](const std::vector<double>& psi) -> Eigen::VectorXd {
                DualQuaternion x = plane_symmetric_half(loop, psi);
                return Eigen::Vector4d(x.p.x, x.p.z, x.d.y, x.d.w);
            },
            {}};
}

std::vector<double> plane_symmetric_extend(const std::vector<double>& psi) {
    return {2 * psi[0], psi[1], psi[2], 2 * psi[3], psi[2], psi[1]};
}

}  // namespace kin
