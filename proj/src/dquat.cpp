#include "kin/dquat.hpp"

#include <algorithm>

namespace kin {

ComplexDualQuaternion complexify(const DualQuaternion& h) {
    auto c = [](const Quaternion& q) { return ComplexQuaternion{q.w, q.x, q.y, q.z}; };
    return {c(h.p), c(h.d)};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& h) {
    return os << h.p << " + eps" << h.d;
}

bool Isometry::valid(double tol) const {
    return (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < tol &&
           std::abs(rotation.determinant() - 1.0) < tol;
}

LineAxis moved(const LineAxis& l, const Isometry& iso) {
    return LineAxis::through(iso.apply(l.point()), iso.rotation * l.direction);
}

bool same_line(const LineAxis& a, const LineAxis& b, double tol) {
    Eigen::Vector3d ua = a.direction.normalized(), ub = b.direction.normalized();
    if (ua.cross(ub).norm() > tol) return false;
    return b.distance_to(a.point()) < tol;
}

DualNumber dq_norm(const DualQuaternion& h) {
    auto [p, d] = h.norm();
    return {p, d};
}

DualQuaternion dq_translation(const Eigen::Vector3d& v) {
    return {Quaternion{1}, Quaternion::pure(v / 2)};
}

DualQuaternion dq_rotation(const Eigen::Vector3d& u, double phi) {
    Eigen::Vector3d n = u.normalized();
    return {Quaternion{std::cos(phi / 2)} - Quaternion::pure(n) * std::sin(phi / 2)};
}

DualQuaternion dq_rotation(const LineAxis& axis, double phi) {
    Eigen::Vector3d c = axis.point();
    return dq_translation(-c) * dq_rotation(axis.direction, phi) * dq_translation(c);
}

DualQuaternion dq_line(const LineAxis& axis) {
    double n = axis.direction.norm();
    return {Quaternion::pure(axis.direction / n), Quaternion::pure(-axis.moment / n)};
}

DualQuaternion dq_point(const Eigen::Vector3d& p) { return {Quaternion{1}, Quaternion::pure(p)}; }

namespace {

void require_displacement(const DualQuaternion& h, double tol) {
    double n = h.p.norm();
    if (!(n > tol * tol)) fail("NotADisplacement", "primal norm vanishes");
    double s = h.study() / n;
    if (std::abs(s) > tol * std::max(1.0, h.d.max_abs() / std::sqrt(n))) fail("NotADisplacement", "Study form nonzero");
}

}  // namespace

Isometry dq_to_isometry(const DualQuaternion& h, double tol) {
    require_displacement(h, tol);
    double n = h.p.norm();
    Quaternion q = h.p / std::sqrt(n);
    Quaternion r = h.d / std::sqrt(n);
    // p -> conj(q) p q + 2 vec(conj(q) r)
    Quaternion qc = q.conj();
    Isometry iso;
    for (int c = 0; c < 3; ++c) {
        Eigen::Vector3d e = Eigen::Vector3d::Unit(c);
        iso.rotation.col(c) = (qc * Quaternion::pure(e) * q).vec();
    }
    iso.translation = 2 * (qc * r).vec();
    return iso;
}

DualQuaternion dq_from_isometry(const Isometry& iso) {
    Eigen::Quaterniond e(iso.rotation);
    Quaternion q{e.w(), -e.x(), -e.y(), -e.z()};
    return {q, q * Quaternion::pure(iso.translation / 2)};
}

Eigen::Vector3d dq_act(const DualQuaternion& h, const Eigen::Vector3d& p, double tol) {
    return dq_to_isometry(h, tol).apply(p);
}

LineAxis halfturn_line(const DualQuaternion& h, double tol) {
    double n = h.p.norm();
    if (!(n > tol * tol)) fail("NotADisplacement", "primal norm vanishes");
    double s = std::sqrt(n);
    if (std::abs(h.p.w) / s > tol || std::abs(h.d.w) / s > tol) fail("NotOrderTwo", "scalar part nonzero");
    Isometry iso = dq_to_isometry(h, tol);
    Eigen::Vector3d u = h.p.vec() / s;
    Eigen::Vector3d c = iso.translation / 2;
    c -= c.dot(u) * u;
    return {u, c.cross(u)};
}

RevolutionOrTranslation linear_factor_axis(const DualQuaternion& h, double tol) {
    double scale = std::max(1.0, std::sqrt(h.p.norm()));
    DualQuaternion hn = h / scale;
    // N(t + h) = t^2 + 2 scal(h) t + N(h) must be real
    if (std::abs(hn.d.w) > tol || std::abs(hn.study()) > tol)
        fail("NotOnStudyQuadric", "line t + h leaves the Study quadric");
    DualQuaternion k{Quaternion::pure(hn.p.vec()), Quaternion::pure(hn.d.vec())};
    RevolutionOrTranslation out;
    if (k.p.vec().norm() <= tol) {
        Eigen::Vector3d v = k.d.vec();
        if (v.norm() <= tol) fail("NotOnStudyQuadric", "constant line");
        out.kind = RevolutionOrTranslation::Translation;
        out.direction = v.normalized();
        return out;
    }
    out.kind = RevolutionOrTranslation::Revolution;
    out.axis = halfturn_line(k, tol);
    return out;
}

DualQuaternion dq_normalized(const DualQuaternion& h) {
    auto c = h.coeffs();
    Eigen::Index i;
    c.cwiseAbs().maxCoeff(&i);
    if (c(i) == 0.0) return h;
    return h / c(i);
}

double dq_projective_distance(const DualQuaternion& a, const DualQuaternion& b) {
    return (dq_normalized(a).coeffs() - dq_normalized(b).coeffs()).cwiseAbs().maxCoeff();
}

}  // namespace kin
