#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include <Eigen/Dense>

#include "kin/error.hpp"

namespace kin {

using cplx = std::complex<double>;

inline double mag(double v) { return std::abs(v); }
inline double mag(const cplx& v) { return std::abs(v); }

// Hamiltonian quaternion w + x i + y j + z k over a scalar field T (double or complex).
template <class T>
struct BasicQuaternion {
    T w{}, x{}, y{}, z{};

    constexpr BasicQuaternion() = default;
    constexpr BasicQuaternion(T w_, T x_ = T{}, T y_ = T{}, T z_ = T{}) : w(w_), x(x_), y(y_), z(z_) {}

    static BasicQuaternion pure(const Eigen::Matrix<T, 3, 1>& v) { return {T{}, v(0), v(1), v(2)}; }

    Eigen::Matrix<T, 3, 1> vec() const { return {x, y, z}; }
    Eigen::Matrix<T, 4, 1> coeffs() const { return {w, x, y, z}; }

    BasicQuaternion conj() const { return {w, -x, -y, -z}; }
    // q * conj(q); a real number for real quaternions
    T norm() const { return w * w + x * x + y * y + z * z; }
    BasicQuaternion inverse() const {
        T n = norm();
        if (mag(n) == 0.0) fail("ZeroDivisor", "quaternion with zero norm");
        return conj() * (T(1) / n);
    }
    double max_abs() const { return std::max({mag(w), mag(x), mag(y), mag(z)}); }

    BasicQuaternion operator-() const { return {-w, -x, -y, -z}; }
    BasicQuaternion& operator+=(const BasicQuaternion& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
    BasicQuaternion& operator-=(const BasicQuaternion& o) { w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this; }
    friend BasicQuaternion operator+(BasicQuaternion a, const BasicQuaternion& b) { return a += b; }
    friend BasicQuaternion operator-(BasicQuaternion a, const BasicQuaternion& b) { return a -= b; }
    friend BasicQuaternion operator*(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend BasicQuaternion operator*(const BasicQuaternion& a, T s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
    friend BasicQuaternion operator*(T s, const BasicQuaternion& a) { return a * s; }
    friend BasicQuaternion operator/(const BasicQuaternion& a, T s) { return a * (T(1) / s); }
};

// Dual quaternion p + eps d with eps central and eps^2 = 0.
template <class T>
struct BasicDualQuaternion {
    using Quat = BasicQuaternion<T>;
    Quat p, d;

    constexpr BasicDualQuaternion() = default;
    constexpr BasicDualQuaternion(Quat p_, Quat d_ = Quat{}) : p(p_), d(d_) {}
    constexpr BasicDualQuaternion(T s) : p(s) {}

    static BasicDualQuaternion eps(const Quat& q) { return {Quat{}, q}; }

    // quaternion conjugation, reverses products
    BasicDualQuaternion conj() const { return {p.conj(), d.conj()}; }
    // eps conjugation p - eps d
    BasicDualQuaternion tau() const { return {p, -d}; }
    // N(h) = h conj(h) as (primal, dual); the dual part is the Study form
    std::pair<T, T> norm() const { return {p.norm(), T(2) * (p.w * d.w + p.x * d.x + p.y * d.y + p.z * d.z)}; }
    T study() const { return norm().second; }
    BasicDualQuaternion inverse() const {
        Quat pi = p.inverse();
        return {pi, -(pi * d * pi)};
    }
    double max_abs() const { return std::max(p.max_abs(), d.max_abs()); }
    Eigen::Matrix<T, 8, 1> coeffs() const {
        Eigen::Matrix<T, 8, 1> c;
        c << p.w, p.x, p.y, p.z, d.w, d.x, d.y, d.z;
        return c;
    }
    static BasicDualQuaternion from_coeffs(const Eigen::Matrix<T, 8, 1>& c) {
        return {Quat{c(0), c(1), c(2), c(3)}, Quat{c(4), c(5), c(6), c(7)}};
    }

    BasicDualQuaternion operator-() const { return {-p, -d}; }
    BasicDualQuaternion& operator+=(const BasicDualQuaternion& o) { p += o.p; d += o.d; return *this; }
    BasicDualQuaternion& operator-=(const BasicDualQuaternion& o) { p -= o.p; d -= o.d; return *this; }
    friend BasicDualQuaternion operator+(BasicDualQuaternion a, const BasicDualQuaternion& b) { return a += b; }
    friend BasicDualQuaternion operator-(BasicDualQuaternion a, const BasicDualQuaternion& b) { return a -= b; }
    friend BasicDualQuaternion operator*(const BasicDualQuaternion& a, const BasicDualQuaternion& b) {
        return {a.p * b.p, a.p * b.d + a.d * b.p};
    }
    friend BasicDualQuaternion operator*(const BasicDualQuaternion& a, T s) { return {a.p * s, a.d * s}; }
    friend BasicDualQuaternion operator*(T s, const BasicDualQuaternion& a) { return a * s; }
    friend BasicDualQuaternion operator/(const BasicDualQuaternion& a, T s) { return a * (T(1) / s); }
};

using Quaternion = BasicQuaternion<double>;
using DualQuaternion = BasicDualQuaternion<double>;
using ComplexQuaternion = BasicQuaternion<cplx>;
using ComplexDualQuaternion = BasicDualQuaternion<cplx>;

inline const Quaternion qi{0, 1, 0, 0};
inline const Quaternion qj{0, 0, 1, 0};
inline const Quaternion qk{0, 0, 0, 1};

ComplexDualQuaternion complexify(const DualQuaternion& h);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const DualQuaternion& h);

// Rigid motion p -> rotation * p + translation.
struct Isometry {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
    // first this, then next
    Isometry then(const Isometry& next) const {
        return {next.rotation * rotation, next.rotation * translation + next.translation};
    }
    Isometry inverse() const { return {rotation.transpose(), -(rotation.transpose() * translation)}; }
    bool valid(double tol = 1e-9) const;
};

// Plucker pair; moment = c x direction for any point c on the line.
struct LineAxis {
    Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
    Eigen::Vector3d moment = Eigen::Vector3d::Zero();

    // foot of the perpendicular from the origin
    Eigen::Vector3d point() const { return direction.cross(moment) / direction.squaredNorm(); }
    double distance_to(const Eigen::Vector3d& q) const { return (q - point()).cross(direction.normalized()).norm(); }
    static LineAxis through(const Eigen::Vector3d& c, const Eigen::Vector3d& dir) {
        Eigen::Vector3d u = dir.normalized();
        return {u, c.cross(u)};
    }
};

LineAxis moved(const LineAxis& l, const Isometry& iso);

// Same line up to orientation, within tol.
bool same_line(const LineAxis& a, const LineAxis& b, double tol = 1e-9);

struct DualNumber {
    double primal = 0;
    double dual = 0;
};

DualNumber dq_norm(const DualQuaternion& h);

// Translation by v: 1 + (eps/2) v.
DualQuaternion dq_translation(const Eigen::Vector3d& v);
// Rotation by phi about the line through the origin with direction u.
DualQuaternion dq_rotation(const Eigen::Vector3d& u, double phi);
// Rotation by phi about an arbitrary line.
DualQuaternion dq_rotation(const LineAxis& axis, double phi);
// The line as the order-2 element u - eps m.
DualQuaternion dq_line(const LineAxis& axis);
DualQuaternion dq_point(const Eigen::Vector3d& p);

// Right action: the isometry of gh is that of g followed by that of h.
Isometry dq_to_isometry(const DualQuaternion& h, double tol = 1e-9);
DualQuaternion dq_from_isometry(const Isometry& iso);
Eigen::Vector3d dq_act(const DualQuaternion& h, const Eigen::Vector3d& p, double tol = 1e-9);

LineAxis halfturn_line(const DualQuaternion& h, double tol = 1e-9);

struct RevolutionOrTranslation {
    enum Kind { Revolution, Translation } kind = Revolution;
    LineAxis axis;              // revolutions
    Eigen::Vector3d direction;  // translations
};

// The motion parametrized by the line t + h on the Study quadric.
RevolutionOrTranslation linear_factor_axis(const DualQuaternion& h, double tol = 1e-9);

// Divide by the largest-magnitude coefficient, keeping its sign positive.
DualQuaternion dq_normalized(const DualQuaternion& h);
// Max coefficient distance between a and +-b after normalization.
double dq_projective_distance(const DualQuaternion& a, const DualQuaternion& b);

}  // namespace kin
