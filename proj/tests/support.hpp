#pragma once

#include <random>

#include "kin/dquat.hpp"

namespace testing {

inline Eigen::Vector3d random_vec(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

inline kin::Quaternion random_quat(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng), u(rng)};
}

inline kin::DualQuaternion random_dq(std::mt19937_64& rng) { return {random_quat(rng), random_quat(rng)}; }

// random point of the Study quadric with nonzero primal part
inline kin::DualQuaternion random_displacement(std::mt19937_64& rng) {
    kin::Quaternion q = random_quat(rng);
    kin::Quaternion r = q * kin::Quaternion::pure(random_vec(rng, 2.0));
    return {q, r};
}

// h such that t - h parametrizes a revolution
inline kin::DualQuaternion random_revolution(std::mt19937_64& rng, double scale = 1.5) {
    kin::Quaternion q = random_quat(rng, scale);
    Eigen::Vector3d w = random_vec(rng, 2.0), n = q.vec();
    w -= w.dot(n) / n.squaredNorm() * n;
    return {q, kin::Quaternion::pure(w)};
}

inline kin::Isometry random_isometry(std::mt19937_64& rng) {
    Eigen::Quaterniond e(Eigen::Vector4d(random_quat(rng).coeffs()).normalized());
    return {e.toRotationMatrix(), random_vec(rng, 2.0)};
}

}  // namespace testing
