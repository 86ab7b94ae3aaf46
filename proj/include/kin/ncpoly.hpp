#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "kin/dquat.hpp"

namespace kin {

namespace detail {
inline double cabs(double v) { return std::abs(v); }
inline double cabs(const cplx& v) { return std::abs(v); }
template <class C>
double cabs(const C& v) { return v.max_abs(); }
inline double cinv(double v) {
    if (v == 0.0) fail("ZeroDivisor", "zero leading coefficient");
    return 1.0 / v;
}
inline cplx cinv(const cplx& v) {
    if (v == 0.0) fail("ZeroDivisor", "zero leading coefficient");
    return 1.0 / v;
}
template <class C>
C cinv(const C& v) { return v.inverse(); }
}  // namespace detail

// Polynomial in a central variable t, coefficients lowest degree first.
template <class C>
struct Poly {
    std::vector<C> c;

    Poly() = default;
    Poly(std::vector<C> coeffs) : c(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<C> coeffs) : c(coeffs) { trim(); }

    static Poly monomial(const C& a, int k) {
        std::vector<C> v(k + 1, C{});
        v[k] = a;
        return Poly(std::move(v));
    }
    // t - h
    static Poly linear(const C& h) { return Poly({-h, C(1.0)}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    const C& lead() const { return c.back(); }
    C operator[](int i) const { return i >= 0 && i < (int)c.size() ? c[i] : C{}; }

    // drops exact zeros only
    Poly& trim() {
        while (!c.empty() && detail::cabs(c.back()) == 0.0) c.pop_back();
        return *this;
    }
    Poly trimmed(double tol) const {
        Poly out = *this;
        while (!out.c.empty() && detail::cabs(out.c.back()) <= tol) out.c.pop_back();
        return out;
    }
    double max_abs() const {
        double m = 0;
        for (const auto& a : c) m = std::max(m, detail::cabs(a));
        return m;
    }

    Poly operator-() const {
        Poly out = *this;
        for (auto& a : out.c) a = -a;
        return out;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<C> v(std::max(a.c.size(), b.c.size()), C{});
        for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<C> v(a.c.size() + b.c.size() - 1, C{});
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const C& s, const Poly& a) {
        Poly out = a;
        for (auto& x : out.c) x = s * x;
        return out.trim();
    }
    friend Poly operator*(const Poly& a, const C& s) {
        Poly out = a;
        for (auto& x : out.c) x = x * s;
        return out.trim();
    }

    // sum c_i h^i with h on the right
    C eval_right(const C& h) const {
        C acc{}, pw(1.0);
        for (const auto& a : c) {
            acc += a * pw;
            pw = pw * h;
        }
        return acc;
    }
    // sum h^i c_i with h on the left
    C eval_left(const C& h) const {
        C acc{}, pw(1.0);
        for (const auto& a : c) {
            acc += pw * a;
            pw = pw * h;
        }
        return acc;
    }
};

using RealPoly = Poly<double>;
using ComplexPoly = Poly<cplx>;
using QuatPoly = Poly<Quaternion>;
using MotionPoly = Poly<DualQuaternion>;

template <class C>
Poly<C> conj(const Poly<C>& a) {
    Poly<C> out = a;
    for (auto& x : out.c) x = x.conj();
    return out;
}

template <class C>
double coeff_distance(const Poly<C>& a, const Poly<C>& b) {
    return (a - b).max_abs();
}

// A = Q B + R, deg R < deg B.
template <class C>
struct DivResult {
    Poly<C> q, r;
};

template <class C>
DivResult<C> poly_div_right(const Poly<C>& a, const Poly<C>& b) {
    if (b.zero()) fail("ZeroDivisor", "division by the zero polynomial");
    C binv = detail::cinv(b.lead());
    int db = b.degree();
    std::vector<C> rem = a.c;
    std::vector<C> quo(std::max(0, a.degree() - db + 1), C{});
    for (int k = a.degree(); k >= db; --k) {
        C f = rem[k] * binv;
        quo[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c[j];
        rem[k] = C{};
    }
    rem.resize(std::max(0, std::min<int>(db, rem.size())));
    return {Poly<C>(std::move(quo)), Poly<C>(std::move(rem))};
}

// Same contract, computed by recursion on the leading term.
template <class C>
DivResult<C> poly_div_right_recursive(const Poly<C>& a, const Poly<C>& b) {
    if (b.zero()) fail("ZeroDivisor", "division by the zero polynomial");
    if (a.degree() < b.degree()) return {Poly<C>{}, a};
    int k = a.degree() - b.degree();
    C f = a.lead() * detail::cinv(b.lead());
    Poly<C> rest = a - Poly<C>::monomial(f, k) * b;
    rest.c.resize(a.degree());
    rest.trim();
    auto sub = poly_div_right_recursive(rest, b);
    return {sub.q + Poly<C>::monomial(f, k), sub.r};
}

QuatPoly primal(const MotionPoly& a);
MotionPoly lift(const QuatPoly& a);

// N(A) = conj(A) A as a real polynomial.
RealPoly norm_poly(const QuatPoly& a);
RealPoly norm_poly(const MotionPoly& a, double tol = 1e-9);

// Real polynomial of a scalar-valued quaternion polynomial.
RealPoly scalar_part(const QuatPoly& a);
MotionPoly to_motion(const RealPoly& m);

// Value of the class [A(t)] at a real or infinite parameter; uses the chart 1/t for |t| > 1.
DualQuaternion eval_projective(const MotionPoly& a, double t);
DualQuaternion eval_at_infinity(const MotionPoly& a);

struct RealFactor {
    RealPoly poly;  // monic, degree 1 or 2
    int multiplicity = 1;
};

struct RealFactorization {
    double lead = 0;
    std::vector<RealFactor> factors;
};

std::vector<cplx> poly_roots(const RealPoly& p);
RealFactorization real_poly_factor(const RealPoly& p, double cluster_tol = 1e-5);
RealPoly expand(const RealFactorization& f);

// h with (t - h) a right factor of A and N(t - h) = M.
// dual_hint selects the free dual part in the degenerate remainder case.
DualQuaternion right_zero_mod(const MotionPoly& a, const RealPoly& m, double tol = 1e-9,
                              std::optional<Quaternion> dual_hint = std::nullopt);
Quaternion right_zero_mod(const QuatPoly& a, const RealPoly& m, double tol = 1e-9);

// h_1..h_d with A = (t - h_1)...(t - h_d) and N(t - h_r) = order[r]. A must be monic.
std::vector<DualQuaternion> factorize(const MotionPoly& a, const std::vector<RealPoly>& order, double tol = 1e-9,
                                      const std::vector<std::optional<Quaternion>>& hints = {});
std::vector<Quaternion> factorize(const QuatPoly& a, const std::vector<RealPoly>& order, double tol = 1e-9);

MotionPoly product_of_linear(const std::vector<DualQuaternion>& h);
QuatPoly product_of_linear(const std::vector<Quaternion>& h);

// The irreducible quadratic norm factors of A, each listed once per multiplicity.
std::vector<RealPoly> norm_factors(const QuatPoly& a);
std::vector<RealPoly> norm_factors(const MotionPoly& a, double tol = 1e-9);

// All distinct factorizations in lexicographic factor-order sequence.
std::vector<std::vector<Quaternion>> all_factorizations(const QuatPoly& a, double tol = 1e-9, double dedup = 1e-7);
std::vector<std::vector<DualQuaternion>> all_factorizations(const MotionPoly& a, double tol = 1e-9, double dedup = 1e-7);
int count_factorizations(const QuatPoly& a, double tol = 1e-9);
int count_factorizations(const MotionPoly& a, double tol = 1e-9);

// (t - p)(t - q) = (t - q')(t - p') with the norm factors exchanged; returns (q', p').
std::pair<DualQuaternion, DualQuaternion> flip(const DualQuaternion& p, const DualQuaternion& q, double tol = 1e-9);

}  // namespace kin
