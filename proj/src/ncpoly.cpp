#include "kin/ncpoly.hpp"

#include <algorithm>
#include <numeric>

namespace kin {

QuatPoly primal(const MotionPoly& a) {
    std::vector<Quaternion> v;
    for (const auto& x : a.c) v.push_back(x.p);
    return QuatPoly(std::move(v));
}

MotionPoly lift(const QuatPoly& a) {
    std::vector<DualQuaternion> v;
    for (const auto& x : a.c) v.emplace_back(x);
    return MotionPoly(std::move(v));
}

RealPoly scalar_part(const QuatPoly& a) {
    std::vector<double> v;
    for (const auto& x : a.c) v.push_back(x.w);
    return RealPoly(std::move(v));
}

MotionPoly to_motion(const RealPoly& m) {
    std::vector<DualQuaternion> v;
    for (double x : m.c) v.emplace_back(x);
    return MotionPoly(std::move(v));
}

RealPoly norm_poly(const QuatPoly& a) { return scalar_part(conj(a) * a); }

RealPoly norm_poly(const MotionPoly& a, double tol) {
    MotionPoly n = conj(a) * a;
    double scale = std::max(1.0, primal(n).max_abs());
    for (const auto& x : n.c)
        if (x.d.max_abs() > tol * scale) fail("NotMotionPolynomial", "norm polynomial has a dual part");
    return scalar_part(primal(n));
}

DualQuaternion eval_at_infinity(const MotionPoly& a) {
    if (a.zero()) fail("ZeroDivisor", "zero polynomial");
    return a.lead();
}

DualQuaternion eval_projective(const MotionPoly& a, double t) {
    if (!std::isfinite(t)) return eval_at_infinity(a);
    DualQuaternion acc{};
    if (std::abs(t) <= 1) {
        for (int i = a.degree(); i >= 0; --i) acc = acc * t + a.c[i];
        return acc;
    }
    double s = 1 / t;
    for (int i = 0; i <= a.degree(); ++i) acc = acc * s + a.c[i];
    return acc;
}

namespace {

void balance(Eigen::MatrixXd& a) {
    const double radix = 2, sqrdx = radix * radix;
    const int n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0 || r == 0) continue;
            double g = r / radix, f = 1, s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

cplx horner(const RealPoly& p, cplx z, cplx* deriv) {
    cplx v = 0, d = 0;
    for (int i = p.degree(); i >= 0; --i) {
        d = d * z + v;
        v = v * z + p.c[i];
    }
    if (deriv) *deriv = d;
    return v;
}

}  // namespace

std::vector<cplx> poly_roots(const RealPoly& p) {
    int n = p.degree();
    if (n < 1) return {};
    std::vector<cplx> roots;
    int zeros = 0;
    while (zeros < n && p.c[zeros] == 0.0) ++zeros;
    for (int i = 0; i < zeros; ++i) roots.emplace_back(0.0);
    int m = n - zeros;
    if (m == 0) return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    double lead = p.lead();
    for (int j = 0; j < m; ++j) comp(0, j) = -p.c[n - 1 - j] / lead;
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1;
    balance(comp);
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < m; ++i) {
        cplx z = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            cplx d;
            cplx v = horner(p, z, &d);
            if (std::abs(d) == 0) break;
            cplx zn = z - v / d;
            if (std::abs(horner(p, zn, nullptr)) <= std::abs(v)) z = zn;
        }
        roots.push_back(z);
    }
    return roots;
}

namespace {

// A root of multiplicity m is a simple root of the (m-1)-th derivative.
cplx polish_multiple(const RealPoly& p, cplx z, int mult) {
    std::vector<double> c = p.c;
    for (int k = 1; k < mult && c.size() > 1; ++k) {
        for (size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * i;
        c.pop_back();
    }
    for (int it = 0; it < 5; ++it) {
        cplx f = 0, df = 0;
        for (size_t i = c.size(); i-- > 0;) {
            df = df * z + f;
            f = f * z + c[i];
        }
        if (std::abs(df) == 0.0) break;
        cplx nz = z - f / df;
        if (!std::isfinite(nz.real()) || !std::isfinite(nz.imag()) || std::abs(nz - z) > 1e-3 * std::max(1.0, std::abs(z)))
            break;
        z = nz;
    }
    return z;
}

}  // namespace

RealFactorization real_poly_factor(const RealPoly& p, double cluster_tol) {
    if (p.zero()) fail("ZeroDivisor", "zero polynomial");
    RealFactorization out;
    out.lead = p.lead();
    std::vector<cplx> roots = poly_roots(p);
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<cplx> cl{roots[i]};
        used[i] = true;
        double rad = cluster_tol * std::max(1.0, std::abs(roots[i]));
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) < rad) {
                cl.push_back(roots[j]);
                used[j] = true;
            }
        cplx c = std::accumulate(cl.begin(), cl.end(), cplx(0)) / double(cl.size());
        int mult = cl.size();
        if (mult > 1) c = polish_multiple(p, c, mult);
        if (std::abs(c.imag()) <= rad) {
            out.factors.push_back({RealPoly({-c.real(), 1.0}), mult});
        } else if (c.imag() > 0) {
            out.factors.push_back({RealPoly({std::norm(c), -2 * c.real(), 1.0}), mult});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const RealFactor& a, const RealFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return std::lexicographical_compare(a.poly.c.rbegin(), a.poly.c.rend(), b.poly.c.rbegin(), b.poly.c.rend());
    });
    return out;
}

RealPoly expand(const RealFactorization& f) {
    RealPoly acc({f.lead});
    for (const auto& fac : f.factors)
        for (int k = 0; k < fac.multiplicity; ++k) acc = acc * fac.poly;
    return acc;
}

DualQuaternion right_zero_mod(const MotionPoly& a, const RealPoly& m_in, double tol, std::optional<Quaternion> dual_hint) {
    if (a.zero()) fail("ZeroDivisor", "zero polynomial");
    RealPoly m = m_in * (1.0 / m_in.lead());
    double scale = std::max(1.0, a.max_abs());
    if (m.degree() == 1) {
        double r = -m.c[0];
        if (a.eval_right(DualQuaternion(r)).max_abs() > tol * scale)
            fail("DegenerateRemainder", "real root is not a right zero");
        return DualQuaternion(r);
    }
    if (m.degree() != 2) fail("NotIrreducible", "expected a quadratic factor");
    double m1 = m.c[1], m0 = m.c[0];
    double half = -m1 / 2, disc = m0 - half * half;
    if (disc <= 0) fail("NotIrreducible", "quadratic factor has real roots");

    MotionPoly r = poly_div_right(a, to_motion(m)).r;
    DualQuaternion u = r[1], v = r[0];
    double tr = tol * scale;
    if (r.max_abs() <= tr) return DualQuaternion(Quaternion{half, -std::sqrt(disc), 0, 0});
    if (u.p.max_abs() > tr) return -(u.inverse() * v);
    if (v.p.max_abs() > tr || u.d.max_abs() <= tr) fail("InconsistentCase", "remainder of degree zero");

    // primal remainder vanishes: R = eps (u1 t + v1)
    Quaternion h0 = -(u.d.inverse() * v.d);
    Quaternion mh = h0 * h0 + h0 * m1 + Quaternion{m0};
    double ref = h0.norm() + std::abs(m1) * std::sqrt(h0.norm()) + std::abs(m0);
    if (mh.max_abs() > 1e-6 * ref) fail("DegenerateRemainder", "remainder and norm factor have no common zero");
    Quaternion h1{};
    if (dual_hint) {
        Eigen::Vector3d w = dual_hint->vec();
        Eigen::Vector3d n = h0.vec();
        if (n.norm() > 0) w -= w.dot(n) / n.squaredNorm() * n;
        h1 = Quaternion::pure(w);
    }
    return {h0, h1};
}

Quaternion right_zero_mod(const QuatPoly& a, const RealPoly& m, double tol) {
    return right_zero_mod(lift(a), m, tol).p;
}

MotionPoly product_of_linear(const std::vector<DualQuaternion>& h) {
    MotionPoly acc({DualQuaternion(1.0)});
    for (const auto& x : h) acc = acc * MotionPoly::linear(x);
    return acc;
}

QuatPoly product_of_linear(const std::vector<Quaternion>& h) {
    QuatPoly acc({Quaternion(1.0)});
    for (const auto& x : h) acc = acc * QuatPoly::linear(x);
    return acc;
}

std::vector<DualQuaternion> factorize(const MotionPoly& a, const std::vector<RealPoly>& order, double tol,
                                      const std::vector<std::optional<Quaternion>>& hints) {
    if (a.zero() || (a.lead() - DualQuaternion(1.0)).max_abs() > tol) fail("NotMonic", "leading coefficient must be 1");
    if ((int)order.size() != a.degree()) fail("BadOrder", "need one norm factor per degree");
    std::vector<DualQuaternion> h(order.size());
    MotionPoly cur = a;
    for (int r = (int)order.size() - 1; r >= 0; --r) {
        std::optional<Quaternion> hint = r < (int)hints.size() ? hints[r] : std::nullopt;
        h[r] = right_zero_mod(cur, order[r], tol, hint);
        cur = poly_div_right(cur, MotionPoly::linear(h[r])).q;
    }
    return h;
}

std::vector<Quaternion> factorize(const QuatPoly& a, const std::vector<RealPoly>& order, double tol) {
    auto h = factorize(lift(a), order, tol);
    std::vector<Quaternion> out;
    for (const auto& x : h) out.push_back(x.p);
    return out;
}

namespace {

std::vector<RealPoly> factors_of(const RealPoly& n) {
    std::vector<RealPoly> out;
    for (const auto& f : real_poly_factor(n).factors) {
        int copies = f.poly.degree() == 2 ? f.multiplicity : f.multiplicity / 2;
        for (int k = 0; k < copies; ++k) out.push_back(f.poly);
    }
    return out;
}

template <class C>
double factor_distance(const std::vector<C>& a, const std::vector<C>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).max_abs());
    return m;
}

template <class C, class F>
std::vector<std::vector<C>> enumerate_orders(const std::vector<RealPoly>& fac, double dedup, F&& run) {
    // group equal factors so that repeated ones give one order sequence
    std::vector<int> label(fac.size());
    for (size_t i = 0; i < fac.size(); ++i) {
        label[i] = i;
        for (size_t j = 0; j < i; ++j)
            if (coeff_distance(fac[i], fac[j]) <= 1e-7 * std::max(1.0, fac[j].max_abs())) {
                label[i] = label[j];
                break;
            }
    }
    std::sort(label.begin(), label.end());
    std::vector<std::vector<C>> out;
    do {
        std::vector<RealPoly> order;
        for (int l : label) order.push_back(fac[l]);
        try {
            auto h = run(order);
            double scale = 1;
            for (const auto& x : h) scale = std::max(scale, x.max_abs());
            bool fresh = std::none_of(out.begin(), out.end(),
                                      [&](const auto& g) { return factor_distance(g, h) <= dedup * scale; });
            if (fresh) out.push_back(h);
        } catch (const Error&) {
        }
    } while (std::next_permutation(label.begin(), label.end()));
    return out;
}

template <class P>
void check_generic(const P& a, const std::vector<RealPoly>& fac, double tol) {
    for (const auto& m : fac) {
        auto r = poly_div_right(a, P(std::vector<typename decltype(a.c)::value_type>(m.c.begin(), m.c.end()))).r;
        if (r.max_abs() <= tol * std::max(1.0, a.max_abs()))
            fail("InfinitelyMany", "an irreducible real quadratic divides the polynomial");
    }
    for (size_t i = 0; i < fac.size(); ++i) {
        if (fac[i].degree() != 2) fail("NotGeneric", "norm polynomial has real roots");
        for (size_t j = 0; j < i; ++j)
            if (coeff_distance(fac[i], fac[j]) <= 1e-7 * std::max(1.0, fac[j].max_abs()))
                fail("NotGeneric", "norm polynomial is not squarefree");
    }
}

}  // namespace

std::vector<RealPoly> norm_factors(const QuatPoly& a) { return factors_of(norm_poly(a)); }
std::vector<RealPoly> norm_factors(const MotionPoly& a, double tol) { return factors_of(norm_poly(a, tol)); }

std::vector<std::vector<Quaternion>> all_factorizations(const QuatPoly& a, double tol, double dedup) {
    return enumerate_orders<Quaternion>(norm_factors(a), dedup,
                                        [&](const std::vector<RealPoly>& o) { return factorize(a, o, tol); });
}

std::vector<std::vector<DualQuaternion>> all_factorizations(const MotionPoly& a, double tol, double dedup) {
    return enumerate_orders<DualQuaternion>(norm_factors(a, tol), dedup,
                                            [&](const std::vector<RealPoly>& o) { return factorize(a, o, tol); });
}

int count_factorizations(const QuatPoly& a, double tol) {
    check_generic(a, norm_factors(a), tol);
    return all_factorizations(a, tol).size();
}

int count_factorizations(const MotionPoly& a, double tol) {
    check_generic(a, norm_factors(a, tol), tol);
    return all_factorizations(a, tol).size();
}

std::pair<DualQuaternion, DualQuaternion> flip(const DualQuaternion& p, const DualQuaternion& q, double tol) {
    MotionPoly f = MotionPoly::linear(p) * MotionPoly::linear(q);
    RealPoly mp = norm_poly(MotionPoly::linear(p), tol);
    RealPoly mq = norm_poly(MotionPoly::linear(q), tol);
    if (coeff_distance(mp, mq) <= tol * std::max(1.0, mp.max_abs())) fail("NotGeneric", "equal norm factors");
    DualQuaternion pp = right_zero_mod(f, mp, tol);
    MotionPoly quo = poly_div_right(f, MotionPoly::linear(pp)).q;
    return {-quo[0], pp};
}

}  // namespace kin
