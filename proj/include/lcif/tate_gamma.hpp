#pragma once

// Tate gamma and epsilon factors with X = q^-s, for the additive Haar measure
// self-dual with respect to psi.

#include "lcif/local_field.hpp"
#include "lcif/loc_fraction.hpp"
#include "lcif/twist_ring.hpp"

namespace lcif {

namespace detail {

template <class E>
E scalar(const ring_t<E>& ring, const Rational& r) {
    return ring.from_cyc(CycNumber(r));
}

/// (sqrt p)^k in the given ring.
template <class E>
E sqrt_p_pow(const ring_t<E>& ring, long p, long k) {
    long h = k >= 0 ? k / 2 : -((-k + 1) / 2);
    Rational base = rational_pow(Rational(p), static_cast<int>(h));
    if (k - 2 * h == 0) return scalar<E>(ring, base);
    return ring.from_cyc(CycNumber(base) * cyc_sqrt_p(p));
}

}  // namespace detail

struct TateOptions {
    /// Test hook: negates the u = 1 term of every Gauss sum.
    bool perturb_gauss_term = false;
};

/// Sum over u in O^x / (1 + p^r O) of omega(u) psi(u p^(-m-n)) vol(u), r >= m.
template <class E>
E gauss_sum(const MultChar<E>& w, const AddChar& psi, int m, int resolution = -1, TateOptions opt = {}) {
    int r = resolution < 0 ? m : resolution;
    if (m < std::max(1, w.conductor())) throw Error("Gauss sum level below the conductor");
    if (r < m) throw Error("Gauss sum resolution below its level");
    auto wr = w.level() >= r ? w : w.at_level(r);
    Rational shift = rational_pow(Rational(w.p()), -m - psi.n);
    E s = w.ring().zero();
    for (const auto& c : enumerate_unit_cosets(w.p(), r)) {
        E term = wr(c.rep) * w.ring().from_cyc(psi(c.rep * shift) * CycNumber(c.volume));
        if (opt.perturb_gauss_term && c.rep == 1) term = -term;
        s = s + term;
    }
    return s;
}

/// epsilon(X, omega, psi): the monomial q^(n/2) omega(p)^(a+n) X^(a+n) G with G the
/// Gauss sum of omega^-1 over (O/p^a)^x, a the conductor.
template <class E>
LocFraction<E> tate_epsilon(const MultChar<E>& w, const AddChar& psi, TateOptions opt = {}) {
    using Poly = LaurentPoly<E>;
    const auto ring = w.ring();
    int a = w.conductor();
    long k = a + psi.n;
    E c = detail::sqrt_p_pow<E>(ring, w.p(), psi.n) * ring_pow(w.at_uniformizer(), k);
    if (a > 0) {
        E g = gauss_sum(w.inverse(), psi, a, a, opt) * detail::scalar<E>(ring, rational_pow(Rational(w.p()), a - 1));
        c = c * g;
    }
    return LocFraction<E>(Poly::monomial(c, k));
}

/// gamma(X, omega, psi) = epsilon(X, omega, psi) L(q^-1 X^-1, omega^-1) / L(X, omega).
template <class E>
LocFraction<E> tate_gamma(const MultChar<E>& w, const AddChar& psi, TateOptions opt = {}) {
    using Poly = LaurentPoly<E>;
    LocFraction<E> eps = tate_epsilon(w, psi, opt);
    if (w.conductor() > 0) return eps;
    const auto ring = w.ring();
    const E& c = w.at_uniformizer();
    Poly one = Poly::constant(ring.one());
    Poly l_inv = one - Poly::monomial(c, 1);
    Poly dual_l_inv = one - Poly::monomial(c.inverse() * detail::scalar<E>(ring, make_rational(1, w.p())), -1);
    return eps * LocFraction<E>(l_inv, dual_l_inv);
}

/// The character seen in component i of the twist ring.
inline MultChar<TPoly> component_char(const MultChar<TwistElem>& w, long i) {
    return MultChar<TPoly>(w.p(), w.level(), w.gen_image().component(i), w.at_uniformizer().component(i));
}

inline LocFraction<TwistElem> tate_epsilon(const MultChar<TwistElem>& w, const AddChar& psi, TateOptions opt = {}) {
    std::vector<LocFraction<TPoly>> parts;
    for (long i = 0; i < w.ring().d; ++i) parts.push_back(tate_epsilon(component_char(w, i), psi, opt));
    return assemble(w.ring(), parts);
}

inline LocFraction<TwistElem> tate_gamma(const MultChar<TwistElem>& w, const AddChar& psi, TateOptions opt = {}) {
    std::vector<LocFraction<TPoly>> parts;
    for (long i = 0; i < w.ring().d; ++i) parts.push_back(tate_gamma(component_char(w, i), psi, opt));
    return assemble(w.ring(), parts);
}

/// Both sides of gamma(1/(qX), omega^-1, psi) gamma(X, omega, psi) = omega(-1).
template <class E>
std::pair<LocFraction<E>, LocFraction<E>> tate_identity_sides(const MultChar<E>& w, const AddChar& psi, TateOptions opt = {}) {
    auto lhs = tate_gamma(w, psi, opt) *
               tate_gamma(w.inverse(), psi, opt).substitute(detail::scalar<E>(w.ring(), make_rational(1, w.p())), -1);
    return {lhs, LocFraction<E>::constant(w(Rational(-1)))};
}

template <class E>
bool tate_identity_holds(const MultChar<E>& w, const AddChar& psi, TateOptions opt = {}) {
    auto [lhs, rhs] = tate_identity_sides(w, psi, opt);
    return lhs == rhs;
}

}  // namespace lcif
