#pragma once

// The universal character of Q_p^x / (1 + p^e O) over the twist ring, and
// specialization homomorphisms T -> t0, U -> zeta_d^j into cyclotomic or finite fields.

#include "lcif/doubling_gl1.hpp"
#include "lcif/finite_field.hpp"

#include <optional>

namespace lcif {

struct Universal {
    TwistRing ring;
    MultChar<TwistElem> chi;
};

/// The character g -> U, p -> T at level e, where g = primitive_root_mod_p2(p).
inline Universal build_universal(long p, ExtKind ext, int e) {
    if (ext != ExtKind::trivial) throw Error("universal characters are built over Q_p only");
    if (e < 0) throw Error("character level must be nonnegative");
    if (p == 2 || !is_prime(p)) throw Error("base field must be Q_p with p an odd prime");
    long d = e == 0 ? 1 : (p - 1) * ipow(p, e - 1);
    TwistRing r{d};
    return {r, MultChar<TwistElem>(p, e, r.U(), r.T())};
}

/// T -> t0, U -> zeta_d^j, followed by the structure map Q(zeta) -> target.
template <class R>
struct SpecHom {
    long d = 1;
    long j = 0;
    CycNumber t0;
    R target;

    using Out = std::decay_t<decltype(std::declval<R>().one())>;

    SpecHom(long d_, long j_, CycNumber t, R tgt) : d(d_), j(mod_floor(j_, d_)), t0(std::move(t)), target(std::move(tgt)) {
        if (t0.is_zero()) throw Error("T must map to a unit");
        if (target.from_cyc(t0).is_zero()) throw Error("T must map to a unit");
        target.from_cyc(CycNumber::root_of_unity(d, j));
    }

    Out operator()(const TwistElem& x) const {
        if (x.ring().d != d) throw Error("specialization applied to a twist ring of another size");
        return target.from_cyc(x.specialize(j, t0));
    }
};

template <class R>
auto apply_spec(const SpecHom<R>& h, const TwistElem& x) {
    return h(x);
}

template <class R>
auto apply_spec(const SpecHom<R>& h, const LaurentPoly<TwistElem>& x) {
    return x.map([&h](const TwistElem& c) { return h(c); }, h.target);
}

template <class R>
auto apply_spec(const SpecHom<R>& h, const LocFraction<TwistElem>& x) {
    using Out = typename SpecHom<R>::Out;
    auto num = apply_spec(h, x.num());
    auto den = apply_spec(h, x.den());
    if (!s_membership(den)) throw Error("specialization leaves S");
    return LocFraction<Out>(num, den);
}

template <class R>
auto apply_spec(const SpecHom<R>& h, const ZetaValue<TwistElem>& z) {
    using Out = typename SpecHom<R>::Out;
    TruncSeries<Out> w;
    w.floor = z.witness.floor;
    w.trusted_upto = z.witness.trusted_upto;
    for (const auto& c : z.witness.coeffs) w.coeffs.push_back(h(c));
    return ZetaValue<Out>{apply_spec(h, z.exact), w};
}

template <class R>
auto apply_spec(const SpecHom<R>& h, const MultChar<TwistElem>& chi) {
    return chi.map([&h](const TwistElem& c) { return h(c); });
}

template <class R>
auto apply_spec(const SpecHom<R>& h, const Section<TwistElem>& f) {
    using Out = typename SpecHom<R>::Out;
    std::vector<LocFraction<Out>> v;
    for (const auto& x : f.values) v.push_back(apply_spec(h, x));
    return Section<Out>(apply_spec(h, f.chi), f.level, f.sigma, std::move(v));
}

enum class BaseChangeOp { zeta_exact, gamma_extract, tate_gamma, d_factor };

inline std::string to_string(BaseChangeOp op) {
    switch (op) {
        case BaseChangeOp::zeta_exact: return "zeta_exact";
        case BaseChangeOp::gamma_extract: return "gamma_extract";
        case BaseChangeOp::tate_gamma: return "tate_gamma";
        default: return "d_factor";
    }
}

/// Universal inputs; absent optionals default to the trivial character, the
/// constant section 1 and case II with n = 1.
struct BaseChangeInputs {
    MultChar<TwistElem> omega;
    std::optional<MultChar<TwistElem>> pi;
    AddChar psi;
    std::optional<SpaceDesc> space;
    std::optional<Section<TwistElem>> section;
    int trials = 20;
    std::uint64_t seed = 1;
};

/// apply_spec(h, op(universal inputs)) == op(specialized inputs).
template <class R>
bool base_change_check(BaseChangeOp op, const SpecHom<R>& h, const BaseChangeInputs& in) {
    using Out = typename SpecHom<R>::Out;
    const auto& w = in.omega;
    auto w_s = apply_spec(h, w);
    auto pi = in.pi ? *in.pi : MultChar<TwistElem>::trivial(w.ring(), w.p());
    auto pi_s = apply_spec(h, pi);
    switch (op) {
        case BaseChangeOp::tate_gamma: return apply_spec(h, tate_gamma(w, in.psi)) == tate_gamma(w_s, in.psi);
        case BaseChangeOp::d_factor: {
            SpaceDesc s = in.space.value_or(SpaceDesc{});
            return apply_spec(h, d_factor(s, w, in.psi)) == d_factor(s, w_s, in.psi);
        }
        case BaseChangeOp::zeta_exact: {
            int m = std::max({1, w.conductor(), pi.conductor()});
            auto f = in.section ? *in.section
                                : Section<TwistElem>::constant(w, m, LocFraction<TwistElem>::constant(w.ring().one()));
            auto lhs = apply_spec(h, zeta_exact(PiChar<TwistElem>(pi), w.ring().one(), f).exact);
            auto rhs = zeta_exact(PiChar<Out>(pi_s), h.target.one(), apply_spec(h, f)).exact;
            return lhs == rhs;
        }
        default: {
            int m = std::max({1, w.level(), pi.level()});
            auto lhs = apply_spec(h, gamma_extract(PiChar<TwistElem>(pi), w, in.trials, in.seed, m).gamma);
            auto rhs = gamma_extract(PiChar<Out>(pi_s), w_s, in.trials, in.seed, m).gamma;
            return lhs == rhs;
        }
    }
}

}  // namespace lcif
