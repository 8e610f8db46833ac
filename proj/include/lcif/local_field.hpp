#pragma once

// p-adic bookkeeping for F = Q_p (p odd): unit residues, Haar volumes, smooth
// characters valued in a coefficient ring, Hilbert symbols and quadratic extensions.

#include "lcif/laurent.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace lcif {

enum class ExtKind { trivial, unramified, ramified };

/// Q_p together with an optional quadratic extension E = Q_p(theta), theta^2 = disc.
struct LocalFieldDesc {
    long p = 5;
    ExtKind ext = ExtKind::trivial;
    long d = 1;  // ramified case: theta^2 = d p with d = 1 or a nonresidue

    static LocalFieldDesc base(long p) {
        check_odd_prime(p);
        return {p, ExtKind::trivial, 1};
    }
    static LocalFieldDesc unramified(long p) {
        check_odd_prime(p);
        return {p, ExtKind::unramified, smallest_nonresidue(p)};
    }
    static LocalFieldDesc ramified(long p, long d = 1) {
        check_odd_prime(p);
        if (d != 1 && legendre(d, p) != -1) throw Error("ramified extension needs d = 1 or a nonresidue");
        return {p, ExtKind::ramified, d};
    }

    /// theta^2.
    Rational disc() const {
        switch (ext) {
            case ExtKind::unramified: return Rational(d);
            case ExtKind::ramified: return Rational(d * p);
            default: throw Error("no quadratic extension");
        }
    }
    long q_E() const { return ext == ExtKind::unramified ? p * p : p; }
    long ramification() const { return ext == ExtKind::ramified ? 2 : 1; }
    bool has_extension() const { return ext != ExtKind::trivial; }

    static long smallest_nonresidue(long p) {
        for (long u = 2; u < p; ++u)
            if (legendre(u, p) == -1) return u;
        throw Error("no nonresidue");
    }

private:
    static void check_odd_prime(long p) {
        if (p == 2 || !is_prime(p)) throw Error("base field must be Q_p with p an odd prime");
    }
};

/// x = p^v u; returns v and u mod p^e.
inline std::pair<int, std::int64_t> val_and_unit(const Rational& x, long p, int e) {
    auto [v, u] = split_unit(x, p);
    return {v, e == 0 ? 0 : residue(u, ipow(p, e))};
}

/// Multiplicative Haar volume of a unit coset modulo 1 + p^m O, with vol(1 + pO) = 1.
inline Rational unit_coset_volume(long p, int m) { return rational_pow(Rational(p), 1 - m); }

struct UnitCoset {
    Rational rep;
    Rational volume;
};

/// Representatives of O^x / (1 + p^e O) with their volumes.
inline std::vector<UnitCoset> enumerate_unit_cosets(long p, int e) {
    if (e < 1) throw Error("coset level must be at least 1");
    std::vector<UnitCoset> out;
    std::int64_t m = ipow(p, e);
    Rational vol = unit_coset_volume(p, e);
    for (std::int64_t r = 1; r < m; ++r)
        if (r % p) out.push_back({Rational(r), vol});
    return out;
}

/// Smooth character of Q_p^x trivial on 1 + p^level O, stored through the image of
/// the fixed generator g = primitive_root_mod_p2(p) of every unit quotient, and the
/// value at the uniformizer p.
template <class E>
class MultChar {
public:
    MultChar(long p, int level, E gen_image, E at_uniformizer)
        : p_(p), level_(level), gen_(std::move(gen_image)), unif_(std::move(at_uniformizer)) {
        if (level_ < 0) throw Error("character level must be nonnegative");
        if (!unif_.is_unit()) throw Error("character value at the uniformizer must be a unit");
        if (level_ == 0 && !(gen_ == gen_.ring().one())) throw Error("level-0 character must be trivial on units");
        std::int64_t ord = unit_order();
        auto pw = std::make_shared<std::vector<E>>();
        pw->reserve(static_cast<size_t>(ord));
        E x = gen_.ring().one();
        for (std::int64_t k = 0; k < ord; ++k) {
            pw->push_back(x);
            x = x * gen_;
        }
        if (!(x == gen_.ring().one())) throw Error("unit values must be roots of unity of order dividing the unit index");
        powers_ = std::move(pw);
        conductor_ = compute_conductor();
    }

    static MultChar trivial(const ring_t<E>& ring, long p) { return MultChar(p, 0, ring.one(), ring.one()); }
    static MultChar unramified(long p, const E& c) { return MultChar(p, 0, c.ring().one(), c); }

    long p() const { return p_; }
    int level() const { return level_; }
    int conductor() const { return conductor_; }
    const E& gen_image() const { return gen_; }
    const E& at_uniformizer() const { return unif_; }
    ring_t<E> ring() const { return gen_.ring(); }
    /// |O^x / (1 + p^level O)|.
    std::int64_t unit_order() const { return level_ == 0 ? 1 : (p_ - 1) * ipow(p_, level_ - 1); }

    /// Value on a unit given by its residue modulo p^level.
    E on_unit_residue(std::int64_t r) const {
        if (level_ == 0) return ring().one();
        int k = dlog_table(p_, level_)[static_cast<size_t>(mod_floor(r, ipow(p_, level_)))];
        if (k < 0) throw Error("residue is not a unit");
        return (*powers_)[static_cast<size_t>(k)];
    }

    E operator()(const Rational& x) const {
        auto [v, r] = val_and_unit(x, p_, level_);
        return ring_pow(unif_, v) * on_unit_residue(r);
    }

    /// omega_X(x) = omega(x) X^val(x).
    LaurentPoly<E> x_eval(const Rational& x) const { return LaurentPoly<E>::monomial((*this)(x), padic_val(x, p_)); }

    friend MultChar operator*(const MultChar& a, const MultChar& b) {
        if (a.p_ != b.p_) throw Error("characters of different fields");
        return MultChar(a.p_, std::max(a.level_, b.level_), a.gen_ * b.gen_, a.unif_ * b.unif_);
    }
    MultChar inverse() const { return MultChar(p_, level_, gen_.inverse(), unif_.inverse()); }
    MultChar pow(long e) const { return MultChar(p_, level_, ring_pow(gen_, e), ring_pow(unif_, e)); }

    /// The same character at a finer level.
    MultChar at_level(int level) const {
        if (level < conductor_) throw Error("level below the conductor");
        return MultChar(p_, level, gen_, unif_);
    }

    /// Composition with a ring map.
    template <class F>
    auto map(F&& f) const {
        using E2 = std::decay_t<std::invoke_result_t<F, const E&>>;
        return MultChar<E2>(p_, level_, f(gen_), f(unif_));
    }

private:
    long p_;
    int level_;
    E gen_, unif_;
    std::shared_ptr<const std::vector<E>> powers_;
    int conductor_ = 0;

    int compute_conductor() const {
        if (gen_ == ring().one()) return 0;
        for (int c = 1; c < level_; ++c) {
            std::int64_t idx = (p_ - 1) * ipow(p_, c - 1);
            if ((*powers_)[static_cast<size_t>(idx % unit_order())] == ring().one()) return c;
        }
        return level_;
    }
};

/// omega_X(x) = omega(x) X^val(x).
template <class E>
LaurentPoly<E> char_X_eval(const MultChar<E>& w, const Rational& x) {
    return w.x_eval(x);
}

/// Additive character trivial on p^-n O and nontrivial on p^(-n-1) O:
/// psi(x) = zeta_{p^k}^(sign * a) for p^n x = a / p^k with a read p-adically.
struct AddChar {
    long p = 5;
    int n = 0;
    int sign = 1;

    AddChar inverse() const { return {p, n, -sign}; }

    CycNumber operator()(const Rational& x) const {
        if (x == 0) return CycNumber(1L);
        Rational y = x * rational_pow(Rational(p), n);
        int v = padic_val(y, p);
        if (v >= 0) return CycNumber(1L);
        std::int64_t pk = ipow(p, -v);
        std::int64_t a = residue(y * Rational(pk), pk);
        return CycNumber::root_of_unity(pk, sign * a);
    }
};

/// Hilbert symbol (a, b)_p, including p = 2.
inline int hilbert_symbol(const Rational& a, const Rational& b, long p) {
    if (a == 0 || b == 0) throw Error("Hilbert symbol of zero");
    auto [alpha, u] = split_unit(a, p);
    auto [beta, v] = split_unit(b, p);
    if (p == 2) {
        std::int64_t uu = residue(u, 8), vv = residue(v, 8);
        auto eps = [](std::int64_t t) { return ((t - 1) / 2) % 2; };
        auto omg = [](std::int64_t t) { return ((t * t - 1) / 8) % 2; };
        long e = eps(uu) * eps(vv) + alpha * omg(vv) + beta * omg(uu);
        return e % 2 ? -1 : 1;
    }
    int s = ((alpha * beta) % 2 != 0 && (p - 1) / 2 % 2 != 0) ? -1 : 1;
    if (beta % 2) s *= legendre(residue(u, p), p);
    if (alpha % 2) s *= legendre(residue(v, p), p);
    return s;
}

/// x -> (x, delta)_p as a character valued in the given ring.
template <class E>
MultChar<E> hilbert_char(const ring_t<E>& ring, long p, const Rational& delta) {
    long g = primitive_root_mod_p2(p);
    auto val = [&](int s) { return s == 1 ? ring.one() : -ring.one(); };
    int gs = hilbert_symbol(Rational(g), delta, p), ps = hilbert_symbol(Rational(p), delta, p);
    return MultChar<E>(p, gs == 1 ? 0 : 1, val(gs), val(ps));
}

/// The quadratic character of F^x whose kernel is the norm group of E.
template <class E>
MultChar<E> eta_char(const ring_t<E>& ring, const LocalFieldDesc& f) {
    if (!f.has_extension()) throw Error("no quadratic extension");
    return hilbert_char<E>(ring, f.p, f.disc());
}

/// a + b theta in E.
struct QuadElem {
    Rational a, b;
};

inline Rational norm_map(const QuadElem& x, const LocalFieldDesc& f) {
    if (!f.has_extension()) return x.a * x.a;
    return x.a * x.a - f.disc() * x.b * x.b;
}

}  // namespace lcif
