#pragma once

// Normalizing data for the doubling method at odd p: square classes, Kottwitz
// signs, Weil indices, R(X, omega, B, psi) and the closed form d(X, omega, B, psi).

#include "lcif/tate_gamma.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcif {

enum class CaseTag { I1, I2, I3, II };

inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::I1: return "I1";
        case CaseTag::I2: return "I2";
        case CaseTag::I3: return "I3";
        default: return "II";
    }
}

inline CaseTag parse_case(const std::string& s) {
    if (s == "I1") return CaseTag::I1;
    if (s == "I2") return CaseTag::I2;
    if (s == "I3") return CaseTag::I3;
    if (s == "II") return CaseTag::II;
    throw Error("unknown case tag '" + s + "'");
}

using RatMatrix = std::vector<std::vector<Rational>>;

inline Rational determinant(RatMatrix m) {
    size_t n = m.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Element of Q_p^x / Q_p^x2 for odd p, represented by 1, u, p or u p.
struct SquareClass {
    long p = 5;
    bool odd_val = false;
    bool nonresidue = false;

    static SquareClass of(const Rational& x, long p) {
        auto [v, r] = val_and_unit(x, p, 1);
        return {p, v % 2 != 0, legendre(r, p) == -1};
    }
    Rational representative() const {
        Rational r = nonresidue ? Rational(LocalFieldDesc::smallest_nonresidue(p)) : Rational(1);
        return odd_val ? r * p : r;
    }
    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        return a.p == b.p && a.odd_val == b.odd_val && a.nonresidue == b.nonresidue;
    }
    std::string to_string() const { return representative().get_str(); }
};

/// The data (case, n, Gram matrix, epsilon, B) feeding the normalizing factor.
struct SpaceDesc {
    CaseTag tag = CaseTag::II;
    int n = 1;
    int epsilon = 1;
    RatMatrix gram;
    /// Reduced norm of the Gram matrix when it is not given entrywise (case I2).
    std::optional<Rational> gram_nrd;
    bool d_split = true;
    Rational B_nrd = 1;
    std::optional<LocalFieldDesc> ext;

    void validate() const {
        if (n < 1) throw Error("rank must be positive");
        if (B_nrd == 0) throw Error("B must have maximal rank");
        if (tag == CaseTag::II) return;
        if (tag == CaseTag::I3 && !ext) throw Error("case I3 needs extension data");
        if (tag != CaseTag::I3 && epsilon != 1 && epsilon != -1) throw Error("epsilon must be 1 or -1");
        if (tag == CaseTag::I2 && gram.empty() && !gram_nrd) throw Error("case I2 needs the reduced norm of R");
        if (!gram.empty()) {
            if (static_cast<int>(gram.size()) != n) throw Error("Gram matrix must be n x n");
            int sym = tag == CaseTag::I3 ? 1 : epsilon;
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(gram[i].size()) != n) throw Error("Gram matrix must be n x n");
                for (int j = 0; j < n; ++j)
                    if (gram[i][j] != sym * gram[j][i])
                        throw Error(sym == 1 ? "Gram matrix must be symmetric" : "Gram matrix must be skew-symmetric");
            }
        }
        if (nrd_R() == 0) throw Error("Gram matrix must be invertible");
    }

    Rational nrd_R() const {
        if (gram_nrd) return *gram_nrd;
        if (gram.empty()) throw Error("no Gram data");
        return determinant(gram);
    }
};

/// Square class of (-1)^n Nrd(R).
inline SquareClass discriminant_theta(const SpaceDesc& s, long p) {
    if (s.tag == CaseTag::II) throw Error("no discriminant in linear case");
    return SquareClass::of((s.n % 2 ? Rational(-1) : Rational(1)) * s.nrd_R(), p);
}

/// delta(A) = (-1)^n Nrd(B).
inline Rational delta_A(const SpaceDesc& s) { return (s.n % 2 ? Rational(-1) : Rational(1)) * s.B_nrd; }

inline int kottwitz_sign(const SpaceDesc& s) {
    if (s.d_split) return 1;
    auto sgn = [](long e) { return e % 2 ? -1 : 1; };
    long n = s.n;
    switch (s.tag) {
        case CaseTag::II: return sgn(n);
        case CaseTag::I1:
        case CaseTag::I2: return s.epsilon == 1 ? sgn(n * (n + 1) / 2) : sgn(n * (n - 1) / 2);
        default: return 1;
    }
}

/// eta((-1)^(n(n-1)/2) det R) in case I3.
inline int vartheta(const SpaceDesc& s) {
    if (s.tag != CaseTag::I3 || !s.ext) throw Error("vartheta is defined in case I3 only");
    Rational x = ((s.n * (s.n - 1) / 2) % 2 ? Rational(-1) : Rational(1)) * s.nrd_R();
    return hilbert_symbol(x, s.ext->disc(), s.ext->p);
}

namespace detail {

/// Sum over A mod p^(k+j) of psi(c A^2 / p^(2k)), tallied by exponent of zeta_(p^K).
inline CycNumber quadratic_gauss_sum(long c, const AddChar& psi, int k) {
    long p = psi.p;
    int j = std::max(k - psi.n, 0);
    std::int64_t range = ipow(p, k + j);
    int K = 2 * k - psi.n;
    if (K <= 0) return CycNumber(Rational(range));
    std::int64_t pK = ipow(p, K);
    std::vector<std::int64_t> tally(static_cast<size_t>(pK), 0);
    for (std::int64_t a = 0; a < range; ++a) {
        std::int64_t v = mod_floor(psi.sign * mod_floor(c, pK) % pK * mulmod(a, a, pK), pK);
        ++tally[static_cast<size_t>(v)];
    }
    std::vector<Rational> big(tally.begin(), tally.end());
    return CycNumber::from_power_sum(pK, std::move(big)).minimized();
}

/// x / |x| when |x|^2 is p^k times a rational square.
inline std::optional<CycNumber> unit_direction(const CycNumber& x, long p) {
    if (x.is_zero()) return std::nullopt;
    CycNumber n2 = x * x.conj();
    if (!n2.is_rational()) return std::nullopt;
    Rational r = n2.rational_part();
    for (int odd = 0; odd < 2; ++odd) {
        Rational t = odd ? r / p : r;
        Integer num = t.get_num(), den = t.get_den();
        Integer sn = sqrt(num), sd = sqrt(den);
        if (sn * sn == num && sd * sd == den) {
            CycNumber mod(Rational(sn, sd));
            if (odd) mod = mod * cyc_sqrt_p(p);
            return (x * mod.inverse()).minimized();
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Normalized Gauss sum of psi^-1 o N over p^-k O_E / p^j O_E.
inline std::optional<CycNumber> weil_index_at(const LocalFieldDesc& ext, const AddChar& psi, int k) {
    if (!ext.has_extension()) throw Error("no quadratic extension");
    AddChar inv = psi.inverse();
    long D = ext.disc().get_num().get_si();
    // N(a + b theta) = a^2 - D b^2.
    CycNumber s = detail::quadratic_gauss_sum(1, inv, k) * detail::quadratic_gauss_sum(-D, inv, k);
    return detail::unit_direction(s, psi.p);
}

/// Weil index of psi^-1 o N_{E/F}, certified stable across two lattice levels.
inline CycNumber weil_index(const LocalFieldDesc& ext, const AddChar& psi) {
    for (int k = 1; k <= 2; ++k) {
        auto a = weil_index_at(ext, psi, k), b = weil_index_at(ext, psi, k + 1);
        if (a && b && *a == *b) return *a;
    }
    throw Error("Weil index oracle failed to stabilize");
}

/// epsilon(q^-1/2, chi, psi).
template <class E>
E epsilon_at_inv_sqrt_q(const MultChar<E>& chi, const AddChar& psi) {
    auto eps = tate_epsilon(chi, psi);
    const auto& num = eps.num();
    if (!num.is_monomial() || !eps.den().is_constant()) throw Error("epsilon factor is not a monomial");
    long k = num.min_exp();
    return num.trailing() * detail::sqrt_p_pow<E>(chi.ring(), chi.p(), -k);
}

/// omega_X(b) = omega(b) X^(e val b) with e the ramification of E/F.
template <class E>
LocFraction<E> omega_X(const MultChar<E>& w, const Rational& b, long e = 1) {
    return LocFraction<E>(LaurentPoly<E>::monomial(w(b), e * padic_val(b, w.p())));
}

template <class E>
LocFraction<E> r_factor(const SpaceDesc& s, const MultChar<E>& w, const AddChar& psi) {
    s.validate();
    const auto ring = w.ring();
    long p = w.p();
    switch (s.tag) {
        case CaseTag::II: {
            Rational half = s.B_nrd / rational_pow(Rational(2), s.n);
            return omega_X(w, half).pow(-2);
        }
        case CaseTag::I3: {
            int eta = hilbert_symbol(s.nrd_R(), s.ext->disc(), p);
            return omega_X(w, s.B_nrd, s.ext->ramification()).inverse().scale(detail::scalar<E>(ring, Rational(eta)));
        }
        default: break;
    }
    auto wb_inv = omega_X(w, s.B_nrd).inverse();
    if (s.epsilon == 1) {
        auto chi = hilbert_char<E>(ring, p, delta_A(s));
        auto g = tate_gamma(w * chi, psi).substitute(detail::sqrt_p_pow<E>(ring, p, -1), 1);
        return wb_inv * g.scale(epsilon_at_inv_sqrt_q(chi, psi).inverse());
    }
    auto chi = hilbert_char<E>(ring, p, discriminant_theta(s, p).representative());
    return wb_inv.scale(epsilon_at_inv_sqrt_q(chi, psi));
}

/// The closed form d(X, omega, B, psi) for odd p, where the X^val(2) and |2| terms are 1.
template <class E>
LocFraction<E> d_factor(const SpaceDesc& s, const MultChar<E>& w, const AddChar& psi) {
    s.validate();
    const auto ring = w.ring();
    long p = w.p();
    int n = s.n;
    auto q_pow = [&](long k) { return detail::scalar<E>(ring, rational_pow(Rational(p), static_cast<int>(k))); };
    LocFraction<E> one = LocFraction<E>::constant(ring.one());

    if (s.tag == CaseTag::II) {
        LocFraction<E> den = one;
        auto w2 = w.pow(2);
        auto g = tate_gamma(w2, psi);
        for (int i = 0; i <= 2 * n - 1; ++i) den *= g.substitute(q_pow(i), 2);
        E lead = ring_pow(w(Rational(4)), -2 * n);
        if (n % 2) lead = -lead;
        return den.inverse().scale(lead) * r_factor(s, w, psi);
    }

    if (s.tag == CaseTag::I3) {
        const auto& ext = *s.ext;
        long k = ext.ext == ExtKind::unramified ? 2 : 1;
        auto eta = eta_char<E>(ring, ext);
        LocFraction<E> den = one;
        for (int r = 0; r < n; ++r) den *= tate_gamma(w * eta.pow(r), psi).substitute(q_pow(n - 1 - r), k);
        CycNumber weil = weil_index(ext, psi).pow(static_cast<long>(n) * (n - 1) / 2);
        return den.inverse().scale(ring.from_cyc(weil)) * omega_X(w, s.B_nrd, ext.ramification()).inverse();
    }

    Rational nrd = s.nrd_R();
    int v = padic_val(nrd, p);
    E lead = detail::scalar<E>(ring, Rational(kottwitz_sign(s))) * ring_pow(w(Rational(4)), -n);
    LocFraction<E> den = LocFraction<E>::constant(w(nrd));
    auto g2 = tate_gamma(w.pow(2), psi);
    for (int i = 0; i < n; ++i) den *= g2.substitute(q_pow(2 * i), 2);
    if (s.epsilon == 1) {
        // |Nrd R|^(n + 1/2) = (sqrt p)^(-v (2n + 1)).
        den = den.scale(detail::sqrt_p_pow<E>(ring, p, -static_cast<long>(v) * (2 * n + 1)));
        den *= tate_gamma(w, psi).substitute(detail::sqrt_p_pow<E>(ring, p, 2 * n - 1), 1);
        return den.inverse().scale(lead) * r_factor(s, w, psi);
    }
    den = den.scale(detail::sqrt_p_pow<E>(ring, p, -static_cast<long>(v) * (2 * n - 1)));
    return den.inverse().scale(lead) * omega_X(w, s.B_nrd).inverse();
}

/// Numerator and denominator both in S.
template <class E>
bool check_unit_in_localization(const LocFraction<E>& f) {
    return s_membership(f.num()) && s_membership(f.den());
}

/// Over the twist ring a fraction is a unit exactly when it is one in every component.
inline bool check_unit_in_localization(const LocFraction<TwistElem>& f) {
    for (long i = 0; i < f.base().d; ++i)
        if (!check_unit_in_localization(project(f, i))) return false;
    return true;
}

}  // namespace lcif
