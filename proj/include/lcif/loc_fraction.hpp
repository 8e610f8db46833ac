#pragma once

// Fractions num/den with den in S, the localization S^-1 A[X, X^-1], plus
// truncated Laurent series and the series certificate used by the zeta engine.

#include "lcif/laurent.hpp"

#include <vector>

namespace lcif {

template <class E>
class LocFraction {
public:
    using Poly = LaurentPoly<E>;

    explicit LocFraction(const ring_t<E>& base) : num_(base), den_(Poly::constant(base.one())) {}
    LocFraction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.base().one())) {}  // NOLINT
    LocFraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (!s_membership(den_)) throw Error("denominator not in S");
        canonicalize();
    }

    static LocFraction constant(const E& c) { return LocFraction(Poly::constant(c)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ring_t<E>& base() const { return num_.base(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Invertible in the localization through the numerator being in S.
    bool is_unit() const { return s_membership(num_); }
    LocFraction inverse() const {
        if (!s_membership(num_)) throw Error("not invertible in S-localization");
        return LocFraction(den_, num_);
    }

    friend LocFraction operator+(const LocFraction& a, const LocFraction& b) {
        if (a.den_ == b.den_) return LocFraction(a.num_ + b.num_, a.den_);
        return LocFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LocFraction operator-(const LocFraction& a, const LocFraction& b) { return a + (-b); }
    LocFraction operator-() const { return raw(-num_, den_); }
    friend LocFraction operator*(const LocFraction& a, const LocFraction& b) {
        if (a.den_.is_constant() && b.den_.is_constant()) return raw(a.num_ * b.num_, a.den_ * b.den_);
        return LocFraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend LocFraction operator/(const LocFraction& a, const LocFraction& b) { return a * b.inverse(); }
    LocFraction& operator+=(const LocFraction& b) { return *this = *this + b; }
    LocFraction& operator*=(const LocFraction& b) { return *this = *this * b; }

    friend bool operator==(const LocFraction& a, const LocFraction& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const LocFraction& a, const LocFraction& b) { return !(a == b); }

    LocFraction scale(const E& s) const { return raw(num_.scale(s), den_); }
    LocFraction pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        LocFraction r(Poly::constant(base().one()));
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// X^e -> a^e X^(k e) applied to numerator and denominator.
    LocFraction substitute(const E& a, long k) const { return LocFraction(num_.substitute(a, k), den_.substitute(a, k)); }

    /// Series coefficients in ascending powers of X for exponents lo..hi.
    std::vector<E> expand(long lo, long hi) const {
        std::vector<E> out;
        if (hi < lo) return out;
        // den has trailing exponent 0 and trailing coefficient 1 in canonical form.
        Poly d = den_.shift(-den_.min_exp());
        long shift = -den_.min_exp();
        E d0_inv = d.trailing().inverse();
        out.assign(static_cast<size_t>(hi - lo + 1), base().zero());
        if (num_.is_zero()) return out;
        long start = num_.min_exp() + shift;
        std::vector<E> s;  // s[j] is the coefficient of X^(start + j)
        for (long j = 0; start + j <= hi; ++j) {
            E acc = num_.coeff(start + j - shift);
            for (const auto& [k, c] : d.terms()) {
                if (k == 0 || k > j) continue;
                acc = acc - c * s[static_cast<size_t>(j - k)];
            }
            s.push_back(acc * d0_inv);
            long e = start + j;
            if (e >= lo) out[static_cast<size_t>(e - lo)] = s.back();
        }
        return out;
    }

    /// Lowest exponent of the series expansion.
    long order() const { return num_.min_exp() - den_.min_exp(); }

    std::string to_string() const { return "(" + num_.to_string() + ") / (" + den_.to_string() + ")"; }

private:
    Poly num_, den_;

    static LocFraction raw(Poly n, Poly d) {
        LocFraction f(n.base());
        f.num_ = std::move(n);
        f.den_ = std::move(d);
        return f;
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.base().one());
            return;
        }
        if constexpr (ring_t<E>::is_field()) {
            Poly g = poly_gcd(num_, den_);
            if (!(g.is_constant())) {
                num_ = *num_.exact_div(g);
                den_ = *den_.exact_div(g);
            }
        } else {
            if (!den_.is_monomial()) {
                if (auto q = num_.exact_div(den_)) {
                    num_ = *q;
                    den_ = Poly::constant(num_.base().one());
                }
            }
        }
        long s = den_.min_exp();
        E t_inv = den_.trailing().inverse();
        num_ = num_.shift(-s).scale(t_inv);
        den_ = den_.shift(-s).scale(t_inv);
    }
};

/// c X^(k v0) / (1 - r X^k): the sum of c r^(v - v0) X^(k v) over v >= v0.
template <class E>
LocFraction<E> geometric_tail_sum(const E& c, const E& r, long k, long v0) {
    using Poly = LaurentPoly<E>;
    if (k == 0) throw Error("tail step must be nonzero");
    Poly num = Poly::monomial(c, k * v0);
    if (r.is_zero()) return LocFraction<E>(num);
    Poly den = Poly::constant(c.ring().one()) - Poly::monomial(r, k);
    if (!s_membership(den)) throw Error("tail not summable in S-localization");
    return LocFraction<E>(num, den);
}

/// Laurent series known on exponents floor .. floor + coeffs.size() - 1; only
/// exponents up to trusted_upto are certified.
template <class E>
struct TruncSeries {
    long floor = 0;
    std::vector<E> coeffs;
    long trusted_upto = 0;

    E coeff(long e, const ring_t<E>& base) const {
        if (e < floor || e >= floor + static_cast<long>(coeffs.size())) return base.zero();
        return coeffs[static_cast<size_t>(e - floor)];
    }

    static TruncSeries from_poly(const LaurentPoly<E>& p, long trusted) {
        TruncSeries s;
        if (p.is_zero()) {
            s.floor = 0;
            s.trusted_upto = trusted;
            return s;
        }
        s.floor = p.min_exp();
        for (long e = p.min_exp(); e <= p.max_exp(); ++e) s.coeffs.push_back(p.coeff(e));
        s.trusted_upto = trusted;
        return s;
    }
};

/// True iff the expansion of f agrees with s on every exponent up to s.trusted_upto.
template <class E>
bool series_match(const LocFraction<E>& f, const TruncSeries<E>& s) {
    const auto& base = f.base();
    long lo = s.floor;
    if (!f.is_zero()) lo = std::min(lo, f.order());
    if (s.trusted_upto < lo) return true;
    auto ex = f.expand(lo, s.trusted_upto);
    for (long e = lo; e <= s.trusted_upto; ++e)
        if (!(ex[static_cast<size_t>(e - lo)] == s.coeff(e, base))) return false;
    return true;
}

}  // namespace lcif
