#pragma once

// Laurent polynomials A[X, X^-1] over a coefficient ring A. The element type E
// supplies +, -, *, ==, is_zero(), is_unit(), inverse() and a ring() handle
// with zero(), one(), from_cyc() and is_field().

#include "lcif/cyclotomic.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace lcif {

template <class E>
using ring_t = typename E::ring_type;

/// a^e for a unit a when e < 0.
template <class E>
E ring_pow(const E& a, long e) {
    E base = e >= 0 ? a : a.inverse();
    E r = a.ring().one();
    for (long k = e >= 0 ? e : -e; k > 0; k >>= 1) {
        if (k & 1) r = r * base;
        if (k > 1) base = base * base;
    }
    return r;
}

template <class E>
class LaurentPoly;

/// The ring A[X, X^-1] itself, so Laurent polynomials can serve as coefficients.
template <class E>
struct LaurentRing {
    ring_t<E> base;
    LaurentPoly<E> zero() const;
    LaurentPoly<E> one() const;
    LaurentPoly<E> from_cyc(const CycNumber& c) const;
    static constexpr bool is_field() { return false; }
    friend bool operator==(const LaurentRing& a, const LaurentRing& b) { return a.base == b.base; }
};

template <class E>
class LaurentPoly {
public:
    using ring_type = LaurentRing<E>;
    using coeff_type = E;
    using Terms = std::map<long, E>;

    explicit LaurentPoly(ring_t<E> base) : base_(std::move(base)) {}
    LaurentPoly(ring_t<E> base, Terms terms) : base_(std::move(base)), t_(std::move(terms)) { prune(); }

    static LaurentPoly monomial(const E& c, long e) {
        LaurentPoly r(c.ring());
        if (!c.is_zero()) r.t_.emplace(e, c);
        return r;
    }
    static LaurentPoly constant(const E& c) { return monomial(c, 0); }
    static LaurentPoly x(const ring_t<E>& base) { return monomial(base.one(), 1); }

    ring_type ring() const { return {base_}; }
    const ring_t<E>& base() const { return base_; }
    const Terms& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    long min_exp() const { return require_nonzero().t_.begin()->first; }
    long max_exp() const { return require_nonzero().t_.rbegin()->first; }
    const E& trailing() const { return require_nonzero().t_.begin()->second; }
    const E& leading() const { return require_nonzero().t_.rbegin()->second; }
    E coeff(long e) const {
        auto it = t_.find(e);
        return it == t_.end() ? base_.zero() : it->second;
    }
    bool is_monomial() const { return t_.size() == 1; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0); }

    /// Units of A[X, X^-1] recognized here: monomials with unit coefficient.
    bool is_unit() const { return is_monomial() && t_.begin()->second.is_unit(); }
    LaurentPoly inverse() const {
        if (!is_unit()) throw Error("Laurent polynomial is not a unit monomial");
        return monomial(t_.begin()->second.inverse(), -t_.begin()->first);
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, -c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r(a.base_);
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        auto ib = b.t_.begin();
        for (const auto& [e, c] : a.t_) {
            if (e != ib->first || !(c == ib->second)) return false;
            ++ib;
        }
        return true;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly scale(const E& s) const {
        LaurentPoly r(base_);
        for (const auto& [e, c] : t_) r.add_term(e, c * s);
        return r;
    }
    LaurentPoly shift(long k) const {
        LaurentPoly r(base_);
        for (const auto& [e, c] : t_) r.t_.emplace(e + k, c);
        return r;
    }
    LaurentPoly pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        LaurentPoly r = ring().one(), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r *= b;
            if (e > 1) b *= b;
        }
        return r;
    }

    /// X^e -> a^e X^(k e). Needs a to be a unit when negative exponents occur.
    LaurentPoly substitute(const E& a, long k) const {
        LaurentPoly r(base_);
        for (const auto& [e, c] : t_) r.add_term(k * e, c * ring_pow(a, e));
        return r;
    }

    /// Value at X = a.
    E eval(const E& a) const {
        E s = base_.zero();
        for (const auto& [e, c] : t_) s = s + c * ring_pow(a, e);
        return s;
    }

    /// Coefficientwise image under a ring map.
    template <class F>
    auto map(F&& f, const ring_t<std::decay_t<std::invoke_result_t<F, const E&>>>& target) const {
        using E2 = std::decay_t<std::invoke_result_t<F, const E&>>;
        LaurentPoly<E2> r(target);
        typename LaurentPoly<E2>::Terms out;
        for (const auto& [e, c] : t_) out.emplace(e, f(c));
        return LaurentPoly<E2>(target, std::move(out));
    }

    /// Polynomial long division by a divisor with unit leading coefficient.
    std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& d) const {
        if (d.is_zero()) throw Error("division by zero polynomial");
        if (!d.leading().is_unit()) throw Error("divisor leading coefficient is not a unit");
        E lead_inv = d.leading().inverse();
        LaurentPoly q(base_), r = *this;
        while (!r.is_zero() && r.max_exp() >= d.max_exp()) {
            long s = r.max_exp() - d.max_exp();
            E c = r.leading() * lead_inv;
            q.add_term(s, c);
            r -= d.shift(s).scale(c);
        }
        return {q, r};
    }

    /// Exact quotient when d divides this polynomial, aligned by trailing exponents.
    std::optional<LaurentPoly> exact_div(const LaurentPoly& d) const {
        if (is_zero()) return LaurentPoly(base_);
        LaurentPoly a = shift(-min_exp()), b = d.shift(-d.min_exp());
        if (!b.leading().is_unit()) return std::nullopt;
        E lead_inv = b.leading().inverse();
        long bdeg = b.max_exp();
        LaurentPoly q(base_);
        while (!a.is_zero() && a.max_exp() >= bdeg) {
            long s = a.max_exp() - bdeg;
            E c = a.leading() * lead_inv;
            q.add_term(s, c);
            a -= b.shift(s).scale(c);
        }
        if (!a.is_zero()) return std::nullopt;
        return q.shift(min_exp() - d.min_exp());
    }

    std::string to_string(const std::string& var = "X") const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "[" + c.to_string() + "]";
            if (e != 0) s += "*" + var + "^" + std::to_string(e);
        }
        return s;
    }

private:
    ring_t<E> base_;
    Terms t_;

    const LaurentPoly& require_nonzero() const {
        if (t_.empty()) throw Error("zero polynomial has no extreme terms");
        return *this;
    }
    void add_term(long e, const E& c) {
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
    void prune() {
        for (auto it = t_.begin(); it != t_.end();) it = it->second.is_zero() ? t_.erase(it) : std::next(it);
    }
};

template <class E>
LaurentPoly<E> LaurentRing<E>::zero() const {
    return LaurentPoly<E>(base);
}
template <class E>
LaurentPoly<E> LaurentRing<E>::one() const {
    return LaurentPoly<E>::constant(base.one());
}
template <class E>
LaurentPoly<E> LaurentRing<E>::from_cyc(const CycNumber& c) const {
    return LaurentPoly<E>::constant(base.from_cyc(c));
}

/// Membership in S: nonzero with unit leading and trailing coefficients.
template <class E>
bool s_membership(const LaurentPoly<E>& p) {
    return !p.is_zero() && p.leading().is_unit() && p.trailing().is_unit();
}

/// Monic gcd over a field, normalized to trailing exponent 0.
template <class E>
LaurentPoly<E> poly_gcd(LaurentPoly<E> a, LaurentPoly<E> b) {
    static_assert(ring_t<E>::is_field(), "gcd needs a field of coefficients");
    if (!a.is_zero()) a = a.shift(-a.min_exp());
    if (!b.is_zero()) b = b.shift(-b.min_exp());
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.shift(-r.min_exp());
    }
    if (a.is_zero()) return a;
    return a.scale(a.leading().inverse());
}

}  // namespace lcif
