#pragma once

// Q(zeta_N)[T, T^-1][U]/(U^d - 1), held through the isomorphism with the product
// of d copies of Q(zeta_N, zeta_d)[T, T^-1]: component i is the image under U -> zeta_d^i.

#include "lcif/loc_fraction.hpp"

#include <vector>

namespace lcif {

/// Laurent polynomials in the unramified parameter T.
using TPoly = LaurentPoly<CycNumber>;

class TwistElem;

struct TwistRing {
    long d = 1;

    TwistElem zero() const;
    TwistElem one() const;
    TwistElem from_cyc(const CycNumber& c) const;
    TwistElem from_tpoly(const TPoly& p) const;
    TwistElem T() const;
    TwistElem U() const;
    static constexpr bool is_field() { return false; }
    friend bool operator==(const TwistRing& a, const TwistRing& b) { return a.d == b.d; }
};

class TwistElem {
public:
    using ring_type = TwistRing;

    TwistElem(TwistRing r, std::vector<TPoly> comps) : r_(r), c_(std::move(comps)) {
        if (static_cast<long>(c_.size()) != r_.d) throw Error("twist element needs one component per character");
    }

    /// Element with the given coefficients on 1, U, ..., U^(d-1).
    static TwistElem from_group_coeffs(TwistRing r, const std::vector<TPoly>& a) {
        std::vector<TPoly> comps;
        for (long i = 0; i < r.d; ++i) {
            TPoly s = TPoly(CycRing{});
            for (long k = 0; k < r.d; ++k) s += a[static_cast<size_t>(k)].scale(CycNumber::root_of_unity(r.d, i * k));
            comps.push_back(s);
        }
        return {r, comps};
    }

    TwistRing ring() const { return r_; }
    const std::vector<TPoly>& components() const { return c_; }
    const TPoly& component(long i) const { return c_[static_cast<size_t>(i)]; }

    /// Coefficients on 1, U, ..., U^(d-1).
    std::vector<TPoly> group_coeffs() const {
        std::vector<TPoly> a;
        CycNumber inv_d(make_rational(1, r_.d));
        for (long k = 0; k < r_.d; ++k) {
            TPoly s = TPoly(CycRing{});
            for (long i = 0; i < r_.d; ++i) s += c_[static_cast<size_t>(i)].scale(CycNumber::root_of_unity(r_.d, -i * k));
            a.push_back(s.scale(inv_d));
        }
        return a;
    }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_unit() const {
        for (const auto& c : c_)
            if (!c.is_unit()) return false;
        return true;
    }
    TwistElem inverse() const {
        std::vector<TPoly> out;
        for (const auto& c : c_) out.push_back(c.inverse());
        return {r_, out};
    }

    friend TwistElem operator+(const TwistElem& a, const TwistElem& b) { return zip(a, b, [](auto& x, auto& y) { return x + y; }); }
    friend TwistElem operator-(const TwistElem& a, const TwistElem& b) { return zip(a, b, [](auto& x, auto& y) { return x - y; }); }
    friend TwistElem operator*(const TwistElem& a, const TwistElem& b) { return zip(a, b, [](auto& x, auto& y) { return x * y; }); }
    TwistElem operator-() const {
        std::vector<TPoly> out;
        for (const auto& c : c_) out.push_back(-c);
        return {r_, out};
    }
    friend bool operator==(const TwistElem& a, const TwistElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TwistElem& a, const TwistElem& b) { return !(a == b); }

    /// Value under T -> t0, U -> zeta_d^j.
    CycNumber specialize(long j, const CycNumber& t0) const { return c_[static_cast<size_t>(mod_floor(j, r_.d))].eval(t0); }

    std::string to_string() const {
        auto a = group_coeffs();
        std::string s;
        for (long k = 0; k < r_.d; ++k) {
            if (a[static_cast<size_t>(k)].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "{" + a[static_cast<size_t>(k)].to_string("T") + "}";
            if (k) s += "*U^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

private:
    TwistRing r_;
    std::vector<TPoly> c_;

    template <class F>
    static TwistElem zip(const TwistElem& a, const TwistElem& b, F f) {
        if (a.r_.d != b.r_.d) throw Error("twist elements from different rings");
        std::vector<TPoly> out;
        out.reserve(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) out.push_back(f(a.c_[i], b.c_[i]));
        return {a.r_, out};
    }
};

inline TwistElem TwistRing::from_tpoly(const TPoly& p) const { return {*this, std::vector<TPoly>(static_cast<size_t>(d), p)}; }
inline TwistElem TwistRing::zero() const { return from_tpoly(TPoly(CycRing{})); }
inline TwistElem TwistRing::one() const { return from_cyc(CycNumber(1L)); }
inline TwistElem TwistRing::from_cyc(const CycNumber& c) const { return from_tpoly(TPoly::constant(c)); }
inline TwistElem TwistRing::T() const { return from_tpoly(TPoly::x(CycRing{})); }
inline TwistElem TwistRing::U() const {
    std::vector<TPoly> comps;
    for (long i = 0; i < d; ++i) comps.push_back(TPoly::constant(CycNumber::root_of_unity(d, i)));
    return {*this, comps};
}

/// Image of a twist-valued polynomial in component i.
inline LaurentPoly<TPoly> project(const LaurentPoly<TwistElem>& f, long i) {
    return f.map([i](const TwistElem& c) { return c.component(i); }, LaurentRing<CycNumber>{});
}

/// Image of a twist-valued fraction in component i.
inline LocFraction<TPoly> project(const LocFraction<TwistElem>& f, long i) {
    return LocFraction<TPoly>(project(f.num(), i), project(f.den(), i));
}

/// Polynomial whose component i is parts[i].
inline LaurentPoly<TwistElem> assemble(const TwistRing& r, const std::vector<LaurentPoly<TPoly>>& parts) {
    std::map<long, std::vector<TPoly>> coeffs;
    for (size_t i = 0; i < parts.size(); ++i)
        for (const auto& [e, c] : parts[i].terms()) {
            auto& v = coeffs[e];
            if (v.empty()) v.assign(parts.size(), TPoly(CycRing{}));
            v[i] = c;
        }
    typename LaurentPoly<TwistElem>::Terms terms;
    for (auto& [e, v] : coeffs) terms.emplace(e, TwistElem(r, std::move(v)));
    return LaurentPoly<TwistElem>(r, std::move(terms));
}

/// Fraction whose component i is parts[i]. The denominator is the product of the
/// distinct component denominators, placed in every component, so it stays in S.
inline LocFraction<TwistElem> assemble(const TwistRing& r, const std::vector<LocFraction<TPoly>>& parts) {
    std::vector<LaurentPoly<TPoly>> dens;
    for (const auto& f : parts) {
        bool seen = f.den().is_constant();
        for (const auto& d : dens) seen = seen || d == f.den();
        if (!seen) dens.push_back(f.den());
    }
    LaurentPoly<TPoly> common = LaurentPoly<TPoly>::constant(TPoly::constant(CycNumber(1L)));
    for (const auto& d : dens) common *= d;
    std::vector<LaurentPoly<TPoly>> nums, dparts(parts.size(), common);
    for (const auto& f : parts) nums.push_back(f.num() * *common.exact_div(f.den()));
    return LocFraction<TwistElem>(assemble(r, nums), assemble(r, dparts));
}

}  // namespace lcif
