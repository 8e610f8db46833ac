#pragma once

#include "lcif/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

namespace lcif {

namespace detail {

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto f : prime_factors(n)) r = r / f * (f - 1);
    return r;
}

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
inline const std::vector<Integer>& cyclotomic_poly(std::int64_t n) {
    static std::mutex mu;
    static std::map<std::int64_t, std::vector<Integer>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1 divided by every Phi_d, d | n, d < n.
    std::vector<Integer> num(static_cast<size_t>(n + 1), 0);
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d) continue;
        const auto& div = cyclotomic_poly(d);
        size_t dd = div.size() - 1;
        std::vector<Integer> q(num.size() - dd, 0);
        for (size_t i = num.size() - 1; i + 1 > dd; --i) {
            Integer c = num[i];  // divisor is monic
            q[i - dd] = c;
            if (c != 0)
                for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
            if (i == dd) break;
        }
        num = std::move(q);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(num)).first->second;
}

}  // namespace detail

class CycNumber;

/// Handle for the cyclotomic scalars; all instances describe the same ring.
struct CycRing {
    CycNumber zero() const;
    CycNumber one() const;
    CycNumber from_cyc(const CycNumber& c) const;
    CycNumber from_rational(const Rational& r) const;
    static constexpr bool is_field() { return true; }
    friend bool operator==(const CycRing&, const CycRing&) { return true; }
};

/// Exact element of Q(zeta_N), stored in the power basis 1, zeta, ..., zeta^(phi(N)-1)
/// with zeta = exp(2 pi i / N). Binary operations on different orders work in
/// Q(zeta_lcm).
class CycNumber {
public:
    using ring_type = CycRing;

    CycNumber() : order_(1), c_(1, Rational(0)) {}
    CycNumber(const Rational& r) : order_(1), c_(1, r) {}  // NOLINT: implicit scalar embedding
    CycNumber(long v) : CycNumber(Rational(v)) {}          // NOLINT

    CycNumber(std::int64_t order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
        if (order_ < 1) throw Error("cyclotomic order must be positive");
        if (static_cast<std::int64_t>(c_.size()) != detail::euler_phi(order_))
            throw Error("coefficient vector length must equal phi(N)");
    }

    /// zeta_N^k.
    static CycNumber root_of_unity(std::int64_t n, std::int64_t k) {
        std::vector<Rational> big(static_cast<size_t>(n), Rational(0));
        big[static_cast<size_t>(mod_floor(k, n))] = 1;
        return CycNumber(n, reduce(n, std::move(big)));
    }

    /// Sum of big[k] zeta_n^k for k < big.size().
    static CycNumber from_power_sum(std::int64_t n, std::vector<Rational> big) {
        std::vector<Rational> folded(static_cast<size_t>(n), Rational(0));
        for (size_t k = 0; k < big.size(); ++k) folded[k % static_cast<size_t>(n)] += big[k];
        return CycNumber(n, reduce(n, std::move(folded)));
    }

    CycRing ring() const { return {}; }
    std::int64_t order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
    }
    bool is_rational() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r == 0; });
    }
    Rational rational_part() const { return c_[0]; }

    /// Image in Q(zeta_m) for order() | m.
    CycNumber lift(std::int64_t m) const {
        if (m == order_) return *this;
        if (m % order_ != 0) throw Error("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                                         std::to_string(m) + ")");
        std::int64_t step = m / order_;
        std::vector<Rational> big(static_cast<size_t>(m), Rational(0));
        for (size_t j = 0; j < c_.size(); ++j) big[j * static_cast<size_t>(step)] = c_[j];
        return CycNumber(m, reduce(m, std::move(big)));
    }

    /// Same element in a smaller cyclotomic field where cheaply detectable: descends
    /// from Q(zeta_N) to Q(zeta_(N/f)) for f^2 | N, and to Q when rational.
    CycNumber minimized() const {
        if (is_rational()) return CycNumber(c_[0]);
        CycNumber r = *this;
        bool again = true;
        while (again) {
            again = false;
            for (auto f : prime_factors(r.order_)) {
                if (r.order_ % (f * f)) continue;
                bool ok = true;
                for (size_t t = 0; t < r.c_.size() && ok; ++t) ok = t % static_cast<size_t>(f) == 0 || r.c_[t] == 0;
                if (!ok) continue;
                std::vector<Rational> sub;
                for (size_t t = 0; t < r.c_.size(); t += static_cast<size_t>(f)) sub.push_back(r.c_[t]);
                r = CycNumber(r.order_ / f, std::move(sub));
                again = true;
                break;
            }
        }
        return r;
    }

    /// Galois action zeta -> zeta^k, gcd(k, N) = 1.
    CycNumber galois(std::int64_t k) const {
        std::vector<Rational> big(static_cast<size_t>(order_), Rational(0));
        for (size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) big[static_cast<size_t>(mod_floor(static_cast<std::int64_t>(j) * k, order_))] += c_[j];
        return CycNumber(order_, reduce(order_, std::move(big)));
    }

    /// Complex conjugation.
    CycNumber conj() const { return galois(-1); }

    /// Field norm down to Q.
    Rational norm() const {
        CycNumber prod = other_conjugates_product();
        CycNumber n = *this * prod;
        return n.c_[0];
    }

    bool is_unit() const { return !is_zero(); }

    CycNumber inverse() const {
        if (is_zero()) throw Error("inverse of zero in cyclotomic field");
        if (is_rational()) return CycNumber(order_, scaled(Rational(1) / c_[0], unit_vec()));
        CycNumber prod = other_conjugates_product();
        CycNumber n = *this * prod;
        Rational inv = Rational(1) / n.c_[0];
        for (auto& r : prod.c_) r *= inv;
        return prod;
    }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = common(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = common(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    CycNumber operator-() const {
        CycNumber r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == 1 || a.is_rational()) return b.scaled_by(a.c_[0]);
        if (b.order_ == 1 || b.is_rational()) return a.scaled_by(b.c_[0]);
        auto [x, y] = common(a, b);
        size_t n = x.c_.size();
        std::vector<Rational> prod(2 * n - 1, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
        }
        return CycNumber(x.order_, reduce(x.order_, std::move(prod)));
    }
    CycNumber& operator+=(const CycNumber& b) { return *this = *this + b; }
    CycNumber& operator-=(const CycNumber& b) { return *this = *this - b; }
    CycNumber& operator*=(const CycNumber& b) { return *this = *this * b; }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        auto [x, y] = common(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    CycNumber pow(long e) const {
        CycNumber base = e >= 0 ? *this : inverse();
        CycNumber r(1);
        for (long k = e >= 0 ? e : -e; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            base *= base;
        }
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[j].get_str() + ")";
            if (j > 0) s += "*z" + std::to_string(order_) + "^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

private:
    std::int64_t order_;
    std::vector<Rational> c_;

    std::vector<Rational> unit_vec() const {
        std::vector<Rational> v(c_.size(), Rational(0));
        v[0] = 1;
        return v;
    }
    static std::vector<Rational> scaled(const Rational& s, std::vector<Rational> v) {
        for (auto& r : v) r *= s;
        return v;
    }
    CycNumber scaled_by(const Rational& s) const {
        CycNumber r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    CycNumber other_conjugates_product() const {
        CycNumber prod(order_, unit_vec());
        for (std::int64_t k = 2; k < order_; ++k)
            if (std::gcd(k, order_) == 1) prod = prod * galois(k);
        return prod;
    }

    static std::pair<CycNumber, CycNumber> common(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == b.order_) return {a, b};
        std::int64_t m = std::lcm(a.order_, b.order_);
        return {a.lift(m), b.lift(m)};
    }

    static std::vector<Rational> reduce(std::int64_t n, std::vector<Rational> big) {
        const auto& phi = detail::cyclotomic_poly(n);
        size_t deg = phi.size() - 1;
        for (size_t i = big.size(); i-- > deg;) {
            if (big[i] == 0) continue;
            Rational c = big[i];
            for (size_t j = 0; j <= deg; ++j)
                if (phi[j] != 0) big[i - deg + j] -= c * Rational(phi[j]);
        }
        big.resize(deg, Rational(0));
        if (big.empty()) big.push_back(Rational(0));
        return big;
    }
};

inline CycNumber CycRing::zero() const { return CycNumber(0L); }
inline CycNumber CycRing::one() const { return CycNumber(1L); }
inline CycNumber CycRing::from_cyc(const CycNumber& c) const { return c; }
inline CycNumber CycRing::from_rational(const Rational& r) const { return CycNumber(r); }

/// The positive square root of an odd prime p inside Q(zeta_4p), built from the
/// quadratic Gauss sum.
inline CycNumber cyc_sqrt_p(std::int64_t p) {
    static std::mutex mu;
    static std::map<std::int64_t, CycNumber> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    CycNumber g;
    for (std::int64_t a = 1; a < p; ++a)
        g += CycNumber(legendre(a, p)) * CycNumber::root_of_unity(p, a);
    CycNumber s = p % 4 == 1 ? g.lift(4 * p) : -(CycNumber::root_of_unity(4, 1) * g);
    return cache.emplace(p, s).first->second;
}

}  // namespace lcif
