#pragma once

// Finite fields F_{l^r} as targets of specialization in characteristic l != p.

#include "lcif/cyclotomic.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lcif {

class FFElem;

namespace detail {

struct FFData {
    std::int64_t ell = 2;
    int r = 1;
    std::int64_t size = 2;
    std::vector<std::int64_t> modulus;  // monic, degree r, lowest first
    std::vector<std::int64_t> gen;      // generator of the multiplicative group
};

inline std::vector<std::int64_t> ff_mul(const FFData& f, const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> prod(2 * static_cast<size_t>(f.r) - 1, 0);
    for (int i = 0; i < f.r; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < f.r; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % f.ell;
    }
    for (int i = 2 * f.r - 2; i >= f.r; --i) {
        std::int64_t c = prod[i];
        if (!c) continue;
        for (int j = 0; j <= f.r; ++j) prod[i - f.r + j] = mod_floor(prod[i - f.r + j] - c * f.modulus[j], f.ell);
    }
    prod.resize(static_cast<size_t>(f.r));
    return prod;
}

inline std::vector<std::int64_t> ff_pow(const FFData& f, std::vector<std::int64_t> a, std::int64_t e) {
    std::vector<std::int64_t> r(static_cast<size_t>(f.r), 0);
    r[0] = 1;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = ff_mul(f, r, a);
        a = ff_mul(f, a, a);
    }
    return r;
}

inline std::vector<std::int64_t> ff_from_index(const FFData& f, std::int64_t idx) {
    std::vector<std::int64_t> v(static_cast<size_t>(f.r));
    for (int i = 0; i < f.r; ++i) {
        v[i] = idx % f.ell;
        idx /= f.ell;
    }
    return v;
}

/// Irreducibility by exhaustive search for a root-free, factor-free modulus.
inline bool ff_irreducible(std::int64_t ell, const std::vector<std::int64_t>& m) {
    int r = static_cast<int>(m.size()) - 1;
    for (int d = 1; d <= r / 2; ++d) {
        std::int64_t count = ipow(ell, d);
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::vector<std::int64_t> g(static_cast<size_t>(d) + 1);
            std::int64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = t % ell;
                t /= ell;
            }
            g[d] = 1;
            std::vector<std::int64_t> rem = m;
            for (int i = r; i >= d; --i) {
                std::int64_t c = rem[i];
                if (!c) continue;
                for (int j = 0; j <= d; ++j) rem[i - d + j] = mod_floor(rem[i - d + j] - c * g[j], ell);
            }
            bool zero = true;
            for (int i = 0; i < d; ++i) zero = zero && rem[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace detail

struct FFRing {
    std::shared_ptr<const detail::FFData> data;

    /// F_{ell^r} with the first irreducible modulus in lexicographic order.
    static FFRing make(std::int64_t ell, int r) {
        if (!is_prime(ell) || r < 1) throw Error("finite field needs a prime characteristic and degree >= 1");
        auto f = std::make_shared<detail::FFData>();
        f->ell = ell;
        f->r = r;
        f->size = ipow(ell, r);
        for (std::int64_t idx = 0; idx < f->size; ++idx) {
            std::vector<std::int64_t> m = detail::ff_from_index(*f, idx);
            m.push_back(1);
            if (detail::ff_irreducible(ell, m)) {
                f->modulus = m;
                break;
            }
        }
        std::int64_t order = f->size - 1;
        auto fs = prime_factors(order);
        for (std::int64_t idx = 1; idx < f->size; ++idx) {
            auto g = detail::ff_from_index(*f, idx);
            bool ok = true;
            for (auto q : fs) {
                auto t = detail::ff_pow(*f, g, order / q);
                bool one = t[0] == 1;
                for (int i = 1; i < r; ++i) one = one && t[i] == 0;
                if (one) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                f->gen = g;
                break;
            }
        }
        return FFRing{f};
    }

    std::int64_t characteristic() const { return data->ell; }
    int degree() const { return data->r; }
    std::int64_t size() const { return data->size; }

    FFElem zero() const;
    FFElem one() const;
    FFElem from_int(std::int64_t v) const;
    FFElem from_rational(const Rational& x) const;
    /// Image of zeta_N as gen^((size-1)/N); rejects N not dividing size - 1.
    FFElem root_of_unity(std::int64_t n, std::int64_t k) const;
    FFElem from_cyc(const CycNumber& c) const;
    static constexpr bool is_field() { return true; }
    friend bool operator==(const FFRing& a, const FFRing& b) {
        return a.data == b.data || (a.data->ell == b.data->ell && a.data->r == b.data->r);
    }
};

class FFElem {
public:
    using ring_type = FFRing;

    FFElem(FFRing f, std::vector<std::int64_t> c) : f_(std::move(f)), c_(std::move(c)) {}

    FFRing ring() const { return f_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }
    bool is_unit() const { return !is_zero(); }
    FFElem inverse() const {
        if (is_zero()) throw Error("inverse of zero in finite field");
        return {f_, detail::ff_pow(*f_.data, c_, f_.size() - 2)};
    }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        FFElem r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + b.c_[i]) % a.f_.characteristic();
        return r;
    }
    friend FFElem operator-(const FFElem& a, const FFElem& b) { return a + (-b); }
    FFElem operator-() const {
        FFElem r = *this;
        for (auto& v : r.c_) v = mod_floor(-v, f_.characteristic());
        return r;
    }
    friend FFElem operator*(const FFElem& a, const FFElem& b) { return {a.f_, detail::ff_mul(*a.f_.data, a.c_, b.c_)}; }
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "F" + std::to_string(f_.size()) + "(";
        for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
        return s + ")";
    }

private:
    FFRing f_;
    std::vector<std::int64_t> c_;
};

inline FFElem FFRing::zero() const { return {*this, std::vector<std::int64_t>(static_cast<size_t>(data->r), 0)}; }
inline FFElem FFRing::one() const { return from_int(1); }
inline FFElem FFRing::from_int(std::int64_t v) const {
    std::vector<std::int64_t> c(static_cast<size_t>(data->r), 0);
    c[0] = mod_floor(v, data->ell);
    return {*this, c};
}
inline FFElem FFRing::from_rational(const Rational& x) const {
    if (Integer(x.get_den()) % data->ell == 0)
        throw Error("rational " + x.get_str() + " has no image in characteristic " + std::to_string(data->ell));
    return from_int(residue(x, data->ell));
}
inline FFElem FFRing::root_of_unity(std::int64_t n, std::int64_t k) const {
    if ((data->size - 1) % n != 0)
        throw Error("zeta_" + std::to_string(n) + " is not representable in F_" + std::to_string(data->size));
    auto z = detail::ff_pow(*data, data->gen, (data->size - 1) / n);
    return {*this, detail::ff_pow(*data, z, mod_floor(k, n))};
}
inline FFElem FFRing::from_cyc(const CycNumber& c) const {
    FFElem s = zero();
    if (c.is_rational()) return from_rational(c.rational_part());
    FFElem z = root_of_unity(c.order(), 1), zk = one();
    for (const auto& q : c.coeffs()) {
        if (q != 0) s = s + from_rational(q) * zk;
        zk = zk * z;
    }
    return s;
}

}  // namespace lcif
