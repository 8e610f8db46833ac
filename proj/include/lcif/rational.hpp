#pragma once

// Exact rationals (GMP) and the p-adic bookkeeping the rest of the library
// builds on: valuations, unit residues, primitive roots, discrete logs.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcif {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0 || mpz_sgn(r.get_den_mpz_t()) == 0)
        throw Error("malformed rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    a = mod_floor(a, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline std::int64_t invmod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1 != 0) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw Error("not invertible modulo " + std::to_string(m));
    return mod_floor(x, m);
}

/// Exponent of p in a nonzero integer.
inline int padic_val(const Integer& z, long p) {
    if (z == 0) throw Error("valuation of zero");
    Integer t = abs(z);
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

inline int padic_val(const Rational& x, long p) {
    if (x == 0) throw Error("valuation of zero");
    return padic_val(Integer(x.get_num()), p) - padic_val(Integer(x.get_den()), p);
}

/// Residue of a p-adic integer x (denominator prime to p) modulo m.
inline std::int64_t residue(const Rational& x, std::int64_t m) {
    Integer n = x.get_num() % m;
    Integer d = x.get_den() % m;
    if (n < 0) n += m;
    std::int64_t dn = d.get_si();
    return mulmod(n.get_si(), invmod(dn, m), m);
}

/// x = p^v * u with u a p-adic unit.
inline std::pair<int, Rational> split_unit(const Rational& x, long p) {
    int v = padic_val(x, p);
    Rational u = x;
    Integer pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v >= 0 ? v : -v));
    if (v >= 0)
        u /= Rational(pv);
    else
        u *= Rational(pv);
    return {v, u};
}

inline Rational rational_pow(const Rational& a, int e) {
    Rational r = 1, b = e >= 0 ? a : Rational(1) / a;
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Legendre symbol (a/p) for odd prime p; 0 when p | a.
inline int legendre(std::int64_t a, std::int64_t p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Smallest primitive root modulo p^2; for odd p it generates (Z/p^e)^x for every e.
inline std::int64_t primitive_root_mod_p2(std::int64_t p) {
    std::int64_t m = p * p, phi = p * (p - 1);
    auto fs = prime_factors(phi);
    for (std::int64_t g = 2; g < m; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto f : fs)
            if (powmod(g, phi / f, m) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw Error("no primitive root");
}

/// Discrete logarithm table for (Z/p^e)^x with respect to primitive_root_mod_p2(p).
/// Entry r holds log(r), or -1 for non-units. Tables are cached and immutable.
inline const std::vector<int>& dlog_table(std::int64_t p, int e) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, std::vector<int>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::int64_t m = ipow(p, e);
    std::vector<int> t(static_cast<size_t>(m), -1);
    std::int64_t g = primitive_root_mod_p2(p) % m, x = 1 % m;
    std::int64_t order = (p - 1) * ipow(p, e - 1);
    for (std::int64_t k = 0; k < order; ++k) {
        t[static_cast<size_t>(x)] = static_cast<int>(k);
        x = mulmod(x, g, m);
    }
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace lcif
