#pragma once

// Doubling engine for G = GL1(F), F = Q_p, p odd, inside GL2(F).
//
// Matrices are written in the basis f1 = (1,1), f2 = (1,-1). P is the upper
// triangular Borel, s = [[a,*],[0,d]], Delta(s) = a/d, and a section f of
// I(X, chi) satisfies f(s x) = |a/d|^(1/2) chi(a/d) X^(sigma val(a/d)) f(x).
// Source sections have sigma = +1; intertwined sections live in I(X^-1, chi^-1)
// and are stored with sigma = -1.

#include "lcif/normalizer.hpp"
#include "lcif/tate_gamma.hpp"

#include <climits>
#include <random>

namespace lcif {

struct DoubledElement {
    Rational a, b, c, d;  // [[a, b], [c, d]]

    Rational det() const { return a * d - b * c; }
    DoubledElement inverse() const {
        Rational D = det();
        if (D == 0) throw Error("singular doubled element");
        return {d / D, -b / D, -c / D, a / D};
    }
    friend DoubledElement operator*(const DoubledElement& x, const DoubledElement& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const DoubledElement& x, const DoubledElement& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    static DoubledElement identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }
    std::string to_string() const {
        return "[[" + x_str(a) + "," + x_str(b) + "],[" + x_str(c) + "," + x_str(d) + "]]";
    }

private:
    static std::string x_str(const Rational& r) { return r.get_str(); }
};

/// Image of (g1, g2) in GL2.
inline DoubledElement embed_pair(const Rational& g1, const Rational& g2) {
    if (g1 == 0 || g2 == 0) throw Error("group element must be nonzero");
    Rational h = make_rational(1, 2);
    return {(g1 + g2) * h, (g1 - g2) * h, (g1 - g2) * h, (g1 + g2) * h};
}

/// Image of (g, 1).
inline DoubledElement embed_double(const Rational& g) { return embed_pair(g, Rational(1)); }

/// w0 = image of (1, -1).
inline DoubledElement weyl_element() { return embed_pair(Rational(1), Rational(-1)); }

inline DoubledElement upper_unipotent(const Rational& x) { return {Rational(1), x, Rational(0), Rational(1)}; }
inline DoubledElement lower_unipotent(const Rational& x) { return {Rational(1), Rational(0), x, Rational(1)}; }

/// m = s k with s = [[a, *], [0, d]] and k in GL2(Z_p) one of the canonical
/// representatives [[1,0],[t,1]] (t integral) or [[0,1],[1,t]] (t in pZ_p).
struct Iwasawa {
    Rational a, d;
    DoubledElement k;
    bool swapped = false;
    Rational t;
};

inline Iwasawa iwasawa(const DoubledElement& m, long p) {
    if (p == 2) throw Error("doubling engine needs p odd");
    Rational det = m.det();
    if (det == 0) throw Error("singular doubled element");
    const Rational &r0 = m.c, &r1 = m.d;
    Iwasawa out;
    if (r1 != 0 && (r0 == 0 || padic_val(r1, p) <= padic_val(r0, p))) {
        out.t = r0 / r1;
        out.d = r1;
        out.k = lower_unipotent(out.t);
    } else {
        out.swapped = true;
        out.t = r1 / r0;
        out.d = r0;
        out.k = {Rational(0), Rational(1), Rational(1), out.t};
    }
    out.a = det / out.d / out.k.det();
    return out;
}

/// val(Delta) of the image of (g, 1).
inline int delta_valuation(const Rational& g, long p) {
    auto iw = iwasawa(embed_double(g), p);
    return padic_val(iw.a / iw.d, p);
}

/// |P^1(Z/p^m)|.
inline std::int64_t line_count(long p, int level) { return ipow(p, level) + ipow(p, level - 1); }

/// Index of the bottom-row class of iw.k in P^1(Z/p^m): [t : 1] -> t, [1 : p u] -> p^m + u.
inline std::int64_t line_index(const Iwasawa& iw, long p, int level) {
    std::int64_t pm = ipow(p, level);
    std::int64_t r = residue(iw.t, pm);
    return iw.swapped ? pm + r / p : r;
}

/// Canonical representative in GL2(Z_p) of a line index.
inline DoubledElement line_rep(long p, int level, std::int64_t idx) {
    std::int64_t pm = ipow(p, level);
    if (idx < pm) return lower_unipotent(Rational(idx));
    return {Rational(0), Rational(1), Rational(1), Rational(p * (idx - pm))};
}

/// A K(p^level)-fixed vector of I(X, chi) (sigma = +1) or of I(X^-1, chi) (sigma = -1),
/// stored through its values on the canonical line representatives.
template <class E>
struct Section {
    MultChar<E> chi;
    int level = 1;
    int sigma = 1;
    std::vector<LocFraction<E>> values;

    Section(MultChar<E> c, int lvl, int sg, std::vector<LocFraction<E>> vals)
        : chi(std::move(c)), level(lvl), sigma(sg), values(std::move(vals)) {
        if (level < std::max(1, chi.conductor())) throw Error("section level below the conductor");
        if (static_cast<std::int64_t>(values.size()) != line_count(chi.p(), level))
            throw Error("section needs one value per line");
    }

    static Section constant(const MultChar<E>& c, int lvl, const LocFraction<E>& v) {
        return Section(c, lvl, 1, std::vector<LocFraction<E>>(static_cast<size_t>(line_count(c.p(), lvl)), v));
    }
    /// The section supported on P K(p^level) with value 1 at the identity.
    static Section indicator(const MultChar<E>& c, int lvl, std::int64_t idx = 0) {
        auto zero = LocFraction<E>(c.ring());
        std::vector<LocFraction<E>> v(static_cast<size_t>(line_count(c.p(), lvl)), zero);
        v[static_cast<size_t>(idx)] = LocFraction<E>::constant(c.ring().one());
        return Section(c, lvl, 1, std::move(v));
    }

    long p() const { return chi.p(); }
    ring_t<E> ring() const { return chi.ring(); }
    Section scaled(const LocFraction<E>& s) const {
        auto v = values;
        for (auto& x : v) x = x * s;
        return Section(chi, level, sigma, std::move(v));
    }
};

/// f(x) = coeff X^xexp f(line idx).
template <class E>
struct SectionTerm {
    std::int64_t idx;
    E coeff;
    long xexp;
};

template <class E>
SectionTerm<E> section_term(const MultChar<E>& chi, int sigma, int level, const DoubledElement& x) {
    long p = chi.p();
    auto iw = iwasawa(x, p);
    Rational delta = iw.a / iw.d;
    int v = padic_val(delta, p);
    E c = chi(delta) * detail::sqrt_p_pow<E>(chi.ring(), p, -v);
    return {line_index(iw, p, level), c, static_cast<long>(sigma) * v};
}

template <class E>
LocFraction<E> section_eval(const Section<E>& f, const DoubledElement& x) {
    auto t = section_term(f.chi, f.sigma, f.level, x);
    const auto& v = f.values[static_cast<size_t>(t.idx)];
    if (v.is_zero()) return v;
    return LocFraction<E>(LaurentPoly<E>::monomial(t.coeff, t.xexp)) * v;
}

/// The same section stored at a finer level.
template <class E>
Section<E> refine(const Section<E>& f, int level) {
    if (level < f.level) throw Error("cannot refine to a coarser level");
    if (level == f.level) return f;
    std::vector<LocFraction<E>> v;
    for (std::int64_t i = 0; i < line_count(f.p(), level); ++i) v.push_back(section_eval(f, line_rep(f.p(), level, i)));
    return Section<E>(f.chi, level, f.sigma, std::move(v));
}

/// Right translate x -> f(x h), stored at the given level.
template <class E>
Section<E> translate(const Section<E>& f, const DoubledElement& h, int level) {
    std::vector<LocFraction<E>> v;
    for (std::int64_t i = 0; i < line_count(f.p(), level); ++i) v.push_back(section_eval(f, line_rep(f.p(), level, i) * h));
    return Section<E>(f.chi, level, f.sigma, std::move(v));
}

/// The representation pi of F^x; phi = lambda * pi spans its matrix coefficients.
template <class E>
struct PiChar {
    MultChar<E> chi;
    E z_minus_one;

    explicit PiChar(MultChar<E> c) : chi(std::move(c)), z_minus_one(chi(Rational(-1))) {}
};

template <class E>
struct ZetaValue {
    LocFraction<E> exact;
    TruncSeries<E> witness;
};

namespace detail {

template <class E>
int engine_level(const MultChar<E>& pi, const MultChar<E>& chi, int level) {
    return std::max({1, level, pi.conductor(), chi.conductor()});
}

/// Per-line weights of the shell val(g) = v: the shell integral of f is
/// sum over lines of kernel[line] * f(line).
template <class E>
std::vector<LaurentPoly<E>> zeta_shell(const MultChar<E>& pi, const MultChar<E>& chi, int sigma, int level, int v) {
    long p = pi.p();
    const auto ring = pi.ring();
    std::vector<LaurentPoly<E>> kern(static_cast<size_t>(line_count(p, level)), LaurentPoly<E>(ring));
    Rational pv = rational_pow(Rational(p), v);
    for (const auto& c : enumerate_unit_cosets(p, level)) {
        Rational g = pv * c.rep;
        auto t = section_term(chi, sigma, level, embed_double(g));
        E w = t.coeff * pi(g) * scalar<E>(ring, c.volume);
        kern[static_cast<size_t>(t.idx)] += LaurentPoly<E>::monomial(w, t.xexp);
    }
    return kern;
}

template <class E>
LocFraction<E> dot(const std::vector<LocFraction<E>>& w, const std::vector<LocFraction<E>>& f, const ring_t<E>& ring) {
    LocFraction<E> s(ring);
    for (size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero() && !f[i].is_zero()) s += w[i] * f[i];
    return s;
}

template <class E>
bool shells_geometric(const std::vector<LaurentPoly<E>>& a, const std::vector<LaurentPoly<E>>& b,
                      const LaurentPoly<E>& ratio) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] * ratio == b[i])) return false;
    return true;
}

}  // namespace detail

/// Z_N for N = 0 .. n_max: the integral over val Delta(g, 1) = |val g| <= N.
template <class E>
std::vector<LocFraction<E>> zeta_truncated_series(const PiChar<E>& pi, const E& scale, const Section<E>& f, int n_max) {
    int L = detail::engine_level(pi.chi, f.chi, f.level);
    Section<E> fr = refine(f, L);
    const auto ring = f.ring();
    std::vector<LocFraction<E>> out;
    LocFraction<E> acc(ring);
    auto shell_value = [&](int v) {
        auto k = detail::zeta_shell(pi.chi, fr.chi, fr.sigma, L, v);
        std::vector<LocFraction<E>> kf(k.begin(), k.end());
        return detail::dot(kf, fr.values, ring);
    };
    for (int N = 0; N <= n_max; ++N) {
        acc += shell_value(N);
        if (N > 0) acc += shell_value(-N);
        out.push_back(acc.scale(scale));
    }
    return out;
}

template <class E>
LocFraction<E> zeta_truncated(const PiChar<E>& pi, const E& scale, const Section<E>& f, int n) {
    if (n < 0) throw Error("truncation depth must be nonnegative");
    return zeta_truncated_series(pi, scale, f, n).back();
}

/// Exact zeta integral as a linear form on section values.
template <class E>
struct ZetaKernel {
    int level;
    int sigma;
    std::vector<LocFraction<E>> weight;

    LocFraction<E> apply(const E& scale, const Section<E>& f) const {
        if (f.sigma != sigma) throw Error("section and zeta kernel disagree on the X direction");
        Section<E> fr = refine(f, level);
        return detail::dot(weight, fr.values, f.ring()).scale(scale);
    }
};

/// Shells |v| < L are summed directly; beyond L the shell weights are geometric
/// in both directions and are summed in closed form after a two-step check.
template <class E>
ZetaKernel<E> zeta_kernel(const PiChar<E>& pi, const MultChar<E>& chi, int sigma, int level) {
    using Poly = LaurentPoly<E>;
    long p = pi.chi.p();
    int L = detail::engine_level(pi.chi, chi, level);
    const auto ring = chi.ring();
    size_t n = static_cast<size_t>(line_count(p, L));
    std::vector<LocFraction<E>> w(n, LocFraction<E>(ring));
    for (int v = -(L - 1); v <= L - 1; ++v) {
        auto k = detail::zeta_shell(pi.chi, chi, sigma, L, v);
        for (size_t i = 0; i < n; ++i)
            if (!k[i].is_zero()) w[i] += LocFraction<E>(k[i]);
    }
    E inv_sqrt = detail::sqrt_p_pow<E>(ring, p, -1);
    const E& pp = pi.chi.at_uniformizer();
    E r_plus = pp * chi.at_uniformizer() * inv_sqrt;
    E r_minus = pp.inverse() * chi.at_uniformizer() * inv_sqrt;
    for (int dir : {1, -1}) {
        E r = dir > 0 ? r_plus : r_minus;
        Poly step = Poly::monomial(r, sigma);
        auto k0 = detail::zeta_shell(pi.chi, chi, sigma, L, dir * L);
        auto k1 = detail::zeta_shell(pi.chi, chi, sigma, L, dir * (L + 1));
        auto k2 = detail::zeta_shell(pi.chi, chi, sigma, L, dir * (L + 2));
        if (!detail::shells_geometric(k0, k1, step) || !detail::shells_geometric(k1, k2, step))
            throw Error("tail detection failed");
        auto tail = geometric_tail_sum(ring.one(), r, sigma, 0);
        for (size_t i = 0; i < n; ++i)
            if (!k0[i].is_zero()) w[i] += LocFraction<E>(k0[i]) * tail;
    }
    return {L, sigma, std::move(w)};
}

/// Exact zeta integral of phi = scale * pi against f, with its truncation witness.
/// The witness is certified only for source sections with polynomial values; for
/// other sections it is empty.
template <class E>
ZetaValue<E> zeta_exact(const PiChar<E>& pi, const E& scale, const Section<E>& f) {
    auto K = zeta_kernel(pi, f.chi, f.sigma, f.level);
    ZetaValue<E> out{K.apply(scale, f), {}};
    out.witness.trusted_upto = LONG_MIN;
    bool poly = f.sigma == 1;
    long emin = LONG_MAX;
    for (const auto& v : f.values) {
        if (v.is_zero()) continue;
        poly = poly && v.is_polynomial();
        emin = std::min(emin, v.num().min_exp() - v.den().min_exp());
    }
    if (poly) {
        int N = K.level + 10;
        auto z = zeta_truncated(pi, scale, f, N);
        out.witness = TruncSeries<E>::from_poly(z.num(), emin == LONG_MAX ? LONG_MAX / 2 : N + emin);
    }
    return out;
}

/// Mf(g) = integral over x in F of f(w0 n(x) g) dx, vol(O) = 1, as a linear
/// form on the values of f at level `level`.
///
/// |val x| small: enumerated at a resolution where the integrand is constant.
/// val x = -j <= -jstar: f(w0 n(x) g) = |x|^-1 chi(-x^-2) X^(2j) f(n^-(1/x) g), and
/// n^-(1/x) g = g mod K(p^level), so the shells are geometric with ratio chi(p)^2 X^2.
template <class E>
std::vector<LocFraction<E>> intertwine_weights(const MultChar<E>& chi, int level, const DoubledElement& g) {
    using Poly = LaurentPoly<E>;
    long p = chi.p();
    if (level < std::max(1, chi.conductor())) throw Error("section level below the conductor");
    const auto ring = chi.ring();
    size_t n = static_cast<size_t>(line_count(p, level));
    DoubledElement gi = g.inverse();
    auto minval = [&](const Rational& r0, const Rational& r1, const Rational& c0, const Rational& c1) {
        int m = INT_MAX;
        for (const auto& x : {r0 * c0, r0 * c1, r1 * c0, r1 * c1})
            if (x != 0) m = std::min(m, padic_val(x, p));
        return m;
    };
    // g^-1 n(y) g = 1 + y (g^-1 e_0)(e_1^T g); g^-1 n^-(z) g = 1 + z (g^-1 e_1)(e_0^T g).
    int R = std::max(1, level - minval(gi.a, gi.c, g.c, g.d));
    int jstar = std::max(1, level - minval(gi.b, gi.d, g.a, g.b));
    DoubledElement w0 = weyl_element();

    std::vector<Poly> compact(n, Poly(ring));
    Rational vol = rational_pow(Rational(p), -R);
    E vol_e = detail::scalar<E>(ring, vol);
    std::int64_t count = ipow(p, R + jstar - 1);
    Rational step = rational_pow(Rational(p), -(jstar - 1));
    for (std::int64_t k = 0; k < count; ++k) {
        auto t = section_term(chi, 1, level, w0 * upper_unipotent(Rational(k) * step) * g);
        compact[static_cast<size_t>(t.idx)] += Poly::monomial(t.coeff * vol_e, t.xexp);
    }

    int c = std::max(1, chi.conductor());
    auto shell = [&](int j) {
        std::vector<Poly> s(n, Poly(ring));
        E v = detail::scalar<E>(ring, rational_pow(Rational(p), j - c));
        Rational pj = rational_pow(Rational(p), j);
        for (const auto& u : enumerate_unit_cosets(p, c)) {
            Rational x = Rational(1) / (pj * u.rep);
            auto t = section_term(chi, 1, level, w0 * upper_unipotent(x) * g);
            s[static_cast<size_t>(t.idx)] += Poly::monomial(t.coeff * v, t.xexp);
        }
        return s;
    };
    E cp2 = chi.at_uniformizer() * chi.at_uniformizer();
    Poly ratio = Poly::monomial(cp2, 2);
    auto s0 = shell(jstar), s1 = shell(jstar + 1), s2 = shell(jstar + 2);
    if (!detail::shells_geometric(s0, s1, ratio) || !detail::shells_geometric(s1, s2, ratio))
        throw Error("tail detection failed");
    auto tail = geometric_tail_sum(ring.one(), cp2, 2, 0);

    std::vector<LocFraction<E>> w;
    w.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        LocFraction<E> x(compact[i]);
        if (!s0[i].is_zero()) x += LocFraction<E>(s0[i]) * tail;
        w.push_back(x);
    }
    return w;
}

template <class E>
LocFraction<E> intertwine_eval(const Section<E>& f, const DoubledElement& g) {
    if (f.sigma != 1) throw Error("intertwining operator acts on I(X, chi)");
    auto w = intertwine_weights(f.chi, f.level, g);
    return detail::dot(w, f.values, f.ring());
}

/// Matrix of M on K(p^level)-fixed vectors: rows are target lines, columns source lines.
template <class E>
struct IntertwineKernel {
    MultChar<E> chi;
    int level;
    std::vector<std::vector<LocFraction<E>>> weight;

    Section<E> apply(const Section<E>& f) const {
        if (f.sigma != 1) throw Error("intertwining operator acts on I(X, chi)");
        Section<E> fr = refine(f, level);
        std::vector<LocFraction<E>> v;
        for (const auto& row : weight) v.push_back(detail::dot(row, fr.values, f.ring()));
        return Section<E>(chi.inverse(), level, -1, std::move(v));
    }
};

template <class E>
IntertwineKernel<E> intertwine_kernel(const MultChar<E>& chi, int level) {
    IntertwineKernel<E> K{chi, level, {}};
    for (std::int64_t i = 0; i < line_count(chi.p(), level); ++i)
        K.weight.push_back(intertwine_weights(chi, level, line_rep(chi.p(), level, i)));
    return K;
}

/// Random section with values in {0, 1, zeta_p, zeta_p^2} X^e, |e| <= 2.
template <class E>
Section<E> random_section(std::mt19937_64& rng, const MultChar<E>& chi, int level) {
    long p = chi.p();
    const auto ring = chi.ring();
    std::uniform_int_distribution<int> pick(0, 3), ex(-2, 2);
    std::vector<LocFraction<E>> v;
    for (std::int64_t i = 0; i < line_count(p, level); ++i) {
        int k = pick(rng);
        int e = ex(rng);
        if (k == 0) {
            v.emplace_back(ring);
            continue;
        }
        E c = k == 1 ? ring.one() : ring.from_cyc(CycNumber::root_of_unity(p, k - 1));
        v.emplace_back(LaurentPoly<E>::monomial(c, e));
    }
    return Section<E>(chi, level, 1, std::move(v));
}

/// Random unit scalar from {1, -1, 2, zeta_p}.
template <class E>
E random_scale(std::mt19937_64& rng, const ring_t<E>& ring, long p) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return ring.one();
        case 1: return -ring.one();
        case 2: return ring.one() + ring.one();
        default: return ring.from_cyc(CycNumber::root_of_unity(p, 1));
    }
}

template <class E>
struct GammaResult {
    LocFraction<E> gamma;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Gamma(X, pi, chi) from Z(X^-1, phi, M f) = Gamma Z(X, phi, f).
///
/// The reference value comes from the witness pair f = indicator of P K(p^m),
/// phi = q^(m-1) pi, for which Z(X, phi, f) = 1; every random trial must agree.
template <class E>
GammaResult<E> gamma_extract(const PiChar<E>& pi, const MultChar<E>& chi, int trials, std::uint64_t seed, int level = 0) {
    if (trials < 2) throw Error("gamma extraction needs at least 2 trials");
    long p = chi.p();
    int m = detail::engine_level(pi.chi, chi, level);
    const auto ring = chi.ring();
    auto zp = zeta_kernel(pi, chi, 1, m);
    auto M = intertwine_kernel(chi, m);
    auto zm = zeta_kernel(pi, chi.inverse(), -1, m);
    size_t n = zp.weight.size();
    // Z(X^-1, phi, M f) = sum over source lines of V[line] f(line).
    std::vector<LocFraction<E>> V(n, LocFraction<E>(ring));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i)
            if (!zm.weight[i].is_zero() && !M.weight[i][j].is_zero()) V[j] += zm.weight[i] * M.weight[i][j];

    E q_scale = detail::scalar<E>(ring, rational_pow(Rational(p), m - 1));
    auto witness = Section<E>::indicator(chi, m);
    if (!(zp.apply(q_scale, witness) == LocFraction<E>::constant(ring.one())))
        throw Error("witness zeta integral is not 1");
    LocFraction<E> gamma = detail::dot(V, witness.values, ring).scale(q_scale);

    std::mt19937_64 rng(seed);
    int done = 0;
    for (int attempt = 0; done < trials && attempt < 10 * trials; ++attempt) {
        auto f = random_section(rng, chi, m);
        E s = random_scale<E>(rng, ring, p);
        auto z = zp.apply(s, f);
        if (z.is_zero()) continue;
        auto zt = detail::dot(V, f.values, ring).scale(s);
        if (!(zt == gamma * z)) throw Error("functional equation violated");
        ++done;
    }
    if (done == 0) throw Error("degenerate test data");
    return {gamma, done, seed};
}

/// z_pi(-1) Gamma(X, pi, chi) d(X, chi, B, psi)^-1 R(X, chi, B, psi), case II with n = 1.
template <class E>
LocFraction<E> normalized_gamma(const PiChar<E>& pi, const MultChar<E>& chi, const AddChar& psi, const SpaceDesc& s,
                                int trials = 20, std::uint64_t seed = 1) {
    if (s.tag != CaseTag::II || s.n != 1) throw Error("engine-backed normalized gamma needs case II with n = 1");
    auto g = gamma_extract(pi, chi, trials, seed).gamma;
    return g.scale(pi.z_minus_one) * d_factor(s, chi, psi).inverse() * r_factor(s, chi, psi);
}

}  // namespace lcif
