#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace lcif;
using namespace lcif::testing;

namespace {

using Char = MultChar<CycNumber>;

/// Characters of Q_p^x of conductor 0, 1, 2 with assorted values at p.
std::vector<Char> char_grid(long p) {
    std::int64_t o1 = p - 1, o2 = (p - 1) * p;
    return {
        Char::unramified(p, cyc(1)),
        Char::unramified(p, zeta(7, 2) + cyc(2)),
        Char(p, 1, zeta(o1, 1), cyc(3)),
        Char(p, 1, zeta(o1, o1 / 2), zeta(3)),
        Char(p, 2, zeta(o2, 1), CycNumber(make_rational(-1, 2))),
        Char(p, 2, zeta(o2, p - 1), zeta(4)),
    };
}

/// Truncated Tate-integral oracle for f = 1 on 1 + p^a O, a = max(1, cond):
/// returns Z(f, w, X) and the truncation of Z(f^, w^-1, Y) to shells v <= v_max,
/// where f^ is computed by summing psi over 1 + p^a O with the psi-self-dual measure.
struct TateOracle {
    CycNumber z_f;
    Poly z_hat;
};

TateOracle tate_oracle(const Char& w, const AddChar& psi, int v_max) {
    long p = w.p();
    int a = std::max(1, w.conductor());
    CycRing R;
    CycNumber half = detail::sqrt_p_pow<CycNumber>(R, p, -psi.n);
    auto fhat = [&](const Rational& y) {
        int v = padic_val(y, p);
        int K = std::max(0, -v - a);
        CycNumber s;
        std::int64_t count = ipow(p, K);
        for (std::int64_t b = 0; b < count; ++b) s += psi(y * (1 + rational_pow(Rational(p), a) * b));
        return s * CycNumber(rational_pow(Rational(p), -a - K)) * half;
    };
    auto winv = w.inverse().at_level(a);
    Poly zh(R);
    for (int v = -psi.n - a - 2; v <= v_max; ++v) {
        CycNumber shell;
        for (const auto& c : enumerate_unit_cosets(p, a)) {
            Rational y = rational_pow(Rational(p), v) * c.rep;
            shell += winv(y) * fhat(y) * CycNumber(c.volume);
        }
        zh += mono(shell, v);
    }
    return {CycNumber(unit_coset_volume(p, a)), zh};
}

}  // namespace

TEST(GaussSum, Examples) {
    AddChar psi{5, 0, 1};
    EXPECT_EQ(gauss_sum(Char::trivial(CycRing{}, 5), psi, 1), cyc(-1));
    auto quad = hilbert_char<CycNumber>(CycRing{}, 5, Rational(5));
    CycNumber g = gauss_sum(quad, psi, 1);
    EXPECT_EQ(g * g.conj(), cyc(5));
    Char w(5, 1, zeta(4), cyc(1));
    EXPECT_EQ(gauss_sum(w, psi, 1, 2), gauss_sum(w, psi, 1, 1));
    EXPECT_THROW(gauss_sum(Char(5, 2, zeta(20), cyc(1)), psi, 1), Error);
}

TEST(GaussSum, RamifiedQuadraticAbsoluteValue) {
    for (long p : {3, 5, 7})
        for (int n : {0, 1})
            for (long d : {p, p * LocalFieldDesc::smallest_nonresidue(p)}) {
                auto chi = hilbert_char<CycNumber>(CycRing{}, p, Rational(d));
                ASSERT_EQ(chi.conductor(), 1);
                CycNumber g = gauss_sum(chi, AddChar{p, n, 1}, 1);
                EXPECT_EQ(g * g.conj(), cyc(p)) << p << " " << n;
            }
}

TEST(TateGamma, MatchesTruncatedIntegralOracle) {
    const int depth = 30;
    for (long p : {3, 5})
        for (int n : {0, 1})
            for (const auto& w : char_grid(p)) {
                AddChar psi{p, n, 1};
                auto o = tate_oracle(w, psi, depth);
                // gamma(X) Z(f, X) = Z(f^, 1/(qX)); read both sides in Y' = 1/X.
                auto lhs = (tate_gamma(w, psi) * Frac::constant(o.z_f)).substitute(cyc(1), -1);
                Poly rhs = o.z_hat.substitute(CycNumber(make_rational(1, p)), 1);
                long lo = std::min(lhs.order(), rhs.min_exp());
                auto ex = lhs.expand(lo, depth);
                for (long e = lo; e <= depth; ++e)
                    EXPECT_EQ(ex[static_cast<size_t>(e - lo)], rhs.coeff(e))
                        << "p=" << p << " n=" << n << " cond=" << w.conductor() << " e=" << e;
            }
}

TEST(TateGamma, FunctionalIdentityGrid) {
    for (long p : {3, 5})
        for (int n : {0, 1})
            for (int sign : {1, -1})
                for (const auto& w : char_grid(p)) EXPECT_TRUE(tate_identity_holds(w, AddChar{p, n, sign}));
}

TEST(TateGamma, FunctionalIdentityUniversal) {
    for (long p : {3, 5})
        for (int e : {0, 1, 2}) {
            auto u = build_universal(p, ExtKind::trivial, e);
            for (int n : {0, 1}) EXPECT_TRUE(tate_identity_holds(u.chi, AddChar{p, n, 1})) << p << " " << e;
        }
}

TEST(TateGamma, InvertibleInLocalization) {
    for (long p : {3, 5})
        for (const auto& w : char_grid(p)) EXPECT_TRUE(check_unit_in_localization(tate_gamma(w, AddChar{p, 0, 1})));
    auto u = build_universal(5, ExtKind::trivial, 1);
    EXPECT_TRUE(check_unit_in_localization(tate_gamma(u.chi, AddChar{5, 0, 1})));
}

TEST(TateGamma, UnramifiedShape) {
    CycNumber c = zeta(3) + cyc(1);
    auto g = tate_gamma(Char::unramified(5, c), AddChar{5, 0, 1});
    Frac expect(one() - mono(c, 1), one() - mono(c.inverse() * CycNumber(make_rational(1, 5)), -1));
    EXPECT_EQ(g, expect);
    auto triv = tate_gamma(Char::trivial(CycRing{}, 5), AddChar{5, 0, 1});
    EXPECT_TRUE(triv.num().eval(cyc(1)).is_zero());
}

TEST(TateGamma, RamifiedQuadraticIsUnitMonomial) {
    auto chi = hilbert_char<CycNumber>(CycRing{}, 5, Rational(10));
    auto g = tate_gamma(chi, AddChar{5, 0, 1});
    ASSERT_TRUE(g.num().is_monomial());
    ASSERT_TRUE(g.den().is_constant());
    CycNumber a = g.num().trailing() * g.den().trailing().inverse();
    EXPECT_EQ(a * a.conj(), cyc(5));
}

TEST(TateEpsilon, Examples) {
    EXPECT_EQ(tate_epsilon(Char::unramified(5, cyc(7)), AddChar{5, 0, 1}), Frac::constant(cyc(1)));
    std::vector<Char> grid = char_grid(5);
    for (const auto& w : char_grid(3)) grid.push_back(w);
    for (const auto& w : grid) {
        long p = w.p();
        AddChar psi{p, 1, 1};
        auto lhs = tate_epsilon(w, psi) *
                   tate_epsilon(w.inverse(), psi).substitute(CycNumber(make_rational(1, p)), -1);
        EXPECT_EQ(lhs, Frac::constant(w(Rational(-1))));
    }
}

TEST(TateGamma, PerturbationBreaksIdentity) {
    TateOptions bad{true};
    Char w(5, 1, zeta(4), cyc(1));
    EXPECT_FALSE(tate_identity_holds(w, AddChar{5, 0, 1}, bad));
    EXPECT_TRUE(tate_identity_holds(w, AddChar{5, 0, 1}));
}
