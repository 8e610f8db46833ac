#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lcif;
using namespace lcif::testing;

namespace {

/// z^2 = a x^2 + b y^2 has a primitive solution modulo p^3.
bool solvable_mod_p3(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t m = p * p * p;
    a = mod_floor(a, m);
    b = mod_floor(b, m);
    std::vector<std::int64_t> sq(static_cast<size_t>(m));
    for (std::int64_t t = 0; t < m; ++t) sq[static_cast<size_t>(t)] = t * t % m;
    for (std::int64_t x = 0; x < m; ++x)
        for (std::int64_t y = 0; y < m; ++y) {
            std::int64_t rhs = (a * sq[static_cast<size_t>(x)] + b * sq[static_cast<size_t>(y)]) % m;
            for (std::int64_t z = 0; z < m; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (sq[static_cast<size_t>(z)] == rhs) return true;
            }
        }
    return false;
}

MultChar<CycNumber> char_of(long p, int level, const CycNumber& g, const CycNumber& c) { return {p, level, g, c}; }

}  // namespace

TEST(ValAndUnit, Examples) {
    EXPECT_EQ(val_and_unit(Rational(50, 3), 5, 1), std::make_pair(2, std::int64_t{4}));
    EXPECT_EQ(val_and_unit(Rational(1), 5, 1), std::make_pair(0, std::int64_t{1}));
    EXPECT_EQ(val_and_unit(make_rational(-1, 25), 5, 2), std::make_pair(-2, std::int64_t{24}));
    EXPECT_THROW(val_and_unit(Rational(0), 5, 1), Error);
}

TEST(UnitCosets, CountsAndVolumes) {
    auto c1 = enumerate_unit_cosets(5, 1);
    ASSERT_EQ(c1.size(), 4u);
    for (const auto& c : c1) EXPECT_EQ(c.volume, 1);
    auto c2 = enumerate_unit_cosets(5, 2);
    ASSERT_EQ(c2.size(), 20u);
    Rational total = 0;
    for (const auto& c : c2) {
        EXPECT_EQ(c.volume, make_rational(1, 5));
        total += c.volume;
    }
    EXPECT_EQ(total, 4);
    auto c3 = enumerate_unit_cosets(3, 1);
    ASSERT_EQ(c3.size(), 2u);
    EXPECT_EQ(c3[0].rep, 1);
    EXPECT_EQ(c3[1].rep, 2);
}

TEST(UnitCosets, VolumeIsAdditiveUnderRefinement) {
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(unit_coset_volume(5, m), 5 * unit_coset_volume(5, m + 1));
}

TEST(MultChar, Multiplicative) {
    auto w = char_of(5, 2, zeta(20, 3), zeta(3));
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> u(1, 999);
    for (int i = 0; i < 20; ++i) {
        Rational x = make_rational(u(rng) * 5 + 1 + (i % 4), 1 + 5 * (i % 3)), y = make_rational(u(rng) * 5 + 2, 3);
        EXPECT_EQ(w(x * y), w(x) * w(y));
    }
    EXPECT_THROW(char_of(5, 1, zeta(8), cyc(1)), Error);
}

TEST(MultChar, QuadraticValueAgreesWithSquares) {
    auto chi = hilbert_char<CycNumber>(CycRing{}, 5, Rational(5));
    std::set<long> squares;
    for (long t = 1; t < 5; ++t) squares.insert(t * t % 5);
    for (long a = 1; a < 5; ++a) EXPECT_EQ(chi(Rational(a)), cyc(squares.count(a) ? 1 : -1)) << a;
    EXPECT_EQ(chi(Rational(2)), cyc(-1));
}

TEST(MultChar, XEvaluation) {
    CycNumber c = zeta(7) + cyc(2);
    auto w = MultChar<CycNumber>::unramified(5, c);
    EXPECT_EQ(char_X_eval(w, make_rational(1, 25)), mono(c.inverse() * c.inverse(), -2));
    auto v = char_of(5, 1, zeta(4), cyc(3));
    EXPECT_EQ(char_X_eval(v, Rational(6)), mono(cyc(1), 0));
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> u(1, 500);
    for (int i = 0; i < 50; ++i) {
        Rational x = make_rational(u(rng), u(rng)), y = make_rational(u(rng) * 25, u(rng));
        EXPECT_EQ(char_X_eval(v, x * y), char_X_eval(v, x) * char_X_eval(v, y));
    }
}

TEST(MultChar, Conductor) {
    EXPECT_EQ(char_of(5, 2, zeta(20, 5), cyc(1)).conductor(), 1);
    EXPECT_EQ(char_of(5, 2, zeta(20, 1), cyc(1)).conductor(), 2);
    EXPECT_EQ(char_of(5, 2, cyc(1), cyc(2)).conductor(), 0);
}

TEST(AddChar, ConductorAndAdditivity) {
    for (int n : {0, 1}) {
        AddChar psi{5, n, 1};
        Rational lattice = rational_pow(Rational(5), -n);
        for (long a = -7; a <= 7; ++a) EXPECT_EQ(psi(lattice * a), cyc(1));
        CycNumber g = psi(lattice / 5);
        EXPECT_FALSE(g == cyc(1));
        EXPECT_EQ(g.pow(5), cyc(1));
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<long> u(-300, 300);
        for (int i = 0; i < 20; ++i) {
            Rational x = make_rational(u(rng), 125), y = make_rational(u(rng), 25 * (1 + (i % 2)));
            EXPECT_EQ(psi(x + y), psi(x) * psi(y));
        }
    }
}

TEST(Hilbert, MatchesSolvabilityOracleOnGrid) {
    std::vector<long> vals{1, -1, 2, -2, 5, -5, 10, -10};
    int checked = 0;
    for (long a : vals)
        for (long b : vals) {
            int expect = solvable_mod_p3(a, b, 5) ? 1 : -1;
            EXPECT_EQ(hilbert_symbol(Rational(a), Rational(b), 5), expect) << a << "," << b;
            ++checked;
        }
    EXPECT_EQ(checked, 64);
}

TEST(Hilbert, Examples) {
    EXPECT_EQ(hilbert_symbol(Rational(5), Rational(2), 5), -1);
    EXPECT_EQ(hilbert_symbol(Rational(2), Rational(3), 5), 1);
    for (long p : {3, 5, 7})
        for (long a : {-3, 2, 7, 10, 15}) EXPECT_EQ(hilbert_symbol(Rational(a), Rational(1 - a), p), 1);
    EXPECT_EQ(hilbert_symbol(Rational(-1), Rational(-1), 2), -1);
    EXPECT_EQ(hilbert_symbol(Rational(2), Rational(3), 2), -1);
}

TEST(EtaChar, UnramifiedNormGroup) {
    auto f = LocalFieldDesc::unramified(5);
    auto eta = eta_char<CycNumber>(CycRing{}, f);
    // Norms modulo 25: no norm has valuation exactly 1, and every unit residue occurs.
    std::set<long> unit_norms;
    bool val_one = false;
    for (long a = 0; a < 25; ++a)
        for (long b = 0; b < 25; ++b) {
            long nrm = mod_floor(a * a - f.d * b * b, 25);
            if (nrm % 5) unit_norms.insert(nrm % 5);
            else if (nrm != 0 && nrm % 25 != 0) val_one = true;
        }
    EXPECT_FALSE(val_one);
    EXPECT_EQ(unit_norms.size(), 4u);
    EXPECT_EQ(eta(Rational(5)), cyc(-1));
    for (long u = 1; u < 5; ++u) EXPECT_EQ(eta(Rational(u)), cyc(1));
    EXPECT_THROW(eta_char<CycNumber>(CycRing{}, LocalFieldDesc::base(5)), Error);
}

TEST(EtaChar, KernelContainsNorms) {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<long> u(-60, 60);
    for (auto f : {LocalFieldDesc::unramified(5), LocalFieldDesc::ramified(5), LocalFieldDesc::ramified(5, 2),
                   LocalFieldDesc::ramified(3)}) {
        auto eta = eta_char<CycNumber>(CycRing{}, f);
        for (int i = 0; i < 10; ++i) {
            QuadElem x{make_rational(u(rng), 1 + i), make_rational(u(rng) | 1, 3)};
            EXPECT_EQ(eta(norm_map(x, f)), cyc(1));
            Rational a = make_rational(u(rng) | 1, 7);
            EXPECT_EQ(eta(a * a), cyc(1));
        }
    }
}

TEST(NormMap, ExamplesAndMultiplicativity) {
    auto f = LocalFieldDesc::unramified(5);
    ASSERT_EQ(f.disc(), 2);
    EXPECT_EQ(norm_map({Rational(1), Rational(1)}, f), -1);
    EXPECT_EQ(norm_map({Rational(3), Rational(0)}, LocalFieldDesc::base(5)), 9);
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<long> u(-20, 20);
    for (int i = 0; i < 10; ++i) {
        QuadElem x{Rational(u(rng)), Rational(u(rng))}, y{Rational(u(rng)), Rational(u(rng))};
        Rational D = f.disc();
        QuadElem xy{x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a};
        EXPECT_EQ(norm_map(xy, f), norm_map(x, f) * norm_map(y, f));
    }
}

TEST(LocalFieldDesc, ResidueCardinality) {
    EXPECT_EQ(LocalFieldDesc::base(5).q_E(), 5);
    EXPECT_EQ(LocalFieldDesc::ramified(5).q_E(), 5);
    EXPECT_EQ(LocalFieldDesc::unramified(5).q_E(), 25);
    EXPECT_THROW(LocalFieldDesc::base(2), Error);
    EXPECT_THROW(LocalFieldDesc::ramified(5, 4), Error);
}
