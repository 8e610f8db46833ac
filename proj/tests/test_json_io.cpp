#include "test_util.hpp"

#include "lcif/json_io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace lcif;
using namespace lcif::testing;

TEST(JsonCodec, CycNumberRoundTrip) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 10; ++i) {
        CycNumber a = random_cyc(rng, 20) * CycNumber(make_rational(1, 3 + i));
        EXPECT_EQ(JsonCodec<CycNumber>::decode(to_json(a), CycRing{}), a);
    }
    auto j = to_json(zeta(4));
    EXPECT_EQ(j["order"], 4);
    EXPECT_EQ(j["coeffs"], Json::array({"0", "1"}));
}

TEST(JsonCodec, FFElemRoundTrip) {
    FFRing f = FFRing::make(3, 2);
    FFElem x = f.root_of_unity(8, 3);
    auto j = to_json(x);
    EXPECT_EQ(j["field"], Json::array({3, 2}));
    EXPECT_EQ(JsonCodec<FFElem>::decode(j, f), x);
    j["coeffs"] = Json::array({1});
    EXPECT_THROW(JsonCodec<FFElem>::decode(j, f), Error);
}

TEST(JsonCodec, FractionRoundTrip) {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 5; ++i) {
        Frac a(random_poly(rng), random_s_poly(rng));
        EXPECT_EQ(fraction_from_json<CycNumber>(to_json(a), CycRing{}), a);
    }
    TwistRing r{4};
    LaurentPoly<TwistElem> tp = LaurentPoly<TwistElem>::monomial(r.T() + r.U(), -1) +
                                LaurentPoly<TwistElem>::monomial(r.from_cyc(zeta(3)) * r.T().inverse(), 2);
    LocFraction<TwistElem> tf(tp, LaurentPoly<TwistElem>::constant(r.one()) + LaurentPoly<TwistElem>::monomial(r.T(), 1));
    auto back = fraction_from_json<TwistElem>(to_json(tf), r);
    EXPECT_EQ(back, tf);
    EXPECT_THROW(fraction_from_json<TwistElem>(to_json(tf), TwistRing{2}), Error);
}

TEST(JsonCodec, MalformedInput) {
    EXPECT_THROW(poly_from_json<CycNumber>(Json::parse(R"({"term": []})"), CycRing{}), Error);
    EXPECT_THROW(poly_from_json<CycNumber>(Json::parse(R"({"terms": [[1]]})"), CycRing{}), Error);
    EXPECT_THROW(JsonCodec<CycNumber>::decode(Json::parse(R"({"order": 4, "coeffs": ["1/0", "1"]})"), CycRing{}), Error);
}

TEST(ReadJsonFile, Errors) {
    EXPECT_THROW(read_json_file("/nonexistent/file.json"), Error);
    std::string path = ::testing::TempDir() + "lcif_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    try {
        read_json_file(path);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("malformed JSON in '" + path + "'", 0), 0u);
    }
    std::remove(path.c_str());
}

TEST(ParseValue, Examples) {
    auto a = parse_value("-3/2");
    EXPECT_EQ(a.coeff, CycNumber(make_rational(-3, 2)));
    EXPECT_FALSE(a.uses_twist());
    auto b = parse_value("2 * zeta4^3 * T^-1 * U^2");
    EXPECT_EQ(b.coeff, cyc(2) * zeta(4, 3));
    EXPECT_EQ(b.t_exp, -1);
    EXPECT_EQ(b.u_exp, 2);
    auto c = parse_value("-zeta3");
    EXPECT_EQ(c.coeff, -zeta(3));
    EXPECT_EQ(parse_value("c").t_exp, 1);
    for (const char* bad : {"", "2**3", "zeta^2", "zetax", "3^2", "T^x", "foo"})
        EXPECT_THROW(parse_value(bad), Error) << bad;
    TwistRing r{4};
    EXPECT_EQ(value_in(b, r), r.from_cyc(cyc(2) * zeta(4, 3)) * r.T().inverse() * r.U() * r.U());
    EXPECT_THROW(value_in(b, CycRing{}), Error);
}

TEST(ParseCharSpec, BuildsCharacters) {
    auto spec = parse_char_spec(Json::parse(R"({"p": 5, "conductor": 1, "unit_gen_image": "zeta4", "at_uniformizer": "3"})"));
    EXPECT_FALSE(spec.uses_twist());
    auto w = spec.build(CycRing{});
    EXPECT_EQ(w(Rational(2)), zeta(4));
    EXPECT_EQ(w(Rational(5)), cyc(3));
    auto uni = parse_char_spec(Json::parse(R"({"p": 5, "conductor": 1, "unit_gen_image": "U", "at_uniformizer": "T"})"));
    EXPECT_TRUE(uni.uses_U());
    auto wu = uni.build(TwistRing{4});
    EXPECT_EQ(wu(Rational(10)), TwistRing{4}.U() * TwistRing{4}.T());
    EXPECT_THROW(parse_char_spec(Json::parse(R"({"conductor": 1})")), Error);
    EXPECT_THROW(parse_char_spec(Json::parse(R"({"p": 5, "ext": "weird"})")), Error);
    EXPECT_EQ(parse_char_spec(Json::parse(R"({"p": 5, "ext": "ramified"})")).ext, ExtKind::ramified);
}

TEST(ParseSpace, CasesAndValidation) {
    auto s = parse_space(Json::parse(R"({"case": "I1", "n": 2, "epsilon": 1, "gram": [["1","0"],["0","3"]], "B_nrd": "2"})"), 5);
    EXPECT_EQ(s.tag, CaseTag::I1);
    EXPECT_EQ(s.nrd_R(), 3);
    EXPECT_EQ(s.B_nrd, 2);
    auto i3 = parse_space(Json::parse(R"({"case": "I3", "n": 1, "gram": [["1"]], "ext": "ramified", "ext_d": 2})"), 5);
    ASSERT_TRUE(i3.ext.has_value());
    EXPECT_EQ(i3.ext->ext, ExtKind::ramified);
    EXPECT_THROW(parse_space(Json::parse(R"({"case": "I1", "n": 2, "gram": [["1","2"],["0","3"]]})"), 5), Error);
    EXPECT_THROW(parse_space(Json::parse(R"({"case": "I3", "n": 1, "gram": [["1"]]})"), 5), Error);
    EXPECT_THROW(parse_space(Json::parse(R"({"n": 1})"), 5), Error);
}

TEST(ParseSpecHom, Targets) {
    auto h = parse_spec_hom(Json::parse(R"({"T": "2", "U": "zeta4^3", "target": {"kind": "cyclotomic", "N": 20}})"), 4);
    ASSERT_TRUE(std::holds_alternative<SpecHom<CycRing>>(h));
    const auto& hc = std::get<SpecHom<CycRing>>(h);
    EXPECT_EQ(hc.j, 3);
    EXPECT_EQ(hc.t0, cyc(2));
    auto f = parse_spec_hom(Json::parse(R"({"T": "3", "target": {"kind": "finite-field", "ell": 41, "r": 1}})"), 4);
    ASSERT_TRUE(std::holds_alternative<SpecHom<FFRing>>(f));
    EXPECT_THROW(parse_spec_hom(Json::parse(R"({"T": "2", "U": "zeta3", "target": {"kind": "cyclotomic"}})"), 4), Error);
    EXPECT_THROW(parse_spec_hom(Json::parse(R"({"T": "U", "target": {"kind": "cyclotomic"}})"), 4), Error);
    EXPECT_THROW(parse_spec_hom(Json::parse(R"({"T": "2", "target": {"kind": "p-adic"}})"), 4), Error);
    EXPECT_THROW(parse_spec_hom(Json::parse(R"({"T": "1", "U": "zeta4", "target": {"kind": "finite-field", "ell": 7, "r": 1}})"), 4),
                 Error);
}
