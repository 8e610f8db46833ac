#pragma once

// JSON wire format and spec-file parsing.
//
//   CycNumber     {"order": N, "coeffs": ["a0", ..., "a_{phi(N)-1}"]}
//   FFElem        {"field": [ell, r], "coeffs": [c0, ..., c_{r-1}]}
//   TwistElem     {"d": d, "U": [poly_0, ..., poly_{d-1}]}   coefficient of U^k, polynomials in T
//   LaurentPoly   {"terms": [[exp, coeff], ...]}              ascending exponents
//   LocFraction   {"num": poly, "den": poly}
//
// Value expressions in spec files are products of factors separated by '*':
// a rational ("-3/2"), "zetaN" or "zetaN^k", "T" or "c" with optional "^k", "U" with optional "^k".

#include "lcif/families.hpp"

#include "json.hpp"

#include <fstream>
#include <variant>

namespace lcif {

using Json = nlohmann::json;

inline Json to_json(const CycNumber& x) {
    Json c = Json::array();
    for (const auto& r : x.coeffs()) c.push_back(to_string(r));
    return {{"order", x.order()}, {"coeffs", c}};
}

inline Json to_json(const FFElem& x) {
    return {{"field", {x.ring().characteristic(), x.ring().degree()}}, {"coeffs", x.coeffs()}};
}

template <class E>
Json to_json(const LaurentPoly<E>& f);

inline Json to_json(const TwistElem& x) {
    Json u = Json::array();
    for (const auto& a : x.group_coeffs()) u.push_back(to_json(a));
    return {{"d", x.ring().d}, {"U", u}};
}

template <class E>
Json to_json(const LaurentPoly<E>& f) {
    Json t = Json::array();
    for (const auto& [e, c] : f.terms()) t.push_back({e, to_json(c)});
    return {{"terms", t}};
}

template <class E>
Json to_json(const LocFraction<E>& f) {
    return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(std::string("malformed JSON: missing field '") + key + "'");
    return j.at(key);
}

}  // namespace detail

/// Decoding of ring elements; the ring supplies the context the wire format omits.
template <class E>
struct JsonCodec;

template <>
struct JsonCodec<CycNumber> {
    static CycNumber decode(const Json& j, const CycRing&) {
        std::vector<Rational> c;
        for (const auto& s : detail::field(j, "coeffs")) c.push_back(parse_rational(s.get<std::string>()));
        return CycNumber(detail::field(j, "order").get<std::int64_t>(), std::move(c));
    }
};

template <>
struct JsonCodec<FFElem> {
    static FFElem decode(const Json& j, const FFRing& f) {
        auto c = detail::field(j, "coeffs").get<std::vector<std::int64_t>>();
        if (static_cast<int>(c.size()) != f.degree()) throw Error("malformed JSON: finite-field element of wrong degree");
        return FFElem(f, c);
    }
};

template <class E>
LaurentPoly<E> poly_from_json(const Json& j, const ring_t<E>& ring) {
    typename LaurentPoly<E>::Terms terms;
    for (const auto& t : detail::field(j, "terms")) {
        if (!t.is_array() || t.size() != 2) throw Error("malformed JSON: term must be [exp, coeff]");
        E c = JsonCodec<E>::decode(t[1], ring);
        if (!c.is_zero()) terms.emplace(t[0].get<long>(), c);
    }
    return LaurentPoly<E>(ring, std::move(terms));
}

template <>
struct JsonCodec<TwistElem> {
    static TwistElem decode(const Json& j, const TwistRing& r) {
        if (detail::field(j, "d").get<long>() != r.d) throw Error("malformed JSON: twist element of another size");
        std::vector<TPoly> a;
        for (const auto& u : detail::field(j, "U")) a.push_back(poly_from_json<CycNumber>(u, CycRing{}));
        if (static_cast<long>(a.size()) != r.d) throw Error("malformed JSON: twist element needs d coefficients");
        return TwistElem::from_group_coeffs(r, a);
    }
};

template <class E>
LocFraction<E> fraction_from_json(const Json& j, const ring_t<E>& ring) {
    return LocFraction<E>(poly_from_json<E>(detail::field(j, "num"), ring), poly_from_json<E>(detail::field(j, "den"), ring));
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error("malformed JSON in '" + path + "': " + e.what());
    }
}

/// c T^t U^u.
struct ValueMonomial {
    CycNumber coeff = CycNumber(1L);
    long t_exp = 0;
    long u_exp = 0;

    bool uses_twist() const { return t_exp != 0 || u_exp != 0; }
};

inline ValueMonomial parse_value(const std::string& text) {
    ValueMonomial m;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error("empty value expression");
    if (s[0] == '-' && s.size() > 1 && !std::isdigit(static_cast<unsigned char>(s[1]))) {
        m.coeff = CycNumber(-1L);
        s = s.substr(1);
    }
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t end = s.find('*', pos);
        std::string f = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        if (f.empty()) throw Error("malformed value expression: '" + text + "'");
        std::string base = f, ex;
        if (auto h = f.find('^'); h != std::string::npos) {
            base = f.substr(0, h);
            ex = f.substr(h + 1);
        }
        long k = 1;
        if (!ex.empty()) {
            try {
                size_t used = 0;
                k = std::stol(ex, &used);
                if (used != ex.size()) throw Error("");
            } catch (...) {
                throw Error("malformed exponent in value expression: '" + text + "'");
            }
        }
        if (base == "T" || base == "c") {
            m.t_exp += k;
        } else if (base == "U") {
            m.u_exp += k;
        } else if (base.rfind("zeta", 0) == 0) {
            std::int64_t n = 0;
            try {
                n = std::stoll(base.substr(4));
            } catch (...) {
                throw Error("malformed root of unity in value expression: '" + text + "'");
            }
            if (n < 1) throw Error("malformed root of unity in value expression: '" + text + "'");
            m.coeff = m.coeff * CycNumber::root_of_unity(n, k);
        } else {
            if (!ex.empty()) throw Error("malformed value expression: '" + text + "'");
            m.coeff = m.coeff * CycNumber(parse_rational(base));
        }
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return m;
}

inline CycNumber value_in(const ValueMonomial& m, const CycRing&) {
    if (m.uses_twist()) throw Error("value uses T or U outside the universal twist ring");
    return m.coeff;
}

inline TwistElem value_in(const ValueMonomial& m, const TwistRing& r) {
    TwistElem t = r.from_cyc(m.coeff) * ring_pow(r.T(), m.t_exp);
    return m.u_exp ? t * ring_pow(r.U(), mod_floor(m.u_exp, r.d)) : t;
}

/// {"p": 5, "ext": "unramified", "conductor": 1, "unit_gen_image": "zeta4^1", "at_uniformizer": "c"}.
/// The character lives on Q_p^x; "ext" is carried for case I3 of the normalizer.
struct CharSpec {
    long p = 5;
    ExtKind ext = ExtKind::trivial;
    int level = 0;
    ValueMonomial gen, unif;

    bool uses_twist() const { return gen.uses_twist() || unif.uses_twist(); }
    bool uses_U() const { return gen.u_exp != 0 || unif.u_exp != 0; }

    template <class R>
    MultChar<std::decay_t<decltype(std::declval<R>().one())>> build(const R& ring) const {
        return {p, level, value_in(gen, ring), value_in(unif, ring)};
    }
};

inline ExtKind parse_ext(const std::string& s) {
    if (s == "trivial" || s == "none" || s.empty()) return ExtKind::trivial;
    if (s == "unramified") return ExtKind::unramified;
    if (s == "ramified") return ExtKind::ramified;
    throw Error("unknown extension kind '" + s + "'");
}

inline CharSpec parse_char_spec(const Json& j) {
    CharSpec c;
    c.p = detail::field(j, "p").get<long>();
    if (j.contains("ext")) c.ext = parse_ext(j.at("ext").get<std::string>());
    c.level = j.contains("conductor") ? j.at("conductor").get<int>() : 0;
    c.gen = parse_value(j.contains("unit_gen_image") ? j.at("unit_gen_image").get<std::string>() : "1");
    c.unif = parse_value(j.contains("at_uniformizer") ? j.at("at_uniformizer").get<std::string>() : "1");
    return c;
}

/// {"case": "II", "n": 1, "epsilon": 1, "gram": [["1","0"],["0","1"]], "gram_nrd": "2",
///  "d_split": true, "B_nrd": "1", "ext": "ramified", "ext_d": 1}.
inline SpaceDesc parse_space(const Json& j, long p) {
    SpaceDesc s;
    s.tag = parse_case(detail::field(j, "case").get<std::string>());
    if (j.contains("n")) s.n = j.at("n").get<int>();
    if (j.contains("epsilon")) s.epsilon = j.at("epsilon").get<int>();
    if (j.contains("gram"))
        for (const auto& row : j.at("gram")) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(parse_rational(x.get<std::string>()));
            s.gram.push_back(r);
        }
    if (j.contains("gram_nrd")) s.gram_nrd = parse_rational(j.at("gram_nrd").get<std::string>());
    if (j.contains("d_split")) s.d_split = j.at("d_split").get<bool>();
    if (j.contains("B_nrd")) s.B_nrd = parse_rational(j.at("B_nrd").get<std::string>());
    if (j.contains("ext")) {
        ExtKind k = parse_ext(j.at("ext").get<std::string>());
        long d = j.contains("ext_d") ? j.at("ext_d").get<long>() : 1;
        if (k == ExtKind::unramified) s.ext = LocalFieldDesc::unramified(p);
        if (k == ExtKind::ramified) s.ext = LocalFieldDesc::ramified(p, d);
    }
    s.validate();
    return s;
}

using AnySpecHom = std::variant<SpecHom<CycRing>, SpecHom<FFRing>>;

/// {"T": "2", "U": "zeta4^1", "target": {"kind": "cyclotomic", "N": 20}} or
/// target {"kind": "finite-field", "ell": 41, "r": 1}; U must map to a d-th root of unity.
inline AnySpecHom parse_spec_hom(const Json& j, long d) {
    ValueMonomial t = parse_value(detail::field(j, "T").get<std::string>());
    if (t.uses_twist()) throw Error("T must specialize to a scalar");
    long uj = 0;
    if (j.contains("U")) {
        ValueMonomial u = parse_value(j.at("U").get<std::string>());
        if (u.uses_twist()) throw Error("U must specialize to a scalar");
        long found = -1;
        for (long k = 0; k < d && found < 0; ++k)
            if (CycNumber::root_of_unity(d, k) == u.coeff) found = k;
        if (found < 0) throw Error("U must map to a root of unity of order dividing " + std::to_string(d));
        uj = found;
    }
    const Json& tgt = detail::field(j, "target");
    std::string kind = detail::field(tgt, "kind").get<std::string>();
    if (kind == "cyclotomic") return SpecHom<CycRing>(d, uj, t.coeff, CycRing{});
    if (kind == "finite-field")
        return SpecHom<FFRing>(d, uj, t.coeff, FFRing::make(detail::field(tgt, "ell").get<std::int64_t>(),
                                                            detail::field(tgt, "r").get<int>()));
    throw Error("unknown specialization target '" + kind + "'");
}

}  // namespace lcif
