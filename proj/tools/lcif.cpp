// lcif: local constants in families from the command line.
//
// Exit status: 0 when every checked identity holds, 1 on an identity violation,
// 2 on a usage, input or configuration error.

#include "lcif/json_io.hpp"
#include "lcif/lcif.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lcif;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw UsageError("cannot write '" + path + "'");
        out << text;
        if (!out) throw UsageError("cannot write '" + path + "'");
    }
    void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

long twist_size(long p, int level) { return level == 0 ? 1 : (p - 1) * ipow(p, level - 1); }

CharSpec load_char(const std::string& path, long p) {
    if (path.empty()) throw UsageError("missing character spec");
    CharSpec c = parse_char_spec(read_json_file(path));
    if (p != 0 && c.p != p) throw UsageError("--p " + std::to_string(p) + " disagrees with p = " + std::to_string(c.p) + " in '" + path + "'");
    if (c.ext != ExtKind::trivial) throw UsageError("only characters of Q_p are supported ('" + path + "')");
    if (c.uses_U() && c.level == 0) throw UsageError("U needs a positive conductor in '" + path + "'");
    return c;
}

/// Calls body(ring) with the cyclotomic scalars or the universal twist ring the specs need.
template <class F>
auto with_ring(const std::vector<const CharSpec*>& specs, F&& body) {
    int level = -1;
    long p = specs.front()->p;
    for (const auto* s : specs)
        if (s->uses_twist()) level = std::max(level, s->level);
    if (level < 0) return body(CycRing{});
    return body(TwistRing{twist_size(p, level)});
}

void check_threads() {
    const char* env = std::getenv("LCIF_THREADS");
    if (!env) return;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || n < 1) throw UsageError("LCIF_THREADS must be a positive integer");
}

// ---------------------------------------------------------------- gamma

struct GammaConfig {
    long p = 0;
    std::string omega;
    int psi_conductor = 0;
    int psi_sign = 1;
    bool perturb = false;
    std::uint64_t seed = 0;
};

int run_gamma(const GammaConfig& cfg, const Output& out) {
    CharSpec spec = load_char(cfg.omega, cfg.p);
    AddChar psi{spec.p, cfg.psi_conductor, cfg.psi_sign};
    TateOptions opt{cfg.perturb};
    return with_ring({&spec}, [&](const auto& ring) {
        auto w = spec.build(ring);
        auto [lhs, rhs] = tate_identity_sides(w, psi, opt);
        bool ok = lhs == rhs;
        Json j{{"gamma", to_json(tate_gamma(w, psi, opt))},
               {"epsilon", to_json(tate_epsilon(w, psi, opt))},
               {"identity_check", ok},
               {"seed", cfg.seed}};
        if (!ok) j["violation"] = {{"identity", "tate functional equation"}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
        out.write(j);
        return ok ? 0 : 1;
    });
}

// ---------------------------------------------------------------- normalizer

struct NormalizerConfig {
    long p = 0;
    std::vector<std::string> spaces;
    std::string omega;
    int psi_conductor = 0;
    std::string format = "csv";
    std::uint64_t seed = 0;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

int run_normalizer(const NormalizerConfig& cfg, const Output& out) {
    CharSpec spec = load_char(cfg.omega, cfg.p);
    AddChar psi{spec.p, cfg.psi_conductor, 1};
    if (cfg.spaces.empty()) throw UsageError("missing --space");
    std::vector<SpaceDesc> spaces;
    for (const auto& path : cfg.spaces) spaces.push_back(parse_space(read_json_file(path), spec.p));
    return with_ring({&spec}, [&](const auto& ring) {
        auto w = spec.build(ring);
        std::ostringstream csv;
        csv << "case,n,epsilon,disc_class,e_G,d_factor_json\n";
        Json rows = Json::array();
        bool all_units = true;
        for (const auto& s : spaces) {
            auto d = d_factor(s, w, psi);
            bool unit = check_unit_in_localization(d);
            all_units = all_units && unit;
            std::string disc = s.tag == CaseTag::II ? "none" : discriminant_theta(s, spec.p).to_string();
            Json dj = to_json(d);
            csv << to_string(s.tag) << ',' << s.n << ',' << s.epsilon << ',' << disc << ',' << kottwitz_sign(s) << ','
                << csv_field(dj.dump()) << '\n';
            rows.push_back({{"case", to_string(s.tag)},
                            {"n", s.n},
                            {"epsilon", s.epsilon},
                            {"disc_class", disc},
                            {"e_G", kottwitz_sign(s)},
                            {"d_factor", dj},
                            {"unit", unit}});
        }
        if (cfg.format == "json")
            out.write(Json{{"rows", rows}, {"seed", cfg.seed}});
        else
            out.write(csv.str());
        return all_units ? 0 : 1;
    });
}

// ---------------------------------------------------------------- doubling

struct DoublingConfig {
    long p = 0;
    std::string pi, omega, space;
    int level = 0;
    int truncation = 20;
    int trials = 20;
    std::uint64_t seed = 1;
    int psi_conductor = 0;
    std::string emit = "json";
};

template <class E>
Json stabilization_table(const PiChar<E>& pi, const MultChar<E>& w, int level, int truncation, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto f = random_section(rng, w, level);
    auto series = zeta_truncated_series(pi, w.ring().one(), f, truncation);
    Json rows = Json::array();
    for (long j = -2; j <= truncation / 2; ++j) {
        int nj = truncation;
        while (nj > 0 && series[static_cast<size_t>(nj - 1)].num().coeff(j) == series.back().num().coeff(j)) --nj;
        rows.push_back({{"j", j}, {"N_j", nj}, {"a_j", to_json(series.back().num().coeff(j))}});
    }
    return rows;
}

int run_doubling(const DoublingConfig& cfg, const Output& out) {
    if (cfg.emit != "json") throw UsageError("--emit supports json only");
    if (cfg.truncation < 0) throw UsageError("--truncation must be nonnegative");
    if (cfg.trials < 2) throw UsageError("--trials must be at least 2");
    auto trivial = [](long p) { return CharSpec{p, ExtKind::trivial, 0, parse_value("1"), parse_value("1")}; };
    if (cfg.omega.empty() && cfg.p == 0) throw UsageError("doubling needs --omega or --p");
    CharSpec w_spec = cfg.omega.empty() ? trivial(cfg.p) : load_char(cfg.omega, cfg.p);
    CharSpec pi_spec = cfg.pi.empty() ? trivial(w_spec.p) : load_char(cfg.pi, w_spec.p);
    SpaceDesc space;
    if (!cfg.space.empty()) space = parse_space(read_json_file(cfg.space), w_spec.p);
    AddChar psi{w_spec.p, cfg.psi_conductor, 1};
    return with_ring({&w_spec, &pi_spec}, [&](const auto& ring) {
        auto w = w_spec.build(ring);
        PiChar pi(pi_spec.build(ring));
        int m = std::max({1, cfg.level, w.conductor(), pi.chi.conductor()});
        int status = 0;
        Json j;
        try {
            auto g = gamma_extract(pi, w, cfg.trials, cfg.seed, m);
            j["gamma_unnormalized"] = to_json(g.gamma);
            j["gamma_normalized"] = to_json(
                g.gamma.scale(pi.z_minus_one) * d_factor(space, w, psi).inverse() * r_factor(space, w, psi));
            j["trials"] = g.trials;
        } catch (const Error& e) {
            if (std::string(e.what()) != "functional equation violated") throw;
            j["violation"] = {{"identity", "functional equation"}, {"detail", e.what()}};
            status = 1;
        }
        j["seed"] = cfg.seed;
        j["level"] = m;
        j["truncation"] = cfg.truncation;
        j["stabilization_table"] = stabilization_table(pi, w, m, cfg.truncation, cfg.seed);
        out.write(j);
        return status;
    });
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
    std::string suite;
    long p = 5;
    int max_conductor = 2;
    bool perturb = false;
    int trials = 20;
    std::uint64_t seed = 1;
};

struct Report {
    long checked = 0;
    long failed = 0;
    Json first_failure;

    template <class L, class R>
    void record(bool ok, const std::string& identity, const L& lhs, const R& rhs) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) first_failure = {{"identity", identity}, {"lhs", lhs}, {"rhs", rhs}};
    }
};

std::vector<MultChar<CycNumber>> characters_upto(long p, int max_conductor) {
    std::vector<MultChar<CycNumber>> out;
    std::vector<CycNumber> unif{CycNumber(1L), CycNumber(2L), CycNumber::root_of_unity(3, 1)};
    for (const auto& c : unif) out.push_back(MultChar<CycNumber>::unramified(p, c));
    for (int e = 1; e <= max_conductor; ++e) {
        std::int64_t d = twist_size(p, e);
        for (std::int64_t k = 1; k < d; ++k) {
            MultChar<CycNumber> w(p, e, CycNumber::root_of_unity(d, k), unif[static_cast<size_t>(k % 3)]);
            if (w.conductor() == e) out.push_back(w);
        }
    }
    return out;
}

std::string describe(const MultChar<CycNumber>& w, const AddChar& psi) {
    return "p=" + std::to_string(w.p()) + " conductor=" + std::to_string(w.conductor()) + " gen=" + w.gen_image().to_string() +
           " unif=" + w.at_uniformizer().to_string() + " psi_conductor=" + std::to_string(psi.n) +
           " psi_sign=" + std::to_string(psi.sign);
}

Report verify_tate(const VerifyConfig& cfg) {
    Report r;
    TateOptions opt{cfg.perturb};
    for (int n : {0, 1})
        for (int sign : {1, -1}) {
            AddChar psi{cfg.p, n, sign};
            for (const auto& w : characters_upto(cfg.p, cfg.max_conductor)) {
                auto [lhs, rhs] = tate_identity_sides(w, psi, opt);
                r.record(lhs == rhs, "tate functional equation: " + describe(w, psi), to_json(lhs), to_json(rhs));
            }
            for (int e = 0; e <= cfg.max_conductor; ++e) {
                auto u = build_universal(cfg.p, ExtKind::trivial, e);
                auto [lhs, rhs] = tate_identity_sides(u.chi, psi, opt);
                r.record(lhs == rhs, "tate functional equation: universal level " + std::to_string(e), to_json(lhs), to_json(rhs));
            }
        }
    return r;
}

Report verify_hilbert(const VerifyConfig& cfg) {
    Report r;
    long p = cfg.p, u = LocalFieldDesc::smallest_nonresidue(p);
    std::vector<Rational> reps{Rational(1), Rational(u), Rational(p), Rational(u * p), Rational(-1), Rational(-p)};
    for (const auto& a : reps)
        for (const auto& b : reps) {
            int ab = hilbert_symbol(a, b, p), ba = hilbert_symbol(b, a, p);
            r.record(ab == ba, "hilbert symmetry: (" + a.get_str() + "," + b.get_str() + ")", ab, ba);
            int one_minus = a == 1 ? 1 : hilbert_symbol(a, 1 - a, p);
            r.record(one_minus == 1, "hilbert (a,1-a) = 1: a=" + a.get_str(), one_minus, 1);
            for (const auto& c : reps) {
                int lhs = hilbert_symbol(a, b * c, p), rhs = ab * hilbert_symbol(a, c, p);
                r.record(lhs == rhs, "hilbert bimultiplicativity: (" + a.get_str() + "," + b.get_str() + "*" + c.get_str() + ")",
                         lhs, rhs);
            }
        }
    return r;
}

Report verify_weil(const VerifyConfig& cfg) {
    Report r;
    long p = cfg.p;
    for (auto ext : {LocalFieldDesc::unramified(p), LocalFieldDesc::ramified(p),
                     LocalFieldDesc::ramified(p, LocalFieldDesc::smallest_nonresidue(p))})
        for (int n : {0, 1}) {
            AddChar psi{p, n, 1};
            auto a = weil_index_at(ext, psi, 1), b = weil_index_at(ext, psi, 2);
            bool ok = a && b && *a == *b && a->pow(8) == CycNumber(1L);
            r.record(ok, "weil index stable, order dividing 8: psi_conductor=" + std::to_string(n),
                     a ? to_json(*a) : Json(nullptr), b ? to_json(*b) : Json(nullptr));
        }
    return r;
}

std::vector<SpaceDesc> normalizer_grid(long p) {
    auto mk = [](CaseTag t, int n, int eps, RatMatrix g) {
        SpaceDesc s;
        s.tag = t;
        s.n = n;
        s.epsilon = eps;
        s.gram = std::move(g);
        return s;
    };
    std::vector<SpaceDesc> out{mk(CaseTag::I1, 1, 1, {{Rational(1)}}),
                               mk(CaseTag::I1, 2, 1, {{Rational(1), Rational(0)}, {Rational(0), Rational(3)}}),
                               mk(CaseTag::I1, 2, -1, {{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}}),
                               mk(CaseTag::II, 1, 1, {}), mk(CaseTag::II, 2, 1, {})};
    auto skew1 = mk(CaseTag::I2, 1, -1, {});
    skew1.gram_nrd = Rational(2);
    out.push_back(skew1);
    for (auto e : {LocalFieldDesc::unramified(p), LocalFieldDesc::ramified(p)}) {
        auto s = mk(CaseTag::I3, 1, 1, {{Rational(1)}});
        s.ext = e;
        out.push_back(s);
    }
    return out;
}

Report verify_normalizer(const VerifyConfig& cfg) {
    Report r;
    AddChar psi{cfg.p, 0, 1};
    for (const auto& s : normalizer_grid(cfg.p))
        for (const auto& w : characters_upto(cfg.p, cfg.max_conductor)) {
            auto d = d_factor(s, w, psi);
            r.record(check_unit_in_localization(d), "d_factor unit: case " + to_string(s.tag) + " n=" + std::to_string(s.n) +
                                                        " " + describe(w, psi),
                     to_json(d), "unit");
        }
    return r;
}

Report verify_functional_equation(const VerifyConfig& cfg) {
    Report r;
    auto chars = characters_upto(cfg.p, std::min(cfg.max_conductor, 1));
    std::uint64_t seed = cfg.seed;
    for (size_t i = 0; i < chars.size(); i += 2) {
        const auto& w = chars[i];
        const auto& pi = chars[(i + 1) % chars.size()];
        std::string what = "doubling functional equation: omega " + describe(w, AddChar{cfg.p, 0, 1});
        try {
            auto g = gamma_extract(PiChar<CycNumber>(pi), w, cfg.trials, seed++);
            r.record(true, what, g.trials, cfg.trials);
        } catch (const Error& e) {
            if (std::string(e.what()) != "functional equation violated") throw;
            r.record(false, what, "violated", "agreement");
        }
    }
    return r;
}

Report verify_base_change(const VerifyConfig& cfg) {
    Report r;
    int e = std::max(1, std::min(cfg.max_conductor, 1));
    auto u = build_universal(cfg.p, ExtKind::trivial, e);
    long d = u.ring.d;
    BaseChangeInputs in{u.chi, std::nullopt, AddChar{cfg.p, 0, 1}, std::nullopt, std::nullopt, 4, cfg.seed};
    std::vector<CycNumber> t0s{CycNumber(1L), CycNumber(2L), CycNumber::root_of_unity(3, 1),
                               CycNumber(make_rational(-1, cfg.p)), CycNumber::root_of_unity(5, 1) + CycNumber(1L)};
    for (size_t k = 0; k < t0s.size(); ++k) {
        SpecHom<CycRing> h(d, static_cast<long>(k), t0s[k], CycRing{});
        for (auto op : {BaseChangeOp::tate_gamma, BaseChangeOp::d_factor, BaseChangeOp::zeta_exact, BaseChangeOp::gamma_extract})
            r.record(base_change_check(op, h, in), "base change: " + to_string(op) + " T->" + t0s[k].to_string(), "specialized after",
                     "specialized before");
    }
    return r;
}

int run_verify(const VerifyConfig& cfg, const Output& out) {
    LocalFieldDesc::unramified(cfg.p);
    if (cfg.max_conductor < 0) throw UsageError("--max-conductor must be nonnegative");
    Report r;
    if (cfg.suite == "tate-fe") r = verify_tate(cfg);
    else if (cfg.suite == "hilbert") r = verify_hilbert(cfg);
    else if (cfg.suite == "weil") r = verify_weil(cfg);
    else if (cfg.suite == "normalizer-unit") r = verify_normalizer(cfg);
    else if (cfg.suite == "functional-equation") r = verify_functional_equation(cfg);
    else if (cfg.suite == "base-change") r = verify_base_change(cfg);
    else throw UsageError("unknown suite '" + cfg.suite + "'");
    Json j{{"suite", cfg.suite}, {"checked", r.checked}, {"failed", r.failed}, {"seed", cfg.seed}};
    if (r.failed) j["first_failure"] = r.first_failure;
    out.write(j);
    return r.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local constants of p-adic fields in families: Tate gamma factors, normalizing factors and the GL1 doubling engine"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--out", out.path, "Output file (default: standard output)");

    GammaConfig gc;
    auto* gamma = app.add_subcommand("gamma", "Tate gamma and epsilon factors of a character, with the functional identity");
    gamma->add_option("--p", gc.p, "Residue characteristic (must match the character file)");
    gamma->add_option("--omega-spec", gc.omega, "Character spec JSON")->required();
    gamma->add_option("--psi-conductor", gc.psi_conductor, "psi is trivial on p^-n O, nontrivial on p^(-n-1) O");
    gamma->add_option("--psi-sign", gc.psi_sign, "psi(x) or psi(-x)")->check(CLI::IsMember({1, -1}));
    gamma->add_option("--seed", gc.seed, "Recorded in the output");
    gamma->add_flag("--perturb-gauss", gc.perturb, "Test hook: flip one Gauss-sum term");
    gamma->add_option("--out", out.path, "Output file");

    NormalizerConfig nc;
    auto* norm = app.add_subcommand("normalizer", "Normalizing factors d(X, omega, B, psi) as a CSV table");
    norm->add_option("--p", nc.p, "Residue characteristic (must match the character file)");
    norm->add_option("--space", nc.spaces, "Space spec JSON (repeatable)")->required();
    norm->add_option("--omega-spec", nc.omega, "Character spec JSON")->required();
    norm->add_option("--psi-conductor", nc.psi_conductor, "Conductor of psi");
    norm->add_option("--format", nc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    norm->add_option("--seed", nc.seed, "Recorded in JSON output");
    norm->add_option("--out", out.path, "Output file");

    DoublingConfig dc;
    auto* dbl = app.add_subcommand("doubling", "GL1 doubling engine: gamma extraction and stabilization table");
    std::string action = "run";
    dbl->add_option("action", action, "run")->check(CLI::IsMember({"run"}));
    dbl->add_option("--p", dc.p, "Residue characteristic (must match the character files)");
    dbl->add_option("--pi", dc.pi, "Character spec JSON for pi (default: trivial)");
    dbl->add_option("--omega", dc.omega, "Character spec JSON for omega (default: trivial)");
    dbl->add_option("--space", dc.space, "Space spec JSON for the normalization (default: case II, n = 1, B_nrd = 1)");
    dbl->add_option("--level", dc.level, "Section level (raised to the conductors if needed)");
    dbl->add_option("--truncation", dc.truncation, "Largest N in the stabilization table");
    dbl->add_option("--trials", dc.trials, "Random trials for gamma extraction");
    dbl->add_option("--seed", dc.seed, "Random seed");
    dbl->add_option("--psi-conductor", dc.psi_conductor, "Conductor of psi");
    dbl->add_option("--emit", dc.emit, "Output format")->check(CLI::IsMember({"json"}));
    dbl->add_option("--out", out.path, "Output file");

    VerifyConfig vc;
    auto* ver = app.add_subcommand("verify", "Run an identity suite and report the first violation");
    ver->add_option("suite", vc.suite, "tate-fe, hilbert, weil, normalizer-unit, functional-equation or base-change")
        ->required()
        ->check(CLI::IsMember({"tate-fe", "hilbert", "weil", "normalizer-unit", "functional-equation", "base-change"}));
    ver->add_option("--p", vc.p, "Residue characteristic");
    ver->add_option("--max-conductor", vc.max_conductor, "Largest character conductor on the grid");
    ver->add_option("--trials", vc.trials, "Random trials (functional-equation suite)");
    ver->add_option("--seed", vc.seed, "Random seed");
    ver->add_flag("--perturb-gauss", vc.perturb, "Test hook: flip one Gauss-sum term");
    ver->add_option("--out", out.path, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        check_threads();
        if (gamma->parsed()) return run_gamma(gc, out);
        if (norm->parsed()) return run_normalizer(nc, out);
        if (dbl->parsed()) return run_doubling(dc, out);
        return run_verify(vc, out);
    } catch (const std::exception& e) {
        std::cerr << "lcif: " << e.what() << "\n";
        return 2;
    }
}
