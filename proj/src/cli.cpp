#include "subkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "subkit/equivalence.hpp"
#include "subkit/fibonacci.hpp"
#include "subkit/io.hpp"
#include "subkit/ordered_equiv.hpp"
#include "subkit/pf.hpp"

namespace subkit {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    return read_file(path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double to_double(const mpq_class& q) { return q.get_d(); }

struct Report {
    json j;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        j["schema"] = 1;
        j["command"] = command;
        j["inputs"] = json::array();
    }
    void input(const std::string& name, const std::string& value) {
        j["inputs"].push_back({{"name", name}, {"value", value}});
    }
    void finish() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        j["timing_ms"] = ms;
    }
};

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Distinguished: return "distinguished";
        default: return "unknown";
    }
}

json supernatural_json(const SupernaturalNumber& s) {
    json out = json::array();
    for (const auto& [p, e] : s.exponents()) {
        json entry;
        entry["prime"] = p.get_str();
        if (e.infinite) entry["exponent"] = "inf";
        else entry["exponent"] = e.value;
        out.push_back(std::move(entry));
    }
    return out;
}

json invariants_json(const MatrixInvariants& inv) {
    json out;
    out["primitive"] = inv.primitive;
    if (inv.primitivity_exponent) out["primitivity_exponent"] = *inv.primitivity_exponent;
    out["invertible"] = inv.invertible;
    out["non_nilpotent_rank"] = inv.non_nilpotent_rank;
    if (inv.purely_aperiodic) out["purely_aperiodic"] = *inv.purely_aperiodic;
    if (inv.supernat) {
        out["supernatural"] = inv.supernat->to_string();
        out["supernatural_factors"] = supernatural_json(*inv.supernat);
    }
    return out;
}

SearchBudget unordered_budget_from_env() {
    SearchBudget b;
    const char* preset = std::getenv("SUBKIT_BUDGET_PRESET");
    if (!preset) return b;
    std::string p(preset);
    if (p == "small") {
        b.max_power = 4;
        b.max_alphabet = 4;
        b.max_chain = 8;
        b.max_split_nodes = 20000;
    } else if (p == "large") {
        b.max_power = 12;
        b.max_alphabet = 10;
        b.max_chain = 16;
        b.max_split_nodes = 2000000;
    }
    return b;
}

OrderedBudget ordered_budget_from_env() {
    OrderedBudget b;
    const char* preset = std::getenv("SUBKIT_BUDGET_PRESET");
    if (!preset) return b;
    std::string p(preset);
    if (p == "small") {
        b.max_power = 3;
        b.max_chain = 6;
        b.max_nodes = 20000;
    } else if (p == "large") {
        b.max_power = 6;
        b.max_chain = 12;
        b.max_nodes = 2000000;
    }
    return b;
}

mpq_class parse_tolerance(const std::string& text) {
    // accepts "1e-6", "0.001" or "p/q"
    if (text.find('/') != std::string::npos) {
        mpq_class q(text);
        q.canonicalize();
        if (q <= 0) throw std::invalid_argument("tolerance must be positive");
        return q;
    }
    double d = std::stod(text);
    if (d <= 0) throw std::invalid_argument("tolerance must be positive");
    // exact decimal expansion of the double is fine as a bound
    mpq_class q(d);
    return q;
}

int finish_report(Report& rep, bool json_mode, std::ostream& out,
                  const std::string& human, int code) {
    rep.finish();
    if (json_mode) out << rep.j.dump(2) << "\n";
    else out << human;
    return code;
}

// ---- subcommand implementations ----

int cmd_analyze(const std::string& file, const std::string& tolerance, bool json_mode,
                std::ostream& out) {
    Report rep("analyze");
    rep.input("substitution", file);
    Substitution s = parse_substitution(read_input(file));
    if (!s.square()) throw std::invalid_argument("analyze needs a square substitution");
    ExactMatrix m = abelianize(s);
    MatrixInvariants inv = matrix_invariants(m);
    std::ostringstream hs;
    hs << "substitution: " << s.to_string() << "\n";
    hs << "matrix: " << m.to_string() << "\n";
    rep.j["details"]["matrix"] = json::parse("[]");
    {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c).get_si());
            rows.push_back(row);
        }
        rep.j["details"]["matrix"] = rows;
    }
    rep.j["details"]["invariants"] = invariants_json(inv);
    hs << "primitive: " << (inv.primitive ? "yes" : "no");
    if (inv.primitivity_exponent) hs << " (exponent " << *inv.primitivity_exponent << ")";
    hs << "\n";
    if (inv.primitive) {
        PFReport pf = pf_report(m);
        rep.j["details"]["pf"] = {
            {"rational", pf.pf_is_rational},
            {"minimal_polynomial", pf.pf_minimal_polynomial.to_string()},
            {"minimal_polynomial_degree", pf.minimal_polynomial_degree},
            {"isolation_lo", pf.isolation_lo.get_str()},
            {"isolation_hi", pf.isolation_hi.get_str()},
        };
        if (pf.pf_integer_value)
            rep.j["details"]["pf"]["value"] = pf.pf_integer_value->get_str();
        hs << "purely aperiodic: " << (!pf.pf_is_rational ? "yes" : "no");
        if (pf.pf_is_rational) hs << " (PF eigenvalue " << pf.pf_integer_value->get_str() << ")";
        else
            hs << " (PF eigenvalue irrational, minimal polynomial "
               << pf.pf_minimal_polynomial.to_string() << ", isolated in ("
               << pf.isolation_lo.get_str() << ", " << pf.isolation_hi.get_str() << "))";
        hs << "\n";
    }
    hs << "proper: " << (is_proper(s) ? "yes" : "no") << "\n";
    rep.j["details"]["proper"] = is_proper(s);
    PathCounts pc = path_counts(s);
    rep.j["details"]["max_paths"] = pc.max_count;
    rep.j["details"]["min_paths"] = pc.min_count;
    hs << "max/min infinite paths: " << pc.max_count << "/" << pc.min_count << "\n";
    if (inv.primitive) {
        mpq_class tol = parse_tolerance(tolerance);
        EigenvectorApprox freq = pf_eigenvector(m, EigenvectorSide::Right, tol);
        json fj = json::array();
        hs << "letter frequencies:";
        for (int i = 0; i < m.rows(); ++i) {
            fj.push_back({{"letter", s.domain().letter(i)},
                          {"value", freq.entries[i].get_str()}});
            hs << " " << s.domain().letter(i) << " ≈ " << to_double(freq.entries[i]);
        }
        hs << " (error ≤ " << to_double(freq.error_bound) << ")\n";
        rep.j["details"]["frequencies"] = fj;
        rep.j["details"]["frequency_error_bound"] = freq.error_bound.get_str();
    }
    rep.j["verdict"] = "ok";
    return finish_report(rep, json_mode, out, hs.str(), kExitOk);
}

struct EquivOptions {
    bool ordered = false;
    bool fib = false;
    std::string certificate_out;
    std::string witness_file;
    int max_power = -1;
    int threads = 0;
};

// witness JSON: {"j": [[..]], "k1": int, "l1": int, "dk": int, "dl": int}
InvertibleWitness parse_witness(const std::string& text) {
    json j = json::parse(text);
    InvertibleWitness w;
    std::ostringstream rows;
    for (const auto& row : j.at("j")) {
        for (const auto& v : row) rows << v.get<long long>() << " ";
        rows << "\n";
    }
    w.j = parse_matrix(rows.str());
    w.k1 = j.value("k1", 1u);
    w.l1 = j.value("l1", 1u);
    w.dk = j.value("dk", 1u);
    w.dl = j.value("dl", 1u);
    return w;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, const EquivOptions& opt,
              bool json_mode, std::ostream& out) {
    Report rep("equiv");
    rep.input("left", file_a);
    rep.input("right", file_b);
    rep.j["ordered"] = opt.ordered || opt.fib;

    std::string human;
    int code = kExitUnknown;
    if (opt.ordered || opt.fib) {
        Substitution a = parse_substitution(read_input(file_a));
        Substitution b = parse_substitution(read_input(file_b));
        OrderedBudget budget = ordered_budget_from_env();
        if (opt.max_power > 0) budget.max_power = opt.max_power;
        budget.threads = opt.threads > 0
                             ? opt.threads
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        OrderedOutcome res = opt.fib ? fib_ordered_equivalence(a, b, budget)
                                     : analyze_ordered_equivalence(a, b, budget);
        rep.j["verdict"] = verdict_name(res.verdict);
        rep.j["details"]["max_paths"] = {res.left_counts.max_count, res.right_counts.max_count};
        rep.j["details"]["min_paths"] = {res.left_counts.min_count, res.right_counts.min_count};
        std::ostringstream hs;
        switch (res.verdict) {
            case Verdict::Equivalent: {
                hs << "equivalent (ordered certificate with " << res.certificate->links.size()
                   << " link(s))\n";
                std::string cert = ordered_certificate_to_json(*res.certificate);
                rep.j["certificate"] = json::parse(cert);
                if (!opt.certificate_out.empty()) write_file(opt.certificate_out, cert);
                code = kExitOk;
                break;
            }
            case Verdict::Distinguished:
                hs << "distinguished by " << res.distinguished_by << "\n";
                rep.j["invariant"] = res.distinguished_by;
                code = kExitNegative;
                break;
            default:
                hs << "unknown (no certificate within budget)\n";
                code = kExitUnknown;
        }
        human = hs.str();
    } else {
        auto load = [&](const std::string& f) {
            std::string text = read_input(f);
            if (ends_with(f, ".sub")) return abelianize(parse_substitution(text));
            return parse_matrix(text);
        };
        ExactMatrix a = load(file_a);
        ExactMatrix b = load(file_b);
        SearchBudget budget = unordered_budget_from_env();
        if (opt.max_power > 0) budget.max_power = opt.max_power;
        EquivalenceOutcome res = analyze_equivalence(a, b, budget);
        if (res.verdict == Verdict::Unknown && !opt.witness_file.empty()) {
            InvertibleWitness w = parse_witness(read_input(opt.witness_file));
            if (auto cert = certificate_from_witness(a, b, w)) {
                res.verdict = Verdict::Equivalent;
                res.certificate = std::move(cert);
            }
        }
        rep.j["verdict"] = verdict_name(res.verdict);
        rep.j["details"]["left"] = invariants_json(res.left);
        rep.j["details"]["right"] = invariants_json(res.right);
        std::ostringstream hs;
        switch (res.verdict) {
            case Verdict::Equivalent: {
                hs << "equivalent (certificate with " << res.certificate->links.size()
                   << " link(s))\n";
                std::string cert = certificate_to_json(*res.certificate);
                rep.j["certificate"] = json::parse(cert);
                if (!opt.certificate_out.empty()) write_file(opt.certificate_out, cert);
                code = kExitOk;
                break;
            }
            case Verdict::Distinguished:
                hs << "distinguished by " << res.distinguished_by << "\n";
                rep.j["invariant"] = res.distinguished_by;
                code = kExitNegative;
                break;
            default:
                hs << "unknown (no certificate within budget)\n";
                code = kExitUnknown;
        }
        human = hs.str();
    }
    return finish_report(rep, json_mode, out, human, code);
}

std::vector<int> parse_cuts(const std::string& text) {
    std::vector<int> cuts;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ','))
        if (!part.empty()) cuts.push_back(std::stoi(part));
    return cuts;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Bratteli diagram toolkit for symbolic substitutions"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit a JSON report");
    unsigned long seed = 0;
    app.add_option("--seed", seed, "seed for randomized search (searches are deterministic)");

    // analyze
    std::string an_file, an_tol = "1e-6";
    auto* analyze = app.add_subcommand("analyze", "invariants of a square substitution");
    analyze->add_option("file", an_file, "substitution file (.sub, - for stdin)")->required();
    analyze->add_option("--tolerance", an_tol, "frequency tolerance");

    // equiv
    std::string eq_a, eq_b;
    EquivOptions eq_opt;
    auto* equiv = app.add_subcommand("equiv", "telescope equivalence analysis");
    equiv->add_option("left", eq_a)->required();
    equiv->add_option("right", eq_b)->required();
    equiv->add_flag("--ordered", eq_opt.ordered, "ordered diagrams (substitution inputs)");
    equiv->add_flag("--fib", eq_opt.fib, "Fibonacci-power specialization");
    equiv->add_option("--certificate", eq_opt.certificate_out, "write the certificate here");
    equiv->add_option("--witness", eq_opt.witness_file,
                      "invertible-pair witness JSON (j, k1, l1, dk, dl)");
    equiv->add_option("--max-power", eq_opt.max_power, "override the power budget");
    equiv->add_option("--threads", eq_opt.threads, "search threads (default: hardware)");

    // telescope
    std::string tel_file, tel_cuts;
    int tel_stride = 0, tel_depth = 5;
    auto* tele = app.add_subcommand("telescope", "telescope a stationary diagram");
    tele->add_option("file", tel_file, "matrix file (.mat) or diagram JSON")->required();
    tele->add_option("--cuts", tel_cuts, "comma-separated cut levels starting at 0");
    tele->add_option("--stride", tel_stride, "constant stride");
    tele->add_option("--depth", tel_depth, "levels to materialize in the output");

    // compose / power / abelianize
    std::string co_outer, co_inner;
    auto* comp = app.add_subcommand("compose", "compose two substitutions (outer inner)");
    comp->add_option("outer", co_outer)->required();
    comp->add_option("inner", co_inner)->required();

    std::string pw_file;
    int pw_k = 1;
    auto* pw = app.add_subcommand("power", "k-fold self-composition");
    pw->add_option("file", pw_file)->required();
    pw->add_option("--k", pw_k, "exponent")->required();

    std::string ab_file;
    auto* ab = app.add_subcommand("abelianize", "letter-count matrix of a substitution");
    ab->add_option("file", ab_file)->required();

    // split / enlarge
    std::string sp_m, sp_n, sp_s, sp_cert;
    auto* split = app.add_subcommand("split", "state splitting m = N*S -> S*N");
    split->add_option("m", sp_m)->required();
    split->add_option("nfactor", sp_n)->required();
    split->add_option("sfactor", sp_s)->required();
    split->add_option("--certificate", sp_cert);

    std::string en_file, en_cert;
    int en_target = 0;
    auto* enl = app.add_subcommand("enlarge", "equivalent primitive matrix on more letters");
    enl->add_option("file", en_file)->required();
    enl->add_option("--target", en_target, "target letter count")->required();
    enl->add_option("--certificate", en_cert);

    // supernatural / pq / fib-classify
    std::string sn_file;
    auto* sn = app.add_subcommand("supernatural", "UHF invariant of a transition matrix");
    sn->add_option("file", sn_file)->required();

    std::string pq_file;
    auto* pq = app.add_subcommand("pq", "P/Q factorization of a 2x2 matrix");
    pq->add_option("file", pq_file)->required();

    std::string fc_a, fc_b;
    auto* fc = app.add_subcommand("fib-classify", "classify A B = F^m splits");
    fc->add_option("a", fc_a)->required();
    fc->add_option("b", fc_b)->required();

    // factors
    std::string fa_file;
    int fa_k = 2;
    auto* fa = app.add_subcommand("factors", "admissible words up to a length");
    fa->add_option("file", fa_file)->required();
    fa->add_option("--k", fa_k, "maximum word length")->required();

    // successor
    std::string su_file, su_ranks;
    int su_vertex = 0;
    auto* su = app.add_subcommand("successor", "order-successor of a finite path");
    su->add_option("file", su_file)->required();
    su->add_option("--vertex", su_vertex, "top vertex index")->required();
    su->add_option("--ranks", su_ranks, "edge ranks from the base, comma-separated")->required();

    // export-dot
    std::string xd_file, xd_out;
    int xd_depth = 4;
    bool xd_ordered = false, xd_color = false;
    auto* xd = app.add_subcommand("export-dot", "DOT rendering of a diagram");
    xd->add_option("file", xd_file)->required();
    xd->add_option("--depth", xd_depth);
    xd->add_flag("--ordered", xd_ordered, "force the ordered rendering (.sub inputs)");
    xd->add_flag("--color-extremes", xd_color, "paint maximal edges red, minimal green");
    xd->add_option("-o,--output", xd_out, "output file (stdout otherwise)");

    // taf
    std::string taf_file;
    int taf_depth = 3;
    auto* taf = app.add_subcommand("taf", "standard triangular chain description");
    taf->add_option("file", taf_file)->required();
    taf->add_option("--depth", taf_depth);

    std::vector<const char*> argv;
    std::string prog = "subkit";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(an_file, an_tol, json_mode, out);
        if (*equiv) return cmd_equiv(eq_a, eq_b, eq_opt, json_mode, out);

        if (*tele) {
            Report rep("telescope");
            rep.input("diagram", tel_file);
            std::string text = read_input(tel_file);
            BratteliDiagram d = ends_with(tel_file, ".json") ? diagram_from_json(text)
                                                             : stationary_diagram(parse_matrix(text));
            BratteliDiagram result = tel_stride > 0
                                         ? telescope_stride(d, tel_stride)
                                         : telescope(d, parse_cuts(tel_cuts));
            std::string js = diagram_to_json(result, tel_depth);
            rep.j["verdict"] = "ok";
            rep.j["details"]["diagram"] = json::parse(js);
            return finish_report(rep, json_mode, out, js + "\n", kExitOk);
        }
        if (*comp) {
            Substitution outer = parse_substitution(read_input(co_outer));
            Substitution inner = parse_substitution(read_input(co_inner));
            out << write_substitution(compose(outer, inner));
            return kExitOk;
        }
        if (*pw) {
            if (pw_k < 0) throw std::invalid_argument("power exponent must be >= 0");
            Substitution s = parse_substitution(read_input(pw_file));
            out << write_substitution(power(s, static_cast<unsigned>(pw_k)));
            return kExitOk;
        }
        if (*ab) {
            Substitution s = parse_substitution(read_input(ab_file));
            out << write_matrix(abelianize(s));
            return kExitOk;
        }
        if (*split) {
            Report rep("split");
            rep.input("m", sp_m);
            rep.input("nfactor", sp_n);
            rep.input("sfactor", sp_s);
            StateSplitResult res = state_split(parse_matrix(read_input(sp_m)),
                                               parse_matrix(read_input(sp_n)),
                                               parse_matrix(read_input(sp_s)));
            std::string cert = certificate_to_json(res.certificate);
            if (!sp_cert.empty()) write_file(sp_cert, cert);
            rep.j["verdict"] = "ok";
            rep.j["details"]["result"] = json::parse(cert)["links"][0]["right"];
            rep.j["certificate"] = json::parse(cert);
            return finish_report(rep, json_mode, out, write_matrix(res.result), kExitOk);
        }
        if (*enl) {
            Report rep("enlarge");
            rep.input("m", en_file);
            EnlargeResult res = enlarge(parse_matrix(read_input(en_file)), en_target);
            std::string cert = certificate_to_json(res.certificate);
            if (!en_cert.empty()) write_file(en_cert, cert);
            rep.j["verdict"] = "ok";
            rep.j["details"]["power_used"] = res.power_used;
            rep.j["certificate"] = json::parse(cert);
            return finish_report(rep, json_mode, out, write_matrix(res.result), kExitOk);
        }
        if (*sn) {
            Report rep("supernatural");
            rep.input("m", sn_file);
            auto s = supernatural(parse_matrix(read_input(sn_file)));
            if (!s) {
                rep.j["verdict"] = "not-applicable";
                return finish_report(rep, json_mode, out,
                                     "not applicable (rank is not one)\n", kExitNegative);
            }
            rep.j["verdict"] = "ok";
            rep.j["details"]["supernatural"] = s->to_string();
            rep.j["details"]["factors"] = supernatural_json(*s);
            return finish_report(rep, json_mode, out, s->to_string() + "\n", kExitOk);
        }
        if (*pq) {
            Report rep("pq");
            rep.input("m", pq_file);
            auto w = pq_factorize(parse_matrix(read_input(pq_file)));
            if (!w) {
                rep.j["verdict"] = "not-factorable";
                return finish_report(rep, json_mode, out,
                                     "not factorable (determinant is not ±1)\n", kExitNegative);
            }
            rep.j["verdict"] = "ok";
            rep.j["details"]["word"] = w->to_string();
            return finish_report(rep, json_mode, out, w->to_string() + "\n", kExitOk);
        }
        if (*fc) {
            Report rep("fib-classify");
            rep.input("a", fc_a);
            rep.input("b", fc_b);
            auto cls = classify_fib_factors(parse_matrix(read_input(fc_a)),
                                            parse_matrix(read_input(fc_b)));
            if (!cls) {
                rep.j["verdict"] = "not-a-fibonacci-power";
                return finish_report(rep, json_mode, out,
                                     "product is not a Fibonacci power\n", kExitNegative);
            }
            std::ostringstream hs;
            hs << (cls->kind == FibFactorClass::PlainSplit ? "plain" : "twisted") << " split k="
               << cls->k << " l=" << cls->l << "\n";
            rep.j["verdict"] = "ok";
            rep.j["details"]["kind"] =
                cls->kind == FibFactorClass::PlainSplit ? "plain" : "twisted";
            rep.j["details"]["k"] = cls->k;
            rep.j["details"]["l"] = cls->l;
            return finish_report(rep, json_mode, out, hs.str(), kExitOk);
        }
        if (*fa) {
            Report rep("factors");
            rep.input("substitution", fa_file);
            Substitution s = parse_substitution(read_input(fa_file));
            FactorLanguage lang = factor_language(s, fa_k);
            std::ostringstream hs;
            json words = json::array();
            for (const auto& w : lang.factors()) {
                hs << w.to_string() << "\n";
                words.push_back(w.to_string());
            }
            rep.j["verdict"] = "ok";
            rep.j["details"]["count"] = lang.factors().size();
            rep.j["details"]["words"] = words;
            return finish_report(rep, json_mode, out, hs.str(), kExitOk);
        }
        if (*su) {
            Report rep("successor");
            rep.input("substitution", su_file);
            Substitution s = parse_substitution(read_input(su_file));
            OrderedDiagram d = ordered_from_substitution(s);
            auto ranks = parse_cuts(su_ranks);
            // reconstruct the path downward from the top vertex
            std::vector<PathEdge> edges(ranks.size());
            int v = su_vertex;
            for (int i = static_cast<int>(ranks.size()) - 1; i >= 0; --i) {
                edges[i] = {v, ranks[i]};
                const Word& w = d.order_word(i + 1, v);
                if (ranks[i] < 0 || ranks[i] >= w.length())
                    throw std::invalid_argument("rank out of range at level " +
                                                std::to_string(i + 1));
                v = w.at(ranks[i]);
            }
            FinitePath p(std::move(edges));
            auto next = vershik_successor(d, p);
            if (!next) {
                rep.j["verdict"] = "maximal";
                return finish_report(rep, json_mode, out, "maximal path (no successor)\n",
                                     kExitNegative);
            }
            std::ostringstream hs;
            json jr = json::array();
            hs << "ranks:";
            for (const auto& e : next->edges()) {
                hs << " " << e.rank;
                jr.push_back(e.rank);
            }
            hs << "\n";
            rep.j["verdict"] = "ok";
            rep.j["details"]["ranks"] = jr;
            rep.j["details"]["top_vertex"] = next->top_vertex();
            return finish_report(rep, json_mode, out, hs.str(), kExitOk);
        }
        if (*xd) {
            std::string text = read_input(xd_file);
            std::string dot;
            if (ends_with(xd_file, ".sub") || xd_ordered) {
                Substitution s = parse_substitution(text);
                dot = ordered_to_dot(ordered_from_substitution(s), xd_depth, xd_color);
            } else if (ends_with(xd_file, ".json")) {
                dot = diagram_to_dot(diagram_from_json(text), xd_depth);
            } else {
                dot = diagram_to_dot(stationary_diagram(parse_matrix(text)), xd_depth);
            }
            if (xd_out.empty()) out << dot;
            else write_file(xd_out, dot);
            return kExitOk;
        }
        if (*taf) {
            Substitution s = parse_substitution(read_input(taf_file));
            out << taf_description(ordered_from_substitution(s), taf_depth);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    err << "no subcommand selected\n";
    return kExitUsage;
}

} // namespace subkit
