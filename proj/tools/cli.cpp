#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "stiefel/cohomology.hpp"
#include "stiefel/connectivity.hpp"
#include "stiefel/error.hpp"
#include "stiefel/ktheory.hpp"
#include "stiefel/retract.hpp"
#include "stiefel/verdict.hpp"

namespace stiefel::cli {

namespace {

using json = nlohmann::json;

constexpr int kMaxVerdictN = 500;
constexpr int kMaxRetractN = 400;
constexpr long kMaxRetractUnknowns = 2500;
constexpr int kMaxAdamsN = 300;
constexpr int kMaxJoinN = 200;
constexpr int kMaxSweepN = 200;
constexpr long kMaxProofParam = 2000;

enum class Format { Human, Json, Csv };

struct FieldFlags {
    int characteristic = 0;
    bool alg_closed = false;
    bool perfect = true;
    bool fin_2 = true;

    void attach(CLI::App* app) {
        app->add_option("--char", characteristic, "Field characteristic: 0 or a prime")->capture_default_str();
        app->add_flag("--alg-closed", alg_closed, "Field is algebraically closed");
        app->add_flag("--perfect,!--no-perfect", perfect, "Field is perfect (default on)");
        app->add_flag("--fin-2-cohdim,!--no-fin-2-cohdim", fin_2,
                      "Field has finite 2-etale cohomological dimension (default on)");
    }

    verdict::FieldDescriptor descriptor() const {
        return verdict::FieldDescriptor::make(characteristic, alg_closed, perfect, fin_2);
    }
};

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string join_ints(const std::vector<int>& v, const char* sep = ", ") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::string row_text(const lattice::IntMatrix& m, std::size_t i) {
    std::ostringstream os;
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "]";
    return os.str();
}

// ---- renderers ------------------------------------------------------------

void render_verdict_human(std::ostream& out, const verdict::SectionVerdict& v) {
    const auto& q = v.query;
    const auto& f = q.field;
    out << "query: p : V_" << q.r + q.l << "(A^" << q.n << ") -> V_" << q.r << "(A^" << q.n << ")  (r=" << q.r
        << ", l=" << q.l << ", n=" << q.n << ")\n";
    out << "field: char " << f.characteristic << (f.algebraically_closed ? ", algebraically closed" : "")
        << (f.perfect ? ", perfect" : ", not perfect")
        << (f.finite_2_etale_cohdim ? ", finite 2-etale cohomological dimension" : ", 2-etale cohomological dimension not finite")
        << "\n";
    out << "status: " << verdict::status_name(v.status) << "\n";
    if (v.blocking_hypothesis) out << "blocked by: " << *v.blocking_hypothesis << "\n";
    if (v.no_section_over_integers) out << "no section over Z either\n";
    out << "chain:\n";
    for (std::size_t i = 0; i < v.chain.size(); ++i) {
        const auto& s = v.chain[i];
        out << "  " << i + 1 << ". [" << verdict::step_kind_name(s.kind) << "] " << s.summary << "\n";
        out << "     anchor: " << s.citation << "\n";
    }
}

void render_retract_human(std::ostream& out, const retract::RetractVerdict& v) {
    const auto& p = v.problem;
    out << "problem: n=" << p.n << " s=" << p.s << " t=" << p.t << " ks={" << join_ints(p.ks) << "}\n";
    out << "system: " << retract::build_system(p).describe_layout() << "\n";
    if (const auto* e = std::get_if<retract::Exists>(&v.outcome)) {
        out << "verdict: Exists\n";
        out << "witness phi (rows " << p.s << ".." << p.n - 1 << ", columns " << p.t << ".." << p.n - 1 << "):\n";
        for (std::size_t i = 0; i < e->witness.rows(); ++i) out << "  " << row_text(e->witness, i) << "\n";
    } else {
        const auto& c = std::get<retract::Impossible>(v.outcome).certificate;
        out << "verdict: Impossible\n";
        out << "certificate: y.A = 0 mod q and y.b != 0 mod q with q = " << c.modulus.get_str() << "\n  y = [";
        for (std::size_t i = 0; i < c.certificate.size(); ++i) out << (i ? " " : "") << c.certificate[i].get_str();
        out << "]\n";
    }
}

void render_replay_human(std::ostream& out, const connectivity::ProofReplay& r) {
    out << "proof: " << connectivity::proof_id(r.name) << " (r=" << r.params.r << ", n=" << r.params.n
        << ", m=" << r.params.m << ")" << (r.needs_perfect_field ? ", perfect field assumed" : "") << "\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        out << "  " << (s.holds ? "ok  " : "FAIL") << " " << i << ". " << s.rule << ": " << s.instantiation << "  ["
            << s.inequality() << "]\n";
    }
    out << "result: " << (r.passed ? "pass" : "fail");
    if (r.first_failure) out << " (first failing step " << *r.first_failure << ")";
    if (r.conclusion && r.name == connectivity::ProofName::ComparisonMap) {
        out << ", connectivity ";
        if (*r.conclusion >= connectivity::kInfinite) out << "inf";
        else out << *r.conclusion;
    } else if (r.conclusion) {
        out << ", lift " << (*r.conclusion ? "exists" : "not established");
    }
    out << "\n";
}

// ---- verification -----------------------------------------------------------

json adams_document(int k, int n, int m) {
    const ktheory::TruncProjKGroup g(n, m);
    json j = ktheory::matrix_to_json(g, ktheory::adams_matrix(k, g));
    j["k"] = k;
    return j;
}

json join_document(int r, int n, int m, bool with_splitting) {
    const auto c = cohomology::derive_join_coefficients(r, n, m);
    json j = cohomology::coefficients_to_json(c);
    j["replay"] = cohomology::replay_derivation(c);
    if (with_splitting) j["splitting"] = cohomology::splitting_to_json(cohomology::splitting_chase(r, n, m));
    return j;
}

void require_at_most(const json& value, long limit, const char* what) {
    if (value.get<long>() > limit) throw InputError(std::string(what) + " exceeds the limit of " + std::to_string(limit));
}

bool verify_section_verdict(const json& j) {
    require_at_most(j.at("query").at("n"), kMaxVerdictN, "n");
    return verdict::replay_verdict(verdict::verdict_from_json(j));
}

}  // namespace

bool verify_document(const json& doc) {
    if (!doc.is_object()) throw InputError("expected a JSON object");
    try {
        if (doc.contains("verdicts")) {
            for (const auto& v : doc.at("verdicts"))
                if (!verify_section_verdict(v)) return false;
            return true;
        }
        if (doc.contains("status") && doc.contains("chain")) return verify_section_verdict(doc);
        if (doc.contains("problem") && doc.contains("verdict")) {
            require_at_most(doc.at("problem").at("n"), kMaxRetractN, "n");
            return retract::verify_verdict(retract::verdict_from_json(doc));
        }
        if (doc.contains("proof")) {
            for (const char* key : {"r", "n", "m"}) require_at_most(doc.at("params").at(key), kMaxProofParam, key);
            return connectivity::verify_replay(connectivity::replay_from_json(doc));
        }
        if (doc.contains("lines") && doc.contains("trace")) {
            require_at_most(doc.at("n"), kMaxJoinN, "n");
            require_at_most(doc.at("m"), kMaxJoinN, "m");
            const int r = doc.at("r").get<int>(), n = doc.at("n").get<int>(), m = doc.at("m").get<int>();
            return join_document(r, n, m, doc.contains("splitting")) == doc && doc.at("replay").get<bool>();
        }
        if (doc.contains("entries") && doc.contains("k")) {
            require_at_most(doc.at("n"), kMaxAdamsN, "n");
            return adams_document(doc.at("k").get<int>(), doc.at("n").get<int>(), doc.at("m").get<int>()) == doc;
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
    throw InputError("unrecognised document shape");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact certificates for sections of Stiefel variety projections", "stiefel"};
    app.require_subcommand(1);
    std::string format_name = "human";
    bool verify_flag = false;
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"human", "json", "csv"}))
        ->capture_default_str();
    app.add_flag("--verify", verify_flag, "Re-parse the JSON output and re-verify it; exit 1 on failure");
    app.fallthrough();

    // verdict
    int vr = 0, vl = 0, vn = 0;
    bool vstably = false;
    FieldFlags vfield;
    auto* c_verdict = app.add_subcommand("verdict", "Decide whether V_{r+l}(A^n) -> V_r(A^n) has a section");
    c_verdict->add_option("--r", vr, "Target rank r")->required()->check(CLI::Range(0, kMaxVerdictN));
    c_verdict->add_option("--l", vl, "Extra frames l")->required()->check(CLI::Range(0, kMaxVerdictN));
    c_verdict->add_option("--n", vn, "Ambient dimension n")->required()->check(CLI::Range(0, kMaxVerdictN));
    c_verdict->add_flag("--stably-free", vstably, "Also print the stably free module reading");
    vfield.attach(c_verdict);

    // retract
    int rn = 0, rs = 0, rt = 0;
    std::vector<int> rks;
    auto* c_retract = app.add_subcommand("retract", "Decide an Adams-equivariant retract problem");
    c_retract->add_option("--n", rn, "Truncation n")->required()->check(CLI::Range(2, kMaxRetractN));
    c_retract->add_option("--s", rs, "Source bottom exponent s")->required()->check(CLI::Range(1, kMaxRetractN));
    c_retract->add_option("--t", rt, "Target bottom exponent t")->required()->check(CLI::Range(1, kMaxRetractN));
    c_retract->add_option("--k", rks, "Adams indices (repeat or comma-separate)")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(2, 64));

    // adams
    int ak = 0, an = 0, am = 0;
    auto* c_adams = app.add_subcommand("adams", "Matrix of psi^k on K(P^{n-1}_m)");
    c_adams->add_option("--k", ak, "Adams index")->required()->check(CLI::Range(1, 64));
    c_adams->add_option("--n", an, "Truncation n")->required()->check(CLI::Range(2, kMaxAdamsN));
    c_adams->add_option("--m", am, "Bottom exponent m")->required()->check(CLI::Range(1, kMaxAdamsN));

    // join-coeffs
    int jr = 0, jn = 0, jm = 0;
    bool jsplit = false;
    auto* c_join = app.add_subcommand("join-coeffs", "Unit coefficients of the intrinsic join on cohomology");
    c_join->add_option("--r", jr, "Rank r")->required()->check(CLI::Range(1, kMaxJoinN));
    c_join->add_option("--n", jn, "First ambient dimension n")->required()->check(CLI::Range(1, kMaxJoinN));
    c_join->add_option("--m", jm, "Second ambient dimension m (even)")->required()->check(CLI::Range(1, kMaxJoinN));
    c_join->add_flag("--splitting", jsplit, "Also run the splitting chase (needs m >= rn + 2(r-n))");

    // connectivity
    std::string cproof;
    long cr = 0, cn = 0, cm = 0;
    auto* c_conn = app.add_subcommand("connectivity", "Replay the inequality bookkeeping of a connectivity argument");
    c_conn->add_option("--proof", cproof, "comparison-map | join-lift | lift-l2 | lift-l1")
        ->required()
        ->check(CLI::IsMember({"comparison-map", "join-lift", "lift-l2", "lift-l1"}));
    c_conn->add_option("--r", cr, "Parameter r")->check(CLI::Range(0L, kMaxProofParam));
    c_conn->add_option("--n", cn, "Parameter n")->check(CLI::Range(0L, kMaxProofParam));
    c_conn->add_option("--m", cm, "Parameter m")->check(CLI::Range(0L, kMaxProofParam));

    // sweep
    int sr_lo = 2, sr_hi = 4, sl_lo = 2, sl_hi = 4, sn_lo = 0, sn_hi = 20;
    std::string soutput;
    FieldFlags sfield;
    auto* c_sweep = app.add_subcommand("sweep", "Verdicts over ranges of (r, l, n)");
    c_sweep->add_option("--r-min", sr_lo)->capture_default_str()->check(CLI::Range(0, kMaxSweepN));
    c_sweep->add_option("--r-max", sr_hi)->capture_default_str()->check(CLI::Range(-1, kMaxSweepN));
    c_sweep->add_option("--l-min", sl_lo)->capture_default_str()->check(CLI::Range(0, kMaxSweepN));
    c_sweep->add_option("--l-max", sl_hi)->capture_default_str()->check(CLI::Range(-1, kMaxSweepN));
    c_sweep->add_option("--n-min", sn_lo)->capture_default_str()->check(CLI::Range(0, kMaxSweepN));
    c_sweep->add_option("--n-max", sn_hi)->capture_default_str()->check(CLI::Range(-1, kMaxSweepN));
    c_sweep->add_option("--output", soutput, "Write the table to this file instead of stdout");
    sfield.attach(c_sweep);

    // verify
    std::string vinput;
    auto* c_verify = app.add_subcommand("verify", "Re-verify a JSON document produced by this tool");
    c_verify->add_option("input", vinput, "Path to the JSON document, or - for stdin")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Format format = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Human;
    auto csv_unsupported = [&](const char* cmd) {
        err << "error: --format csv is only available for verdict and sweep, not " << cmd << "\n";
        return 2;
    };
    // Emits JSON (or renders it otherwise) and runs the round-trip check when asked.
    auto finish = [&](const json& doc) {
        if (format == Format::Json) print_json(out, doc);
        if (verify_flag) {
            const json reparsed = json::parse(doc.dump());
            if (!verify_document(reparsed)) {
                err << "error: output failed re-verification\n";
                return 1;
            }
            if (format == Format::Human) out << "verified: output re-parses and re-checks\n";
        }
        return 0;
    };

    try {
        if (c_verdict->parsed()) {
            const auto v = verdict::decide_section(verdict::SectionQuery::make(vr, vl, vn, vfield.descriptor()));
            json doc = verdict::to_json(v);
            if (format == Format::Human) {
                render_verdict_human(out, v);
                if (vstably) {
                    const auto s = verdict::to_stably_free(v);
                    out << "stably free reading: " << s.statement << "\n";
                }
            } else if (format == Format::Csv) {
                out << verdict::csv_header() << "\n" << verdict::csv_row(v) << "\n";
            }
            if (vstably && format == Format::Json) doc["stably_free"] = verdict::stably_free_to_json(verdict::to_stably_free(v));
            return finish(doc);
        }
        if (c_retract->parsed()) {
            if (format == Format::Csv) return csv_unsupported("retract");
            const auto p = retract::RetractProblem::make(rn, rs, rt, rks);
            if (static_cast<long>(p.n - p.s) * (p.s - p.t) > kMaxRetractUnknowns)
                throw InputError("problem too large: (n-s)(s-t) must be at most " + std::to_string(kMaxRetractUnknowns));
            const auto v = retract::decide_retract(p);
            if (format == Format::Human) render_retract_human(out, v);
            return finish(retract::to_json(v));
        }
        if (c_adams->parsed()) {
            if (format == Format::Csv) return csv_unsupported("adams");
            const json doc = adams_document(ak, an, am);
            if (format == Format::Human) {
                const ktheory::TruncProjKGroup g(an, am);
                const auto mtx = ktheory::adams_matrix(ak, g);
                out << "psi^" << ak << " on K(P^" << an - 1 << "_" << am << "), basis mu^" << am << "..mu^" << an - 1
                    << " (column j is the image of the j-th basis element)\n";
                for (std::size_t i = 0; i < mtx.rows(); ++i) out << "  " << row_text(mtx, i) << "\n";
            }
            return finish(doc);
        }
        if (c_join->parsed()) {
            if (format == Format::Csv) return csv_unsupported("join-coeffs");
            const json doc = join_document(jr, jn, jm, jsplit);
            if (format == Format::Human) {
                const auto c = cohomology::derive_join_coefficients(jr, jn, jm);
                out << "h^* on V_" << jr << "(A^" << jn << ") * V_" << jr << "(A^" << jm << ") -> V_" << jr << "(A^"
                    << jn + jm << ")\n";
                for (const auto& [ell, e] : c.lines) out << "  l=" << ell << ": " << e.to_string() << "\n";
                out << "derivation: " << c.trace.size() << " steps, replay "
                    << (doc.at("replay").get<bool>() ? "passes" : "FAILS") << "\n";
                if (jsplit)
                    out << "splitting chase: " << (doc.at("splitting").at("success").get<bool>() ? "success" : "failure")
                        << "\n";
            }
            return finish(doc);
        }
        if (c_conn->parsed()) {
            if (format == Format::Csv) return csv_unsupported("connectivity");
            const auto rep = connectivity::replay_proof(connectivity::proof_from_id(cproof), {cr, cn, cm});
            if (format == Format::Human) render_replay_human(out, rep);
            return finish(connectivity::replay_to_json(rep));
        }
        if (c_sweep->parsed()) {
            const auto field = sfield.descriptor();
            const auto rows = verdict::sweep({sr_lo, sr_hi}, {sl_lo, sl_hi}, {sn_lo, sn_hi}, field);
            std::ostringstream body;
            json doc{{"sweep",
                      {{"r", {sr_lo, sr_hi}}, {"l", {sl_lo, sl_hi}}, {"n", {sn_lo, sn_hi}}, {"field", verdict::field_to_json(field)}}},
                     {"verdicts", json::array()}};
            for (const auto& v : rows) doc["verdicts"].push_back(verdict::to_json(v));
            if (format == Format::Json) {
                body << doc.dump(2) << "\n";
            } else {
                body << verdict::csv_header() << "\n";
                for (const auto& v : rows) body << verdict::csv_row(v) << "\n";
            }
            if (soutput.empty()) {
                out << body.str();
            } else {
                std::ofstream f(soutput);
                if (!f) throw InputError("cannot write " + soutput);
                f << body.str();
                out << "wrote " << rows.size() << " verdicts to " << soutput << "\n";
            }
            if (verify_flag) {
                if (!verify_document(json::parse(doc.dump()))) {
                    err << "error: sweep failed re-verification\n";
                    return 1;
                }
                if (format != Format::Json || !soutput.empty()) out << "verified: " << rows.size() << " chains replay\n";
            }
            if (format == Format::Human && soutput.empty()) {
                std::map<std::string, int> counts;
                for (const auto& v : rows) ++counts[verdict::status_name(v.status)];
                for (const auto& [k, c] : counts) out << "# " << k << ": " << c << "\n";
            }
            return 0;
        }
        if (c_verify->parsed()) {
            std::string text;
            if (vinput == "-") {
                text.assign(std::istreambuf_iterator<char>(std::cin), {});
            } else {
                std::ifstream f(vinput);
                if (!f) throw InputError("cannot read " + vinput);
                text.assign(std::istreambuf_iterator<char>(f), {});
            }
            json doc;
            try {
                doc = json::parse(text);
            } catch (const json::parse_error& e) {
                throw InputError(std::string("invalid JSON: ") + e.what());
            }
            const bool ok = verify_document(doc);
            if (format == Format::Json) print_json(out, {{"verified", ok}});
            else out << (ok ? "verified" : "verification FAILED") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace stiefel::cli
