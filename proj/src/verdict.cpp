#include "stiefel/verdict.hpp"

#include <sstream>

#include "stiefel/cohomology.hpp"
#include "stiefel/connectivity.hpp"
#include "stiefel/error.hpp"
#include "stiefel/retract.hpp"

namespace stiefel::verdict {

namespace {

constexpr const char* kOverIntegers = "a section over Z base-changes to a section over k";

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

json triple(int r, int l, int n) { return {{"r", r}, {"l", l}, {"n", n}}; }

struct Triple {
    int r, l, n;
};

Triple triple_from(const json& j) { return {j.at("r").get<int>(), j.at("l").get<int>(), j.at("n").get<int>()}; }

std::string show(const Triple& t) {
    return "V_" + std::to_string(t.r + t.l) + "(A^" + std::to_string(t.n) + ") -> V_" + std::to_string(t.r) + "(A^" +
           std::to_string(t.n) + ")";
}

const char* kLemmaCitation[] = {
    "sections survive base change along k -> algebraic closure",
    "a section for l gives one for every l' <= l by dropping rows",
    "a section over A^{n+s} restricts to one over A^n by fixing the last s frame vectors",
};

/// Accumulates the chain for one query.
class Builder {
public:
    explicit Builder(SectionVerdict& v) : v_(v) {}

    void base_change() {
        if (v_.query.field.algebraically_closed) return;
        FieldDescriptor to = v_.query.field;
        to.algebraically_closed = true;
        to.perfect = true;
        to.finite_2_etale_cohdim = true;
        push(StepKind::Reduction, "assume k algebraically closed; nonexistence over k-bar implies nonexistence over k",
             kLemmaCitation[0],
             {{"lemma", "base-change"}, {"from_field", field_to_json(v_.query.field)}, {"to_field", field_to_json(to)}});
    }

    Triple drop_columns(Triple from, int l) {
        if (from.l == l) return from;
        Triple to{from.r, l, from.n};
        push(StepKind::Reduction, "reduce " + show(from) + " to " + show(to), kLemmaCitation[1],
             {{"lemma", "drop-extra-columns"}, {"from", triple(from.r, from.l, from.n)}, {"to", triple(to.r, to.l, to.n)}});
        return to;
    }

    Triple drop_frames(Triple from, int s) {
        if (s == 0) return from;
        Triple to{from.r - s, from.l, from.n - s};
        push(StepKind::Reduction, "reduce " + show(from) + " to " + show(to), kLemmaCitation[2],
             {{"lemma", "drop-leading-frames"}, {"from", triple(from.r, from.l, from.n)}, {"to", triple(to.r, to.l, to.n)}});
        return to;
    }

    void fact(const std::string& id, Triple t) {
        const auto& f = fact_by_id(id);
        push(StepKind::CitedFact, f.statement, f.citation,
             {{"id", id},
              {"query", triple(t.r, t.l, t.n)},
              {"characteristic", v_.query.field.characteristic},
              {"conclusion", f.conclusion == FactConclusion::NoSection ? "no-section" : "section-exists"}});
    }

    bool james(int big_n) {
        const auto jm = james_divisibility(v_.query.field);
        const int res = big_n % jm.modulus;
        push(StepKind::DivisibilityCheck,
             "a section of V_3(A^" + std::to_string(big_n) + ") -> V_1(A^" + std::to_string(big_n) + ") needs " +
                 std::to_string(jm.modulus) + " | " + std::to_string(big_n) + (res == 0 ? ": divisible" : ": not divisible"),
             jm.citation,
             {{"test", "james"},
              {"characteristic", v_.query.field.characteristic},
              {"value", big_n},
              {"modulus", jm.modulus},
              {"residue", res}});
        return res == 0;
    }

    bool residue_one_mod_24(int d) {
        const int res = ((d % 24) + 24) % 24;
        push(StepKind::DivisibilityCheck,
             "n-r = " + std::to_string(d) + " is " + (res == 1 ? "" : "not ") + "1 mod 24", "necessary condition from the retract obstruction",
             {{"test", "residue"}, {"value", d}, {"modulus", 24}, {"residue", res}, {"target", 1}});
        return res == 1;
    }

    connectivity::ProofReplay replay(connectivity::ProofName name, connectivity::ProofParams p, const std::string& note) {
        auto rep = connectivity::replay_proof(name, p);
        std::string summary = connectivity::proof_id(name) + " replay " + (rep.passed ? "passes" : "fails");
        if (!rep.passed) summary += "; recorded discrepancy at step " + std::to_string(*rep.first_failure) + " (" +
                                    rep.steps[*rep.first_failure].inequality() + "). " + note;
        push(StepKind::ConnectivityReplay, summary, "inequality bookkeeping of the lifting argument",
             {{"replay", connectivity::replay_to_json(rep)}, {"passed", rep.passed}});
        return rep;
    }

    /// Surjectivity of f_2^{n'*} on K_1 from the stable splitting of V_2(A^{n'}).
    void splitting(int np) {
        const int m = 4;  // smallest even m >= 2n' + 2(2 - n')
        const auto rep = connectivity::replay_proof(connectivity::ProofName::JoinLift, {2, np, m});
        const auto chase = cohomology::splitting_chase(2, np, m);
        push(StepKind::ConnectivityReplay,
             "stable splitting of V_2(A^" + std::to_string(np) +
                 "): join lift exists and every rank-one line has a unit composite (needs a perfect field of finite 2-etale "
                 "cohomological dimension and sections of V_2(A^m) -> V_1(A^m), m even)",
             "stable splitting via the intrinsic join; conservativity (Bachmann 2018, Thm 16)",
             {{"replay", connectivity::replay_to_json(rep)},
              {"passed", rep.passed && chase.success},
              {"splitting", {{"r", 2}, {"n", np}, {"m", m}, {"success", chase.success}}}});
    }

    retract::RetractVerdict solver(int np, int t_offset) {
        const auto p = retract::RetractProblem::make(np, np - 2, np - t_offset, {2});
        auto rv = retract::decide_retract(p);
        push(StepKind::SolverRun,
             "psi^2-equivariant retract for (n, s, t) = (" + std::to_string(np) + ", " + std::to_string(np - 2) + ", " +
                 std::to_string(np - t_offset) + "): " + (rv.exists() ? "exists" : "impossible"),
             "a lift of phi o f_2 commuting with Adams operations would be such a retract",
             {{"problem", retract::problem_to_json(p)},
              {"outcome", rv.exists() ? "exists" : "impossible"},
              {"verdict", retract::to_json(rv)}});
        return rv;
    }

    void conclude(Status s, std::optional<std::string> blocking = std::nullopt) {
        v_.status = s;
        v_.blocking_hypothesis = std::move(blocking);
        v_.no_section_over_integers = s == Status::NoSection;
    }

    bool needs_good_field() {
        if (!v_.query.field.perfect) {
            conclude(Status::Unknown, "perfect field (connectivity of f_r^n)");
            return false;
        }
        if (!v_.query.field.finite_2_etale_cohdim) {
            conclude(Status::Unknown, "finite 2-etale cohomological dimension (stable splitting)");
            return false;
        }
        return true;
    }

private:
    void push(StepKind k, std::string summary, std::string citation, json payload) {
        v_.chain.push_back({k, std::move(summary), std::move(citation), std::move(payload)});
    }

    SectionVerdict& v_;
};

/// Obstructions to a section of V_3(A^N) -> V_1(A^N). True when one applies.
bool rank_one_two_obstruction(Builder& b, int big_n, int ch) {
    if (!b.james(big_n)) return true;
    const Triple t{1, 2, big_n};
    if (ch == 2 && big_n == 3) {
        b.fact("kumar-nori", t);
        return true;
    }
    if (ch == 2 && big_n == 6) {
        b.fact("sq4-v3a6", t);
        return true;
    }
    if (ch == 3 && big_n == 4) {
        b.fact("sq4-v3a4", t);
        return true;
    }
    return false;
}

void decide_into(SectionVerdict& v) {
    Builder b(v);
    const int r = v.query.r, l = v.query.l, n = v.query.n, ch = v.query.field.characteristic;
    const Triple q{r, l, n};

    if (l == 0) {
        b.fact("identity", q);
        return b.conclude(Status::SectionExists);
    }
    if (r == 0) {
        b.fact("rational-point", q);
        return b.conclude(Status::SectionExists);
    }
    if (l == 1 && r == n - 1) {
        b.fact("sl-n", q);
        return b.conclude(Status::SectionExists);
    }
    if (r == 1 && l == 1) {
        if (n % 2 == 0) {
            b.fact("even-unimodular", q);
            return b.conclude(Status::SectionExists);
        }
        if (n == 3) {
            b.fact("sq2-v2a3", q);
            return b.conclude(Status::NoSection);
        }
        return b.conclude(Status::Unknown, "no cited obstruction over a field for V_2(A^n) -> V_1(A^n), n odd > 3");
    }
    if (r == 1) {
        b.base_change();
        const Triple t = b.drop_columns(q, 2);
        if (rank_one_two_obstruction(b, t.n, ch)) return b.conclude(Status::NoSection);
        return b.conclude(Status::Unknown, "no cited obstruction for V_3(A^n) -> V_1(A^n)");
    }
    if (l >= 2) {
        b.base_change();
        const Triple t = b.drop_frames(b.drop_columns(q, 2), r - 2);
        const int np = t.n;
        if (np >= 8) {
            if (!b.needs_good_field()) return;
            const auto lift = b.replay(connectivity::ProofName::LiftRankTwo, {0, np, 0}, "");
            if (!lift.passed) return b.conclude(Status::Unknown, "lifting through f_4^n");
            b.splitting(np);
            if (b.solver(np, 4).exists()) return b.conclude(Status::Unknown, "psi^2-equivariant retract exists");
            return b.conclude(Status::NoSection);
        }
        const Triple u = b.drop_frames(t, 1);
        if (rank_one_two_obstruction(b, u.n, ch)) return b.conclude(Status::NoSection);
        return b.conclude(Status::Unknown, "no cited obstruction for V_3(A^n) -> V_1(A^n)");
    }
    // l = 1, 2 <= r <= n-2
    b.base_change();
    const Triple t = b.drop_frames(q, r - 2);
    const int np = t.n;
    if (np == 4) {
        const Triple u = b.drop_frames(t, 1);
        b.fact("sq2-v2a3", u);
        return b.conclude(Status::NoSection);
    }
    if (!b.needs_good_field()) return;
    b.replay(connectivity::ProofName::LiftRankOne, {2, np, 0},
             "The conclusion below uses the inequality as asserted for n-r >= 3.");
    b.splitting(np);
    const bool residue = b.residue_one_mod_24(n - r);
    const auto rv = b.solver(np, 3);
    if (!rv.exists()) return b.conclude(Status::NoSection);
    if (residue) return b.conclude(Status::NecessaryConditionOnly, "n-r = 1 mod 24: only a necessary condition is known");
    b.conclude(Status::Unknown, "retract exists outside n-r = 1 mod 24");
}

bool check_reduction(const json& p) {
    const std::string lemma = p.at("lemma").get<std::string>();
    if (lemma == "base-change") {
        const auto from = field_from_json(p.at("from_field"));
        const auto to = field_from_json(p.at("to_field"));
        return to.characteristic == from.characteristic && to.algebraically_closed && to.perfect &&
               to.finite_2_etale_cohdim;
    }
    const Triple a = triple_from(p.at("from")), b = triple_from(p.at("to"));
    const bool valid_from = a.r >= 0 && a.l >= 0 && a.r + a.l <= a.n;
    if (lemma == "drop-extra-columns") return valid_from && b.r == a.r && b.n == a.n && b.l >= 0 && b.l <= a.l;
    if (lemma == "drop-leading-frames") {
        const int s = a.r - b.r;
        return valid_from && s >= 0 && b.r >= 0 && a.n - b.n == s && a.l == b.l;
    }
    return false;
}

bool check_fact(const ReasonStep& s) {
    const auto& p = s.payload;
    const auto& f = fact_by_id(p.at("id").get<std::string>());
    const Triple t = triple_from(p.at("query"));
    const std::string concl = f.conclusion == FactConclusion::NoSection ? "no-section" : "section-exists";
    return f.citation == s.citation && f.statement == s.summary && concl == p.at("conclusion").get<std::string>() &&
           f.applies(t.r, t.l, t.n, p.at("characteristic").get<int>());
}

bool check_divisibility(const json& p) {
    const int value = p.at("value").get<int>(), modulus = p.at("modulus").get<int>();
    if (modulus <= 0) return false;
    const int res = ((value % modulus) + modulus) % modulus;
    if (res != p.at("residue").get<int>()) return false;
    const std::string test = p.at("test").get<std::string>();
    if (test == "james") {
        FieldDescriptor f;
        f.characteristic = p.at("characteristic").get<int>();
        return james_divisibility(f).modulus == modulus;
    }
    return test == "residue" && modulus == 24;
}

bool check_solver(const json& p) {
    const auto rv = retract::verdict_from_json(p.at("verdict"));
    const auto prob = retract::problem_from_json(p.at("problem"));
    const bool shape = prob.ks == std::vector<int>{2} && prob.s == prob.n - 2 && (prob.t == prob.n - 3 || prob.t == prob.n - 4);
    return shape && rv.problem == prob && retract::verify_verdict(rv) &&
           (rv.exists() ? "exists" : "impossible") == p.at("outcome").get<std::string>();
}

bool check_connectivity(const json& p) {
    const auto rep = connectivity::replay_from_json(p.at("replay"));
    if (!connectivity::verify_replay(rep)) return false;
    if (p.contains("splitting")) {
        const auto& sp = p.at("splitting");
        const auto chase = cohomology::splitting_chase(sp.at("r").get<int>(), sp.at("n").get<int>(), sp.at("m").get<int>());
        if (chase.success != sp.at("success").get<bool>()) return false;
        return p.at("passed").get<bool>() == (rep.passed && chase.success);
    }
    return p.at("passed").get<bool>() == rep.passed;
}

}  // namespace

FieldDescriptor FieldDescriptor::make(int characteristic, bool algebraically_closed, bool perfect, bool fin_2) {
    if (characteristic != 0 && !is_prime(characteristic))
        throw InputError("characteristic must be 0 or a prime, got " + std::to_string(characteristic));
    if (!perfect && characteristic == 0) throw InputError("a field of characteristic 0 is perfect");
    if (!perfect && algebraically_closed) throw InputError("an algebraically closed field is perfect");
    return {characteristic, algebraically_closed, perfect, fin_2};
}

SectionQuery SectionQuery::make(int r, int l, int n, FieldDescriptor field) {
    if (r < 0 || l < 0 || n < 0) throw InputError("r, l, n must be nonnegative");
    if (r + l > n) throw InputError("need r + l <= n");
    field = FieldDescriptor::make(field.characteristic, field.algebraically_closed, field.perfect,
                                  field.finite_2_etale_cohdim);
    return {r, l, n, field};
}

std::string status_name(Status s) {
    switch (s) {
        case Status::SectionExists: return "SectionExists";
        case Status::NoSection: return "NoSection";
        case Status::NecessaryConditionOnly: return "NecessaryConditionOnly";
        case Status::Unknown: return "Unknown";
    }
    return "?";
}

Status status_from_name(const std::string& s) {
    for (auto st : {Status::SectionExists, Status::NoSection, Status::NecessaryConditionOnly, Status::Unknown})
        if (status_name(st) == s) return st;
    throw InputError("unknown status " + s);
}

std::string step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Reduction: return "Reduction";
        case StepKind::SolverRun: return "SolverRun";
        case StepKind::CitedFact: return "CitedFact";
        case StepKind::DivisibilityCheck: return "DivisibilityCheck";
        case StepKind::ConnectivityReplay: return "ConnectivityReplay";
    }
    return "?";
}

StepKind step_kind_from_name(const std::string& s) {
    for (auto k : {StepKind::Reduction, StepKind::SolverRun, StepKind::CitedFact, StepKind::DivisibilityCheck,
                   StepKind::ConnectivityReplay})
        if (step_kind_name(k) == s) return k;
    throw InputError("unknown step kind " + s);
}

Reduction reduce_query(const SectionQuery& q) {
    SectionVerdict scratch;
    scratch.query = q;
    Builder b(scratch);
    Triple t{q.r, q.l, q.n};
    if (q.r >= 2 && q.l >= 2) t = b.drop_frames(b.drop_columns(t, 2), q.r - 2);
    else if (q.r >= 2 && q.l == 1 && q.r <= q.n - 2) t = b.drop_frames(t, q.r - 2);
    SectionQuery out = q;
    out.r = t.r;
    out.l = t.l;
    out.n = t.n;
    return {out, std::move(scratch.chain)};
}

JamesModulus james_divisibility(const FieldDescriptor& field) {
    switch (field.characteristic) {
        case 0: return {24, "Raynaud 1968, Thm 6.5: third James number b_3 = 24"};
        case 2: return {3, "Raynaud 1968, Thm 6.6: N_3(2) = 3"};
        case 3: return {4, "Raynaud 1968, Thm 6.6: N_3(3) = 4"};
        default: return {12, "Raynaud 1968, Thm 6.6: N_3(p) = 12 for p > 3"};
    }
}

const std::vector<CitedFact>& cited_obstructions() {
    static const std::vector<CitedFact> table = {
        {"identity", "p : V_r(A^n) -> V_r(A^n) is the identity", "l = 0", FactConclusion::SectionExists,
         [](int, int l, int, int) { return l == 0; }},
        {"rational-point", "the standard frame is a k-point of V_l(A^n)", "r = 0", FactConclusion::SectionExists,
         [](int r, int l, int n, int) { return r == 0 && l <= n; }},
        {"sl-n", "SL_n -> GL_n is a section of GL_n -> V_{n-1}(A^n) over Z", "Raynaud 1968, Prop. 2.2",
         FactConclusion::SectionExists, [](int r, int l, int n, int) { return l == 1 && r == n - 1 && n >= 1; }},
        {"even-unimodular", "V_2(A^n) -> V_1(A^n) has a section over Z when n is even", "Raynaud 1968",
         FactConclusion::SectionExists, [](int r, int l, int n, int) { return r == 1 && l == 1 && n % 2 == 0; }},
        {"sq2-v2a3", "Sq^2(a_2) = a_3 in H^{*,*}(V_2(A^3), Z/2)",
         "Williams 2012, Thm 20; Primozic 2022, Prop. 2.3 in characteristic 2", FactConclusion::NoSection,
         [](int r, int l, int n, int) { return r == 1 && l == 1 && n == 3; }},
        {"kumar-nori", "a stably free module of rank 2 given by a unimodular row of length 3 that is not free",
         "Mohan Kumar 1985, p. 1443; Raynaud 1968, Prop. 2.4", FactConclusion::NoSection,
         [](int r, int l, int n, int) { return r == 1 && l == 2 && n == 3; }},
        {"sq4-v3a6", "Sq^4(a_4) = a_6 in H^{*,*}(V_3(A^6), Z/2)", "Primozic 2022, Prop. 2.3", FactConclusion::NoSection,
         [](int r, int l, int n, int ch) { return r == 1 && l == 2 && n == 6 && ch == 2; }},
        {"sq4-v3a4", "Sq^4(a_2) = a_4 in H^{*,*}(V_3(A^4), Z/2)", "Williams 2012, Thm 20", FactConclusion::NoSection,
         [](int r, int l, int n, int ch) { return r == 1 && l == 2 && n == 4 && ch == 3; }},
    };
    return table;
}

const CitedFact& fact_by_id(const std::string& id) {
    for (const auto& f : cited_obstructions())
        if (f.id == id) return f;
    throw InputError("unknown fact " + id);
}

SectionVerdict decide_section(const SectionQuery& q) {
    SectionVerdict v;
    v.query = SectionQuery::make(q.r, q.l, q.n, q.field);
    decide_into(v);
    return v;
}

bool check_step(const ReasonStep& s) {
    try {
        switch (s.kind) {
            case StepKind::Reduction: return check_reduction(s.payload);
            case StepKind::CitedFact: return check_fact(s);
            case StepKind::DivisibilityCheck: return check_divisibility(s.payload);
            case StepKind::SolverRun: return check_solver(s.payload);
            case StepKind::ConnectivityReplay: return check_connectivity(s.payload);
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

bool replay_verdict(const SectionVerdict& v) {
    for (const auto& s : v.chain)
        if (!check_step(s)) return false;
    if (v.no_section_over_integers != (v.status == Status::NoSection)) return false;
    try {
        return to_json(decide_section(v.query)) == to_json(v);
    } catch (const InputError&) {
        return false;
    }
}

StablyFreeStatement to_stably_free(const SectionVerdict& v) {
    const int n = v.query.n, r = v.query.r, l = v.query.l;
    StablyFreeStatement s{n, n - r, l, v.status, ""};
    std::ostringstream os;
    if (v.status == Status::NoSection) {
        os << "there is a k-algebra R and a stably free R-module P of type (" << n << ", " << n - r
           << ") with no free summand of rank " << l;
    } else if (v.status == Status::SectionExists) {
        os << "the universal stably free module P_{" << n << "," << n - r << "} has a free summand of rank " << l;
    } else {
        throw InputError("verdict " + status_name(v.status) + " has no stably free interpretation");
    }
    s.statement = os.str();
    return s;
}

std::vector<SectionVerdict> sweep(Range r, Range l, Range n, const FieldDescriptor& field) {
    std::vector<SectionVerdict> out;
    for (int rr = std::max(r.lo, 0); rr <= r.hi; ++rr)
        for (int ll = std::max(l.lo, 0); ll <= l.hi; ++ll)
            for (int nn = std::max(n.lo, rr + ll); nn <= n.hi; ++nn)
                out.push_back(decide_section(SectionQuery::make(rr, ll, nn, field)));
    return out;
}

json field_to_json(const FieldDescriptor& f) {
    return {{"char", f.characteristic},
            {"alg_closed", f.algebraically_closed},
            {"perfect", f.perfect},
            {"fin_2_cohdim", f.finite_2_etale_cohdim}};
}

FieldDescriptor field_from_json(const json& j) {
    try {
        return FieldDescriptor::make(j.at("char").get<int>(), j.at("alg_closed").get<bool>(), j.at("perfect").get<bool>(),
                                     j.at("fin_2_cohdim").get<bool>());
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed field descriptor: ") + e.what());
    }
}

json query_to_json(const SectionQuery& q) {
    return {{"r", q.r}, {"l", q.l}, {"n", q.n}, {"field", field_to_json(q.field)}};
}

SectionQuery query_from_json(const json& j) {
    try {
        return SectionQuery::make(j.at("r").get<int>(), j.at("l").get<int>(), j.at("n").get<int>(),
                                  field_from_json(j.at("field")));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed query: ") + e.what());
    }
}

json to_json(const SectionVerdict& v) {
    json chain = json::array();
    for (const auto& s : v.chain)
        chain.push_back({{"kind", step_kind_name(s.kind)}, {"summary", s.summary}, {"citation", s.citation}, {"payload", s.payload}});
    json j{{"query", query_to_json(v.query)}, {"status", status_name(v.status)}, {"chain", chain}};
    j["blocking_hypothesis"] = v.blocking_hypothesis ? json(*v.blocking_hypothesis) : json(nullptr);
    j["no_section_over_integers"] = v.no_section_over_integers;
    if (v.no_section_over_integers) j["over_integers_citation"] = kOverIntegers;
    return j;
}

SectionVerdict verdict_from_json(const json& j) {
    try {
        SectionVerdict v;
        v.query = query_from_json(j.at("query"));
        v.status = status_from_name(j.at("status").get<std::string>());
        for (const auto& s : j.at("chain"))
            v.chain.push_back({step_kind_from_name(s.at("kind").get<std::string>()), s.at("summary").get<std::string>(),
                               s.at("citation").get<std::string>(), s.at("payload")});
        if (!j.at("blocking_hypothesis").is_null()) v.blocking_hypothesis = j.at("blocking_hypothesis").get<std::string>();
        v.no_section_over_integers = j.at("no_section_over_integers").get<bool>();
        return v;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed section verdict: ") + e.what());
    }
}

json stably_free_to_json(const StablyFreeStatement& s) {
    return {{"n", s.n}, {"rank", s.rank}, {"free_summand_rank", s.free_summand_rank}, {"status", status_name(s.status)},
            {"statement", s.statement}};
}

std::string csv_header() { return "r,l,n,char,status,chain_length,certificate_ref"; }

std::string certificate_ref(const SectionVerdict& v) {
    for (const auto& s : v.chain)
        if (s.kind == StepKind::SolverRun) {
            const auto& p = s.payload.at("problem");
            std::ostringstream os;
            os << "retract(" << p.at("n").get<int>() << "," << p.at("s").get<int>() << "," << p.at("t").get<int>() << ";";
            bool first = true;
            for (const auto& k : p.at("ks")) {
                os << (first ? "" : " ") << k.get<int>();
                first = false;
            }
            os << ")";
            return os.str();
        }
    return "-";
}

std::string csv_row(const SectionVerdict& v) {
    std::ostringstream os;
    os << v.query.r << "," << v.query.l << "," << v.query.n << "," << v.query.field.characteristic << ","
       << status_name(v.status) << "," << v.chain.size() << "," << certificate_ref(v);
    return os.str();
}

}  // namespace stiefel::verdict
