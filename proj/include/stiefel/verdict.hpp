#pragma once

// Section-existence verdicts for p : V_{r+l}(A^n) -> V_r(A^n) over a field,
// with a reason chain in which every step can be rechecked on its own.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stiefel/json_codec.hpp"

namespace stiefel::verdict {

using json = json_codec::json;

struct FieldDescriptor {
    int characteristic = 0;  // 0 or a prime
    bool algebraically_closed = false;
    bool perfect = true;
    bool finite_2_etale_cohdim = true;

    /// Rejects non-prime positive characteristic and imperfect fields of
    /// characteristic 0 or algebraically closed fields.
    static FieldDescriptor make(int characteristic, bool algebraically_closed, bool perfect, bool fin_2);

    friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

struct SectionQuery {
    int r = 0;
    int l = 0;
    int n = 0;
    FieldDescriptor field;

    /// Requires r, l >= 0 and r + l <= n.
    static SectionQuery make(int r, int l, int n, FieldDescriptor field = {});

    friend bool operator==(const SectionQuery&, const SectionQuery&) = default;
};

enum class Status { SectionExists, NoSection, NecessaryConditionOnly, Unknown };
enum class StepKind { Reduction, SolverRun, CitedFact, DivisibilityCheck, ConnectivityReplay };

std::string status_name(Status s);
Status status_from_name(const std::string& s);
std::string step_kind_name(StepKind k);
StepKind step_kind_from_name(const std::string& s);

struct ReasonStep {
    StepKind kind{};
    std::string summary;
    std::string citation;
    json payload;
};

struct SectionVerdict {
    SectionQuery query;
    Status status = Status::Unknown;
    std::vector<ReasonStep> chain;
    std::optional<std::string> blocking_hypothesis;  // set for Unknown
    bool no_section_over_integers = false;           // implied by NoSection
};

/// Reduction steps carry {lemma, from, to}; lemmas are
///   base-change          k -> algebraic closure
///   drop-extra-columns   (r, l, n) -> (r, l', n), l' <= l
///   drop-leading-frames  (r, l, n) -> (r-s, l, n-s)
/// A section of the source query implies one of the target query.
struct Reduction {
    SectionQuery reduced;
    std::vector<ReasonStep> steps;
};

/// r, l >= 2 -> (2, 2, n-r+2); l = 1, r >= 2 -> (2, 1, n-r+2); otherwise identity.
Reduction reduce_query(const SectionQuery& q);

struct JamesModulus {
    int modulus = 0;
    std::string citation;
};

/// Divisibility forced on N by a section of V_3(A^N) -> V_1(A^N).
JamesModulus james_divisibility(const FieldDescriptor& field);

enum class FactConclusion { SectionExists, NoSection };

struct CitedFact {
    std::string id;
    std::string statement;
    std::string citation;
    FactConclusion conclusion{};
    std::function<bool(int r, int l, int n, int characteristic)> applies;
};

const std::vector<CitedFact>& cited_obstructions();
/// Throws InputError on an unknown id.
const CitedFact& fact_by_id(const std::string& id);

SectionVerdict decide_section(const SectionQuery& q);

/// Rechecks every step independently, then confirms a fresh decision gives
/// the same status and chain.
bool replay_verdict(const SectionVerdict& v);

/// Checks a single step against its own payload.
bool check_step(const ReasonStep& s);

struct StablyFreeStatement {
    int n = 0;
    int rank = 0;  // n - r
    int free_summand_rank = 0;
    Status status{};
    std::string statement;
};

/// Requires status NoSection or SectionExists; throws InputError otherwise.
StablyFreeStatement to_stably_free(const SectionVerdict& v);

struct Range {
    int lo = 0;
    int hi = -1;  // inclusive; empty when hi < lo
};

/// One verdict per (r, l, n) with r + l <= n, ordered by r, then l, then n.
std::vector<SectionVerdict> sweep(Range r, Range l, Range n, const FieldDescriptor& field);

json field_to_json(const FieldDescriptor& f);
FieldDescriptor field_from_json(const json& j);
json query_to_json(const SectionQuery& q);
SectionQuery query_from_json(const json& j);
json to_json(const SectionVerdict& v);
SectionVerdict verdict_from_json(const json& j);
json stably_free_to_json(const StablyFreeStatement& s);

std::string csv_header();
std::string csv_row(const SectionVerdict& v);
/// Solver problem referenced by the chain, e.g. "retract(9,7,5;2)", or "-".
std::string certificate_ref(const SectionVerdict& v);

}  // namespace stiefel::verdict
