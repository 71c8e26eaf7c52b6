#pragma once

// Integer bookkeeping for A^1-connectivity. Expressions are symbolic spaces
// and maps; every bound comes with the rule applications that produced it.
// Conventions: the empty space is (-2)-connected, a map is n-connected when
// its fibres are, and contractible spaces and equivalences get kInfinite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/json_codec.hpp"

namespace stiefel::connectivity {

using json = json_codec::json;
using Bound = std::int64_t;

inline constexpr Bound kInfinite = Bound(1) << 40;

/// An expression the rule set does not cover.
class NoRuleApplies : public InputError {
public:
    NoRuleApplies(const std::string& atom, const std::string& why)
        : InputError("no rule applies to " + atom + ": " + why), blocking_atom(atom) {}
    std::string blocking_atom;
};

/// A numeric hypothesis of a rule failed.
class SideConditionError : public InputError {
public:
    using InputError::InputError;
};

enum class Kind {
    Sphere,      // S^{p,q}
    Stiefel,     // V_r(A^n)
    TruncProj,   // P^m_{r+1}, params (m, r)
    Point,
    Empty,
    Assumed,     // opaque space with a given bound
    Smash,
    Suspension,  // Sigma^{p,q} X
    Join,
    PlusPoint,   // X_+
    MapF,        // f_r^n : Sigma^{1,1} P~^{n-1}_{n-r} -> V_r(A^n)
    Inclusion,   // iota : P^m_{r+1} -> P^n_{r+1}, params (r, m, n)
    Map,         // opaque map with a given bound
};

struct ConnExpr {
    Kind kind = Kind::Point;
    std::vector<Bound> params;
    std::vector<ConnExpr> children;

    bool is_map() const;
    std::string to_string() const;
    friend bool operator==(const ConnExpr&, const ConnExpr&) = default;
};

ConnExpr sphere(Bound p, Bound q);
ConnExpr stiefel_variety(Bound r, Bound n);
ConnExpr trunc_proj(Bound m, Bound r);
ConnExpr point();
ConnExpr empty();
ConnExpr assumed(Bound conn);
ConnExpr smash(ConnExpr a, ConnExpr b);
ConnExpr suspension(Bound p, Bound q, ConnExpr x);
ConnExpr join(ConnExpr a, ConnExpr b);
ConnExpr plus_point(ConnExpr x);
ConnExpr map_f(Bound r, Bound n);
ConnExpr inclusion(Bound r, Bound m, Bound n);
ConnExpr map(Bound conn);

/// Sigma^{1,1} P~^{top}_{bottom}, the source of f_r^n when top = n-1, bottom = n-r.
ConnExpr suspended_trunc_proj(Bound top, Bound bottom);

/// One rule application. `inputs` are the bounds of the children in order.
struct RuleStep {
    std::string rule;
    std::string citation;
    std::vector<Bound> params;
    std::vector<Bound> inputs;
    Bound result = 0;
    std::string instantiation;
    std::string inequality;
    bool holds = true;
    bool needs_perfect_field = false;
};

struct ConnFact {
    ConnExpr subject;
    Bound bound = 0;
    std::vector<RuleStep> rule_trace;  // post-order; the last step concludes `bound`

    bool needs_perfect_field() const;
};

/// Throws NoRuleApplies when an atom is outside its rule's domain.
ConnFact derive_connectivity(const ConnExpr& e);

/// Recomputes every step from its recorded inputs and checks the trace
/// matches a fresh derivation of the subject.
bool replay_fact(const ConnFact& f);

/// Connectivity of fib(f) -> Omega cof(f) for an conn_x-connected source and
/// conn_f-connected map. Requires conn_x, conn_f >= -1 and conn_x + conn_f >= 0.
Bound blakers_massey_bound(Bound conn_x, Bound conn_f);

/// Map connectivity from an n-connected cofibre, n >= 1, for a simply
/// connected source and connected target.
Bound cof_to_map_bound(Bound conn_cof);

struct LiftResult {
    bool exists = false;
    bool unique = false;
};

/// Lift along an conn_f-connected map from a source of the given Nisnevich
/// cohomological dimension. Requires cohdim_x >= 0.
LiftResult lifting_check(Bound cohdim_x, Bound conn_f);

/// Point: 0. Join of Stiefel varieties V_r(A^n) * V_s(A^m): rn + sm.
/// Sigma^{1,1} of a truncated projective space P~^a_b: a + 1.
Bound cohdim_bound(const ConnExpr& e);

enum class ProofName {
    ComparisonMap,  // connectivity of f_r^n by induction on r
    JoinLift,       // lift through the intrinsic join for the stable splitting
    LiftRankTwo,    // lift of phi o f_2^n through f_4^n
    LiftRankOne,    // lift of phi o f_2^{n'} through f_3^{n'}, n' = n - r + 2
};

std::string proof_id(ProofName p);
/// Throws InputError on an unknown id.
ProofName proof_from_id(const std::string& id);

/// Parameter names per proof:
///   comparison-map: r, n      join-lift: r, n, m
///   lift-l2: n                lift-l1: r, n
struct ProofParams {
    Bound r = 0;
    Bound n = 0;
    Bound m = 0;
    friend bool operator==(const ProofParams&, const ProofParams&) = default;
};

enum class Relation { Le, Ge, Gt, Eq };

struct ProofStep {
    std::string rule;
    std::string citation;
    std::string instantiation;
    Bound lhs = 0;
    Relation relation = Relation::Eq;
    Bound rhs = 0;
    bool holds = true;

    std::string inequality() const;
};

struct ProofReplay {
    ProofName name{};
    ProofParams params;
    std::vector<ProofStep> steps;
    bool passed = false;
    std::optional<std::size_t> first_failure;
    std::optional<Bound> conclusion;
    bool needs_perfect_field = true;
};

/// Never throws for parameters inside the proof's range; failing inequalities
/// are reported. Throws InputError when the parameters are outside it.
ProofReplay replay_proof(ProofName name, const ProofParams& params);

/// Rechecks every recorded relation and compares with a fresh replay.
bool verify_replay(const ProofReplay& r);

json expr_to_json(const ConnExpr& e);
ConnExpr expr_from_json(const json& j);
json fact_to_json(const ConnFact& f);
json replay_to_json(const ProofReplay& r);
ProofReplay replay_from_json(const json& j);
json bound_to_json(Bound b);
Bound bound_from_json(const json& j);

}  // namespace stiefel::connectivity
