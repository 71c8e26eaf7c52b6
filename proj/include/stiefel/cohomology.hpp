#pragma once

// Bookkeeping on the (2l-1, l)-lines of the motivic cohomology of Stiefel
// varieties, their joins, and the intrinsic join
//   h : V_r(A^n) * V_r(A^m) -> V_r(A^{n+m}).
//
// Only the unit coefficients of h^* are tracked. Their signs are never
// resolved: every coefficient is expressed through a named sign eps(i, j),
// the sign of h^*(alpha_{i+j}) for the rank-one join V_1(A^i) * V_1(A^j).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stiefel/json_codec.hpp"

namespace stiefel::cohomology {

using json = json_codec::json;

struct Bidegree {
    int p;
    int q;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// H^{*,*}(V_r(A^n)) = M[alpha_{n-r+1}, ..., alpha_n] / relations.
struct StiefelCohPresentation {
    int r = 0;
    int n = 0;
    std::vector<int> generators;
    std::vector<Bidegree> bidegrees;
    std::vector<std::string> relations;  // recorded, never used in computation
};

/// Requires 1 <= r <= n.
StiefelCohPresentation stiefel_presentation(int r, int n);

/// beta_i (x) gamma_j [1]
struct BasisPair {
    int i;
    int j;
    friend bool operator==(const BasisPair&, const BasisPair&) = default;
    friend auto operator<=>(const BasisPair&, const BasisPair&) = default;
};

struct JoinLineBasis {
    int r = 0, n = 0, s = 0, m = 0, ell = 0;
    std::vector<BasisPair> pairs;  // ascending in i

    Bidegree bidegree() const { return {2 * ell - 1, ell}; }
    friend bool operator==(const JoinLineBasis&, const JoinLineBasis&) = default;
};

/// Basis of the (2l-1, l)-line of V_r(A^n) * V_s(A^m). Requires 1 <= r <= n, 1 <= s <= m.
JoinLineBasis join_line_basis(int r, int n, int s, int m, int ell);

/// eps(i, j)
struct SignSymbol {
    int i;
    int j;
    std::string to_string() const;
    friend bool operator==(const SignSymbol&, const SignSymbol&) = default;
};

/// Coefficients per basis pair; nullopt is zero, otherwise a unit with the given sign.
struct LineElement {
    JoinLineBasis basis;
    std::vector<std::optional<SignSymbol>> coefficients;

    bool all_units() const;
    std::string to_string() const;
    friend bool operator==(const LineElement&, const LineElement&) = default;
};

struct DerivedCoefficient {
    int r, n, m, ell;
    BasisPair pair;
    friend bool operator==(const DerivedCoefficient&, const DerivedCoefficient&) = default;
};

/// One inference in a coefficient derivation. `fixes` is determined from
/// `from` (empty for the generator case) by the rule.
struct DerivationStep {
    int index = 0;
    std::string rule;
    std::string citation;
    DerivedCoefficient fixes{};
    std::optional<DerivedCoefficient> from;
    SignSymbol value{0, 0};
    bool holds = true;  // index-set checks record their outcome here
    std::string detail;
};

struct JoinCoefficients {
    int r = 0, n = 0, m = 0;
    std::map<int, LineElement> lines;  // keyed by l in [n+m-r+1, n+m]
    std::vector<DerivationStep> trace;
};

/// h^*(alpha_l) on join_line_basis(r, n, r, m, l). Requires m even,
/// 1 <= r <= min(n, m), n+m-r+1 <= l <= n+m.
LineElement intrinsic_join_pullback(int r, int n, int m, int ell);

/// All lines of h^* with the derivation of every coefficient. Requires m even
/// and 1 <= r <= min(n, m).
JoinCoefficients derive_join_coefficients(int r, int n, int m);

/// Pullback along i * id : V_{r-1}(A^{n-1}) * V_r(A^m) -> V_r(A^n) * V_r(A^m)
/// followed by the identification with the lines of V_{r-1}(A^{n-1}) * V_{r-1}(A^m).
std::map<int, LineElement> restrict_to_lower_rank(const JoinCoefficients& c);

/// Replays every step of a derivation against the rules. True when every
/// step is consistent and every line coefficient is backed by a chain ending
/// in a generator step.
bool replay_derivation(const JoinCoefficients& c);

struct ChaseLine {
    int ell = 0;
    int source_rank = 0;
    int target_rank = 0;
    bool rank_match = false;
    std::optional<BasisPair> surviving_pair;
    std::optional<SignSymbol> composite;  // unit coefficient relative to the line generators
};

struct SplittingReport {
    int r = 0, n = 0, m = 0;
    int cohomological_dimension = 0;  // rn + m
    int map_connectivity = 0;         // 2(n+m-r) - 1
    bool lift_exists = false;
    bool target_simply_connected = false;
    std::vector<ChaseLine> lines;
    bool success = false;
    std::optional<int> failing_line;
};

/// Requires m even, 1 <= r <= n, and m >= rn + 2(r-n).
SplittingReport splitting_chase(int r, int n, int m);

json presentation_to_json(const StiefelCohPresentation& p);
json line_to_json(const LineElement& e);
json trace_to_json(const std::vector<DerivationStep>& trace);
json coefficients_to_json(const JoinCoefficients& c);
json splitting_to_json(const SplittingReport& r);

}  // namespace stiefel::cohomology
