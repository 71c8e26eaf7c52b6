#pragma once

// Adams-equivariant retracts of restriction maps between truncated projective
// K-groups. A retract is a matrix phi : K(P^{n-1}_t) -> K(P^{n-1}_s) with
// phi * rho = id and phi * psi^k_t = psi^k_s * phi for each k in ks.
//
// phi is stored with rows indexed by exponents s..n-1 and columns by
// exponents t..n-1, both ascending.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stiefel/json_codec.hpp"
#include "stiefel/lattice.hpp"

namespace stiefel::retract {

using lattice::Integer;
using lattice::IntMatrix;
using lattice::Rational;
using lattice::Vector;

struct RetractProblem {
    int n = 0;
    int s = 0;
    int t = 0;
    std::vector<int> ks;  // sorted, distinct, each >= 2

    /// Validates 1 <= t <= s <= n-1 and k >= 2, and normalises ks.
    static RetractProblem make(int n, int s, int t, std::vector<int> ks);

    friend bool operator==(const RetractProblem&, const RetractProblem&) = default;
};

/// Position of one unknown of the linear system inside phi.
struct UnknownEntry {
    int row_exponent;
    int col_exponent;
};

/// Which matrix identity an equation row came from. k = 0 marks an entry of
/// phi * rho = id; otherwise it is the (row, col) entry of
/// phi * psi^k - psi^k * phi = 0.
struct EquationOrigin {
    int k;
    int row_exponent;
    int col_exponent;
};

struct LinearSystem {
    IntMatrix a;
    Vector b;
    std::vector<UnknownEntry> unknowns;
    std::vector<EquationOrigin> equations;

    std::string describe_layout() const;
};

/// Equations in the free entries only: columns t..s-1 of phi. The entries in
/// columns s..n-1 are fixed to the identity by phi * rho = id and substituted
/// before assembly; rows that become 0 = 0 are dropped.
LinearSystem build_system(const RetractProblem& p);

/// Equations in every entry of phi, the retraction rows first.
LinearSystem build_full_system(const RetractProblem& p);

/// Full phi from values of the free entries of build_system.
IntMatrix assemble_retract(const RetractProblem& p, std::span<const Integer> free_values);

struct Exists {
    IntMatrix witness;
};

/// The certificate refers to build_system(problem).
struct Impossible {
    lattice::NoSolution certificate;
};

struct RetractVerdict {
    RetractProblem problem;
    std::variant<Exists, Impossible> outcome;

    bool exists() const { return std::holds_alternative<Exists>(outcome); }
};

/// Throws VerificationFailure if the produced witness or certificate does not check.
RetractVerdict decide_retract(const RetractProblem& p);

/// Checks phi * rho = id and the commutation relations by direct multiplication.
bool verify_witness(const RetractProblem& p, const IntMatrix& phi);
bool verify_verdict(const RetractVerdict& v);

/// Closed-form values of the free entries for the shapes (n, n-2, n-3) and
/// (n, n-2, n-4) with ks = {2}:
///   c = phi[n-2][n-3], d = phi[n-1][n-3], a = phi[n-2][n-4].
struct ClosedForm {
    int n = 0;
    Rational c, a, d;
    bool c_integral = false;
    bool a_integral = false;
    bool d_integral = false;
    bool parity_condition = false;  // n odd
    bool mod24_condition = false;   // n = 3 mod 24

    /// Whether the (n, n-2, n-3, {2}) system has an integer solution.
    bool retract_possible() const { return c_integral && d_integral; }
};

/// Requires n >= 4.
ClosedForm closed_form_constraints(int n);

/// Whether replacing psi^k by k*psi^k leaves the integer solution set unchanged.
bool scaled_equivariance_equivalence(const RetractProblem& p, int k);

json_codec::json problem_to_json(const RetractProblem& p);
RetractProblem problem_from_json(const json_codec::json& j);
json_codec::json to_json(const RetractVerdict& v);
RetractVerdict verdict_from_json(const json_codec::json& j);
json_codec::json closed_form_to_json(const ClosedForm& f);

}  // namespace stiefel::retract
