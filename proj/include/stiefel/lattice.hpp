#pragma once

// Exact integer linear algebra: dense big-integer matrices, Smith normal form,
// and linear Diophantine systems answered with a solution lattice or a
// modular infeasibility certificate.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace stiefel::lattice {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Integer>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;

    /// M·x
    Vector apply(std::span<const Integer> x) const;
    /// yᵀ·M
    Vector apply_left(std::span<const Integer> y) const;

    IntMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    /// Copy of the given columns, in the given order.
    IntMatrix select_columns(std::span<const std::size_t> cols) const;

    std::vector<Vector> to_rows() const;
    std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix scaled(const IntMatrix& m, const Integer& factor);

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | …, dᵢ ≥ 0.
struct SnfDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    /// The nonzero-or-zero diagonal of D, length min(rows, cols).
    Vector diagonal() const;
    std::size_t rank() const;
};

/// Smith normal form by minimal-absolute-value pivoting. Ties are broken by
/// row-major position so U and V are reproducible.
SnfDecomposition smith_normal_form(const IntMatrix& m);

struct Solution {
    Vector particular;
    std::vector<Vector> kernel_basis;
};

/// Proof of unsolvability: y·A ≡ 0 (mod q) entrywise while y·b ≢ 0 (mod q).
struct NoSolution {
    Vector certificate;
    Integer modulus;
};

using DiophantineAnswer = std::variant<Solution, NoSolution>;

/// Solves A·x = b over ℤ. Throws InputError when b does not match A's rows.
DiophantineAnswer solve_diophantine(const IntMatrix& a, std::span<const Integer> b);

bool verify_solution(const IntMatrix& a, std::span<const Integer> b, const Solution& s);
bool verify_certificate(const IntMatrix& a, std::span<const Integer> b, const NoSolution& c);

/// Unique solution of A·x = b over ℚ, or nullopt when the system is
/// inconsistent or A lacks full column rank.
std::optional<std::vector<Rational>> unique_rational_solution(const IntMatrix& a,
                                                              std::span<const Integer> b);

/// True when {x : A₁x = b₁} and {x : A₂x = b₂} coincide as subsets of ℤⁿ.
bool same_integer_solution_set(const IntMatrix& a1, std::span<const Integer> b1,
                               const IntMatrix& a2, std::span<const Integer> b2);

Integer smallest_prime_not_dividing(const Integer& value);

}  // namespace stiefel::lattice

namespace stiefel::lattice {

/// Solves A·x = b when the equations determine every unknown one at a time:
/// repeatedly pick an equation with exactly one undetermined unknown. The
/// order of rows and columns does not matter. Returns nullopt when this
/// elimination stalls; otherwise the answer has an empty kernel basis or is
/// a certificate of the same form as solve_diophantine's.
std::optional<DiophantineAnswer> solve_by_substitution(const IntMatrix& a, std::span<const Integer> b);

/// solve_by_substitution when it applies, solve_diophantine otherwise.
DiophantineAnswer solve_diophantine_structured(const IntMatrix& a, std::span<const Integer> b);

}  // namespace stiefel::lattice
