#pragma once

// Reduced K_0 of truncated projective spaces P^{n-1}_m as the free abelian
// group on mu^m, ..., mu^{n-1}, where mu = [O(1)] - 1, and the Adams
// operations acting on it.

#include <string>
#include <vector>

#include "stiefel/json_codec.hpp"
#include "stiefel/lattice.hpp"

namespace stiefel::ktheory {

using lattice::Integer;
using lattice::IntMatrix;
using lattice::Vector;

class TruncProjKGroup {
public:
    /// Throws InputError unless 1 <= m <= n-1.
    TruncProjKGroup(int n, int m);

    int n() const { return n_; }
    int m() const { return m_; }
    std::size_t rank() const { return static_cast<std::size_t>(n_ - m_); }
    /// Exponents m, m+1, ..., n-1.
    std::vector<int> basis() const;
    bool contains(int exponent) const { return exponent >= m_ && exponent < n_; }
    std::size_t index_of(int exponent) const;

    friend bool operator==(const TruncProjKGroup&, const TruncProjKGroup&) = default;

private:
    int n_;
    int m_;
};

struct KClass {
    TruncProjKGroup owner;
    Vector coefficients;

    const Integer& coefficient(int exponent) const { return coefficients[owner.index_of(exponent)]; }
    std::string to_string() const;
};

/// psi^k(mu^i) = ((1+mu)^k - 1)^i mod mu^n, as a class in K(P^{n-1}_1).
KClass adams_on_monomial(int k, int i, int n);

/// Matrix of psi^k on g, columns indexed by source exponents in ascending
/// order. Lower triangular with k^i on the diagonal.
IntMatrix adams_matrix(int k, const TruncProjKGroup& g);

/// Inclusion K(P^{n-1}_s) -> K(P^{n-1}_t) for t <= s, mu^i -> mu^i.
IntMatrix restriction_matrix(const TruncProjKGroup& source, const TruncProjKGroup& target);

/// {n, m, basis, entries}; the basis labels rows and columns.
json_codec::json matrix_to_json(const TruncProjKGroup& g, const IntMatrix& entries);
json_codec::json class_to_json(const KClass& c);

}  // namespace stiefel::ktheory
