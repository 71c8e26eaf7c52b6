#include "stiefel/ktheory.hpp"

#include <sstream>

#include "stiefel/error.hpp"

namespace stiefel::ktheory {

namespace {

/// p*q truncated to degrees < n.
Vector truncated_product(const Vector& p, const Vector& q, std::size_t n) {
    Vector r(n, Integer(0));
    for (std::size_t i = 0; i < p.size() && i < n; ++i) {
        if (sgn(p[i]) == 0) continue;
        for (std::size_t j = 0; j < q.size() && i + j < n; ++j) r[i + j] += p[i] * q[j];
    }
    return r;
}

/// Coefficients of (1+mu)^k - 1 in degrees 0..n-1.
Vector adams_of_generator(int k, std::size_t n) {
    Vector r(n, Integer(0));
    for (std::size_t j = 1; j < n && j <= static_cast<std::size_t>(k); ++j)
        mpz_bin_uiui(r[j].get_mpz_t(), static_cast<unsigned long>(k), j);
    return r;
}

void require_k(int k) {
    if (k < 1) throw InputError("Adams index must be positive, got " + std::to_string(k));
}

}  // namespace

TruncProjKGroup::TruncProjKGroup(int n, int m) : n_(n), m_(m) {
    if (m < 1 || m > n - 1)
        throw InputError("truncation requires 1 <= m <= n-1, got n=" + std::to_string(n) + " m=" + std::to_string(m));
}

std::vector<int> TruncProjKGroup::basis() const {
    std::vector<int> out;
    for (int i = m_; i < n_; ++i) out.push_back(i);
    return out;
}

std::size_t TruncProjKGroup::index_of(int exponent) const {
    if (!contains(exponent)) throw InputError("exponent " + std::to_string(exponent) + " outside basis");
    return static_cast<std::size_t>(exponent - m_);
}

std::string KClass::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t idx = 0; idx < coefficients.size(); ++idx) {
        const Integer& c = coefficients[idx];
        if (sgn(c) == 0) continue;
        if (!first) os << (sgn(c) > 0 ? " + " : " - ");
        else if (sgn(c) < 0) os << "-";
        const Integer mag = abs(c);
        if (mag != 1) os << mag.get_str();
        os << "mu^" << owner.m() + static_cast<int>(idx);
        first = false;
    }
    return first ? "0" : os.str();
}

KClass adams_on_monomial(int k, int i, int n) {
    require_k(k);
    if (i < 1 || i > n - 1)
        throw InputError("exponent must satisfy 1 <= i <= n-1, got i=" + std::to_string(i) + " n=" + std::to_string(n));
    const auto len = static_cast<std::size_t>(n);
    const Vector gen = adams_of_generator(k, len);
    Vector power(len, Integer(0));
    power[0] = 1;
    for (int e = 0; e < i; ++e) power = truncated_product(power, gen, len);
    TruncProjKGroup owner(n, 1);
    return KClass{owner, Vector(power.begin() + 1, power.end())};
}

IntMatrix adams_matrix(int k, const TruncProjKGroup& g) {
    require_k(k);
    const auto len = static_cast<std::size_t>(g.n());
    const Vector gen = adams_of_generator(k, len);
    IntMatrix out(g.rank(), g.rank());
    Vector power(len, Integer(0));
    power[0] = 1;
    for (int i = 1; i < g.n(); ++i) {
        power = truncated_product(power, gen, len);
        if (i < g.m()) continue;
        const std::size_t col = g.index_of(i);
        for (int e = g.m(); e < g.n(); ++e) out(g.index_of(e), col) = power[static_cast<std::size_t>(e)];
    }
    return out;
}

IntMatrix restriction_matrix(const TruncProjKGroup& source, const TruncProjKGroup& target) {
    if (source.n() != target.n()) throw InputError("restriction requires a common ambient n");
    if (target.m() > source.m()) throw InputError("restriction requires t <= s");
    IntMatrix out(target.rank(), source.rank());
    for (int e = source.m(); e < source.n(); ++e) out(target.index_of(e), source.index_of(e)) = 1;
    return out;
}

json_codec::json matrix_to_json(const TruncProjKGroup& g, const IntMatrix& entries) {
    return {{"n", g.n()}, {"m", g.m()}, {"basis", g.basis()}, {"entries", json_codec::encode(entries)}};
}

json_codec::json class_to_json(const KClass& c) {
    return {{"n", c.owner.n()},
            {"m", c.owner.m()},
            {"basis", c.owner.basis()},
            {"coefficients", json_codec::encode(c.coefficients)}};
}

}  // namespace stiefel::ktheory
