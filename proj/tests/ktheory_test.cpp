#include <doctest.h>

#include "oracles.hpp"
#include "stiefel/error.hpp"
#include "stiefel/ktheory.hpp"

using namespace stiefel::ktheory;
using stiefel::test::binomial;
using stiefel::test::poly_mul;

namespace {

/// ((1+mu)^k - 1)^i mod mu^n by naive repeated polynomial multiplication.
Vector oracle_power(int k, int i, int n) {
    Vector one_plus_mu{1, 1};
    Vector g{1};
    for (int e = 0; e < k; ++e) g = poly_mul(g, one_plus_mu, 1000);
    g[0] -= 1;
    Vector p{1};
    for (int e = 0; e < i; ++e) p = poly_mul(p, g, static_cast<std::size_t>(n));
    p.resize(static_cast<std::size_t>(n), Integer(0));
    return p;
}

}  // namespace

TEST_SUITE("ktheory") {

TEST_CASE("group basis and validation") {
    const TruncProjKGroup g(7, 3);
    CHECK(g.rank() == 4);
    CHECK(g.basis() == std::vector<int>{3, 4, 5, 6});
    CHECK_THROWS_AS(TruncProjKGroup(5, 0), stiefel::InputError);
    CHECK_THROWS_AS(TruncProjKGroup(5, 5), stiefel::InputError);
}

TEST_CASE("psi^2(mu) = mu^2 + 2mu") {
    for (int n = 3; n <= 8; ++n) {
        const auto c = adams_on_monomial(2, 1, n);
        CHECK(c.coefficient(1) == 2);
        CHECK(c.coefficient(2) == 1);
        for (int e = 3; e < n; ++e) CHECK(c.coefficient(e) == 0);
    }
}

TEST_CASE("psi^1 is the identity on monomials") {
    const auto c = adams_on_monomial(1, 5, 9);
    for (int e = 1; e < 9; ++e) CHECK(c.coefficient(e) == (e == 5 ? 1 : 0));
}

TEST_CASE("psi^3(mu) with n=5") {
    const auto c = adams_on_monomial(3, 1, 5);
    CHECK(c.coefficients == Vector{3, 3, 1, 0});
}

TEST_CASE("psi^2(mu^3) with n=5 truncates") {
    const auto c = adams_on_monomial(2, 3, 5);
    CHECK(c.coefficients == Vector{0, 0, 8, 12});
    CHECK(c.to_string() == "8mu^3 + 12mu^4");
}

TEST_CASE("monomial input validation") {
    CHECK_THROWS_AS(adams_on_monomial(2, 0, 5), stiefel::InputError);
    CHECK_THROWS_AS(adams_on_monomial(2, 5, 5), stiefel::InputError);
    CHECK_THROWS_AS(adams_on_monomial(0, 1, 5), stiefel::InputError);
}

TEST_CASE("monomials match the polynomial oracle") {
    for (int k = 1; k <= 5; ++k)
        for (int n = 2; n <= 14; ++n)
            for (int i = 1; i < n; ++i) {
                const Vector expect = oracle_power(k, i, n);
                CHECK(adams_on_monomial(k, i, n).coefficients == Vector(expect.begin() + 1, expect.end()));
            }
}

TEST_CASE("k=2 coefficients follow the binomial formula") {
    for (int n = 2; n <= 30; ++n)
        for (int i = 1; i < n; ++i) {
            const auto c = adams_on_monomial(2, i, n);
            for (int e = 1; e < n; ++e) {
                const int j = e - i;
                Integer expect = 0;
                if (j >= 0 && j <= i) {
                    Integer two_pow;
                    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(i - j));
                    expect = binomial(i, j) * two_pow;
                }
                CHECK(c.coefficient(e) == expect);
            }
        }
}

TEST_CASE("adams matrix examples") {
    CHECK(adams_matrix(1, TruncProjKGroup(9, 2)).is_identity());
    CHECK(adams_matrix(2, TruncProjKGroup(5, 3)) == IntMatrix::from_rows({{8, 0}, {12, 16}}));
}

TEST_CASE("adams matrix is lower triangular with k^i on the diagonal") {
    for (int k = 1; k <= 5; ++k)
        for (int n = 2; n <= 16; ++n)
            for (int m = 1; m < n; ++m) {
                const TruncProjKGroup g(n, m);
                const IntMatrix a = adams_matrix(k, g);
                for (int row = m; row < n; ++row)
                    for (int col = m; col < n; ++col) {
                        const Integer& x = a(g.index_of(row), g.index_of(col));
                        if (row < col) CHECK(sgn(x) == 0);
                        if (row == col) {
                            Integer kp;
                            mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(row));
                            CHECK(x == kp);
                        }
                    }
            }
}

TEST_CASE("composition law psi^a psi^b = psi^ab") {
    for (int n = 2; n <= 20; ++n)
        for (int m = 1; m < n; ++m) {
            const TruncProjKGroup g(n, m);
            for (int a = 1; a <= 5; ++a)
                for (int b = 1; b <= 5; ++b)
                    CHECK(adams_matrix(a, g) * adams_matrix(b, g) == adams_matrix(a * b, g));
        }
}

TEST_CASE("restriction matrix") {
    CHECK(restriction_matrix(TruncProjKGroup(6, 2), TruncProjKGroup(6, 2)).is_identity());
    const IntMatrix r = restriction_matrix(TruncProjKGroup(7, 5), TruncProjKGroup(7, 3));
    CHECK(r == IntMatrix::from_rows({{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
    CHECK_THROWS_AS(restriction_matrix(TruncProjKGroup(7, 3), TruncProjKGroup(7, 5)), stiefel::InputError);
    CHECK_THROWS_AS(restriction_matrix(TruncProjKGroup(7, 3), TruncProjKGroup(8, 3)), stiefel::InputError);
}

TEST_CASE("restriction is functorial") {
    for (int n = 3; n <= 12; ++n)
        for (int t = 1; t < n; ++t)
            for (int s = t; s < n; ++s)
                for (int s2 = s; s2 < n; ++s2) {
                    const TruncProjKGroup gt(n, t), gs(n, s), gs2(n, s2);
                    CHECK(restriction_matrix(gs, gt) * restriction_matrix(gs2, gs) == restriction_matrix(gs2, gt));
                }
}

TEST_CASE("adams operations commute with restriction") {
    for (int n = 2; n <= 20; ++n)
        for (int t = 1; t < n; ++t)
            for (int s = t; s < n; ++s) {
                const TruncProjKGroup gs(n, s), gt(n, t);
                const IntMatrix rho = restriction_matrix(gs, gt);
                for (int k = 1; k <= 5; ++k)
                    CHECK(adams_matrix(k, gt) * rho == rho * adams_matrix(k, gs));
            }
}

TEST_CASE("matrix json layout") {
    const TruncProjKGroup g(5, 3);
    const auto j = matrix_to_json(g, adams_matrix(2, g));
    CHECK(j.at("n") == 5);
    CHECK(j.at("m") == 3);
    CHECK(j.at("basis") == stiefel::json_codec::json::array({3, 4}));
    CHECK(j.at("entries") == stiefel::json_codec::json::parse("[[8,0],[12,16]]"));
}

}  // TEST_SUITE
