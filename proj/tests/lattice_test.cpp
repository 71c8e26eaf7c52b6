#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "stiefel/error.hpp"
#include "stiefel/lattice.hpp"

using namespace stiefel::lattice;
using stiefel::test::bareiss_determinant;
using stiefel::test::determinantal_divisors;
using stiefel::test::random_matrix;

namespace {

void check_snf_invariants(const IntMatrix& m, const SnfDecomposition& snf) {
    REQUIRE(snf.u * m * snf.v == snf.d);
    for (std::size_t i = 0; i < snf.d.rows(); ++i)
        for (std::size_t j = 0; j < snf.d.cols(); ++j)
            if (i != j) REQUIRE(sgn(snf.d(i, j)) == 0);
    const Vector diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        REQUIRE(sgn(diag[i]) >= 0);
        if (i + 1 < diag.size()) {
            if (sgn(diag[i]) == 0)
                REQUIRE(sgn(diag[i + 1]) == 0);
            else
                REQUIRE(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
        }
    }
    REQUIRE(abs(bareiss_determinant(snf.u)) == 1);
    REQUIRE(abs(bareiss_determinant(snf.v)) == 1);
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("snf of the identity is trivial") {
    const auto snf = smith_normal_form(IntMatrix::identity(3));
    CHECK(snf.u.is_identity());
    CHECK(snf.d.is_identity());
    CHECK(snf.v.is_identity());
}

TEST_CASE("snf of [[2,4],[6,8]] is diag(2,4)") {
    const auto m = IntMatrix::from_rows({{2, 4}, {6, 8}});
    const auto snf = smith_normal_form(m);
    CHECK(snf.d == IntMatrix::from_rows({{2, 0}, {0, 4}}));
    check_snf_invariants(m, snf);
}

TEST_CASE("snf of the zero 1x1 matrix") {
    const auto snf = smith_normal_form(IntMatrix::from_rows({{0}}));
    CHECK(snf.d == IntMatrix::from_rows({{0}}));
}

TEST_CASE("snf rejects empty matrices") {
    CHECK_THROWS_AS(smith_normal_form(IntMatrix(0, 3)), stiefel::InputError);
}

TEST_CASE("snf diagonal matches determinantal divisors on small random matrices") {
    const std::uint64_t seed = 20261015;
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        const IntMatrix m = random_matrix(rng, rows, cols, 12);
        const auto snf = smith_normal_form(m);
        check_snf_invariants(m, snf);
        // d₁⋯d_k equals the gcd of all k×k minors.
        const Vector dk = determinantal_divisors(m);
        Integer prefix = 1;
        const Vector diag = snf.diagonal();
        for (std::size_t k = 0; k < diag.size(); ++k) {
            prefix *= diag[k];
            CHECK(prefix == dk[k]);
        }
    }
}

TEST_CASE("snf invariants on large random matrices") {
    const std::uint64_t seed = 7;
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
        {40, 40}, {40, 25}, {25, 40}, {12, 30}, {30, 12}, {1, 40}, {40, 1}};
    for (auto [rows, cols] : shapes) {
        const IntMatrix m = random_matrix(rng, rows, cols, 1'000'000);
        check_snf_invariants(m, smith_normal_form(m));
    }
    // Rank-deficient: product of thin factors.
    const IntMatrix low = random_matrix(rng, 30, 5, 1000) * random_matrix(rng, 5, 30, 1000);
    const auto snf = smith_normal_form(low);
    check_snf_invariants(low, snf);
    CHECK(snf.rank() == 5);
}

TEST_CASE("snf is deterministic") {
    std::mt19937_64 rng(99);
    const IntMatrix m = random_matrix(rng, 9, 7, 50);
    const auto a = smith_normal_form(m);
    const auto b = smith_normal_form(m);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
}

TEST_CASE("diophantine examples") {
    SUBCASE("[[2]] x = [4]") {
        const auto ans = solve_diophantine(IntMatrix::from_rows({{2}}), Vector{4});
        const auto* s = std::get_if<Solution>(&ans);
        REQUIRE(s);
        CHECK(s->particular == Vector{2});
        CHECK(s->kernel_basis.empty());
    }
    SUBCASE("[[2]] x = [3] is a parity obstruction") {
        const auto ans = solve_diophantine(IntMatrix::from_rows({{2}}), Vector{3});
        const auto* c = std::get_if<NoSolution>(&ans);
        REQUIRE(c);
        CHECK(c->certificate == Vector{1});
        CHECK(c->modulus == 2);
    }
    SUBCASE("[[1,0],[0,0]] x = [5,0]") {
        const auto a = IntMatrix::from_rows({{1, 0}, {0, 0}});
        const auto ans = solve_diophantine(a, Vector{5, 0});
        const auto* s = std::get_if<Solution>(&ans);
        REQUIRE(s);
        CHECK(s->particular == Vector{5, 0});
        REQUIRE(s->kernel_basis.size() == 1);
        CHECK(s->kernel_basis[0] == Vector{0, 1});
    }
    SUBCASE("zero row with nonzero target uses the smallest prime not dividing it") {
        const auto a = IntMatrix::from_rows({{1, 0}, {0, 0}});
        const auto ans = solve_diophantine(a, Vector{5, 6});
        const auto* c = std::get_if<NoSolution>(&ans);
        REQUIRE(c);
        CHECK(c->modulus == 5);
        CHECK(verify_certificate(a, Vector{5, 6}, *c));
    }
}

TEST_CASE("diophantine dimension mismatch is an input error") {
    CHECK_THROWS_AS(solve_diophantine(IntMatrix::from_rows({{1, 2}}), Vector{1, 2}), stiefel::InputError);
}

TEST_CASE("diophantine degenerate shapes") {
    const auto no_rows = solve_diophantine(IntMatrix(0, 2), Vector{});
    REQUIRE(std::holds_alternative<Solution>(no_rows));
    CHECK(std::get<Solution>(no_rows).kernel_basis.size() == 2);

    const auto no_cols_ok = solve_diophantine(IntMatrix(2, 0), Vector{0, 0});
    CHECK(std::holds_alternative<Solution>(no_cols_ok));

    const auto no_cols_bad = solve_diophantine(IntMatrix(2, 0), Vector{0, 4});
    REQUIRE(std::holds_alternative<NoSolution>(no_cols_bad));
    CHECK(std::get<NoSolution>(no_cols_bad).modulus == 3);
}

TEST_CASE("diophantine answers always verify") {
    const std::uint64_t seed = 4242;
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        const IntMatrix a = random_matrix(rng, rows, cols, 9);
        Vector b(rows);
        for (auto& x : b) x = static_cast<long>(rng() % 41) - 20;
        const auto ans = solve_diophantine(a, b);
        if (const auto* s = std::get_if<Solution>(&ans)) {
            CHECK(verify_solution(a, b, *s));
            // Kernel basis spans a lattice of the right rank.
            CHECK(s->kernel_basis.size() == cols - smith_normal_form(a).rank());
        } else {
            CHECK(verify_certificate(a, b, std::get<NoSolution>(ans)));
        }
    }
}

TEST_CASE("diophantine agrees with exhaustive search on 3x3 systems") {
    const std::uint64_t seed = 314159;
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    int solvable = 0, unsolvable = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const IntMatrix a = random_matrix(rng, 3, 3, 6);
        Vector b(3);
        if (trial % 2 == 0) {
            // Plant a solution inside the box.
            Vector x0(3);
            for (auto& x : x0) x = static_cast<long>(rng() % 41) - 20;
            b = a.apply(x0);
        } else {
            for (auto& x : b) x = static_cast<long>(rng() % 61) - 30;
        }
        const auto box = stiefel::test::box_solutions(a, b, 20);
        const auto ans = solve_diophantine(a, b);
        if (const auto* s = std::get_if<Solution>(&ans)) {
            ++solvable;
            CHECK(verify_solution(a, b, *s));
            if (s->kernel_basis.empty()) {
                CHECK(box.size() <= 1);
                if (!box.empty()) CHECK(box.front() == s->particular);
            }
        } else {
            ++unsolvable;
            CHECK(box.empty());
            CHECK(verify_certificate(a, b, std::get<NoSolution>(ans)));
        }
    }
    CHECK(solvable > 0);
    CHECK(unsolvable > 0);
}

TEST_CASE("unique rational solution") {
    const auto a = IntMatrix::from_rows({{2, 0}, {1, 3}});
    const auto x = unique_rational_solution(a, Vector{1, 2});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(1, 2));
    CHECK((*x)[1] == Rational(1, 2));
    CHECK_FALSE(unique_rational_solution(IntMatrix::from_rows({{1, 1}}), Vector{1}));
    CHECK_FALSE(unique_rational_solution(IntMatrix::from_rows({{1}, {1}}), Vector{1, 2}));
}

TEST_CASE("solution-set equality survives row scaling") {
    const auto a = IntMatrix::from_rows({{2, 4, 1}, {0, 3, 3}});
    const Vector b{5, 3};
    CHECK(same_integer_solution_set(a, b, scaled(a, 7), Vector{35, 21}));
    CHECK_FALSE(same_integer_solution_set(a, b, IntMatrix::from_rows({{2, 4, 1}, {0, 3, 3}, {1, 0, 0}}),
                                          Vector{5, 3, 0}));
}

TEST_CASE("substitution solver agrees with the SNF solver on shuffled triangular systems") {
    const std::uint64_t seed = 8128;
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    int solvable = 0, unsolvable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6, extra = rng() % 3;
        IntMatrix tri(n + extra, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) tri(i, j) = static_cast<long>(rng() % 9) - 4;
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(tri(i, i)) == 0) tri(i, i) = 1 + static_cast<long>(rng() % 4);
        for (std::size_t i = n; i < n + extra; ++i)
            for (std::size_t j = 0; j < n; ++j) tri(i, j) = static_cast<long>(rng() % 5) - 2;
        std::vector<std::size_t> rp(n + extra), cp(n);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        IntMatrix a(n + extra, n);
        for (std::size_t i = 0; i < n + extra; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = tri(rp[i], cp[j]);
        Vector b(n + extra);
        if (trial % 3 == 0) {
            Vector x0(n);
            for (auto& v : x0) v = static_cast<long>(rng() % 21) - 10;
            b = a.apply(x0);
        } else {
            for (auto& v : b) v = static_cast<long>(rng() % 21) - 10;
        }
        const auto fast = solve_by_substitution(a, b);
        REQUIRE(fast.has_value());
        const auto slow = solve_diophantine(a, b);
        REQUIRE(fast->index() == slow.index());
        if (const auto* s = std::get_if<Solution>(&*fast)) {
            ++solvable;
            CHECK(verify_solution(a, b, *s));
            CHECK(s->particular == std::get<Solution>(slow).particular);
        } else {
            ++unsolvable;
            CHECK(verify_certificate(a, b, std::get<NoSolution>(*fast)));
        }
    }
    CHECK(solvable > 0);
    CHECK(unsolvable > 0);
}

TEST_CASE("substitution solver declines systems it cannot peel") {
    CHECK_FALSE(solve_by_substitution(IntMatrix::from_rows({{1, 1}, {1, -1}}), Vector{2, 0}).has_value());
    CHECK_FALSE(solve_by_substitution(IntMatrix(0, 2), Vector{}).has_value());
    const auto a = IntMatrix::from_rows({{1, 1}, {1, -1}});
    CHECK(std::holds_alternative<Solution>(solve_diophantine_structured(a, Vector{2, 0})));
}

}  // TEST_SUITE
