#include <doctest.h>

#include <vector>

#include "stiefel/cohomology.hpp"
#include "stiefel/error.hpp"

using namespace stiefel::cohomology;

namespace {

/// Every (i, j) in I x J with i + j = l, by scanning the full product.
std::vector<BasisPair> brute_pairs(int r, int n, int s, int m, int ell) {
    std::vector<BasisPair> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j)
            if (i >= n - r + 1 && j >= m - s + 1 && i + j == ell) out.push_back({i, j});
    return out;
}

}  // namespace

TEST_SUITE("cohomology") {

TEST_CASE("presentation generators and bidegrees") {
    const auto p = stiefel_presentation(3, 7);
    CHECK(p.generators == std::vector<int>{5, 6, 7});
    CHECK(p.bidegrees[0] == Bidegree{9, 5});
    CHECK(p.bidegrees[2] == Bidegree{13, 7});
    CHECK(stiefel_presentation(4, 4).relations.size() == 2);  // alpha_1, alpha_2
    CHECK_THROWS_AS(stiefel_presentation(5, 4), stiefel::InputError);
}

TEST_CASE("join line basis examples") {
    CHECK(join_line_basis(2, 4, 2, 6, 9).pairs == std::vector<BasisPair>{{3, 6}, {4, 5}});
    CHECK(join_line_basis(1, 5, 1, 8, 13).pairs == std::vector<BasisPair>{{5, 8}});
    CHECK(join_line_basis(2, 4, 2, 6, 12).pairs.empty());
    CHECK(join_line_basis(2, 4, 2, 6, 9).bidegree() == Bidegree{17, 9});
}

TEST_CASE("join line basis matches brute-force enumeration") {
    for (int r = 1; r <= 5; ++r)
        for (int n = r; n <= 9; ++n)
            for (int s = 1; s <= 5; ++s)
                for (int m = s; m <= 9; ++m)
                    for (int ell = 0; ell <= n + m + 1; ++ell) {
                        const auto b = join_line_basis(r, n, s, m, ell);
                        CHECK(b.pairs == brute_pairs(r, n, s, m, ell));
                        CHECK(b.pairs.size() <= static_cast<std::size_t>(std::min(r, s)));
                    }
}

TEST_CASE("pullback on the top line is a single generator") {
    const auto e = intrinsic_join_pullback(3, 5, 6, 11);
    REQUIRE(e.basis.pairs.size() == 1);
    CHECK(e.basis.pairs[0] == BasisPair{5, 6});
    CHECK(e.all_units());
}

TEST_CASE("pullback example with two terms") {
    const auto e = intrinsic_join_pullback(2, 5, 6, 10);
    CHECK(e.basis.pairs == std::vector<BasisPair>{{4, 6}, {5, 5}});
    CHECK(e.all_units());
    CHECK(e.coefficients[0] == SignSymbol{4, 6});
    CHECK(e.coefficients[1] == SignSymbol{5, 5});
}

TEST_CASE("rank one lines are singletons") {
    for (int n = 1; n <= 6; ++n)
        for (int m = 2; m <= 10; m += 2) {
            const auto e = intrinsic_join_pullback(1, n, m, n + m);
            CHECK(e.basis.pairs.size() == 1);
            CHECK(e.all_units());
        }
}

TEST_CASE("pullback preconditions") {
    CHECK_THROWS_AS(intrinsic_join_pullback(2, 5, 7, 11), stiefel::InputError);
    CHECK_THROWS_AS(intrinsic_join_pullback(2, 5, 6, 9), stiefel::InputError);
    CHECK_THROWS_AS(intrinsic_join_pullback(2, 5, 6, 12), stiefel::InputError);
    CHECK_THROWS_AS(derive_join_coefficients(3, 2, 6), stiefel::InputError);
}

TEST_CASE("derived coefficients are units and replay") {
    for (int r = 1; r <= 4; ++r)
        for (int n = r; n <= 8; ++n)
            for (int m = 2; m <= 40; m += 2) {
                if (m < r) continue;
                const auto c = derive_join_coefficients(r, n, m);
                CHECK(c.lines.size() == static_cast<std::size_t>(r));
                for (const auto& [ell, e] : c.lines) {
                    CHECK(e.all_units());
                    CHECK(e.basis.pairs == brute_pairs(r, n, r, m, ell));
                    // Each coefficient is the sign of the matching rank-one generator.
                    for (std::size_t k = 0; k < e.basis.pairs.size(); ++k)
                        CHECK(*e.coefficients[k] == SignSymbol{e.basis.pairs[k].i, e.basis.pairs[k].j});
                }
                CHECK(replay_derivation(c));
            }
}

TEST_CASE("the base case at r = 1 is a single generator step per line") {
    const auto c = derive_join_coefficients(1, 4, 6);
    REQUIRE(c.trace.size() == 1);
    CHECK(c.trace[0].rule == "generator");
}

TEST_CASE("index sets agree below the top line") {
    const auto c = derive_join_coefficients(3, 6, 8);
    int checks = 0;
    for (const auto& s : c.trace)
        if (s.rule.rfind("index-set-equality", 0) == 0) {
            ++checks;
            CHECK(s.holds);
            CHECK(s.fixes.ell < s.fixes.n + s.fixes.m);
        }
    CHECK(checks > 0);
}

TEST_CASE("restriction to lower rank matches the independent lower-rank derivation") {
    for (int r = 2; r <= 4; ++r)
        for (int n = r; n <= 8; ++n)
            for (int m = 2; m <= 20; m += 2) {
                if (m < r) continue;
                const auto restricted = restrict_to_lower_rank(derive_join_coefficients(r, n, m));
                const auto lower = derive_join_coefficients(r - 1, n - 1 >= r - 1 ? n - 1 : r - 1, m);
                if (n - 1 < r - 1) continue;
                for (const auto& [ell, e] : restricted) {
                    REQUIRE(lower.lines.count(ell));
                    CHECK(e == lower.lines.at(ell));
                }
            }
}

TEST_CASE("tampered derivations fail replay") {
    auto c = derive_join_coefficients(3, 5, 6);
    REQUIRE(replay_derivation(c));
    SUBCASE("wrong sign on a line") {
        c.lines.begin()->second.coefficients[0] = SignSymbol{1, 1};
        CHECK_FALSE(replay_derivation(c));
    }
    SUBCASE("wrong value in a step") {
        for (auto& s : c.trace)
            if (s.rule == "source-inclusion-pullback") {
                s.value = SignSymbol{0, 1};
                break;
            }
        CHECK_FALSE(replay_derivation(c));
    }
    SUBCASE("missing index check") {
        for (auto it = c.trace.begin(); it != c.trace.end(); ++it)
            if (it->rule.rfind("index-set-equality", 0) == 0) {
                c.trace.erase(it);
                break;
            }
        for (std::size_t k = 0; k < c.trace.size(); ++k) c.trace[k].index = static_cast<int>(k);
        CHECK_FALSE(replay_derivation(c));
    }
}

TEST_CASE("splitting chase example r=2 n=5 m=6") {
    const auto rep = splitting_chase(2, 5, 6);
    CHECK(rep.success);
    CHECK(rep.lift_exists);
    int rank_one = 0;
    for (const auto& l : rep.lines) {
        CHECK(l.rank_match);
        if (l.target_rank == 1) {
            ++rank_one;
            REQUIRE(l.surviving_pair);
            CHECK(*l.surviving_pair == BasisPair{l.ell - 6, 6});
            CHECK(l.composite == SignSymbol{l.ell - 6, 6});
        } else {
            CHECK(l.source_rank == 0);
        }
    }
    CHECK(rank_one == 2);
}

TEST_CASE("splitting chase succeeds across the admissible range") {
    for (int r = 1; r <= 4; ++r)
        for (int n = r; n <= 8; ++n)
            for (int m = 2; m <= 40; m += 2) {
                if (m < r * n + 2 * (r - n) || m < r) continue;
                const auto rep = splitting_chase(r, n, m);
                CHECK(rep.success);
                CHECK_FALSE(rep.failing_line.has_value());
                CHECK(rep.lines.size() == static_cast<std::size_t>(n + m + 1));
            }
}

TEST_CASE("splitting chase preconditions") {
    CHECK_THROWS_AS(splitting_chase(2, 5, 5), stiefel::InputError);
    CHECK_THROWS_AS(splitting_chase(3, 8, 10), stiefel::InputError);  // needs m >= 14
}

TEST_CASE("trace json layout") {
    const auto j = trace_to_json(derive_join_coefficients(2, 4, 6).trace);
    REQUIRE(j.is_array());
    for (const auto& s : j) {
        CHECK(s.contains("step"));
        CHECK(s.contains("rule"));
        CHECK(s.contains("citation"));
        CHECK(s.contains("coefficients"));
    }
}

}  // TEST_SUITE
