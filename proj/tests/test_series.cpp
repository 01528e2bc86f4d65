#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace corkcalc;

TEST_CASE("derived series of S3 is S3 > A3 > 1") {
    auto s3 = catalog_group("S3");
    DerivedSeries ds = derived_series(s3);
    REQUIRE(ds.solvable);
    REQUIRE(ds.series.subgroups.size() == 3);
    REQUIRE(ds.series.subgroups[0].size() == 6);
    REQUIRE(ds.series.subgroups[1].size() == 3);
    REQUIRE(ds.series.subgroups[2].size() == 1);
    // the middle term is exactly the even permutations (parity oracle)
    for (const auto& v : ds.series.subgroups[1]) REQUIRE(oracles::is_even_permutation(v));
}

TEST_CASE("derived series of an abelian group stops immediately") {
    DerivedSeries ds = derived_series(cyclic_group(6));
    REQUIRE(ds.solvable);
    REQUIRE(ds.series.subgroups.size() == 2);  // Z6 > 1
}

TEST_CASE("A5 is reported perfect") {
    auto a5 = catalog_group("A5");
    DerivedSeries ds = derived_series(a5);
    REQUIRE_FALSE(ds.solvable);
    REQUIRE(ds.stable_subgroup.size() == 60);  // the stable subgroup is all of A5
    REQUIRE_THROWS_WITH(prime_cyclic_series(a5), Catch::Matchers::ContainsSubstring("does not terminate"));
}

TEST_CASE("prime cyclic series quotient orders") {
    SECTION("S3 -> [2, 3]") {
        SubnormalSeries s = prime_cyclic_series(catalog_group("S3"));
        REQUIRE(s.quotient_orders == std::vector<std::uint64_t>{2, 3});
        REQUIRE(s.subgroups[1].size() == 3);
        for (const auto& v : s.subgroups[1]) REQUIRE(oracles::is_even_permutation(v));
    }
    SECTION("Z4 -> [2, 2]") {
        SubnormalSeries s = prime_cyclic_series(cyclic_group(4));
        REQUIRE(s.quotient_orders == std::vector<std::uint64_t>{2, 2});
        // the unique index-2 subgroup of Z4
        REQUIRE(s.subgroups[1].size() == 2);
        REQUIRE(s.subgroups[1][1].as_int() == 2);
    }
    SECTION("Q8 -> [2, 2, 2]") {
        SubnormalSeries s = prime_cyclic_series(catalog_group("Q8"));
        REQUIRE(s.quotient_orders == std::vector<std::uint64_t>{2, 2, 2});
    }
    SECTION("A4 -> [3, 2, 2]") {
        SubnormalSeries s = prime_cyclic_series(catalog_group("A4"));
        REQUIRE(s.quotient_orders == std::vector<std::uint64_t>{3, 2, 2});
    }
    SECTION("S4 -> [2, 3, 2, 2]") {
        SubnormalSeries s = prime_cyclic_series(catalog_group("S4"));
        REQUIRE(s.quotient_orders == std::vector<std::uint64_t>{2, 3, 2, 2});
    }
}

TEST_CASE("series invariants: normality and prime quotients") {
    for (const std::string name : {"S3", "D4", "Q8", "A4", "Z4xZ2", "D6", "S4", "Z12"}) {
        SubnormalSeries s = prime_cyclic_series(catalog_group(name));
        REQUIRE_NOTHROW(verify_series(s));
        for (std::size_t i = 1; i < s.subgroups.size(); ++i) {
            std::uint64_t q = static_cast<std::uint64_t>(s.subgroups[i - 1].size() / s.subgroups[i].size());
            REQUIRE(q == s.quotient_orders[i - 1]);
            REQUIRE(smallest_prime_factor(q) == q);  // prime
            REQUIRE_FALSE(normality_witness(s.subgroups[i - 1], s.subgroups[i]).has_value());
        }
    }
}

TEST_CASE("series is deterministic") {
    auto a = prime_cyclic_series(catalog_group("D4"));
    auto b = prime_cyclic_series(catalog_group("D4"));
    REQUIRE(a.quotient_orders == b.quotient_orders);
    for (std::size_t i = 0; i < a.subgroups.size(); ++i) {
        REQUIRE(a.subgroups[i].size() == b.subgroups[i].size());
        for (std::size_t k = 0; k < a.subgroups[i].size(); ++k)
            REQUIRE(values_equal(a.subgroups[i][k], b.subgroups[i][k]));
    }
}

TEST_CASE("subgroup utilities") {
    auto s3 = catalog_group("S3");
    std::vector<GroupValue> a3 = subgroup_closure(s3, {GroupValue(s3, perm_from_cycles(3, {{1, 2, 3}}))});
    REQUIRE(a3.size() == 3);
    REQUIRE(is_closed_subgroup(a3));
    REQUIRE_FALSE(normality_witness(enumerate_elements(s3), a3).has_value());

    // a non-normal subgroup has a witness
    std::vector<GroupValue> flip = subgroup_closure(s3, {GroupValue(s3, perm_from_cycles(3, {{1, 2}}))});
    REQUIRE(normality_witness(enumerate_elements(s3), flip).has_value());

    QuotientReification q = quotient_by_normal(s3, enumerate_elements(s3), a3);
    REQUIRE(q.table->table_order == 2);
    REQUIRE(values_equal(q.transversal(identity(q.table)), identity(s3)));
}
