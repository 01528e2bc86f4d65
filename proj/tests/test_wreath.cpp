#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace corkcalc;

TEST_CASE("wreath shift") {
    auto z2 = cyclic_group(2);
    auto w2 = wreath_product(z2, z2);
    GroupValue a0 = cyclic_value(z2, 0), a1 = cyclic_value(z2, 1);

    // top Z2, g=1: (a0,a1) -> (a1,a0)
    auto shifted = wreath_shift(w2, cyclic_value(z2, 1), {a0, a1});
    REQUIRE(values_equal(shifted[0], a1));
    REQUIRE(values_equal(shifted[1], a0));
    // identity shift
    auto same = wreath_shift(w2, cyclic_value(z2, 0), {a0, a1});
    REQUIRE(values_equal(same[0], a0));
    REQUIRE(values_equal(same[1], a1));

    // top Z3, g=1: (a0,a1,a2) -> (a2,a0,a1)
    auto z3 = cyclic_group(3);
    auto w3 = wreath_product(z3, z3);
    GroupValue b0 = cyclic_value(z3, 0), b1 = cyclic_value(z3, 1), b2 = cyclic_value(z3, 2);
    auto s3 = wreath_shift(w3, cyclic_value(z3, 1), {b0, b1, b2});
    REQUIRE(values_equal(s3[0], b2));
    REQUIRE(values_equal(s3[1], b0));
    REQUIRE(values_equal(s3[2], b1));
}

TEST_CASE("shift law: g(hF) = (gh)F for small finite tops") {
    for (const std::string top_name : {"Z2", "Z3", "Z4", "S3", "Z12"}) {
        auto top = catalog_group(top_name);
        auto w = wreath_product(cyclic_group(3), top);
        std::vector<GroupValue> tops = enumerate_elements(top);
        // a non-constant base map to shift around
        std::vector<GroupValue> f;
        for (std::size_t i = 0; i < tops.size(); ++i)
            f.push_back(cyclic_value(w->wreath_base, BigInt(i % 3)));
        for (const auto& g : tops)
            for (const auto& h : tops) {
                auto lhs = wreath_shift(w, g, wreath_shift(w, h, f));
                auto rhs = wreath_shift(w, multiply(g, h), f);
                for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(values_equal(lhs[i], rhs[i]));
            }
    }
}

TEST_CASE("wreath multiplication worked example in Z2 wr Z2") {
    auto z2 = cyclic_group(2);
    auto w = wreath_product(z2, z2);
    auto mk = [&](int f0, int f1, int t) {
        return wreath_value(w, {cyclic_value(z2, f0), cyclic_value(z2, f1)}, cyclic_value(z2, t));
    };
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        int a0 = bit(rng), a1 = bit(rng), b0 = bit(rng), b1 = bit(rng);
        GroupValue prod = multiply(mk(a0, a1, 1), mk(b0, b1, 1));
        // ((a0,a1),1)((b0,b1),1) = ((a0+b1, a1+b0), 0)
        REQUIRE(values_equal(prod, mk((a0 + b1) % 2, (a1 + b0) % 2, 0)));
    }
    // identity law
    GroupValue x = mk(1, 0, 1);
    REQUIRE(values_equal(multiply(x, identity(w)), x));
    REQUIRE(values_equal(multiply(identity(w), x), x));
}

TEST_CASE("Z2 wr Z2 is the dihedral group of order 8") {
    auto w = wreath_product(cyclic_group(2), cyclic_group(2));
    REQUIRE(*group_order(w) == 8);
    REQUIRE(oracles::order_multiset(w) == oracles::order_multiset(catalog_group("D4")));
}

TEST_CASE("inverses in Z3 wr S3") {
    auto w = wreath_product(cyclic_group(3), catalog_group("S3"));
    std::vector<GroupValue> tops = enumerate_elements(w->wreath_top);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<std::size_t> tpick(0, tops.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<GroupValue> f;
        for (std::size_t i = 0; i < tops.size(); ++i) f.push_back(cyclic_value(w->wreath_base, pick(rng)));
        GroupValue x = wreath_value(w, std::move(f), tops[tpick(rng)]);
        REQUIRE(is_identity(multiply(x, inverse(x))));
        REQUIRE(is_identity(multiply(inverse(x), x)));
    }
}

TEST_CASE("wreath sizes |N|^|H| |H|") {
    for (int nb : {2, 3, 4})
        for (int nt : {2, 3, 4}) {
            auto w = wreath_product(cyclic_group(static_cast<std::uint64_t>(nb)),
                                    cyclic_group(static_cast<std::uint64_t>(nt)));
            BigInt expect = 1;
            for (int i = 0; i < nt; ++i) expect *= nb;
            expect *= nt;
            REQUIRE(*group_order(w) == expect);
            REQUIRE(BigInt(enumerate_elements(w).size()) == expect);
        }
}

TEST_CASE("kk_embed worked example: Z4 over {0,2}") {
    auto z4 = cyclic_group(4);
    KKEmbedding kk = kk_embed(z4, {cyclic_value(z4, 2)});
    REQUIRE(kk.certificate.passed());
    // theta(1) = (F(0bar)=2, F(1bar)=0; top 1bar): base rep labels carry ambient names
    GroupValue th1 = kk.embedding(cyclic_value(z4, 1));
    const auto& pay = th1.as_wreath();
    REQUIRE(to_string((*pay.base)[0]) == "2");
    REQUIRE(to_string((*pay.base)[1]) == "0");
    REQUIRE(pay.top->as_int() == 1);
    // theta(1)^2 = theta(2) = ((2,2), 0bar)
    GroupValue sq = multiply(th1, th1);
    REQUIRE(values_equal(sq, kk.embedding(cyclic_value(z4, 2))));
    REQUIRE(to_string((*sq.as_wreath().base)[0]) == "2");
    REQUIRE(to_string((*sq.as_wreath().base)[1]) == "2");
    REQUIRE(sq.as_wreath().top->as_int() == 0);
}

TEST_CASE("kk_embed with trivial quotient is the one-point embedding") {
    auto z3 = cyclic_group(3);
    KKEmbedding kk = kk_embed(z3, {cyclic_value(z3, 1)});  // N = G
    REQUIRE(kk.certificate.passed());
    REQUIRE(kk.wreath->top_elements->size() == 1);
    GroupValue th = kk.embedding(cyclic_value(z3, 2));
    REQUIRE(to_string((*th.as_wreath().base)[0]) == "2");
}

TEST_CASE("kk_embed S3 over A3: transpositions project to the nontrivial class") {
    auto s3 = catalog_group("S3");
    KKEmbedding kk = kk_embed(s3, {GroupValue(s3, perm_from_cycles(3, {{1, 2, 3}}))});
    REQUIRE(kk.certificate.passed());
    for (const auto& g : enumerate_elements(s3)) {
        GroupValue img = kk.embedding(g);
        bool even = oracles::is_even_permutation(g);
        bool top_trivial = values_equal(*img.as_wreath().top, identity(kk.quotient_rep));
        REQUIRE(top_trivial == even);
        // pi(theta(g)) = quotient map
        REQUIRE(values_equal(*img.as_wreath().top, kk.quotient_map(g)));
    }
}

TEST_CASE("kk_embed rejects non-normal subgroups with a witness") {
    auto s3 = catalog_group("S3");
    REQUIRE_THROWS_WITH(kk_embed(s3, {GroupValue(s3, perm_from_cycles(3, {{1, 2}}))}),
                        Catch::Matchers::ContainsSubstring("normality violated at"));
}

TEST_CASE("kk_embed on the Z^m kernel of an extension") {
    // infinite dihedral group: Z by Z2 with inversion action
    auto z2 = cyclic_group(2);
    std::vector<IntMat> theta{identity_mat(1), {{BigInt(-1)}}};
    std::vector<std::vector<IntVec>> coc(2, std::vector<IntVec>(2, zero_vec(1)));
    auto dinf = abelian_by_finite_group(1, z2, theta, coc);
    KKEmbedding kk = kk_embed_kernel(dinf);
    REQUIRE(kk.certificate.passed());
    REQUIRE(kk.wreath->wreath_base->kind == GroupKind::FreeAbelian);
    // the embedding is multiplicative well beyond the certified ball
    GroupValue a = abf_value(dinf, {BigInt(3)}, cyclic_value(z2, 1));
    GroupValue b = abf_value(dinf, {BigInt(-7)}, cyclic_value(z2, 1));
    REQUIRE(values_equal(kk.embedding(multiply(a, b)), multiply(kk.embedding(a), kk.embedding(b))));
}

TEST_CASE("series_embed: exhaustive verification for the catalog solvables") {
    SECTION("S3 into Z3 wr Z2") {
        auto s3 = catalog_group("S3");
        SeriesEmbedding se = series_embed(s3, prime_cyclic_series(s3));
        REQUIRE(se.certificate.passed());
        REQUIRE(se.target_order == 18);
        REQUIRE(se.target->kind == GroupKind::Wreath);
        REQUIRE(se.target->wreath_base->modulus == 3);
        REQUIRE(se.target->wreath_top->modulus == 2);
        std::set<GroupValue> image;
        for (const auto& g : enumerate_elements(s3)) image.insert(se.embedding(g));
        REQUIRE(image.size() == 6);
    }
    SECTION("Z6 generator image has order 6") {
        auto z6 = cyclic_group(6);
        SeriesEmbedding se = series_embed(z6, prime_cyclic_series(z6));
        REQUIRE(se.certificate.passed());
        REQUIRE(element_order(se.embedding(cyclic_value(z6, 1))) == 6);
    }
    SECTION("Q8 into Z2 wr Z2 wr Z2") {
        auto q8 = catalog_group("Q8");
        SeriesEmbedding se = series_embed(q8, prime_cyclic_series(q8));
        REQUIRE(se.certificate.passed());
        REQUIRE(se.target_order == 128);  // (2^2*2)^2 * 2
    }
    SECTION("trivial series is the identity homomorphism") {
        auto z1 = cyclic_group(1);
        SubnormalSeries s;
        s.group = z1;
        s.subgroups.push_back(enumerate_elements(z1));
        SeriesEmbedding se = series_embed(z1, s);
        REQUIRE(values_equal(se.embedding(identity(z1)), identity(z1)));
    }
}

TEST_CASE("verify_homomorphism_injective flags the constant map") {
    auto z2 = cyclic_group(2);
    Homomorphism constant{z2, z2, [z2](const GroupValue&) { return identity(z2); }, "constant"};
    Certificate cert = verify_homomorphism_injective(constant);
    REQUIRE_FALSE(cert.passed());
    bool witnessed = false;
    for (const auto& c : cert.checks)
        if (!c.pass && c.witness == "1") witnessed = true;
    REQUIRE(witnessed);
}

TEST_CASE("base functoriality: lifting a base embedding is a homomorphism") {
    auto z2 = cyclic_group(2);
    auto z4 = cyclic_group(4);
    // embed Z2 into Z4 by doubling
    Homomorphism dbl{z2, z4, [z4](const GroupValue& x) { return cyclic_value(z4, x.as_int() * 2); }, "double"};
    auto from = wreath_product(z2, z2);
    auto to = wreath_product(z4, z2);
    Homomorphism lift = wreath_base_lift(from, to, dbl);
    std::vector<GroupValue> elems = enumerate_elements(from);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const GroupValue& a = elems[pick(rng)];
        const GroupValue& b = elems[pick(rng)];
        REQUIRE(values_equal(lift(multiply(a, b)), multiply(lift(a), lift(b))));
    }
    // injective on the whole domain
    std::set<GroupValue> image;
    for (const auto& x : elems) image.insert(lift(x));
    REQUIRE(image.size() == elems.size());
}
