#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace corkcalc;

namespace {

// the conjugation instance from the dihedral image in S4:
// phi(1) = (13)(24), psi_0(1) = (12), psi_1(1) = (34)
OmegaInput dihedral_instance(const Perm& psi1_image) {
    auto s4 = catalog_group("S4");
    auto z2 = cyclic_group(2);
    auto mk = [&](Perm img) {
        return hom_from_table(z2, s4,
                              {{cyclic_value(z2, 0), identity(s4)}, {cyclic_value(z2, 1), GroupValue(s4, img)}});
    };
    OmegaInput inp;
    inp.H = z2;
    inp.N = z2;
    inp.codomain = s4;
    inp.phi = mk(perm_from_cycles(4, {{1, 3}, {2, 4}}));
    inp.psi = {mk(perm_from_cycles(4, {{1, 2}})), mk(psi1_image)};
    return inp;
}

}  // namespace

TEST_CASE("hypothesis check passes on the dihedral instance") {
    OmegaInput inp = dihedral_instance(perm_from_cycles(4, {{3, 4}}));
    Certificate cert = check_omega_hypotheses(inp);
    REQUIRE(cert.passed());
}

TEST_CASE("hypothesis check fails with the witness (x=1, g=0, h=1)") {
    OmegaInput inp = dihedral_instance(perm_from_cycles(4, {{2, 3}}));
    Certificate cert = check_omega_hypotheses(inp);
    REQUIRE_FALSE(cert.passed());
    REQUIRE(cert.checks[0].witness == "(x=1, g=0, h=1)");
    REQUIRE_THROWS_WITH(build_omega(inp), Catch::Matchers::ContainsSubstring("refusing"));
}

TEST_CASE("trivial H passes vacuously") {
    auto z1 = cyclic_group(1);
    auto z2 = cyclic_group(2);
    OmegaInput inp;
    inp.H = z1;
    inp.N = z2;
    inp.codomain = z2;
    inp.phi = hom_from_table(z1, z2, {{identity(z1), identity(z2)}});
    inp.psi = {identity_homomorphism(z2)};
    REQUIRE(check_omega_hypotheses(inp).passed());
    REQUIRE(build_omega(inp).certificate.passed());
}

TEST_CASE("omega assembly on the dihedral instance") {
    OmegaInput inp = dihedral_instance(perm_from_cycles(4, {{3, 4}}));
    OmegaResult res = build_omega(inp);
    REQUIRE(res.certificate.passed());

    auto z2 = cyclic_group(2);
    auto mk = [&](int f0, int f1, int t) {
        return wreath_value(res.wreath, {cyclic_value(z2, f0), cyclic_value(z2, f1)}, cyclic_value(z2, t));
    };
    // omega((1,1),1) = (12)(34)(13)(24) = (14)(23)
    REQUIRE(values_equal(res.omega(mk(1, 1, 1)),
                         GroupValue(inp.codomain, perm_from_cycles(4, {{1, 4}, {2, 3}}))));
    // omega(identity) = identity
    REQUIRE(is_identity(res.omega(identity(res.wreath))));
    // single-point support reduces to psi_{g0}
    REQUIRE(values_equal(res.omega(mk(1, 0, 0)), inp.psi[0](cyclic_value(z2, 1))));
    REQUIRE(values_equal(res.omega(mk(0, 1, 0)), inp.psi[1](cyclic_value(z2, 1))));

    // image is dihedral of order 8 and omega is injective here
    std::set<GroupValue> image;
    for (const auto& x : enumerate_elements(res.wreath)) image.insert(res.omega(x));
    REQUIRE(image.size() == 8);
    std::vector<std::uint64_t> orders;
    for (const auto& y : image) orders.push_back(element_order(y));
    std::sort(orders.begin(), orders.end());
    REQUIRE(orders == oracles::order_multiset(catalog_group("D4")));
}

TEST_CASE("omega restricted to the base is the pointwise product of the psi family") {
    OmegaInput inp = dihedral_instance(perm_from_cycles(4, {{3, 4}}));
    OmegaResult res = build_omega(inp);
    auto z2 = cyclic_group(2);
    for (int f0 = 0; f0 < 2; ++f0)
        for (int f1 = 0; f1 < 2; ++f1) {
            GroupValue x = wreath_value(res.wreath, {cyclic_value(z2, f0), cyclic_value(z2, f1)},
                                        cyclic_value(z2, 0));
            GroupValue expect = multiply(inp.psi[0](cyclic_value(z2, f0)), inp.psi[1](cyclic_value(z2, f1)));
            REQUIRE(values_equal(res.omega(x), expect));
        }
}

TEST_CASE("omega homomorphism law for |N|,|H| <= 4") {
    // direct-sum family inside Z_n^H: phi permutes coordinates, psi_h plants
    // a value at coordinate h; the hypotheses hold by construction
    for (int nn : {2, 3, 4})
        for (const std::string hname : {"Z2", "Z3", "Z4", "V4"}) {
            auto n = cyclic_group(static_cast<std::uint64_t>(nn));
            auto h = catalog_group(hname);
            auto w = wreath_product(n, h);
            // codomain = N wr H itself; phi(h) = (0, h); psi_g(x) = (delta_g x, 1)
            std::vector<GroupValue> hs = enumerate_elements(h);
            Homomorphism phi{h, w,
                             [w, n, hs](const GroupValue& t) {
                                 std::vector<GroupValue> base(hs.size(), identity(n));
                                 return wreath_value(w, std::move(base), t);
                             },
                             "top-section"};
            std::vector<Homomorphism> psi;
            for (std::size_t gi = 0; gi < hs.size(); ++gi) {
                psi.push_back(Homomorphism{n, w,
                                           [w, n, hs, gi](const GroupValue& x) {
                                               std::vector<GroupValue> base(hs.size(), identity(n));
                                               base[gi] = x;
                                               return wreath_value(w, std::move(base), identity(w->wreath_top));
                                           },
                                           "coordinate-section"});
            }
            OmegaInput inp{h, n, w, phi, psi};
            OmegaResult res = build_omega(inp);
            REQUIRE(res.certificate.passed());
            // this particular omega is even an isomorphism onto N wr H
            std::set<GroupValue> image;
            std::vector<GroupValue> all = enumerate_elements(res.wreath);
            for (const auto& x : all) image.insert(res.omega(x));
            REQUIRE(image.size() == all.size());
        }
}
