#pragma once

#include "corkcalc/certificate.hpp"
#include "corkcalc/enumerate.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace corkcalc {

/// A group homomorphism with an evaluator. Finite domains may carry an
/// explicit table for serialization; infinite domains evaluate a closed form.
struct Homomorphism {
    GroupPtr domain;
    GroupPtr codomain;
    std::function<GroupValue(const GroupValue&)> map;
    std::string provenance;

    GroupValue operator()(const GroupValue& x) const { return map(x); }
};

inline Homomorphism identity_homomorphism(GroupPtr g) {
    Homomorphism h;
    h.domain = g;
    h.codomain = g;
    h.map = [](const GroupValue& x) { return x; };
    h.provenance = "identity";
    return h;
}

inline Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
    if (!specs_equal(inner.codomain, outer.domain)) throw Error("compose: domain/codomain mismatch");
    Homomorphism h;
    h.domain = inner.domain;
    h.codomain = outer.codomain;
    auto f = outer.map;
    auto g = inner.map;
    h.map = [f, g](const GroupValue& x) { return f(g(x)); };
    h.provenance = outer.provenance + " . " + inner.provenance;
    return h;
}

/// Homomorphism from an explicit value table over a finite domain.
inline Homomorphism hom_from_table(GroupPtr domain, GroupPtr codomain,
                                   std::vector<std::pair<GroupValue, GroupValue>> pairs,
                                   std::string provenance = "table") {
    auto tbl = std::make_shared<std::map<GroupValue, GroupValue>>();
    for (auto& [k, v] : pairs) tbl->emplace(k, v);
    Homomorphism h;
    h.domain = std::move(domain);
    h.codomain = std::move(codomain);
    h.map = [tbl](const GroupValue& x) {
        auto it = tbl->find(x);
        if (it == tbl->end()) throw Error("hom_from_table: element outside the table");
        return it->second;
    };
    h.provenance = std::move(provenance);
    return h;
}

/// Serializes a homomorphism as an explicit table (finite domains) or as a
/// generator-image list.
inline Json hom_to_json(const Homomorphism& h, std::size_t table_cap = 256) {
    Json j;
    j["domain"] = spec_name(*h.domain);
    j["codomain"] = spec_name(*h.codomain);
    j["provenance"] = h.provenance;
    auto order = group_order(h.domain);
    if (order && *order <= table_cap) {
        Json tbl = Json::array();
        for (const auto& x : enumerate_elements(h.domain))
            tbl.push_back(Json::array({to_string(x), to_string(h(x))}));
        j["table"] = std::move(tbl);
    } else {
        Json gens = Json::array();
        for (const auto& s : designated_generators(h.domain))
            gens.push_back(Json::array({to_string(s), to_string(h(s))}));
        j["generator_images"] = std::move(gens);
    }
    return j;
}

/// Verifies multiplicativity and kernel triviality: over all pairs for a
/// finite domain, or over all pairs from the radius-`bound` generator ball.
inline Certificate verify_homomorphism_injective(const Homomorphism& h, std::optional<int> bound = std::nullopt) {
    Certificate cert;
    std::vector<GroupValue> elems;
    std::string range;
    auto order = group_order(h.domain);
    if (order) {
        elems = enumerate_elements(h.domain);
        range = "all " + std::to_string(elems.size() * elems.size()) + " pairs";
    } else {
        int r = bound.value_or(3);
        elems = ball(h.domain, r);
        range = "radius-" + std::to_string(r) + " ball (" + std::to_string(elems.size()) + " elements), all pairs";
    }

    bool hom_ok = true;
    std::string hom_witness;
    for (const auto& a : elems) {
        GroupValue fa = h(a);
        for (const auto& b : elems) {
            if (!values_equal(h(multiply(a, b)), multiply(fa, h(b)))) {
                hom_ok = false;
                hom_witness = "(" + to_string(a) + ", " + to_string(b) + ")";
                break;
            }
        }
        if (!hom_ok) break;
    }
    cert.add_check("homomorphism law", range, hom_ok, hom_witness);

    bool inj_ok = true;
    std::string inj_witness;
    GroupValue cod_id = identity(h.codomain);
    for (const auto& a : elems) {
        if (!values_equal(h(a), cod_id)) continue;
        if (!is_identity(a)) {
            inj_ok = false;
            inj_witness = to_string(a);
            break;
        }
    }
    cert.add_check("kernel triviality", range, inj_ok, inj_witness);

    if (order) {
        std::set<GroupValue> images;
        for (const auto& a : elems) images.insert(h(a));
        bool distinct = images.size() == elems.size();
        cert.add_check("image size equals domain order", "all " + std::to_string(elems.size()) + " elements",
                       distinct, "", "image size " + std::to_string(images.size()));
    }
    return cert;
}

}  // namespace corkcalc
