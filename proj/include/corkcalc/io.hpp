#pragma once

#include "corkcalc/catalog.hpp"
#include "corkcalc/certificate.hpp"
#include "corkcalc/homomorphism.hpp"
#include "corkcalc/omega.hpp"

#include <string>
#include <vector>

namespace corkcalc {

// ---------------------------------------------------------------------------
// Group documents
//
//   {"kind":"cyclic","n":4}
//   {"kind":"free_abelian","rank":2}
//   {"kind":"permutation","degree":3,"generators":[[2,1,3],[2,3,1]]}   (1-based images)
//   {"kind":"table","order":4,"table":[...row-major...],"labels":[...]}
//   {"kind":"wreath","base":{...},"top":{...}}
//   {"kind":"abelian_by_finite","rank":m,"finite":{...},
//    "theta":[mat per element...],"cocycle":[[vec per pair...]...]}

inline GroupPtr group_from_json(const Json& j);

namespace iodetail {

inline IntVec vec_from_json(const Json& j) {
    IntVec v;
    for (const auto& x : j) v.push_back(x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long long>()));
    return v;
}

inline IntMat mat_from_json(const Json& j) {
    IntMat m;
    for (const auto& row : j) m.push_back(vec_from_json(row));
    return m;
}

}  // namespace iodetail

inline GroupPtr group_from_json(const Json& j) {
    if (j.is_string()) return catalog_group(j.get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return cyclic_group(j.at("n").get<std::uint64_t>());
    if (kind == "free_abelian") return free_abelian_group(j.at("rank").get<int>());
    if (kind == "permutation") {
        std::vector<Perm> gens;
        for (const auto& g : j.at("generators")) gens.push_back(Perm::from_one_based(g.get<std::vector<int>>()));
        return permutation_group(j.at("degree").get<int>(), std::move(gens));
    }
    if (kind == "table") {
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return table_group(j.at("order").get<int>(), j.at("table").get<std::vector<int>>(), std::move(labels));
    }
    if (kind == "wreath") return wreath_product(group_from_json(j.at("base")), group_from_json(j.at("top")));
    if (kind == "abelian_by_finite") {
        GroupPtr fin = group_from_json(j.at("finite"));
        std::vector<IntMat> theta;
        for (const auto& m : j.at("theta")) theta.push_back(iodetail::mat_from_json(m));
        std::vector<std::vector<IntVec>> coc;
        for (const auto& row : j.at("cocycle")) {
            std::vector<IntVec> r;
            for (const auto& v : row) r.push_back(iodetail::vec_from_json(v));
            coc.push_back(std::move(r));
        }
        return abelian_by_finite_group(j.at("rank").get<int>(), std::move(fin), std::move(theta), std::move(coc));
    }
    throw Error("group document: unknown kind '" + kind + "'");
}

inline Json group_to_json(const GroupPtr& g) {
    switch (g->kind) {
        case GroupKind::Cyclic: return Json{{"kind", "cyclic"}, {"n", g->modulus}};
        case GroupKind::FreeAbelian: return Json{{"kind", "free_abelian"}, {"rank", g->rank}};
        case GroupKind::Permutation: {
            Json gens = Json::array();
            for (const auto& p : g->perm_generators) {
                std::vector<int> img;
                for (int x : p.images()) img.push_back(x + 1);
                gens.push_back(img);
            }
            return Json{{"kind", "permutation"}, {"degree", g->degree}, {"generators", gens}};
        }
        case GroupKind::Table: {
            Json j{{"kind", "table"}, {"order", g->table_order}, {"table", g->table}};
            if (!g->table_labels.empty()) j["labels"] = g->table_labels;
            return j;
        }
        case GroupKind::Wreath:
            return Json{{"kind", "wreath"}, {"base", group_to_json(g->wreath_base)}, {"top", group_to_json(g->wreath_top)}};
        case GroupKind::AbelianByFinite: {
            Json theta = Json::array();
            for (const auto& m : g->theta) {
                Json mj = Json::array();
                for (const auto& row : m) {
                    Json rj = Json::array();
                    for (const auto& x : row) rj.push_back(x.str());
                    mj.push_back(rj);
                }
                theta.push_back(mj);
            }
            Json coc = Json::array();
            for (const auto& row : g->cocycle) {
                Json rj = Json::array();
                for (const auto& v : row) {
                    Json vj = Json::array();
                    for (const auto& x : v) vj.push_back(x.str());
                    rj.push_back(vj);
                }
                coc.push_back(rj);
            }
            return Json{{"kind", "abelian_by_finite"},
                        {"rank", g->rank},
                        {"finite", group_to_json(g->finite_part)},
                        {"theta", theta},
                        {"cocycle", coc}};
        }
    }
    throw Error("group_to_json: unknown kind");
}

// ---------------------------------------------------------------------------
// Element documents

inline GroupValue value_from_json(const GroupPtr& g, const Json& j) {
    switch (g->kind) {
        case GroupKind::Cyclic:
            return cyclic_value(g, j.is_string() ? BigInt(j.get<std::string>()) : BigInt(j.get<long long>()));
        case GroupKind::FreeAbelian: return free_abelian_value(g, iodetail::vec_from_json(j));
        case GroupKind::Permutation: return GroupValue(g, Perm::from_one_based(j.get<std::vector<int>>()));
        case GroupKind::Table: return GroupValue(g, j.get<int>());
        case GroupKind::AbelianByFinite:
            return abf_value(g, iodetail::vec_from_json(j.at("v")), value_from_json(g->finite_part, j.at("h")));
        case GroupKind::Wreath: {
            std::vector<GroupValue> base;
            for (const auto& b : j.at("F")) base.push_back(value_from_json(g->wreath_base, b));
            return wreath_value(g, std::move(base), value_from_json(g->wreath_top, j.at("t")));
        }
    }
    throw Error("value document: unknown kind");
}

// ---------------------------------------------------------------------------
// Homomorphism and omega-input documents

/// {"table":[[<domain value>, <codomain value>], ...]} over the whole finite domain.
inline Homomorphism hom_from_json(const GroupPtr& domain, const GroupPtr& codomain, const Json& j) {
    std::vector<std::pair<GroupValue, GroupValue>> pairs;
    for (const auto& row : j.at("table"))
        pairs.emplace_back(value_from_json(domain, row.at(0)), value_from_json(codomain, row.at(1)));
    std::vector<GroupValue> elems = enumerate_elements(domain);
    if (pairs.size() != elems.size()) throw Error("hom document: table must cover the whole domain");
    return hom_from_table(domain, codomain, std::move(pairs), "document");
}

/// {"H":doc,"N":doc,"codomain":doc,"phi":homdoc,"psi":[homdoc per element of H,
///  aligned with H's canonical element order]}
inline OmegaInput omega_input_from_json(const Json& j) {
    OmegaInput inp;
    inp.H = group_from_json(j.at("H"));
    inp.N = group_from_json(j.at("N"));
    inp.codomain = group_from_json(j.at("codomain"));
    inp.phi = hom_from_json(inp.H, inp.codomain, j.at("phi"));
    for (const auto& p : j.at("psi")) inp.psi.push_back(hom_from_json(inp.N, inp.codomain, p));
    std::vector<GroupValue> hs = enumerate_elements(inp.H);
    if (inp.psi.size() != hs.size())
        throw Error("omega document: psi must list exactly one homomorphism per element of H");
    return inp;
}

}  // namespace corkcalc
