#pragma once

#include "corkcalc/enumerate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace corkcalc {

/// Closure of a generator set inside a finite ambient group, canonically sorted.
inline std::vector<GroupValue> subgroup_closure(const GroupPtr& g, const std::vector<GroupValue>& generators) {
    std::set<GroupValue> seen;
    seen.insert(identity(g));
    std::vector<GroupValue> gens = generators;
    for (const auto& s : generators) gens.push_back(inverse(s));
    std::vector<GroupValue> frontier(seen.begin(), seen.end());
    const std::uint64_t cap = max_exhaustive_order();
    while (!frontier.empty()) {
        std::vector<GroupValue> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                GroupValue y = multiply(x, s);
                if (seen.insert(y).second) next.push_back(std::move(y));
                if (seen.size() > cap) throw Error("subgroup_closure: order cap exceeded");
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

inline bool contains(const std::vector<GroupValue>& sorted_elems, const GroupValue& v) {
    auto it = std::lower_bound(sorted_elems.begin(), sorted_elems.end(), v, value_less);
    return it != sorted_elems.end() && values_equal(*it, v);
}

inline bool is_closed_subgroup(const std::vector<GroupValue>& sorted_elems) {
    for (const auto& a : sorted_elems)
        for (const auto& b : sorted_elems)
            if (!contains(sorted_elems, multiply(a, b))) return false;
    return !sorted_elems.empty() && contains(sorted_elems, identity(sorted_elems.front().owner()));
}

/// Normality of `sub` inside `super` (both canonically sorted element lists of
/// the same ambient spec). Returns a violating pair (g, n) if any.
inline std::optional<std::pair<GroupValue, GroupValue>> normality_witness(
    const std::vector<GroupValue>& super, const std::vector<GroupValue>& sub) {
    for (const auto& g : super) {
        GroupValue gi = inverse(g);
        for (const auto& n : sub)
            if (!contains(sub, multiply(multiply(g, n), gi))) return std::make_pair(g, n);
    }
    return std::nullopt;
}

/// Small generating set of a subgroup, chosen greedily in canonical order.
inline std::vector<GroupValue> greedy_generators(const GroupPtr& g, const std::vector<GroupValue>& sorted_elems) {
    std::vector<GroupValue> gens;
    std::vector<GroupValue> span{identity(g)};
    for (const auto& x : sorted_elems) {
        if (contains(span, x)) continue;
        gens.push_back(x);
        span = subgroup_closure(g, gens);
        if (span.size() == sorted_elems.size()) break;
    }
    return gens;
}

/// Derived subgroup [S,S] of a subgroup given by its sorted element list.
inline std::vector<GroupValue> commutator_closure(const GroupPtr& g, const std::vector<GroupValue>& elems) {
    std::set<GroupValue> comms;
    for (const auto& a : elems) {
        GroupValue ai = inverse(a);
        for (const auto& b : elems)
            comms.insert(multiply(multiply(ai, inverse(b)), multiply(a, b)));
    }
    return subgroup_closure(g, std::vector<GroupValue>(comms.begin(), comms.end()));
}

// ---------------------------------------------------------------------------
// Cosets and quotient groups

struct CosetDecomposition {
    std::vector<std::vector<GroupValue>> cosets;  // each sorted; list ordered by minimal representative
    std::size_t identity_coset = 0;

    std::size_t coset_of(const GroupValue& v) const {
        for (std::size_t i = 0; i < cosets.size(); ++i)
            if (contains(cosets[i], v)) return i;
        throw Error("coset_of: element not in any coset");
    }
};

inline CosetDecomposition left_cosets(const GroupPtr& g, const std::vector<GroupValue>& whole,
                                      const std::vector<GroupValue>& sub) {
    CosetDecomposition dec;
    std::set<GroupValue> assigned;
    for (const auto& x : whole) {
        if (assigned.count(x)) continue;
        std::vector<GroupValue> coset;
        coset.reserve(sub.size());
        for (const auto& n : sub) coset.push_back(multiply(x, n));
        std::sort(coset.begin(), coset.end(), value_less);
        for (const auto& y : coset) assigned.insert(y);
        dec.cosets.push_back(std::move(coset));
    }
    std::sort(dec.cosets.begin(), dec.cosets.end(),
              [](const auto& a, const auto& b) { return value_less(a.front(), b.front()); });
    GroupValue e = identity(g);
    for (std::size_t i = 0; i < dec.cosets.size(); ++i)
        if (contains(dec.cosets[i], e)) dec.identity_coset = i;
    return dec;
}

/// A finite subgroup re-expressed as a standalone Table group, with maps in
/// both directions. Labels carry the ambient element names.
struct TableReification {
    GroupPtr table;
    std::vector<GroupValue> elements;  // ambient values, canonical order == table index order

    GroupValue to_table(const GroupValue& ambient_value) const {
        return GroupValue(table, static_cast<int>(canonical_index(elements, ambient_value)));
    }
    const GroupValue& to_ambient(const GroupValue& table_value) const {
        return elements[static_cast<std::size_t>(table_value.as_index())];
    }
};

inline TableReification reify_as_table(const GroupPtr& g, std::vector<GroupValue> sorted_elems) {
    const int n = static_cast<int>(sorted_elems.size());
    std::vector<int> tbl(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<std::string> labels;
    labels.reserve(sorted_elems.size());
    for (const auto& v : sorted_elems) labels.push_back(to_string(v));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GroupValue p = multiply(sorted_elems[static_cast<std::size_t>(i)], sorted_elems[static_cast<std::size_t>(j)]);
            tbl[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                static_cast<int>(canonical_index(sorted_elems, p));
        }
    TableReification r;
    r.table = table_group(n, std::move(tbl), std::move(labels));
    r.elements = std::move(sorted_elems);
    return r;
}

/// Quotient G/N as a Table group over cosets, with the projection map and the
/// canonical transversal: the identity coset is represented by the identity,
/// every other coset by its minimal element.
struct QuotientReification {
    GroupPtr table;
    CosetDecomposition cosets;
    GroupPtr ambient;

    GroupValue project(const GroupValue& v) const {
        return GroupValue(table, static_cast<int>(cosets.coset_of(v)));
    }
    GroupValue transversal(const GroupValue& quotient_value) const {
        std::size_t i = static_cast<std::size_t>(quotient_value.as_index());
        if (i == cosets.identity_coset) return identity(ambient);
        return cosets.cosets[i].front();
    }
};

inline QuotientReification quotient_by_normal(const GroupPtr& g, const std::vector<GroupValue>& whole,
                                              const std::vector<GroupValue>& normal_sub) {
    QuotientReification q;
    q.ambient = g;
    q.cosets = left_cosets(g, whole, normal_sub);
    const int n = static_cast<int>(q.cosets.cosets.size());
    std::vector<int> tbl(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("[" + to_string(q.cosets.cosets[static_cast<std::size_t>(i)].front()) + "]");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GroupValue p = multiply(q.cosets.cosets[static_cast<std::size_t>(i)].front(),
                                    q.cosets.cosets[static_cast<std::size_t>(j)].front());
            tbl[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                static_cast<int>(q.cosets.coset_of(p));
        }
    q.table = table_group(n, std::move(tbl), std::move(labels));
    return q;
}

}  // namespace corkcalc
