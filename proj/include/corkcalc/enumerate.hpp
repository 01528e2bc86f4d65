#pragma once

#include "corkcalc/group.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace corkcalc {

// ---------------------------------------------------------------------------
// Orders and finiteness

inline std::optional<BigInt> group_order(const GroupPtr& g);

namespace detail {

inline std::vector<GroupValue> perm_closure(const GroupPtr& g) {
    std::vector<GroupValue> gens;
    gens.reserve(g->perm_generators.size());
    for (const auto& p : g->perm_generators) gens.emplace_back(g, p);
    std::set<GroupValue> seen;
    std::vector<GroupValue> frontier{identity(g)};
    seen.insert(frontier.front());
    const std::uint64_t cap = max_exhaustive_order();
    while (!frontier.empty()) {
        std::vector<GroupValue> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                GroupValue y = multiply(x, s);
                if (seen.insert(y).second) next.push_back(std::move(y));
                if (seen.size() > cap) throw Error("permutation group exceeds order cap");
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace detail

inline std::optional<BigInt> group_order(const GroupPtr& g) {
    switch (g->kind) {
        case GroupKind::Cyclic:
            if (g->modulus == 0) return std::nullopt;
            return BigInt(g->modulus);
        case GroupKind::FreeAbelian: return std::nullopt;
        case GroupKind::Permutation: return BigInt(detail::perm_closure(g).size());
        case GroupKind::Table: return BigInt(g->table_order);
        case GroupKind::AbelianByFinite: return std::nullopt;
        case GroupKind::Wreath: {
            auto b = group_order(g->wreath_base);
            if (!b) return std::nullopt;
            BigInt r = 1;
            for (std::size_t i = 0; i < g->top_elements->size(); ++i) r *= *b;
            return r * BigInt(g->top_elements->size());
        }
    }
    return std::nullopt;
}

inline bool is_finite_group(const GroupPtr& g) { return group_order(g).has_value(); }

// ---------------------------------------------------------------------------
// Designated generators (used for ball enumeration of infinite groups)

inline std::vector<GroupValue> designated_generators(const GroupPtr& g);

namespace detail {

/// Greedy generating set for a Table group: repeatedly adjoin the smallest
/// element not yet generated and close under products.
inline std::vector<int> table_generating_set(const GroupSpec& g) {
    const int n = g.table_order;
    std::vector<char> generated(static_cast<std::size_t>(n), 0);
    generated[static_cast<std::size_t>(g.table_identity)] = 1;
    int count = 1;
    std::vector<int> gens;
    auto close = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a) {
                if (!generated[static_cast<std::size_t>(a)]) continue;
                for (int b = 0; b < n; ++b) {
                    if (!generated[static_cast<std::size_t>(b)]) continue;
                    int c = g.table_at(a, b);
                    if (!generated[static_cast<std::size_t>(c)]) {
                        generated[static_cast<std::size_t>(c)] = 1;
                        ++count;
                        grew = true;
                    }
                }
            }
        }
    };
    while (count < n) {
        int pick = -1;
        for (int a = 0; a < n; ++a)
            if (!generated[static_cast<std::size_t>(a)]) { pick = a; break; }
        gens.push_back(pick);
        generated[static_cast<std::size_t>(pick)] = 1;
        ++count;
        close();
    }
    return gens;
}

}  // namespace detail

inline std::vector<GroupValue> designated_generators(const GroupPtr& g) {
    std::vector<GroupValue> out;
    switch (g->kind) {
        case GroupKind::Cyclic:
            if (g->modulus != 1) out.emplace_back(g, BigInt(1));
            return out;
        case GroupKind::FreeAbelian:
            for (int i = 0; i < g->rank; ++i) {
                IntVec v = zero_vec(g->rank);
                v[static_cast<std::size_t>(i)] = 1;
                out.emplace_back(g, std::move(v));
            }
            return out;
        case GroupKind::Permutation:
            for (const auto& p : g->perm_generators) out.emplace_back(g, p);
            return out;
        case GroupKind::Table:
            for (int i : detail::table_generating_set(*g)) out.emplace_back(g, i);
            return out;
        case GroupKind::AbelianByFinite: {
            for (int i = 0; i < g->rank; ++i) {
                IntVec v = zero_vec(g->rank);
                v[static_cast<std::size_t>(i)] = 1;
                out.emplace_back(g, GroupValue::AbfPayload{std::move(v),
                                 std::make_shared<GroupValue>(identity(g->finite_part))});
            }
            for (const auto& h : designated_generators(g->finite_part))
                out.emplace_back(g, GroupValue::AbfPayload{zero_vec(g->rank), std::make_shared<GroupValue>(h)});
            return out;
        }
        case GroupKind::Wreath: {
            // base generators planted at the identity position, plus top generators
            GroupValue id_top = identity(g->wreath_top);
            std::size_t id_idx = top_index(*g, id_top);
            for (const auto& b : designated_generators(g->wreath_base)) {
                auto base = std::make_shared<std::vector<GroupValue>>();
                base->assign(g->top_elements->size(), identity(g->wreath_base));
                (*base)[id_idx] = b;
                out.emplace_back(g, GroupValue::WreathPayload{std::move(base),
                                 std::make_shared<GroupValue>(id_top)});
            }
            for (const auto& t : designated_generators(g->wreath_top)) {
                auto base = std::make_shared<std::vector<GroupValue>>();
                base->assign(g->top_elements->size(), identity(g->wreath_base));
                out.emplace_back(g, GroupValue::WreathPayload{std::move(base),
                                 std::make_shared<GroupValue>(t)});
            }
            return out;
        }
    }
    throw Error("designated_generators: unknown kind");
}

// ---------------------------------------------------------------------------
// Enumeration

/// Ball of the given radius around the identity with respect to the
/// designated generators and their inverses, canonically sorted.
inline std::vector<GroupValue> ball(const GroupPtr& g, int radius,
                                    const std::vector<GroupValue>* generators = nullptr) {
    std::vector<GroupValue> gens = generators ? *generators : designated_generators(g);
    {
        std::vector<GroupValue> with_inv = gens;
        for (const auto& s : gens) {
            GroupValue i = inverse(s);
            if (!values_equal(i, s)) with_inv.push_back(std::move(i));
        }
        gens = std::move(with_inv);
    }
    std::set<GroupValue> seen;
    std::vector<GroupValue> frontier{identity(g)};
    seen.insert(frontier.front());
    for (int r = 0; r < radius && !frontier.empty(); ++r) {
        std::vector<GroupValue> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                GroupValue y = multiply(x, s);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// All elements of a finite group, exactly once, in canonical order;
/// for an infinite group, the ball of the supplied radius.
inline std::vector<GroupValue> enumerate_elements(const GroupPtr& g,
                                                  std::optional<int> bound = std::nullopt) {
    auto order = group_order(g);
    if (!order) {
        if (!bound) throw Error("enumerate_elements: unbounded enumeration of an infinite group");
        return ball(g, *bound);
    }
    if (*order > max_exhaustive_order())
        throw Error("enumerate_elements: order cap exceeded (set CORKCALC_MAX_ORDER to raise)");
    switch (g->kind) {
        case GroupKind::Cyclic: {
            std::vector<GroupValue> out;
            for (std::uint64_t i = 0; i < g->modulus; ++i) out.emplace_back(g, BigInt(i));
            return out;
        }
        case GroupKind::Permutation: return detail::perm_closure(g);
        case GroupKind::Table: {
            std::vector<GroupValue> out;
            for (int i = 0; i < g->table_order; ++i) out.emplace_back(g, i);
            return out;
        }
        case GroupKind::Wreath: {
            std::vector<GroupValue> base_elems = enumerate_elements(g->wreath_base);
            const std::size_t k = g->top_elements->size();
            std::vector<GroupValue> out;
            std::vector<std::size_t> odo(k, 0);
            for (;;) {
                auto base = std::make_shared<std::vector<GroupValue>>();
                base->reserve(k);
                for (std::size_t i = 0; i < k; ++i) base->push_back(base_elems[odo[i]]);
                for (const auto& t : *g->top_elements)
                    out.emplace_back(g, GroupValue::WreathPayload{base, std::make_shared<GroupValue>(t)});
                std::size_t pos = 0;
                while (pos < k && ++odo[pos] == base_elems.size()) odo[pos++] = 0;
                if (pos == k) break;
            }
            std::sort(out.begin(), out.end(), value_less);
            return out;
        }
        default: throw Error("enumerate_elements: unsupported finite kind");
    }
}

/// First n elements in (word-length, canonical) order: complete BFS layers
/// sorted canonically, truncated to n. Deterministic.
inline std::vector<GroupValue> ball_first_n(const GroupPtr& g, std::size_t n,
                                            const std::vector<GroupValue>* generators = nullptr) {
    auto order = group_order(g);
    if (order && *order <= n) {
        auto all = enumerate_elements(g);
        return all;
    }
    std::vector<GroupValue> gens = generators ? *generators : designated_generators(g);
    {
        std::vector<GroupValue> with_inv = gens;
        for (const auto& s : gens) {
            GroupValue i = inverse(s);
            if (!values_equal(i, s)) with_inv.push_back(std::move(i));
        }
        gens = std::move(with_inv);
    }
    std::set<GroupValue> seen;
    std::vector<GroupValue> out;
    std::vector<GroupValue> frontier{identity(g)};
    seen.insert(frontier.front());
    out.push_back(frontier.front());
    while (out.size() < n && !frontier.empty()) {
        std::set<GroupValue> layer;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                GroupValue y = multiply(x, s);
                if (!seen.count(y)) layer.insert(std::move(y));
            }
        frontier.assign(layer.begin(), layer.end());
        for (const auto& y : frontier) {
            seen.insert(y);
            if (out.size() < n) out.push_back(y);
        }
        if (frontier.empty()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factories

inline GroupPtr cyclic_group(std::uint64_t n) {
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::Cyclic;
    g->modulus = n;
    return g;
}

inline GroupPtr free_abelian_group(int rank) {
    if (rank < 1) throw Error("free_abelian_group: rank must be positive");
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::FreeAbelian;
    g->rank = rank;
    return g;
}

inline GroupPtr permutation_group(int degree, std::vector<Perm> generators) {
    if (degree < 1) throw Error("permutation_group: degree must be positive");
    for (const auto& p : generators)
        if (p.degree() != degree) throw Error("permutation_group: generator degree mismatch");
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::Permutation;
    g->degree = degree;
    g->perm_generators = std::move(generators);
    return g;
}

namespace detail {

/// Light's associativity test: associativity over a generating set of the
/// magma implies associativity everywhere.
inline void validate_table(GroupSpec& g) {
    const int n = g.table_order;
    if (n < 1) throw Error("table group: order must be positive");
    if (g.table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw Error("table group: table size mismatch");
    for (int v : g.table)
        if (v < 0 || v >= n) throw Error("table group: entry out of range");

    int e = -1;
    for (int cand = 0; cand < n && e < 0; ++cand) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (g.table_at(cand, a) != a || g.table_at(a, cand) != a) ok = false;
        if (ok) e = cand;
    }
    if (e < 0) throw Error("table group: no identity element");
    g.table_identity = e;

    g.table_inverse.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.table_at(a, b) == e && g.table_at(b, a) == e) {
                g.table_inverse[static_cast<std::size_t>(a)] = b;
                break;
            }
        if (g.table_inverse[static_cast<std::size_t>(a)] < 0)
            throw Error("table group: element " + std::to_string(a) + " has no inverse");
    }

    std::vector<int> gens = table_generating_set(g);
    for (int s : gens)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g.table_at(a, g.table_at(s, b)) != g.table_at(g.table_at(a, s), b))
                    throw Error("table group: not associative at (" + std::to_string(a) + "," +
                                std::to_string(s) + "," + std::to_string(b) + ")");
}

}  // namespace detail

inline GroupPtr table_group(int order, std::vector<int> row_major_table,
                            std::vector<std::string> labels = {}) {
    if (static_cast<std::uint64_t>(order) > max_exhaustive_order())
        throw Error("table group: order cap exceeded (use a Permutation representation or raise CORKCALC_MAX_ORDER)");
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::Table;
    g->table_order = order;
    g->table = std::move(row_major_table);
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(order))
        throw Error("table group: label count mismatch");
    g->table_labels = std::move(labels);
    detail::validate_table(*g);
    return g;
}

inline GroupPtr wreath_product(GroupPtr base, GroupPtr top) {
    auto top_order = group_order(top);
    if (!top_order) throw Error("wreath_product: top group must be finite");
    if (*top_order > max_exhaustive_order()) throw Error("wreath_product: top order cap exceeded");
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::Wreath;
    g->wreath_base = std::move(base);
    g->wreath_top = std::move(top);
    g->top_elements = std::make_shared<const std::vector<GroupValue>>(enumerate_elements(g->wreath_top));
    return g;
}

/// Extension of Z^rank by the finite group `finite`, given by an action theta
/// (canonical-index -> integer matrix) and a normalized 2-cocycle. Validates
/// theta multiplicativity, cocycle normalization and the 2-cocycle identity.
inline GroupPtr abelian_by_finite_group(int rank, GroupPtr finite, std::vector<IntMat> theta,
                                        std::vector<std::vector<IntVec>> cocycle) {
    if (rank < 1) throw Error("abelian_by_finite: rank must be positive");
    auto g = std::make_shared<GroupSpec>();
    g->kind = GroupKind::AbelianByFinite;
    g->rank = rank;
    g->finite_part = std::move(finite);
    auto elems = enumerate_elements(g->finite_part);
    const std::size_t n = elems.size();
    if (theta.size() != n) throw Error("abelian_by_finite: theta must have one matrix per finite element");
    if (cocycle.size() != n) throw Error("abelian_by_finite: cocycle must be |H| x |H|");
    for (const auto& row : cocycle)
        if (row.size() != n) throw Error("abelian_by_finite: cocycle must be |H| x |H|");
    const std::size_t r = static_cast<std::size_t>(rank);
    for (const auto& m : theta) {
        if (m.size() != r) throw Error("abelian_by_finite: theta matrix shape mismatch");
        for (const auto& row : m)
            if (row.size() != r) throw Error("abelian_by_finite: theta matrix shape mismatch");
    }
    for (const auto& row : cocycle)
        for (const auto& v : row)
            if (v.size() != r) throw Error("abelian_by_finite: cocycle vector shape mismatch");

    std::size_t id = canonical_index(elems, identity(g->finite_part));
    if (theta[id] != identity_mat(rank)) throw Error("abelian_by_finite: theta at identity must be the identity matrix");
    auto idx_of = [&](const GroupValue& v) { return canonical_index(elems, v); };
    for (std::size_t i = 0; i < n; ++i) {
        if (!vec_is_zero(cocycle[id][i]) || !vec_is_zero(cocycle[i][id]))
            throw Error("abelian_by_finite: cocycle not normalized (c(1,h)=c(h,1)=0 required)");
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t ij = idx_of(multiply(elems[i], elems[j]));
            if (mat_mul(theta[i], theta[j]) != theta[ij])
                throw Error("abelian_by_finite: theta is not a homomorphism");
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t jk = idx_of(multiply(elems[j], elems[k]));
                // theta(h1) c(h2,h3) + c(h1, h2 h3) = c(h1,h2) + c(h1 h2, h3)
                IntVec lhs = vec_add(mat_apply(theta[i], cocycle[j][k]), cocycle[i][jk]);
                IntVec rhs = vec_add(cocycle[i][j], cocycle[ij][k]);
                if (lhs != rhs) throw Error("abelian_by_finite: 2-cocycle identity violated");
            }
        }
    }
    g->finite_elements = std::make_shared<const std::vector<GroupValue>>(std::move(elems));
    g->theta = std::move(theta);
    g->cocycle = std::move(cocycle);
    return g;
}

// ---------------------------------------------------------------------------
// Value constructors

inline GroupValue cyclic_value(const GroupPtr& g, BigInt v) {
    if (g->modulus) v = mod_floor(v, g->modulus);
    return GroupValue(g, std::move(v));
}

inline GroupValue free_abelian_value(const GroupPtr& g, IntVec v) {
    if (v.size() != static_cast<std::size_t>(g->rank)) throw Error("free_abelian_value: rank mismatch");
    return GroupValue(g, std::move(v));
}

inline GroupValue abf_value(const GroupPtr& g, IntVec v, GroupValue h) {
    if (v.size() != static_cast<std::size_t>(g->rank)) throw Error("abf_value: rank mismatch");
    return GroupValue(g, GroupValue::AbfPayload{std::move(v), std::make_shared<GroupValue>(std::move(h))});
}

/// Wreath element from a base map given in the top group's canonical order.
inline GroupValue wreath_value(const GroupPtr& g, std::vector<GroupValue> base_values, GroupValue top) {
    if (base_values.size() != g->top_elements->size()) throw Error("wreath_value: base map must be total on the top group");
    return GroupValue(g, GroupValue::WreathPayload{
                             std::make_shared<const std::vector<GroupValue>>(std::move(base_values)),
                             std::make_shared<GroupValue>(std::move(top))});
}

/// Base-map lookup F(t) for a wreath element.
inline const GroupValue& wreath_base_at(const GroupValue& w, const GroupValue& t) {
    return (*w.as_wreath().base)[top_index(*w.owner(), t)];
}

inline const GroupValue& wreath_top_of(const GroupValue& w) { return *w.as_wreath().top; }

}  // namespace corkcalc
