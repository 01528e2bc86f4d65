#pragma once

#include "corkcalc/bigint.hpp"
#include "corkcalc/error.hpp"
#include "corkcalc/permutation.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace corkcalc {

class GroupSpec;
class GroupValue;
using GroupPtr = std::shared_ptr<const GroupSpec>;

enum class GroupKind { Cyclic, FreeAbelian, Permutation, Table, AbelianByFinite, Wreath };

/// Order cap for exhaustive operations (enumeration, Cayley-table loads).
/// Overridable through the CORKCALC_MAX_ORDER environment variable.
inline std::uint64_t max_exhaustive_order() {
    if (const char* s = std::getenv("CORKCALC_MAX_ORDER")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 2048;
}

/// Immutable description of a concrete group. Values carry a pointer to their
/// spec; all arithmetic is exact. Construct through the factory functions
/// below, which validate the representation-specific invariants.
class GroupSpec : public std::enable_shared_from_this<GroupSpec> {
public:
    GroupKind kind;

    // Cyclic: modulus 0 means the infinite cyclic group.
    std::uint64_t modulus = 0;

    // FreeAbelian / AbelianByFinite rank.
    int rank = 0;

    // Permutation
    int degree = 0;
    std::vector<Perm> perm_generators;

    // Table (row-major order*order, entries are element indices)
    int table_order = 0;
    std::vector<int> table;
    int table_identity = 0;
    std::vector<int> table_inverse;
    std::vector<std::string> table_labels;  // optional display names

    // AbelianByFinite: Z^rank extended by `finite_part`, with action theta
    // (one integer rank x rank matrix per element of the finite part, in its
    // canonical order) and a normalized 2-cocycle c[i][j] in Z^rank.
    GroupPtr finite_part;
    std::shared_ptr<const std::vector<GroupValue>> finite_elements;
    std::vector<IntMat> theta;
    std::vector<std::vector<IntVec>> cocycle;

    // Wreath: base may be infinite, top must be finite. Base functions are
    // total maps on the top group, stored in its canonical element order.
    GroupPtr wreath_base;
    GroupPtr wreath_top;
    std::shared_ptr<const std::vector<GroupValue>> top_elements;

    int table_at(int a, int b) const { return table[static_cast<std::size_t>(a) * static_cast<std::size_t>(table_order) + static_cast<std::size_t>(b)]; }
};

// ---------------------------------------------------------------------------
// GroupValue

class GroupValue {
public:
    struct AbfPayload {
        IntVec vec;
        std::shared_ptr<const GroupValue> fin;
    };
    struct WreathPayload {
        // base function values, aligned with owner->top_elements order
        std::shared_ptr<const std::vector<GroupValue>> base;
        std::shared_ptr<const GroupValue> top;
    };
    using Payload = std::variant<BigInt, IntVec, Perm, int, AbfPayload, WreathPayload>;

    GroupValue() = default;
    GroupValue(GroupPtr owner, Payload payload) : owner_(std::move(owner)), payload_(std::move(payload)) {}

    const GroupPtr& owner() const { return owner_; }
    const Payload& payload() const { return payload_; }

    const BigInt& as_int() const { return std::get<BigInt>(payload_); }
    const IntVec& as_vec() const { return std::get<IntVec>(payload_); }
    const Perm& as_perm() const { return std::get<Perm>(payload_); }
    int as_index() const { return std::get<int>(payload_); }
    const AbfPayload& as_abf() const { return std::get<AbfPayload>(payload_); }
    const WreathPayload& as_wreath() const { return std::get<WreathPayload>(payload_); }

private:
    GroupPtr owner_;
    Payload payload_;
};

inline bool specs_equal(const GroupSpec& a, const GroupSpec& b);
inline bool specs_equal(const GroupPtr& a, const GroupPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return specs_equal(*a, *b);
}

inline bool values_equal(const GroupValue& a, const GroupValue& b);
inline bool value_less(const GroupValue& a, const GroupValue& b);

inline bool operator==(const GroupValue& a, const GroupValue& b) { return values_equal(a, b); }
inline bool operator!=(const GroupValue& a, const GroupValue& b) { return !values_equal(a, b); }
inline bool operator<(const GroupValue& a, const GroupValue& b) { return value_less(a, b); }

namespace detail {

inline bool payloads_equal(const GroupValue::Payload& x, const GroupValue::Payload& y) {
    if (x.index() != y.index()) return false;
    switch (x.index()) {
        case 0: return std::get<BigInt>(x) == std::get<BigInt>(y);
        case 1: return std::get<IntVec>(x) == std::get<IntVec>(y);
        case 2: return std::get<Perm>(x) == std::get<Perm>(y);
        case 3: return std::get<int>(x) == std::get<int>(y);
        case 4: {
            const auto& a = std::get<GroupValue::AbfPayload>(x);
            const auto& b = std::get<GroupValue::AbfPayload>(y);
            return a.vec == b.vec && values_equal(*a.fin, *b.fin);
        }
        default: {
            const auto& a = std::get<GroupValue::WreathPayload>(x);
            const auto& b = std::get<GroupValue::WreathPayload>(y);
            if (a.base->size() != b.base->size()) return false;
            for (std::size_t i = 0; i < a.base->size(); ++i)
                if (!values_equal((*a.base)[i], (*b.base)[i])) return false;
            return values_equal(*a.top, *b.top);
        }
    }
}

// Canonical order: payload lexicographic, matching the variant layout.
inline bool payload_less(const GroupValue::Payload& x, const GroupValue::Payload& y) {
    if (x.index() != y.index()) return x.index() < y.index();
    switch (x.index()) {
        case 0: return std::get<BigInt>(x) < std::get<BigInt>(y);
        case 1: return std::get<IntVec>(x) < std::get<IntVec>(y);
        case 2: return std::get<Perm>(x) < std::get<Perm>(y);
        case 3: return std::get<int>(x) < std::get<int>(y);
        case 4: {
            const auto& a = std::get<GroupValue::AbfPayload>(x);
            const auto& b = std::get<GroupValue::AbfPayload>(y);
            if (a.vec != b.vec) return a.vec < b.vec;
            return value_less(*a.fin, *b.fin);
        }
        default: {
            const auto& a = std::get<GroupValue::WreathPayload>(x);
            const auto& b = std::get<GroupValue::WreathPayload>(y);
            for (std::size_t i = 0; i < std::min(a.base->size(), b.base->size()); ++i) {
                if (!values_equal((*a.base)[i], (*b.base)[i])) return value_less((*a.base)[i], (*b.base)[i]);
            }
            if (a.base->size() != b.base->size()) return a.base->size() < b.base->size();
            return value_less(*a.top, *b.top);
        }
    }
}

}  // namespace detail

inline bool values_equal(const GroupValue& a, const GroupValue& b) {
    return detail::payloads_equal(a.payload(), b.payload());
}
inline bool value_less(const GroupValue& a, const GroupValue& b) {
    return detail::payload_less(a.payload(), b.payload());
}

// ---------------------------------------------------------------------------
// Arithmetic

inline GroupValue identity(const GroupPtr& g);
inline GroupValue multiply(const GroupValue& a, const GroupValue& b);
inline GroupValue inverse(const GroupValue& a);

namespace detail {
inline void require_same_owner(const GroupValue& a, const GroupValue& b) {
    if (!specs_equal(a.owner(), b.owner())) throw Error("group arithmetic: mismatched owners");
}
}  // namespace detail

/// Index of a value inside a canonical (sorted) element list.
inline std::size_t canonical_index(const std::vector<GroupValue>& elems, const GroupValue& v) {
    auto it = std::lower_bound(elems.begin(), elems.end(), v, value_less);
    if (it == elems.end() || !values_equal(*it, v)) throw Error("canonical_index: element not found");
    return static_cast<std::size_t>(it - elems.begin());
}

namespace detail {
inline void abf_indices(const GroupSpec& g, const GroupValue& h1, const GroupValue& h2,
                        std::size_t& i, std::size_t& j) {
    i = canonical_index(*g.finite_elements, h1);
    j = canonical_index(*g.finite_elements, h2);
}
}  // namespace detail

inline GroupValue identity(const GroupPtr& g) {
    switch (g->kind) {
        case GroupKind::Cyclic: return GroupValue(g, BigInt(0));
        case GroupKind::FreeAbelian: return GroupValue(g, zero_vec(g->rank));
        case GroupKind::Permutation: return GroupValue(g, Perm::identity(g->degree));
        case GroupKind::Table: return GroupValue(g, g->table_identity);
        case GroupKind::AbelianByFinite:
            return GroupValue(g, GroupValue::AbfPayload{zero_vec(g->rank),
                              std::make_shared<GroupValue>(identity(g->finite_part))});
        case GroupKind::Wreath: {
            auto base = std::make_shared<std::vector<GroupValue>>();
            base->assign(g->top_elements->size(), identity(g->wreath_base));
            return GroupValue(g, GroupValue::WreathPayload{std::move(base),
                              std::make_shared<GroupValue>(identity(g->wreath_top))});
        }
    }
    throw Error("identity: unknown kind");
}

/// Index of a top-group element inside the wreath spec's canonical list.
inline std::size_t top_index(const GroupSpec& wreath, const GroupValue& t) {
    return canonical_index(*wreath.top_elements, t);
}

inline GroupValue multiply(const GroupValue& a, const GroupValue& b) {
    detail::require_same_owner(a, b);
    const GroupPtr& g = a.owner();
    switch (g->kind) {
        case GroupKind::Cyclic: {
            BigInt s = a.as_int() + b.as_int();
            if (g->modulus) s = mod_floor(s, g->modulus);
            return GroupValue(g, std::move(s));
        }
        case GroupKind::FreeAbelian: return GroupValue(g, vec_add(a.as_vec(), b.as_vec()));
        case GroupKind::Permutation: return GroupValue(g, a.as_perm().compose(b.as_perm()));
        case GroupKind::Table: return GroupValue(g, g->table_at(a.as_index(), b.as_index()));
        case GroupKind::AbelianByFinite: {
            const auto& x = a.as_abf();
            const auto& y = b.as_abf();
            std::size_t i = 0, j = 0;
            detail::abf_indices(*g, *x.fin, *y.fin, i, j);
            IntVec v = vec_add(vec_add(x.vec, mat_apply(g->theta[i], y.vec)), g->cocycle[i][j]);
            return GroupValue(g, GroupValue::AbfPayload{std::move(v),
                              std::make_shared<GroupValue>(multiply(*x.fin, *y.fin))});
        }
        case GroupKind::Wreath: {
            const auto& x = a.as_wreath();
            const auto& y = b.as_wreath();
            const auto& tops = *g->top_elements;
            GroupValue t1_inv = inverse(*x.top);
            auto base = std::make_shared<std::vector<GroupValue>>();
            base->reserve(tops.size());
            for (std::size_t k = 0; k < tops.size(); ++k) {
                // (F1 * {}^{t1}F2)(x) = F1(x) * F2(t1^{-1} x)
                std::size_t shifted = top_index(*g, multiply(t1_inv, tops[k]));
                base->push_back(multiply((*x.base)[k], (*y.base)[shifted]));
            }
            return GroupValue(g, GroupValue::WreathPayload{std::move(base),
                              std::make_shared<GroupValue>(multiply(*x.top, *y.top))});
        }
    }
    throw Error("multiply: unknown kind");
}

inline GroupValue inverse(const GroupValue& a) {
    const GroupPtr& g = a.owner();
    switch (g->kind) {
        case GroupKind::Cyclic: {
            BigInt v = -a.as_int();
            if (g->modulus) v = mod_floor(v, g->modulus);
            return GroupValue(g, std::move(v));
        }
        case GroupKind::FreeAbelian: return GroupValue(g, vec_neg(a.as_vec()));
        case GroupKind::Permutation: return GroupValue(g, a.as_perm().inverse());
        case GroupKind::Table: return GroupValue(g, g->table_inverse[static_cast<std::size_t>(a.as_index())]);
        case GroupKind::AbelianByFinite: {
            // (v,h)^{-1} = (-theta(h^{-1})(v + c(h,h^{-1})), h^{-1})
            const auto& x = a.as_abf();
            GroupValue hinv = inverse(*x.fin);
            std::size_t i = 0, j = 0;
            detail::abf_indices(*g, *x.fin, hinv, i, j);
            IntVec w = vec_neg(mat_apply(g->theta[j], vec_add(x.vec, g->cocycle[i][j])));
            return GroupValue(g, GroupValue::AbfPayload{std::move(w), std::make_shared<GroupValue>(std::move(hinv))});
        }
        case GroupKind::Wreath: {
            // (F,t)^{-1} = (x -> F(t x)^{-1}, t^{-1})
            const auto& x = a.as_wreath();
            const auto& tops = *g->top_elements;
            auto base = std::make_shared<std::vector<GroupValue>>();
            base->reserve(tops.size());
            for (std::size_t k = 0; k < tops.size(); ++k) {
                std::size_t shifted = top_index(*g, multiply(*x.top, tops[k]));
                base->push_back(inverse((*x.base)[shifted]));
            }
            return GroupValue(g, GroupValue::WreathPayload{std::move(base),
                              std::make_shared<GroupValue>(inverse(*x.top))});
        }
    }
    throw Error("inverse: unknown kind");
}

inline bool is_identity(const GroupValue& a) { return values_equal(a, identity(a.owner())); }

inline GroupValue power(const GroupValue& a, long long e) {
    GroupValue acc = identity(a.owner());
    GroupValue base = e < 0 ? inverse(a) : a;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1ull) acc = multiply(acc, base);
        base = multiply(base, base);
        k >>= 1;
    }
    return acc;
}

/// Multiplicative order (finite values only; throws past the cap).
inline std::uint64_t element_order(const GroupValue& a) {
    GroupValue x = a;
    std::uint64_t n = 1;
    const std::uint64_t cap = max_exhaustive_order() * 4;
    while (!is_identity(x)) {
        x = multiply(x, a);
        if (++n > cap) throw Error("element_order: exceeded order cap");
    }
    return n;
}

// ---------------------------------------------------------------------------
// Display

inline std::string to_string(const GroupValue& a) {
    const GroupSpec& g = *a.owner();
    switch (g.kind) {
        case GroupKind::Cyclic: return a.as_int().str();
        case GroupKind::FreeAbelian: return vec_to_string(a.as_vec());
        case GroupKind::Permutation: return a.as_perm().str();
        case GroupKind::Table: {
            int i = a.as_index();
            if (!g.table_labels.empty()) return g.table_labels[static_cast<std::size_t>(i)];
            return "g" + std::to_string(i);
        }
        case GroupKind::AbelianByFinite:
            return "(" + vec_to_string(a.as_abf().vec) + ";" + to_string(*a.as_abf().fin) + ")";
        case GroupKind::Wreath: {
            std::string s = "(F=[";
            const auto& w = a.as_wreath();
            for (std::size_t i = 0; i < w.base->size(); ++i) {
                if (i) s += ",";
                s += to_string((*w.base)[i]);
            }
            return s + "];t=" + to_string(*w.top) + ")";
        }
    }
    throw Error("to_string: unknown kind");
}

inline bool specs_equal(const GroupSpec& a, const GroupSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GroupKind::Cyclic: return a.modulus == b.modulus;
        case GroupKind::FreeAbelian: return a.rank == b.rank;
        case GroupKind::Permutation: {
            if (a.degree != b.degree || a.perm_generators.size() != b.perm_generators.size()) return false;
            for (std::size_t i = 0; i < a.perm_generators.size(); ++i)
                if (a.perm_generators[i] != b.perm_generators[i]) return false;
            return true;
        }
        case GroupKind::Table: return a.table_order == b.table_order && a.table == b.table;
        case GroupKind::AbelianByFinite:
            return a.rank == b.rank && specs_equal(a.finite_part, b.finite_part) && a.theta == b.theta &&
                   a.cocycle == b.cocycle;
        case GroupKind::Wreath:
            return specs_equal(a.wreath_base, b.wreath_base) && specs_equal(a.wreath_top, b.wreath_top);
    }
    return false;
}

inline std::string spec_name(const GroupSpec& g) {
    switch (g.kind) {
        case GroupKind::Cyclic: return g.modulus ? "Z" + std::to_string(g.modulus) : "Z";
        case GroupKind::FreeAbelian: return "Z^" + std::to_string(g.rank);
        case GroupKind::Permutation: return "Perm(deg " + std::to_string(g.degree) + ")";
        case GroupKind::Table: return "Table(order " + std::to_string(g.table_order) + ")";
        case GroupKind::AbelianByFinite:
            return "Z^" + std::to_string(g.rank) + " by " + spec_name(*g.finite_part);
        case GroupKind::Wreath: return spec_name(*g.wreath_base) + " wr " + spec_name(*g.wreath_top);
    }
    return "?";
}

}  // namespace corkcalc
