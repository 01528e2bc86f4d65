#pragma once

#include "corkcalc/subgroup.hpp"

#include <cstdint>
#include <vector>

namespace corkcalc {

/// A descending chain G = G_0 |> G_1 |> ... |> G_r = 1 of subgroups of a
/// finite group, each normal in its predecessor. `quotient_orders` is filled
/// when every quotient is cyclic of the recorded order.
struct SubnormalSeries {
    GroupPtr group;
    std::vector<std::vector<GroupValue>> subgroups;        // sorted element lists, [0] = whole group
    std::vector<std::vector<GroupValue>> step_generators;  // generators of subgroups[i], i >= 1
    std::vector<std::uint64_t> quotient_orders;            // per step, when cyclic (prime series)

    std::size_t length() const { return subgroups.empty() ? 0 : subgroups.size() - 1; }
};

/// Checks the structural invariants of a series: closure, strict descent,
/// normality of each step. Throws with a witness on violation.
inline void verify_series(const SubnormalSeries& s) {
    if (s.subgroups.empty()) throw Error("series: empty");
    if (s.subgroups.back().size() != 1) throw Error("series: does not terminate at the trivial group");
    for (std::size_t i = 0; i < s.subgroups.size(); ++i) {
        if (!is_closed_subgroup(s.subgroups[i])) throw Error("series: step " + std::to_string(i) + " is not a subgroup");
        if (i == 0) continue;
        for (const auto& v : s.subgroups[i])
            if (!contains(s.subgroups[i - 1], v)) throw Error("series: step " + std::to_string(i) + " not contained in predecessor");
        if (auto w = normality_witness(s.subgroups[i - 1], s.subgroups[i]))
            throw Error("series: normality violated at (" + to_string(w->first) + ", " + to_string(w->second) + ")");
        if (!s.quotient_orders.empty()) {
            std::uint64_t idx = static_cast<std::uint64_t>(s.subgroups[i - 1].size() / s.subgroups[i].size());
            if (idx != s.quotient_orders[i - 1]) throw Error("series: recorded quotient order mismatch");
        }
    }
}

struct DerivedSeries {
    SubnormalSeries series;                        // meaningful iff solvable
    bool solvable = false;
    std::vector<GroupValue> stable_subgroup;       // the perfect subgroup where descent stops
};

/// Derived series by brute-force commutator closure. Terminates at 1 exactly
/// for solvable groups; otherwise reports the stable perfect subgroup.
inline DerivedSeries derived_series(const GroupPtr& g) {
    auto order = group_order(g);
    if (!order) throw Error("derived_series: group must be finite");
    DerivedSeries out;
    out.series.group = g;
    std::vector<GroupValue> current = enumerate_elements(g);
    out.series.subgroups.push_back(current);
    while (current.size() > 1) {
        std::vector<GroupValue> next = commutator_closure(g, current);
        if (next.size() == current.size()) {
            out.solvable = false;
            out.stable_subgroup = std::move(next);
            return out;
        }
        out.series.step_generators.push_back(greedy_generators(g, next));
        out.series.subgroups.push_back(next);
        current = std::move(next);
    }
    out.solvable = true;
    return out;
}

namespace detail {

/// All index-p subgroups of `whole` that contain `modsub`, where
/// whole/modsub is elementary abelian of exponent p. Returned sorted so the
/// lexicographically smallest element list comes first.
inline std::vector<std::vector<GroupValue>> index_p_overgroups(const GroupPtr& g,
                                                               const std::vector<GroupValue>& whole,
                                                               const std::vector<GroupValue>& modsub,
                                                               std::uint64_t p) {
    CosetDecomposition dec = left_cosets(g, whole, modsub);
    const std::size_t nv = dec.cosets.size();
    // greedy basis of the elementary abelian quotient
    std::vector<std::size_t> basis;
    std::set<std::size_t> span{dec.identity_coset};
    auto coset_mul = [&](std::size_t a, std::size_t b) {
        return dec.coset_of(multiply(dec.cosets[a].front(), dec.cosets[b].front()));
    };
    for (std::size_t c = 0; c < nv && span.size() < nv; ++c) {
        if (span.count(c)) continue;
        basis.push_back(c);
        std::set<std::size_t> grown;
        for (std::size_t s : span) {
            std::size_t cur = s;
            for (std::uint64_t k = 0; k < p; ++k) {
                grown.insert(cur);
                cur = coset_mul(cur, c);
            }
        }
        span = std::move(grown);
    }
    const std::size_t k = basis.size();
    // coordinates of every coset
    std::map<std::size_t, std::vector<std::uint64_t>> coords;
    std::vector<std::uint64_t> expo(k, 0);
    for (;;) {
        std::size_t cur = dec.identity_coset;
        for (std::size_t i = 0; i < k; ++i)
            for (std::uint64_t t = 0; t < expo[i]; ++t) cur = coset_mul(cur, basis[i]);
        coords.emplace(cur, expo);
        std::size_t pos = 0;
        while (pos < k && ++expo[pos] == p) expo[pos++] = 0;
        if (pos == k) break;
    }
    if (coords.size() != nv) throw Error("index_p_overgroups: quotient is not elementary abelian");
    // kernels of nonzero functionals
    std::set<std::vector<GroupValue>> results;
    std::vector<std::uint64_t> lambda(k, 0);
    for (;;) {
        std::size_t pos = 0;
        while (pos < k && ++lambda[pos] == p) lambda[pos++] = 0;
        if (pos == k) break;
        std::vector<GroupValue> members;
        for (const auto& [coset_idx, xy] : coords) {
            std::uint64_t dot = 0;
            for (std::size_t i = 0; i < k; ++i) dot = (dot + lambda[i] * xy[i]) % p;
            if (dot == 0)
                for (const auto& v : dec.cosets[coset_idx]) members.push_back(v);
        }
        std::sort(members.begin(), members.end(), value_less);
        if (members.size() * p == whole.size()) results.insert(std::move(members));
    }
    std::vector<std::vector<GroupValue>> out(results.begin(), results.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), value_less);
    });
    return out;
}

}  // namespace detail

/// Subnormal series with prime cyclic quotients, built by repeatedly pulling
/// back an index-p subgroup of the abelianization. Deterministic: smallest
/// prime divisor first, ties broken by canonical element order.
inline SubnormalSeries prime_cyclic_series(const GroupPtr& g) {
    DerivedSeries ds = derived_series(g);
    if (!ds.solvable)
        throw Error("prime_cyclic_series: derived series does not terminate (stable subgroup of order " +
                    std::to_string(ds.stable_subgroup.size()) + ")");
    SubnormalSeries s;
    s.group = g;
    std::vector<GroupValue> current = enumerate_elements(g);
    s.subgroups.push_back(current);
    while (current.size() > 1) {
        std::vector<GroupValue> derived = commutator_closure(g, current);
        std::uint64_t ab_order = static_cast<std::uint64_t>(current.size() / derived.size());
        std::uint64_t p = smallest_prime_factor(ab_order);
        // M = < derived, p-th powers >: the quotient current/M is elementary abelian
        std::vector<GroupValue> mgens = derived;
        for (const auto& x : current) mgens.push_back(power(x, static_cast<long long>(p)));
        std::vector<GroupValue> m = subgroup_closure(g, mgens);
        std::vector<std::vector<GroupValue>> candidates = detail::index_p_overgroups(g, current, m, p);
        if (candidates.empty()) throw Error("prime_cyclic_series: no index-p subgroup found");
        std::vector<GroupValue> next = candidates.front();
        s.step_generators.push_back(greedy_generators(g, next));
        s.quotient_orders.push_back(p);
        s.subgroups.push_back(next);
        current = std::move(next);
    }
    verify_series(s);
    return s;
}

}  // namespace corkcalc
