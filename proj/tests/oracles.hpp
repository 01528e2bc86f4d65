#pragma once

// Independent brute-force oracles shared by the unit and acceptance suites.
// Everything here recomputes expected values from first principles, separate
// from the library's own evaluation paths.

#include "corkcalc/corkcalc.hpp"

#include <map>
#include <random>
#include <vector>

namespace oracles {

using namespace corkcalc;

/// The rotation-block generator word assembled from its factor hats:
/// f_0 shifts the copy index, f_m twists copy m only. Returns the composed
/// permutation of the n^2 leaves (i,j), as a leaf map.
inline std::map<Leaf, Leaf> zn_generator_by_word(int n) {
    auto f0 = [n](const Leaf& l) { return Leaf{(l[0] - 1 + 1) % n + 1, l[1]}; };
    auto fm = [n](int m, const Leaf& l) {
        if (l[0] != m) return l;
        return Leaf{l[0], (l[1] - 1 + 1) % n + 1};
    };
    std::map<Leaf, Leaf> word;
    for (long long i = 1; i <= n; ++i)
        for (long long j = 1; j <= n; ++j) {
            // f_1 f_2 ... f_n f_0 applied right to left
            Leaf cur = f0({i, j});
            for (int m = n; m >= 1; --m) cur = fm(m, cur);
            word[{i, j}] = cur;
        }
    return word;
}

/// Element orders of a finite group as a sorted multiset; an isomorphism
/// invariant used to cross-check small wreath products.
inline std::vector<std::uint64_t> order_multiset(const GroupPtr& g) {
    std::vector<std::uint64_t> out;
    for (const auto& x : enumerate_elements(g)) out.push_back(element_order(x));
    std::sort(out.begin(), out.end());
    return out;
}

/// Even permutations of S_n by inversion-count parity: the independent
/// membership oracle for alternating groups.
inline bool is_even_permutation(const GroupValue& v) { return v.as_perm().is_even(); }

/// Deterministic random wreath element of Z^m wr H with coordinates in
/// [-range, range].
template <typename Rng>
inline GroupValue random_zm_wreath_element(const GroupPtr& wreath, int range, Rng& rng) {
    const GroupPtr& base = wreath->wreath_base;
    const auto& tops = *wreath->top_elements;
    std::uniform_int_distribution<int> coord(-range, range);
    std::uniform_int_distribution<std::size_t> tpick(0, tops.size() - 1);
    std::vector<GroupValue> vals;
    vals.reserve(tops.size());
    for (std::size_t k = 0; k < tops.size(); ++k) {
        IntVec v;
        for (int j = 0; j < base->rank; ++j) v.push_back(coord(rng));
        vals.push_back(free_abelian_value(base, std::move(v)));
    }
    return wreath_value(wreath, std::move(vals), tops[tpick(rng)]);
}

/// All base maps with coordinates in [lo, hi] for Z^m wr H (odometer).
inline std::vector<GroupValue> all_zm_wreath_elements(const GroupPtr& wreath, int lo, int hi) {
    const GroupPtr& base = wreath->wreath_base;
    const auto& tops = *wreath->top_elements;
    const int span = hi - lo + 1;
    const std::size_t coords = tops.size() * static_cast<std::size_t>(base->rank);
    std::vector<int> odo(coords, 0);
    std::vector<GroupValue> out;
    for (;;) {
        std::vector<GroupValue> vals;
        vals.reserve(tops.size());
        std::size_t c = 0;
        for (std::size_t k = 0; k < tops.size(); ++k) {
            IntVec v;
            for (int j = 0; j < base->rank; ++j) v.push_back(lo + odo[c++]);
            vals.push_back(free_abelian_value(base, std::move(v)));
        }
        for (const auto& t : tops) out.push_back(wreath_value(wreath, vals, t));
        std::size_t pos = 0;
        while (pos < coords && ++odo[pos] == span) odo[pos++] = 0;
        if (pos == coords) break;
    }
    return out;
}

}  // namespace oracles
