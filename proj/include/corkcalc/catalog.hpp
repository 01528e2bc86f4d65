#pragma once

#include "corkcalc/enumerate.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace corkcalc {

namespace detail {

/// Cayley table of a direct product of cyclic groups.
inline GroupPtr abelian_table(const std::vector<int>& orders) {
    int n = 1;
    for (int k : orders) n *= k;
    auto decode = [&](int x) {
        std::vector<int> d(orders.size());
        for (std::size_t i = orders.size(); i-- > 0;) {
            d[i] = x % orders[i];
            x /= orders[i];
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int x = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + d[i];
        return x;
    };
    std::vector<int> tbl(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        std::vector<int> da = decode(a);
        std::string lab = "(";
        for (std::size_t i = 0; i < da.size(); ++i) lab += (i ? "," : "") + std::to_string(da[i]);
        labels.push_back(lab + ")");
        for (int b = 0; b < n; ++b) {
            std::vector<int> dc = decode(b);
            for (std::size_t i = 0; i < orders.size(); ++i) dc[i] = (dc[i] + da[i]) % orders[i];
            tbl[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] = encode(dc);
        }
    }
    return table_group(n, std::move(tbl), std::move(labels));
}

/// The quaternion group as a Cayley table: elements +-1, +-i, +-j, +-k.
inline GroupPtr quaternion_table() {
    // element x = (sign, axis), axis 0..3 = 1,i,j,k; index = axis*2 + (sign<0)
    struct Q {
        int sign, axis;
    };
    auto mul = [](Q a, Q b) {
        static const int axis_tbl[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sign_tbl[4][4] = {
            {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
        return Q{a.sign * b.sign * sign_tbl[a.axis][b.axis], axis_tbl[a.axis][b.axis]};
    };
    auto idx = [](Q a) { return a.axis * 2 + (a.sign < 0 ? 1 : 0); };
    auto at = [](int i) { return Q{i % 2 ? -1 : +1, i / 2}; };
    std::vector<int> tbl(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) tbl[static_cast<std::size_t>(a * 8 + b)] = idx(mul(at(a), at(b)));
    std::vector<std::string> labels{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return table_group(8, std::move(tbl), std::move(labels));
}

}  // namespace detail

struct CatalogEntry {
    std::string name;
    std::string description;
    GroupPtr group;
};

/// Built-in groups. Desk-scale: everything finite here has order <= 60.
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        auto add = [&](std::string name, std::string desc, GroupPtr g) {
            v.push_back({std::move(name), std::move(desc), std::move(g)});
        };
        add("Z", "infinite cyclic group", cyclic_group(0));
        for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 12})
            add("Z" + std::to_string(n), "cyclic group of order " + std::to_string(n),
                cyclic_group(static_cast<std::uint64_t>(n)));
        add("V4", "Klein four-group", detail::abelian_table({2, 2}));
        add("Z4xZ2", "direct product Z4 x Z2", detail::abelian_table({4, 2}));
        add("Z3xZ3", "direct product Z3 x Z3", detail::abelian_table({3, 3}));
        add("S3", "symmetric group on 3 points",
            permutation_group(3, {perm_from_cycles(3, {{1, 2}}), perm_from_cycles(3, {{1, 2, 3}})}));
        add("A3", "alternating group on 3 points", permutation_group(3, {perm_from_cycles(3, {{1, 2, 3}})}));
        add("D4", "dihedral group of order 8",
            permutation_group(4, {perm_from_cycles(4, {{1, 2, 3, 4}}), perm_from_cycles(4, {{1, 3}})}));
        add("Q8", "quaternion group", detail::quaternion_table());
        add("D6", "dihedral group of order 12",
            permutation_group(6, {perm_from_cycles(6, {{1, 2, 3, 4, 5, 6}}),
                                  perm_from_cycles(6, {{1, 6}, {2, 5}, {3, 4}})}));
        add("A4", "alternating group on 4 points",
            permutation_group(4, {perm_from_cycles(4, {{1, 2, 3}}), perm_from_cycles(4, {{1, 2}, {3, 4}})}));
        add("S4", "symmetric group on 4 points",
            permutation_group(4, {perm_from_cycles(4, {{1, 2}}), perm_from_cycles(4, {{1, 2, 3, 4}})}));
        add("A5", "alternating group on 5 points (not solvable)",
            permutation_group(5, {perm_from_cycles(5, {{1, 2, 3, 4, 5}}), perm_from_cycles(5, {{1, 2, 3}})}));
        return v;
    }();
    return entries;
}

/// Resolves a catalog name; "Z<n>" works for any n.
inline GroupPtr catalog_group(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e.group;
    if (name.size() > 1 && name[0] == 'Z') {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) return cyclic_group(std::stoull(name.substr(1)));
    }
    throw Error("catalog: unknown group '" + name + "'");
}

}  // namespace corkcalc
