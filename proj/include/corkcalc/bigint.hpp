#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace corkcalc {

/// Exact arbitrary-precision integer. Twist labels, free-abelian vectors and
/// cocycle values all use this type so nothing ever wraps silently.
using BigInt = boost::multiprecision::cpp_int;

using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;  // rows

inline BigInt mod_floor(const BigInt& a, std::uint64_t n) {
    BigInt m = a % n;
    if (m < 0) m += n;
    return m;
}

inline IntVec zero_vec(int rank) { return IntVec(static_cast<std::size_t>(rank)); }

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec vec_neg(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool vec_is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline IntMat identity_mat(int n) {
    IntMat m(static_cast<std::size_t>(n), zero_vec(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

inline IntVec mat_apply(const IntMat& m, const IntVec& v) {
    IntVec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        BigInt s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
        r[i] = s;
    }
    return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    IntMat r(n, IntVec(c));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            BigInt s = 0;
            for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            r[i][j] = s;
        }
    return r;
}

/// Smallest prime factor of n (n >= 2), by trial division. Desk-scale inputs.
inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

inline std::string vec_to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    s += ")";
    return s;
}

}  // namespace corkcalc
