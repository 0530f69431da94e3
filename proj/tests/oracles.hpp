#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: brute-force partition enumeration, direct lattice-point searches,
// and a staged-DP reference sampler.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

// All partitions of n with parts in [min_part, max_part], descending parts.
inline void enumerate_partitions(int64_t n, int64_t min_part, int64_t max_part,
                                 std::vector<int64_t>& cur,
                                 const std::function<void(const std::vector<int64_t>&)>& emit) {
    if (n == 0) {
        emit(cur);
        return;
    }
    for (int64_t part = std::min(n, max_part); part >= min_part; --part) {
        cur.push_back(part);
        enumerate_partitions(n - part, min_part, part, cur, emit);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int64_t>> partitions(int64_t n, int64_t min_part = 1) {
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> cur;
    enumerate_partitions(n, min_part, n, cur, [&](const std::vector<int64_t>& p) {
        out.push_back(p);
    });
    return out;
}

inline int64_t partition_count(int64_t n, int64_t min_part = 1) {
    int64_t count = 0;
    std::vector<int64_t> cur;
    enumerate_partitions(n, min_part, n, cur, [&](const std::vector<int64_t>&) { ++count; });
    return count;
}

// Minimum L1 norm over nonzero lattice vectors by direct coefficient search;
// d=2 only, bound chosen generously for the tested index range.
inline int64_t min_distance_brute_2d(int64_t b11, int64_t b12, int64_t b22, int64_t span = 80) {
    int64_t best = INT64_MAX;
    for (int64_t l1 = -span; l1 <= span; ++l1) {
        for (int64_t l2 = -span; l2 <= span; ++l2) {
            if (l1 == 0 && l2 == 0) continue;
            const int64_t x = b11 * l1 + b12 * l2;
            const int64_t y = b22 * l2;
            best = std::min(best, std::abs(x) + std::abs(y));
        }
    }
    return best;
}

// Multiset counts by explicit enumeration: gamma[j] types of weight j,
// number of multisets of total weight n (small n only).
inline mpz_class multiset_count_brute(const std::vector<int64_t>& gamma, int64_t n) {
    // DP over (weight class, remaining), multiplicities matter through the
    // multiset coefficient C(gamma+k-1, k)
    std::map<std::pair<int64_t, int64_t>, mpz_class> memo;
    std::function<mpz_class(int64_t, int64_t)> go = [&](int64_t j, int64_t m) -> mpz_class {
        if (m == 0) return 1;
        if (j <= 0) return 0;
        auto key = std::make_pair(j, m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        mpz_class total = 0;
        const int64_t g = j < static_cast<int64_t>(gamma.size()) ? gamma[j] : 0;
        if (g <= 0) {
            total = go(j - 1, m);
        } else {
            mpz_class coef = 1;  // C(g+k-1, k)
            for (int64_t k = 0; k * j <= m; ++k) {
                if (k > 0) {
                    coef *= g + k - 1;
                    mpz_divexact_ui(coef.get_mpz_t(), coef.get_mpz_t(),
                                    static_cast<unsigned long>(k));
                }
                total += coef * go(j - 1, m - k * j);
            }
        }
        memo[key] = total;
        return total;
    };
    return go(std::min<int64_t>(n, static_cast<int64_t>(gamma.size()) - 1), n);
}

}  // namespace oracle
