#pragma once

// Exact counting of multisets of connected pieces: coefficients of
// prod_j (1 - z^j)^{-gamma(j)} in arbitrary precision, computed by two
// independent routes, plus partition specializations and the power-sum
// decomposition DP.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locograph/census.hpp"

namespace loco {

struct BigCountTable {
    std::vector<mpz_class> b;  // b[0..n_max], b[0] = 1
    std::string method;        // "per-type DP" | "euler-recurrence"

    int64_t n_max() const { return static_cast<int64_t>(b.size()) - 1; }
};

// gamma is indexed by weight: gamma[j] = number of types of weight j
// (gamma[0] ignored). Weight classes j with gamma[j] > 0 are folded in as
// (1 - z^j)^{-gamma(j)} via the multiset-coefficient series
// sum_k C(gamma(j)+k-1, k) z^{jk}; cost is independent of the size of
// gamma(j).
BigCountTable euler_transform_per_type(std::span<const int64_t> gamma, int64_t n_max);

// Independent route: n*b(n) = sum_{m<=n} c(m) b(n-m) with
// c(m) = sum_{j | m} j*gamma(j). The division by n must be exact; a nonzero
// remainder throws internal_error.
BigCountTable euler_transform_recurrence(std::span<const int64_t> gamma, int64_t n_max);

// c(m) array backing the recurrence (also drives the sampler).
std::vector<mpz_class> divisor_weight_sums(std::span<const int64_t> gamma, int64_t n_max);

// b(n) for the (d, r) model behind the census table.
mpz_class count_graphs(const CensusTable& census, int64_t n);

// Partitions of n with every part >= min_part.
mpz_class restricted_partition_count(int64_t n, int64_t min_part);
// For all 0..n at once (shared DP).
std::vector<mpz_class> restricted_partition_table(int64_t n, int64_t min_part);

// A partition of n into d-th powers of integers > s, lexicographically
// greatest part list (descending), or nullopt when none exists.
std::optional<std::vector<int64_t>> find_power_partition(int64_t n, int d, int64_t s);

}  // namespace loco
