#pragma once

// Exact uniform sampling of an unlabelled n-vertex graph from the
// pure-translation model: a uniform multiset of connected components is
// drawn by the recurrence method (all probabilities are exact big-integer
// ratios realized as threshold draws), then each chosen orbit class is
// realized as a quotient graph.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "locograph/census.hpp"
#include "locograph/counting.hpp"
#include "locograph/graph.hpp"

namespace loco {

struct SampleSpec {
    int d = 0;
    int64_t r = 0;
    int64_t n = 0;
    uint64_t seed = 0;
    const CensusTable* census = nullptr;
    const BigCountTable* counts = nullptr;
    // Assert sum_{j,k} j*gamma(j)*b(m-jk) == m*b(m) at every visited state
    // (exact big-int identity). Quadratic in n; callers disable it for
    // large-n batch runs.
    bool verify_sums = true;
};

struct SampleReport {
    std::vector<int64_t> component_orders;                      // descending
    int64_t largest_component = 0;
    std::vector<std::pair<int64_t, int64_t>> component_orbits;  // (index, pos)
    double aut_log_lower_bound = 0.0;
    int64_t local_limit_radius = 0;
    double local_limit_fraction = 0.0;
};

// Uniform multiset of weighted types: type = (weight j, position within the
// gamma(j) types of that weight).
class MultisetSampler {
  public:
    // gamma[j] types of weight j; b must be the Euler transform of gamma up
    // to at least the n being sampled.
    MultisetSampler(std::vector<int64_t> gamma, const BigCountTable& b);

    // Multiset of (weight, type position), sorted by descending weight.
    // Throws empty_support_error when b(n) = 0.
    std::vector<std::pair<int64_t, int64_t>> sample(int64_t n, uint64_t seed,
                                                    bool verify_sums = true) const;

  private:
    std::vector<int64_t> gamma_;
    const BigCountTable* b_;
    std::vector<mpz_class> c_;  // c(m) = sum_{j|m} j*gamma(j)
};

std::pair<LocalGraph, SampleReport> sample_graph(const SampleSpec& spec, int64_t local_radius);

// Uniform partition of n with all parts >= min_part (descending part list).
std::vector<int64_t> sample_restricted_partition(int64_t n, int64_t min_part, uint64_t seed,
                                                 bool verify_sums = true);

struct BatchAggregate {
    int64_t samples = 0;
    std::vector<int64_t> largest_component;  // sorted ascending, all samples
    double mean_local_limit_fraction = 0.0;
    double mean_aut_log_lower_bound = 0.0;
    double mean_component_count = 0.0;

    int64_t largest_component_quantile(double q) const;
};

// Runs `samples` independent draws with per-sample derived seeds; aggregate
// is order-independent and reproducible from (seed, samples).
BatchAggregate batch_experiment(const SampleSpec& spec, int64_t samples, int64_t local_radius,
                                int threads = 1,
                                const std::function<void(int64_t, const SampleReport&)>& on_sample =
                                    nullptr);

}  // namespace loco
