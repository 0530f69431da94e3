#pragma once

// The connected-graph census: per index n, the B_d-orbit classes of
// sublattices whose minimum distance is at least 2r+2 (pure-translation
// classes). Exact for d=1 (cycles); for d >= 2 the census enumerates in
// Hermite normal form and filters by the distance predicate.

#include <cstdint>
#include <vector>

#include "locograph/hnf.hpp"

namespace loco {

struct CensusTable {
    int d = 0;
    int64_t r = 0;
    int64_t max_index = 0;
    std::vector<int64_t> gamma;                    // gamma[n], n = 0..max_index; gamma[0] = 0
    std::vector<std::vector<OrbitClass>> orbits;   // per n, sorted by canonical rep

    int64_t first_nonzero_weight() const;
    int64_t total_classes() const;
};

// Smallest radius for which the pure-translation restriction is the
// asymptotically exact model: r*(2)=2, r*(3..7)=3, ceil((d-1)/2) beyond;
// r*(1)=1.
int64_t r_star(int d);

// Throws usage_error if d >= 2 and r < r*(d).
CensusTable build_census(int d, int64_t r, int64_t max_index, int threads = 1);

// The per-index census job: orbit classes of index-n lattices with minimum
// distance >= 2r+2, sorted by canonical representative.
std::vector<OrbitClass> census_index_orbits(int d, int64_t r, int64_t n);
// Fills t.gamma[n] / t.orbits[n] for n in [lo, hi].
void build_census_range(CensusTable& t, int64_t lo, int64_t hi, int threads);

// Number of index <= x sublattices invariant under sigma.
int64_t count_invariant_lattices(int d, const SignedPerm& sigma, int64_t x);
// ... at the listed checkpoints, one enumeration pass.
std::vector<int64_t> count_invariant_lattices_at(int d, const SignedPerm& sigma,
                                                 const std::vector<int64_t>& checkpoints);

// Number of index <= x sublattices with minimum distance <= r (d >= 2).
int64_t count_small_distance_lattices(int d, int64_t r, int64_t x);
std::vector<int64_t> count_small_distance_lattices_at(int d, int64_t r,
                                                      const std::vector<int64_t>& checkpoints);

struct OrbitCountStats {
    int64_t orbit_count = 0;
    double cd_xd = 0.0;
    double ratio = 0.0;
};
// Exact orbit count of all sublattices with index <= x against c_d x^d.
OrbitCountStats orbit_count_vs_cd(int d, int64_t x);
int64_t orbit_count_upto(int d, int64_t x, int threads = 1);

}  // namespace loco
