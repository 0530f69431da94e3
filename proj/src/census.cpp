#include "locograph/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "locograph/asymptotics.hpp"
#include "locograph/errors.hpp"

namespace loco {

int64_t CensusTable::first_nonzero_weight() const {
    for (int64_t n = 1; n <= max_index; ++n)
        if (gamma[n] > 0) return n;
    return 0;
}

int64_t CensusTable::total_classes() const {
    int64_t t = 0;
    for (int64_t n = 1; n <= max_index; ++n) t += gamma[n];
    return t;
}

int64_t r_star(int d) {
    if (d <= 1) return 1;
    if (d == 2) return 2;
    if (d <= 7) return 3;
    return (d - 1 + 1) / 2;  // ceil((d-1)/2)
}

namespace {

template <typename Fn>
void parallel_indices(int64_t lo, int64_t hi, int threads, Fn per_index) {
    if (threads <= 1) {
        for (int64_t n = lo; n <= hi; ++n) per_index(n);
        return;
    }
    std::atomic<int64_t> next{lo};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                int64_t n = next.fetch_add(1);
                if (n > hi) break;
                per_index(n);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

// A lattice is retained iff it equals its own canonical representative, so
// each orbit is seen exactly once.
std::vector<OrbitClass> census_index_orbits(int d, int64_t r, int64_t n) {
    const int64_t dist_min = 2 * r + 2;
    std::vector<OrbitClass> out;
    if (d == 1) {
        if (n >= dist_min) {
            OrbitClass oc;
            oc.rep = SublatticeHnf::from_rows_unchecked(1, {n});
            oc.index = n;
            oc.min_distance = n;
            oc.orbit_size = 1;
            oc.stabilizer_size = 2;
            out.push_back(std::move(oc));
        }
        return out;
    }
    enumerate_hnf(d, n, [&](const SublatticeHnf& L) {
        if (!min_distance_at_least(L, dist_min)) return;
        OrbitClass oc = orbit_of(L);
        if (oc.rep == L) out.push_back(std::move(oc));
    });
    std::sort(out.begin(), out.end(),
              [](const OrbitClass& a, const OrbitClass& b) { return a.rep < b.rep; });
    return out;
}

void build_census_range(CensusTable& t, int64_t lo, int64_t hi, int threads) {
    parallel_indices(lo, hi, threads, [&](int64_t n) {
        t.orbits[n] = census_index_orbits(t.d, t.r, n);
        t.gamma[n] = static_cast<int64_t>(t.orbits[n].size());
    });
}

CensusTable build_census(int d, int64_t r, int64_t max_index, int threads) {
    if (d < 1) throw usage_error("census requires d >= 1");
    if (r < 1) throw usage_error("census requires r >= 1");
    if (d >= 2 && r < r_star(d))
        throw usage_error("pure-translation census not asymptotically exact below r*(d) = " +
                          std::to_string(r_star(d)));
    CensusTable t;
    t.d = d;
    t.r = r;
    t.max_index = max_index;
    t.gamma.assign(max_index + 1, 0);
    t.orbits.assign(max_index + 1, {});
    build_census_range(t, 1, max_index, threads);
    return t;
}

std::vector<int64_t> count_invariant_lattices_at(int d, const SignedPerm& sigma,
                                                 const std::vector<int64_t>& checkpoints) {
    std::vector<int64_t> out(checkpoints.size(), 0);
    if (checkpoints.empty()) return out;
    const int64_t x_max = *std::max_element(checkpoints.begin(), checkpoints.end());
    int64_t running = 0;
    for (int64_t n = 1; n <= x_max; ++n) {
        enumerate_hnf(d, n, [&](const SublatticeHnf& L) {
            if (is_invariant(sigma, L)) ++running;
        });
        for (size_t k = 0; k < checkpoints.size(); ++k)
            if (checkpoints[k] == n) out[k] = running;
    }
    return out;
}

int64_t count_invariant_lattices(int d, const SignedPerm& sigma, int64_t x) {
    return count_invariant_lattices_at(d, sigma, {x})[0];
}

std::vector<int64_t> count_small_distance_lattices_at(int d, int64_t r,
                                                      const std::vector<int64_t>& checkpoints) {
    if (d < 2) throw usage_error("small-distance count requires d >= 2");
    std::vector<int64_t> out(checkpoints.size(), 0);
    if (checkpoints.empty()) return out;
    const int64_t x_max = *std::max_element(checkpoints.begin(), checkpoints.end());
    int64_t running = 0;
    for (int64_t n = 1; n <= x_max; ++n) {
        if (r >= 1) {
            enumerate_hnf(d, n, [&](const SublatticeHnf& L) {
                if (!min_distance_at_least(L, r + 1)) ++running;
            });
        }
        for (size_t k = 0; k < checkpoints.size(); ++k)
            if (checkpoints[k] == n) out[k] = running;
    }
    return out;
}

int64_t count_small_distance_lattices(int d, int64_t r, int64_t x) {
    return count_small_distance_lattices_at(d, r, {x})[0];
}

int64_t orbit_count_upto(int d, int64_t x, int threads) {
    std::atomic<int64_t> total{0};
    parallel_indices(1, x, threads, [&](int64_t n) {
        int64_t local = 0;
        enumerate_hnf(d, n, [&](const SublatticeHnf& L) {
            if (orbit_canonical_rep(L) == L) ++local;
        });
        total.fetch_add(local);
    });
    return total.load();
}

OrbitCountStats orbit_count_vs_cd(int d, int64_t x) {
    if (d < 2) throw usage_error("orbit asymptotics require d >= 2");
    OrbitCountStats s;
    s.orbit_count = orbit_count_upto(d, x);
    s.cd_xd = c_constant(d) * std::pow(static_cast<double>(x), d);
    s.ratio = static_cast<double>(s.orbit_count) / s.cd_xd;
    return s;
}

}  // namespace loco
