#include "locograph/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "locograph/errors.hpp"
#include "locograph/rng.hpp"

namespace loco {

MultisetSampler::MultisetSampler(std::vector<int64_t> gamma, const BigCountTable& b)
    : gamma_(std::move(gamma)), b_(&b) {
    c_ = divisor_weight_sums(gamma_, b.n_max());
}

std::vector<std::pair<int64_t, int64_t>> MultisetSampler::sample(int64_t n, uint64_t seed,
                                                                 bool verify_sums) const {
    if (n < 0 || n > b_->n_max()) throw usage_error("sample size outside table range");
    if (b_->b[n] == 0) throw empty_support_error("empty support");
    Xoshiro256ss rng(seed);
    std::vector<std::pair<int64_t, int64_t>> out;
    int64_t m = n;
    mpz_class total, acc, target, term;
    while (m > 0) {
        // step distribution over removed weight t = j*k:
        //   P(t) = c(t) * b(m-t) / (m * b(m)),  c(t) = sum_{j | t} j*gamma(j)
        total = b_->b[m] * static_cast<long>(m);
        if (verify_sums) {
            acc = 0;
            for (int64_t t = 1; t <= m; ++t)
                if (c_[t] != 0) acc += c_[t] * b_->b[m - t];
            if (acc != total)
                throw internal_error("sampler state sum mismatch at m=" + std::to_string(m));
        }
        target = rng.below(total);
        acc = 0;
        int64_t t = 0;
        for (t = 1; t <= m; ++t) {
            if (c_[t] == 0) continue;
            acc += c_[t] * b_->b[m - t];
            if (acc > target) break;
        }
        if (t > m) throw internal_error("sampler walk exhausted mass");
        // split t = j*k proportional to j*gamma(j) over divisors j of t
        mpz_class inner_total = c_[t];
        mpz_class inner_target = rng.below(inner_total);
        mpz_class inner_acc = 0;
        int64_t weight = 0;
        for (int64_t j = 1; j <= t; ++j) {
            if (t % j != 0) continue;
            if (j < static_cast<int64_t>(gamma_.size()) && gamma_[j] > 0) {
                inner_acc += mpz_class(static_cast<long>(j)) * static_cast<long>(gamma_[j]);
                if (inner_acc > inner_target) {
                    weight = j;
                    break;
                }
            }
        }
        if (weight == 0) throw internal_error("sampler divisor walk exhausted mass");
        const int64_t copies = t / weight;
        // one uniform type of this weight, repeated `copies` times
        const int64_t type_pos =
            static_cast<int64_t>(rng.below(static_cast<uint64_t>(gamma_[weight])));
        for (int64_t i = 0; i < copies; ++i) out.emplace_back(weight, type_pos);
        m -= t;
    }
    // canonical form: descending weight, then type position
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b2) {
        if (a.first != b2.first) return a.first > b2.first;
        return a.second < b2.second;
    });
    return out;
}

namespace {

// Per-orbit realization cache: building the quotient and checking its local
// structure is deterministic per class, and a batch revisits the same
// classes constantly.
struct RealizationCache {
    std::mutex mu;
    // key: (d, index, pos) -> locally-lattice flag at a given radius
    std::map<std::tuple<int, int64_t, int64_t, int64_t>, bool> local_ok;
};
RealizationCache g_realization_cache;

bool orbit_locally_lattice(const OrbitClass& oc, int d, int64_t pos, int64_t radius) {
    {
        std::lock_guard<std::mutex> lk(g_realization_cache.mu);
        auto it = g_realization_cache.local_ok.find({d, oc.index, pos, radius});
        if (it != g_realization_cache.local_ok.end()) return it->second;
    }
    // quotients are vertex-transitive (translations), so one vertex decides
    LocalGraph g = build_quotient(oc.rep);
    RootedBall b0 = ball(g, 0, radius);
    const bool ok = rooted_isomorphic(reference_ball(d, radius), b0);
    std::lock_guard<std::mutex> lk(g_realization_cache.mu);
    g_realization_cache.local_ok[{d, oc.index, pos, radius}] = ok;
    return ok;
}

}  // namespace

std::pair<LocalGraph, SampleReport> sample_graph(const SampleSpec& spec, int64_t local_radius) {
    if (!spec.census || !spec.counts) throw usage_error("sample_graph needs census and counts");
    if (spec.n < 1) throw usage_error("sample_graph requires n >= 1");
    if (spec.n > spec.counts->n_max() || spec.n > spec.census->max_index)
        throw usage_error("census/count tables end before n");
    MultisetSampler ms(spec.census->gamma, *spec.counts);
    auto picks = ms.sample(spec.n, spec.seed, spec.verify_sums);

    SampleReport rep;
    rep.local_limit_radius = local_radius;
    std::vector<LocalGraph> parts;
    parts.reserve(picks.size());
    int64_t matched_vertices = 0;
    for (const auto& [weight, pos] : picks) {
        const OrbitClass& oc = spec.census->orbits[weight][pos];
        LocalGraph g = build_quotient(oc.rep);
        QuotientProvenance prov;
        prov.d = spec.d;
        prov.orbit = oc;
        prov.orbit_index = weight;
        prov.orbit_pos = pos;
        g.set_provenance(0, std::move(prov));
        parts.push_back(std::move(g));
        rep.component_orders.push_back(weight);
        rep.component_orbits.emplace_back(weight, pos);
        if (orbit_locally_lattice(oc, spec.d, pos, local_radius)) matched_vertices += weight;
    }
    rep.largest_component = rep.component_orders.empty() ? 0 : rep.component_orders.front();
    rep.local_limit_fraction =
        spec.n > 0 ? static_cast<double>(matched_vertices) / static_cast<double>(spec.n) : 0.0;
    LocalGraph graph = LocalGraph::disjoint_union(parts);
    rep.aut_log_lower_bound = aut_lower_bound_log(graph);
    return {std::move(graph), std::move(rep)};
}

std::vector<int64_t> sample_restricted_partition(int64_t n, int64_t min_part, uint64_t seed,
                                                 bool verify_sums) {
    if (min_part < 1) throw usage_error("min_part must be >= 1");
    if (n < 0) throw usage_error("n must be >= 0");
    std::vector<int64_t> gamma(n + 1, 0);
    for (int64_t j = min_part; j <= n; ++j) gamma[j] = 1;
    BigCountTable counts = euler_transform_recurrence(gamma, n);
    if (counts.b[n] == 0) throw empty_support_error("empty support");
    MultisetSampler ms(std::move(gamma), counts);
    auto picks = ms.sample(n, seed, verify_sums);
    std::vector<int64_t> parts;
    parts.reserve(picks.size());
    for (const auto& [weight, pos] : picks) parts.push_back(weight);
    return parts;  // already descending
}

int64_t BatchAggregate::largest_component_quantile(double q) const {
    if (largest_component.empty()) return 0;
    const auto idx = static_cast<size_t>(q * (largest_component.size() - 1));
    return largest_component[idx];
}

BatchAggregate batch_experiment(const SampleSpec& spec, int64_t samples, int64_t local_radius,
                                int threads,
                                const std::function<void(int64_t, const SampleReport&)>& on_sample) {
    BatchAggregate agg;
    agg.samples = samples;
    if (samples <= 0) return agg;
    std::vector<SampleReport> reports(samples);
    std::atomic<int64_t> next{0};
    auto worker = [&] {
        while (true) {
            const int64_t i = next.fetch_add(1);
            if (i >= samples) break;
            SampleSpec s = spec;
            s.seed = derive_stream(spec.seed, static_cast<uint64_t>(i));
            reports[i] = sample_graph(s, local_radius).second;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    double sum_frac = 0.0, sum_aut = 0.0, sum_comp = 0.0;
    for (int64_t i = 0; i < samples; ++i) {
        const SampleReport& r = reports[i];
        if (on_sample) on_sample(i, r);
        agg.largest_component.push_back(r.largest_component);
        sum_frac += r.local_limit_fraction;
        sum_aut += r.aut_log_lower_bound;
        sum_comp += static_cast<double>(r.component_orders.size());
    }
    std::sort(agg.largest_component.begin(), agg.largest_component.end());
    agg.mean_local_limit_fraction = sum_frac / static_cast<double>(samples);
    agg.mean_aut_log_lower_bound = sum_aut / static_cast<double>(samples);
    agg.mean_component_count = sum_comp / static_cast<double>(samples);
    return agg;
}

}  // namespace loco
