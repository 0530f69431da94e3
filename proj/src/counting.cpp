#include "locograph/counting.hpp"

#include <algorithm>

#include "locograph/errors.hpp"

namespace loco {

BigCountTable euler_transform_per_type(std::span<const int64_t> gamma, int64_t n_max) {
    BigCountTable t;
    t.method = "per-type DP";
    t.b.assign(n_max + 1, 0);
    t.b[0] = 1;
    const int64_t j_max = std::min<int64_t>(n_max, static_cast<int64_t>(gamma.size()) - 1);
    std::vector<mpz_class> coef;  // multiset coefficients C(gamma(j)+k-1, k)
    for (int64_t j = 1; j <= j_max; ++j) {
        if (gamma[j] <= 0) continue;
        const int64_t k_max = n_max / j;
        coef.assign(k_max + 1, 0);
        coef[0] = 1;
        for (int64_t k = 1; k <= k_max; ++k) {
            coef[k] = coef[k - 1] * (gamma[j] + k - 1);
            mpz_divexact_ui(coef[k].get_mpz_t(), coef[k].get_mpz_t(),
                            static_cast<unsigned long>(k));
        }
        // fold the factor in place, high to low so b[n - jk] is still old
        for (int64_t n = n_max; n >= j; --n) {
            mpz_class acc = t.b[n];
            for (int64_t k = 1; k * j <= n; ++k) {
                acc += coef[k] * t.b[n - k * j];
            }
            t.b[n] = std::move(acc);
        }
    }
    return t;
}

std::vector<mpz_class> divisor_weight_sums(std::span<const int64_t> gamma, int64_t n_max) {
    std::vector<mpz_class> c(n_max + 1, 0);
    const int64_t j_max = std::min<int64_t>(n_max, static_cast<int64_t>(gamma.size()) - 1);
    for (int64_t j = 1; j <= j_max; ++j) {
        if (gamma[j] <= 0) continue;
        const mpz_class contrib = mpz_class(static_cast<long>(j)) * static_cast<long>(gamma[j]);
        for (int64_t m = j; m <= n_max; m += j) c[m] += contrib;
    }
    return c;
}

BigCountTable euler_transform_recurrence(std::span<const int64_t> gamma, int64_t n_max) {
    BigCountTable t;
    t.method = "euler-recurrence";
    t.b.assign(n_max + 1, 0);
    t.b[0] = 1;
    const std::vector<mpz_class> c = divisor_weight_sums(gamma, n_max);
    mpz_class acc, rem;
    for (int64_t n = 1; n <= n_max; ++n) {
        acc = 0;
        for (int64_t m = 1; m <= n; ++m) {
            if (c[m] != 0) acc += c[m] * t.b[n - m];
        }
        mpz_fdiv_qr_ui(t.b[n].get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(),
                       static_cast<unsigned long>(n));
        if (rem != 0)
            throw internal_error("euler recurrence division not exact at n=" + std::to_string(n));
    }
    return t;
}

mpz_class count_graphs(const CensusTable& census, int64_t n) {
    if (n < 0) throw usage_error("count_graphs requires n >= 0");
    if (n > census.max_index)
        throw usage_error("census range ends at " + std::to_string(census.max_index) +
                          ", requested n=" + std::to_string(n));
    BigCountTable t = euler_transform_recurrence(census.gamma, n);
    return t.b[n];
}

std::vector<mpz_class> restricted_partition_table(int64_t n, int64_t min_part) {
    if (min_part < 1) throw usage_error("min_part must be >= 1");
    std::vector<int64_t> gamma(n + 1, 0);
    for (int64_t j = min_part; j <= n; ++j) gamma[j] = 1;
    return euler_transform_recurrence(gamma, n).b;
}

mpz_class restricted_partition_count(int64_t n, int64_t min_part) {
    if (n < 0) return 0;
    return restricted_partition_table(n, min_part)[n];
}

std::optional<std::vector<int64_t>> find_power_partition(int64_t n, int d, int64_t s) {
    if (n < 0) return std::nullopt;
    if (n == 0) return std::vector<int64_t>{};
    // allowed parts m^d for m > s, ascending
    std::vector<int64_t> parts;
    for (int64_t m = s + 1;; ++m) {
        int64_t p = 1;
        bool overflow = false;
        for (int k = 0; k < d; ++k) {
            if (p > n / m + 1) {
                overflow = true;
                break;
            }
            p *= m;
        }
        if (overflow || p > n) break;
        parts.push_back(p);
    }
    if (parts.empty()) return std::nullopt;
    // feasible[i][v]: v is a sum of parts drawn from parts[0..i]
    const size_t np = parts.size();
    std::vector<std::vector<char>> feasible(np, std::vector<char>(n + 1, 0));
    for (size_t i = 0; i < np; ++i) {
        feasible[i][0] = 1;
        for (int64_t v = 1; v <= n; ++v) {
            char f = (i > 0) ? feasible[i - 1][v] : 0;
            if (!f && v >= parts[i]) f = feasible[i][v - parts[i]];
            feasible[i][v] = f;
        }
    }
    if (!feasible[np - 1][n]) return std::nullopt;
    // lexicographically greatest descending part list: greedily take the
    // largest part that keeps the remainder feasible with parts <= it
    std::vector<int64_t> out;
    int64_t remaining = n;
    size_t cap = np - 1;
    while (remaining > 0) {
        size_t i = cap;
        while (true) {
            if (parts[i] <= remaining && feasible[i][remaining - parts[i]]) {
                out.push_back(parts[i]);
                remaining -= parts[i];
                cap = i;
                break;
            }
            if (i == 0) throw internal_error("power partition DP inconsistent");
            --i;
        }
    }
    return out;
}

}  // namespace loco
