#include "locograph/hnf.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>

#include "locograph/errors.hpp"

namespace loco {

namespace {

// extended gcd: returns g = gcd(a,b) > 0 with g = p*a + q*b
void extgcd(int64_t a, int64_t b, int64_t& g, int64_t& p, int64_t& q) {
    if (b == 0) {
        g = a >= 0 ? a : -a;
        p = a >= 0 ? 1 : -1;
        q = 0;
        return;
    }
    int64_t g1, p1, q1;
    extgcd(b, a % b, g1, p1, q1);
    g = g1;
    p = q1;
    q = p1 - (a / b) * q1;
}

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

SublatticeHnf SublatticeHnf::identity(int d) {
    std::vector<int64_t> rows(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) rows[static_cast<size_t>(i) * d + i] = 1;
    return from_rows_unchecked(d, std::move(rows));
}

SublatticeHnf SublatticeHnf::from_rows_unchecked(int d, std::vector<int64_t> rows) {
    SublatticeHnf L;
    L.d_ = d;
    L.a_ = std::move(rows);
    return L;
}

SublatticeHnf SublatticeHnf::from_columns(int d, const std::vector<std::vector<int64_t>>& cols) {
    if (d < 1 || cols.size() != static_cast<size_t>(d)) throw usage_error("degenerate lattice");
    // m[i][j]: row i of column j, mutated by unimodular column operations.
    std::vector<std::vector<int64_t>> m(d, std::vector<int64_t>(d));
    for (int j = 0; j < d; ++j) {
        if (cols[j].size() != static_cast<size_t>(d)) throw usage_error("degenerate lattice");
        for (int i = 0; i < d; ++i) m[i][j] = cols[j][i];
    }
    // Triangularize bottom-up: after processing row i, only column i holds a
    // nonzero entry of row i among columns 0..i. Rows below i stay zeroed in
    // columns <= i because every combined column already has zeros there.
    for (int i = d - 1; i >= 0; --i) {
        int pivot = -1;
        for (int j = i; j >= 0; --j) {
            if (m[i][j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) throw usage_error("degenerate lattice");
        if (pivot != i) {
            for (int r = 0; r < d; ++r) std::swap(m[r][pivot], m[r][i]);
        }
        for (int j = 0; j < i; ++j) {
            if (m[i][j] == 0) continue;
            int64_t g, p, q;
            extgcd(m[i][i], m[i][j], g, p, q);
            const int64_t ai = m[i][i] / g, aj = m[i][j] / g;
            for (int r = 0; r <= i; ++r) {
                const int64_t ci = m[r][i], cj = m[r][j];
                m[r][i] = p * ci + q * cj;  // gcd lands in the pivot column
                m[r][j] = ai * cj - aj * ci;
            }
        }
        if (m[i][i] < 0) {
            for (int r = 0; r <= i; ++r) m[r][i] = -m[r][i];
        }
        if (m[i][i] == 0) throw usage_error("degenerate lattice");
    }
    // Reduce off-diagonals, lowest row of each column first so earlier
    // reductions are never disturbed.
    for (int j = 1; j < d; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            const int64_t q = floor_div(m[i][j], m[i][i]);
            if (q == 0) continue;
            for (int r = 0; r <= i; ++r) m[r][j] -= q * m[r][i];
        }
    }
    std::vector<int64_t> rows(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rows[static_cast<size_t>(i) * d + j] = m[i][j];
    return from_rows_unchecked(d, std::move(rows));
}

int64_t SublatticeHnf::index() const {
    int64_t n = 1;
    for (int i = 0; i < d_; ++i) n *= diag(i);
    return n;
}

std::vector<int64_t> SublatticeHnf::column(int j) const {
    std::vector<int64_t> v(d_);
    for (int i = 0; i < d_; ++i) v[i] = at(i, j);
    return v;
}

bool SublatticeHnf::contains(std::span<const int64_t> x) const {
    assert(static_cast<int>(x.size()) == d_);
    std::vector<int64_t> w(x.begin(), x.end());
    for (int i = d_ - 1; i >= 0; --i) {
        if (w[i] % diag(i) != 0) return false;
        const int64_t lambda = w[i] / diag(i);
        if (lambda != 0) {
            for (int r = 0; r <= i; ++r) w[r] -= lambda * at(r, i);
        }
    }
    return true;
}

std::vector<int64_t> SublatticeHnf::reduce(std::span<const int64_t> x) const {
    assert(static_cast<int>(x.size()) == d_);
    std::vector<int64_t> w(x.begin(), x.end());
    for (int i = d_ - 1; i >= 0; --i) {
        const int64_t lambda = floor_div(w[i], diag(i));
        if (lambda != 0) {
            for (int r = 0; r <= i; ++r) w[r] -= lambda * at(r, i);
        }
    }
    return w;
}

std::strong_ordering SublatticeHnf::operator<=>(const SublatticeHnf& o) const {
    if (auto c = d_ <=> o.d_; c != 0) return c;
    for (size_t k = 0; k < a_.size(); ++k) {
        if (auto c = a_[k] <=> o.a_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

SignedPerm::SignedPerm(std::vector<int> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
    assert(perm_.size() == signs_.size());
}

SignedPerm SignedPerm::identity(int d) {
    std::vector<int> p(d), s(d, 1);
    std::iota(p.begin(), p.end(), 0);
    return SignedPerm(std::move(p), std::move(s));
}

SignedPerm SignedPerm::negation(int d) {
    std::vector<int> p(d), s(d, -1);
    std::iota(p.begin(), p.end(), 0);
    return SignedPerm(std::move(p), std::move(s));
}

int64_t SignedPerm::group_order(int d) {
    int64_t o = 1;
    for (int i = 1; i <= d; ++i) o *= 2 * i;
    return o;
}

std::vector<SignedPerm> SignedPerm::all(int d) {
    std::vector<SignedPerm> out;
    out.reserve(static_cast<size_t>(group_order(d)));
    std::vector<int> p(d);
    std::iota(p.begin(), p.end(), 0);
    do {
        for (uint32_t mask = 0; mask < (1u << d); ++mask) {
            std::vector<int> s(d);
            for (int i = 0; i < d; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
            out.emplace_back(p, std::move(s));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<int64_t> SignedPerm::apply(std::span<const int64_t> v) const {
    std::vector<int64_t> w(perm_.size(), 0);
    for (size_t i = 0; i < perm_.size(); ++i) w[perm_[i]] = signs_[i] * v[i];
    return w;
}

SignedPerm SignedPerm::compose(const SignedPerm& inner) const {
    assert(dim() == inner.dim());
    const int d = dim();
    std::vector<int> p(d), s(d);
    for (int i = 0; i < d; ++i) {
        p[i] = perm_[inner.perm_[i]];
        s[i] = inner.signs_[i] * signs_[inner.perm_[i]];
    }
    return SignedPerm(std::move(p), std::move(s));
}

SignedPerm SignedPerm::inverse() const {
    const int d = dim();
    std::vector<int> p(d), s(d);
    for (int i = 0; i < d; ++i) {
        p[perm_[i]] = i;
        s[perm_[i]] = signs_[i];
    }
    return SignedPerm(std::move(p), std::move(s));
}

SublatticeHnf apply_signed_perm(const SignedPerm& sigma, const SublatticeHnf& lat) {
    assert(sigma.dim() == lat.dim());
    const int d = lat.dim();
    std::vector<std::vector<int64_t>> cols(d);
    for (int j = 0; j < d; ++j) cols[j] = sigma.apply(lat.column(j));
    return SublatticeHnf::from_columns(d, cols);
}

bool is_invariant(const SignedPerm& sigma, const SublatticeHnf& lat) {
    return apply_signed_perm(sigma, lat) == lat;
}

SublatticeHnf orbit_canonical_rep(const SublatticeHnf& lat) {
    SublatticeHnf best = lat;
    for (const auto& sigma : SignedPerm::all(lat.dim())) {
        SublatticeHnf img = apply_signed_perm(sigma, lat);
        if (img < best) best = img;
    }
    return best;
}

OrbitClass orbit_of(const SublatticeHnf& lat) {
    std::vector<SublatticeHnf> images;
    for (const auto& sigma : SignedPerm::all(lat.dim())) {
        images.push_back(apply_signed_perm(sigma, lat));
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    OrbitClass oc;
    oc.rep = images.front();
    oc.index = lat.index();
    oc.min_distance = min_distance(lat);
    oc.orbit_size = static_cast<int64_t>(images.size());
    oc.stabilizer_size = SignedPerm::group_order(lat.dim()) / oc.orbit_size;
    return oc;
}

namespace {

// Shell point generation: vectors with prescribed L1 norm, first nonzero
// coordinate positive. Memoized per (d, radius); census filters hit the same
// few shells millions of times.
std::map<std::pair<int, int64_t>, std::vector<std::vector<int64_t>>> shell_cache;
std::mutex shell_mutex;

void gen_shell(int d, int pos, int64_t remaining, bool free_sign, std::vector<int64_t>& cur,
               std::vector<std::vector<int64_t>>& out) {
    if (pos == d) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    if (pos == d - 1) {
        // last coordinate takes the remainder
        if (remaining == 0) {
            cur[pos] = 0;
            gen_shell(d, pos + 1, 0, free_sign, cur, out);
        } else {
            cur[pos] = remaining;
            gen_shell(d, pos + 1, 0, false, cur, out);
            if (!free_sign) {
                cur[pos] = -remaining;
                gen_shell(d, pos + 1, 0, false, cur, out);
            }
        }
        cur[pos] = 0;
        return;
    }
    for (int64_t v = 0; v <= remaining; ++v) {
        if (v == 0) {
            cur[pos] = 0;
            gen_shell(d, pos + 1, remaining, free_sign, cur, out);
        } else {
            cur[pos] = v;
            gen_shell(d, pos + 1, remaining - v, false, cur, out);
            if (!free_sign) {
                cur[pos] = -v;
                gen_shell(d, pos + 1, remaining - v, false, cur, out);
            }
        }
    }
    cur[pos] = 0;
}

}  // namespace

const std::vector<std::vector<int64_t>>& l1_half_shell(int d, int64_t radius) {
    std::lock_guard<std::mutex> lk(shell_mutex);
    auto key = std::make_pair(d, radius);
    auto it = shell_cache.find(key);
    if (it != shell_cache.end()) return it->second;
    std::vector<std::vector<int64_t>> pts;
    std::vector<int64_t> cur(d, 0);
    gen_shell(d, 0, radius, /*free_sign=*/true, cur, pts);
    return shell_cache.emplace(key, std::move(pts)).first->second;
}

namespace {

// d=2 closed-form minimum: for each multiple of the second basis vector the
// best first coordinate is a residue computation, so the scan is
// O(answer / a(1,1)) exact steps.
int64_t min_distance_2d(int64_t b11, int64_t b12, int64_t b22) {
    int64_t best = b11;
    for (int64_t l2 = 1; b22 * l2 < best; ++l2) {
        const int64_t r = (b12 * l2) % b11;
        const int64_t cand = b22 * l2 + std::min(r, b11 - r);
        best = std::min(best, cand);
    }
    return best;
}

}  // namespace

int64_t min_distance_shells(const SublatticeHnf& lat) {
    const int d = lat.dim();
    const int64_t cap = lat.index();  // index * e_1 is always a lattice vector
    for (int64_t radius = 1; radius <= cap; ++radius) {
        for (const auto& p : l1_half_shell(d, radius)) {
            if (lat.contains(p)) return radius;
        }
    }
    return cap;
}

int64_t min_distance(const SublatticeHnf& lat) {
    if (lat.dim() == 1) return lat.diag(0);
    if (lat.dim() == 2) return min_distance_2d(lat.at(0, 0), lat.at(0, 1), lat.at(1, 1));
    return min_distance_shells(lat);
}

bool min_distance_at_least(const SublatticeHnf& lat, int64_t t) {
    if (lat.dim() <= 2) return min_distance(lat) >= t;
    for (int64_t radius = 1; radius < t; ++radius) {
        for (const auto& p : l1_half_shell(lat.dim(), radius)) {
            if (lat.contains(p)) return false;
        }
    }
    return true;
}

namespace {

void enum_compositions(int d, int64_t n, std::vector<int64_t>& diag, int pos,
                       const std::function<void(const std::vector<int64_t>&)>& emit) {
    if (pos == d - 1) {
        diag[pos] = n;
        emit(diag);
        return;
    }
    for (int64_t c = 1; c <= n; ++c) {
        if (n % c != 0) continue;
        diag[pos] = c;
        enum_compositions(d, n / c, diag, pos + 1, emit);
    }
}

}  // namespace

void enumerate_hnf(int d, int64_t n, const std::function<void(const SublatticeHnf&)>& emit) {
    if (d < 1 || n < 1) throw usage_error("enumerate_hnf requires d >= 1 and n >= 1");
    std::vector<int64_t> diag(d);
    std::vector<std::pair<int, int>> free_pos;  // row-major off-diagonal slots
    enum_compositions(d, n, diag, 0, [&](const std::vector<int64_t>& dg) {
        free_pos.clear();
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (dg[i] > 1) free_pos.emplace_back(i, j);
        std::vector<int64_t> rows(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i) rows[static_cast<size_t>(i) * d + i] = dg[i];
        // odometer over the free entries, last slot fastest = lex ascending
        while (true) {
            emit(SublatticeHnf::from_rows_unchecked(d, rows));
            int k = static_cast<int>(free_pos.size()) - 1;
            while (k >= 0) {
                auto [i, j] = free_pos[k];
                int64_t& e = rows[static_cast<size_t>(i) * d + j];
                if (++e < dg[i]) break;
                e = 0;
                --k;
            }
            if (k < 0) break;
        }
    });
}

std::vector<SublatticeHnf> enumerate_hnf(int d, int64_t n) {
    std::vector<SublatticeHnf> out;
    enumerate_hnf(d, n, [&](const SublatticeHnf& L) { out.push_back(L); });
    return out;
}

mpz_class sublattice_count(int d, int64_t n) {
    if (d < 1 || n < 1) throw usage_error("sublattice_count requires d >= 1 and n >= 1");
    mpz_class total = 0;
    std::vector<int64_t> diag(d);
    enum_compositions(d, n, diag, 0, [&](const std::vector<int64_t>& dg) {
        mpz_class term = 1;
        for (int i = 0; i < d; ++i) {
            mpz_class c = static_cast<long>(dg[i]);
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(d - 1 - i));
            term *= pw;
        }
        total += term;
    });
    return total;
}

mpz_class sublattice_count_upto(int d, int64_t x) {
    mpz_class total = 0;
    for (int64_t n = 1; n <= x; ++n) total += sublattice_count(d, n);
    return total;
}

}  // namespace loco
