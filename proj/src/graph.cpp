#include "locograph/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "locograph/errors.hpp"

namespace loco {

LocalGraph LocalGraph::from_edges(int64_t n, std::vector<std::pair<int32_t, int32_t>> edges) {
    LocalGraph g;
    std::vector<std::vector<int32_t>> adj(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw usage_error("edge endpoint out of range");
        if (u == v) throw usage_error("self-loop");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    g.offsets_.assign(n + 1, 0);
    for (int64_t v = 0; v < n; ++v) {
        std::sort(adj[v].begin(), adj[v].end());
        if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
            throw usage_error("duplicate edge");
        g.offsets_[v + 1] = g.offsets_[v] + static_cast<int64_t>(adj[v].size());
    }
    g.flat_.reserve(g.offsets_[n]);
    for (int64_t v = 0; v < n; ++v)
        g.flat_.insert(g.flat_.end(), adj[v].begin(), adj[v].end());
    g.build_components();
    return g;
}

bool LocalGraph::adjacent(int32_t u, int32_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void LocalGraph::build_components() {
    const int64_t n = vertex_count();
    component_id_.assign(n, -1);
    component_sizes_.clear();
    component_members_.clear();
    std::vector<int32_t> stack;
    for (int64_t s = 0; s < n; ++s) {
        if (component_id_[s] >= 0) continue;
        const int32_t cid = static_cast<int32_t>(component_sizes_.size());
        component_members_.emplace_back();
        stack.push_back(static_cast<int32_t>(s));
        component_id_[s] = cid;
        int64_t size = 0;
        while (!stack.empty()) {
            int32_t v = stack.back();
            stack.pop_back();
            ++size;
            component_members_[cid].push_back(v);
            for (int32_t w : neighbors(v)) {
                if (component_id_[w] < 0) {
                    component_id_[w] = cid;
                    stack.push_back(w);
                }
            }
        }
        component_sizes_.push_back(size);
    }
    provenance_.assign(component_sizes_.size(), std::nullopt);
}

LocalGraph LocalGraph::disjoint_union(const std::vector<LocalGraph>& parts) {
    int64_t n = 0, m = 0;
    for (const auto& p : parts) {
        n += p.vertex_count();
        m += p.edge_count();
    }
    std::vector<std::pair<int32_t, int32_t>> edges;
    edges.reserve(m);
    int64_t shift = 0;
    for (const auto& p : parts) {
        for (int64_t v = 0; v < p.vertex_count(); ++v)
            for (int32_t w : p.neighbors(v))
                if (v < w)
                    edges.emplace_back(static_cast<int32_t>(v + shift),
                                       static_cast<int32_t>(w + shift));
        shift += p.vertex_count();
    }
    LocalGraph g = from_edges(n, std::move(edges));
    // components are discovered in ascending vertex order, so part k's
    // components precede part k+1's
    int32_t cid = 0;
    for (const auto& p : parts) {
        for (int32_t c = 0; c < p.component_count(); ++c, ++cid) {
            if (p.provenance(c)) g.set_provenance(cid, *p.provenance(c));
        }
    }
    return g;
}

LocalGraph build_quotient(const SublatticeHnf& lat) {
    if (!min_distance_at_least(lat, 3)) throw usage_error("quotient not simple");
    const int d = lat.dim();
    const int64_t n = lat.index();
    // mixed-radix vertex index over the canonical coset representatives
    std::vector<int64_t> stride(d, 1);
    for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * lat.diag(i - 1);
    auto flat_index = [&](std::span<const int64_t> rep) {
        int64_t idx = 0;
        for (int i = 0; i < d; ++i) idx += rep[i] * stride[i];
        return idx;
    };
    std::vector<std::pair<int32_t, int32_t>> edges;
    edges.reserve(static_cast<size_t>(n) * d);
    std::vector<int64_t> rep(d, 0);
    for (int64_t v = 0; v < n; ++v) {
        // decode v into its representative
        int64_t rem = v;
        for (int i = 0; i < d; ++i) {
            rep[i] = rem % lat.diag(i);
            rem /= lat.diag(i);
        }
        for (int i = 0; i < d; ++i) {
            rep[i] += 1;
            const int64_t w = flat_index(lat.reduce(rep));
            rep[i] -= 1;
            // each undirected edge arises from exactly one +e_i probe: a
            // second origin would need e_i -+ e_j in the lattice, excluded
            // at min distance >= 3
            edges.emplace_back(static_cast<int32_t>(std::min(v, w)),
                               static_cast<int32_t>(std::max(v, w)));
        }
    }
    LocalGraph g = LocalGraph::from_edges(n, std::move(edges));
    // unit steps generate the quotient group, so the graph is connected;
    // the single provenance slot relies on that
    if (g.component_count() != 1) throw internal_error("quotient graph is disconnected");
    QuotientProvenance prov;
    prov.d = d;
    prov.orbit = orbit_of(lat);
    prov.orbit_index = lat.index();
    g.set_provenance(0, std::move(prov));
    return g;
}

RootedBall ball(const LocalGraph& g, int64_t v, int64_t radius) {
    RootedBall b;
    b.radius = radius;
    std::vector<int32_t> order;          // BFS discovery order
    std::map<int32_t, int32_t> local;    // graph vertex -> ball vertex
    std::queue<std::pair<int32_t, int32_t>> q;
    q.emplace(static_cast<int32_t>(v), 0);
    local[static_cast<int32_t>(v)] = 0;
    order.push_back(static_cast<int32_t>(v));
    b.dist.push_back(0);
    while (!q.empty()) {
        auto [u, du] = q.front();
        q.pop();
        if (du == radius) continue;
        for (int32_t w : g.neighbors(u)) {
            if (local.count(w)) continue;
            local[w] = static_cast<int32_t>(order.size());
            order.push_back(w);
            b.dist.push_back(du + 1);
            q.emplace(w, du + 1);
        }
    }
    std::vector<std::pair<int32_t, int32_t>> edges;
    for (size_t i = 0; i < order.size(); ++i) {
        for (int32_t w : g.neighbors(order[i])) {
            auto it = local.find(w);
            if (it != local.end() && static_cast<int32_t>(i) < it->second)
                edges.emplace_back(static_cast<int32_t>(i), it->second);
        }
    }
    b.graph = LocalGraph::from_edges(static_cast<int64_t>(order.size()), std::move(edges));
    b.root = 0;
    return b;
}

namespace {

std::map<std::pair<int, int64_t>, RootedBall> ref_ball_cache;
std::mutex ref_ball_mutex;

RootedBall build_reference_ball(int d, int64_t radius) {
    // lattice points with ||x||_1 <= radius, edges between unit-step pairs
    std::vector<std::vector<int64_t>> pts;
    pts.push_back(std::vector<int64_t>(d, 0));
    for (int64_t rho = 1; rho <= radius; ++rho) {
        for (const auto& h : l1_half_shell(d, rho)) {
            pts.push_back(h);
            std::vector<int64_t> neg(h.size());
            for (size_t i = 0; i < h.size(); ++i) neg[i] = -h[i];
            pts.push_back(std::move(neg));
        }
    }
    std::sort(pts.begin(), pts.end());
    std::map<std::vector<int64_t>, int32_t> idx;
    for (size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = static_cast<int32_t>(i);
    std::vector<std::pair<int32_t, int32_t>> edges;
    for (size_t i = 0; i < pts.size(); ++i) {
        auto p = pts[i];
        for (int k = 0; k < d; ++k) {
            p[k] += 1;
            auto it = idx.find(p);
            if (it != idx.end()) edges.emplace_back(static_cast<int32_t>(i), it->second);
            p[k] -= 1;
        }
    }
    RootedBall b;
    b.radius = radius;
    b.graph = LocalGraph::from_edges(static_cast<int64_t>(pts.size()), std::move(edges));
    const int32_t origin = idx.at(std::vector<int64_t>(d, 0));
    b.root = origin;
    // distances in the lattice ball are just L1 norms
    b.dist.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        int64_t s = 0;
        for (int64_t c : pts[i]) s += std::abs(c);
        b.dist[i] = static_cast<int32_t>(s);
    }
    return b;
}

}  // namespace

const RootedBall& reference_ball(int d, int64_t radius) {
    std::lock_guard<std::mutex> lk(ref_ball_mutex);
    auto key = std::make_pair(d, radius);
    auto it = ref_ball_cache.find(key);
    if (it != ref_ball_cache.end()) return it->second;
    return ref_ball_cache.emplace(key, build_reference_ball(d, radius)).first->second;
}

namespace {

// Backtracking extension of a partial map a->b over vertices of a in BFS
// order from the root. Candidates must match distance-from-root, degree,
// and adjacency with every previously mapped neighbor.
bool extend_rooted(const RootedBall& a, const RootedBall& b, std::vector<int32_t>& order,
                   size_t pos, std::vector<int32_t>& map_ab, std::vector<char>& used) {
    if (pos == order.size()) return true;
    const int32_t v = order[pos];
    // mapped neighbors of v
    std::vector<int32_t> mapped_nb;
    for (int32_t w : a.graph.neighbors(v))
        if (map_ab[w] >= 0) mapped_nb.push_back(map_ab[w]);
    // candidates: unmapped b-vertices adjacent to all mapped images
    std::span<const int32_t> pool = b.graph.neighbors(mapped_nb.empty() ? 0 : mapped_nb[0]);
    std::vector<int32_t> fallback;
    if (mapped_nb.empty()) {
        fallback.resize(b.graph.vertex_count());
        for (int64_t i = 0; i < b.graph.vertex_count(); ++i) fallback[i] = static_cast<int32_t>(i);
        pool = fallback;
    }
    for (int32_t cand : pool) {
        if (used[cand]) continue;
        if (b.dist[cand] != a.dist[v]) continue;
        if (b.graph.degree(cand) != a.graph.degree(v)) continue;
        bool ok = true;
        for (int32_t img : mapped_nb) {
            if (!b.graph.adjacent(cand, img)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // no false positives: candidate must not be adjacent to images of
        // non-neighbors; checked lazily when those vertices are placed, and
        // finally here against already-placed vertices
        for (size_t k = 0; k < pos; ++k) {
            const int32_t u = order[k];
            const bool adj_a = a.graph.adjacent(u, v);
            const bool adj_b = b.graph.adjacent(map_ab[u], cand);
            if (adj_a != adj_b) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        map_ab[v] = cand;
        used[cand] = 1;
        if (extend_rooted(a, b, order, pos + 1, map_ab, used)) return true;
        map_ab[v] = -1;
        used[cand] = 0;
    }
    return false;
}

std::vector<int64_t> sorted_profile(const RootedBall& b) {
    std::vector<int64_t> prof;
    for (int64_t v = 0; v < b.graph.vertex_count(); ++v)
        prof.push_back(b.dist[v] * 1000 + b.graph.degree(v));
    std::sort(prof.begin(), prof.end());
    return prof;
}

}  // namespace

bool rooted_isomorphic(const RootedBall& a, const RootedBall& b) {
    if (a.graph.vertex_count() != b.graph.vertex_count()) return false;
    if (a.graph.edge_count() != b.graph.edge_count()) return false;
    if (sorted_profile(a) != sorted_profile(b)) return false;
    // BFS order of a's vertices starting at the root (its dist array is
    // compatible with any BFS order by construction)
    std::vector<int32_t> order(a.graph.vertex_count());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int32_t x, int32_t y) { return a.dist[x] < a.dist[y]; });
    if (order.empty() || order[0] != a.root) {
        // root has distance 0 and is unique
        auto it = std::find(order.begin(), order.end(), a.root);
        std::iter_swap(order.begin(), it);
    }
    std::vector<int32_t> map_ab(a.graph.vertex_count(), -1);
    std::vector<char> used(b.graph.vertex_count(), 0);
    map_ab[a.root] = b.root;
    used[b.root] = 1;
    return extend_rooted(a, b, order, 1, map_ab, used);
}

bool is_r_locally_lattice(const LocalGraph& g, int d, int64_t r) {
    return r_locally_failing_vertices(g, d, r, 1).empty();
}

std::vector<int64_t> r_locally_failing_vertices(const LocalGraph& g, int d, int64_t r,
                                                size_t max_count) {
    const RootedBall& ref = reference_ball(d, r);
    std::vector<int64_t> failing;
    for (int64_t v = 0; v < g.vertex_count() && failing.size() < max_count; ++v) {
        if (g.degree(v) != 2 * d) {
            failing.push_back(v);
            continue;
        }
        RootedBall bv = ball(g, v, r);
        if (!rooted_isomorphic(ref, bv)) failing.push_back(v);
    }
    return failing;
}

namespace {

// Refinement invariant for whole-graph isomorphism: multiset of
// (degree, sorted neighbor degrees, distance profile from the vertex).
std::vector<std::vector<int32_t>> vertex_signatures(const LocalGraph& g) {
    const int64_t n = g.vertex_count();
    std::vector<std::vector<int32_t>> sig(n);
    for (int64_t v = 0; v < n; ++v) {
        // BFS layer sizes from v
        std::vector<int32_t> dist(n, -1);
        std::queue<int32_t> q;
        q.push(static_cast<int32_t>(v));
        dist[v] = 0;
        std::vector<int32_t> layers;
        while (!q.empty()) {
            int32_t u = q.front();
            q.pop();
            if (dist[u] >= static_cast<int32_t>(layers.size())) layers.push_back(0);
            layers[dist[u]]++;
            for (int32_t w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        sig[v] = std::move(layers);
        sig[v].insert(sig[v].begin(), g.degree(v));
    }
    return sig;
}

bool extend_graph_iso(const LocalGraph& a, const LocalGraph& b,
                      const std::vector<int32_t>& order, size_t pos, std::vector<int32_t>& map_ab,
                      std::vector<char>& used, const std::vector<std::vector<int32_t>>& sig_a,
                      const std::vector<std::vector<int32_t>>& sig_b) {
    if (pos == order.size()) return true;
    const int32_t v = order[pos];
    std::vector<int32_t> mapped_nb;
    for (int32_t w : a.neighbors(v))
        if (map_ab[w] >= 0) mapped_nb.push_back(map_ab[w]);
    std::vector<int32_t> pool;
    if (!mapped_nb.empty()) {
        for (int32_t c : b.neighbors(mapped_nb[0])) pool.push_back(c);
    } else {
        pool.resize(b.vertex_count());
        for (int64_t i = 0; i < b.vertex_count(); ++i) pool[i] = static_cast<int32_t>(i);
    }
    for (int32_t cand : pool) {
        if (used[cand]) continue;
        if (sig_a[v] != sig_b[cand]) continue;
        bool ok = true;
        for (size_t k = 0; k < pos && ok; ++k) {
            const int32_t u = order[k];
            if (a.adjacent(u, v) != b.adjacent(map_ab[u], cand)) ok = false;
        }
        if (!ok) continue;
        map_ab[v] = cand;
        used[cand] = 1;
        if (extend_graph_iso(a, b, order, pos + 1, map_ab, used, sig_a, sig_b)) return true;
        map_ab[v] = -1;
        used[cand] = 0;
    }
    return false;
}

}  // namespace

bool graph_isomorphic(const LocalGraph& a, const LocalGraph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    if (a.component_count() != b.component_count()) return false;
    auto sizes_a = a.component_sizes();
    auto sizes_b = b.component_sizes();
    std::sort(sizes_a.begin(), sizes_a.end());
    std::sort(sizes_b.begin(), sizes_b.end());
    if (sizes_a != sizes_b) return false;
    auto sig_a = vertex_signatures(a);
    auto sig_b = vertex_signatures(b);
    auto sorted_a = sig_a;
    auto sorted_b = sig_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return false;
    // map vertices in an order that keeps the partial map connected within
    // each component (BFS over components)
    const int64_t n = a.vertex_count();
    std::vector<int32_t> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (int64_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::queue<int32_t> q;
        q.push(static_cast<int32_t>(s));
        seen[s] = 1;
        while (!q.empty()) {
            int32_t u = q.front();
            q.pop();
            order.push_back(u);
            for (int32_t w : a.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
    }
    std::vector<int32_t> map_ab(n, -1);
    std::vector<char> used(n, 0);
    return extend_graph_iso(a, b, order, 0, map_ab, used, sig_a, sig_b);
}

double aut_lower_bound_log(const LocalGraph& g) {
    double total = 0.0;
    for (int32_t c = 0; c < g.component_count(); ++c) {
        if (g.provenance(c)) total += std::log(static_cast<double>(g.component_sizes()[c]));
    }
    return total;
}

}  // namespace loco
