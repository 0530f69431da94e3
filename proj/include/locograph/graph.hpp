#pragma once

// Finite simple graphs as sorted adjacency lists, quotients of the integer
// lattice by a sublattice, rooted balls and the radius-r local check, plus
// small-graph isomorphism utilities.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "locograph/hnf.hpp"

namespace loco {

// Origin tag for a component that was built as a lattice quotient.
struct QuotientProvenance {
    int d = 0;
    OrbitClass orbit;
    // Census coordinates of the orbit: (index, position in the lex-sorted
    // orbit list at that index); position is -1 when not census-backed.
    int64_t orbit_index = 0;
    int64_t orbit_pos = -1;
};

class LocalGraph {
  public:
    LocalGraph() = default;
    // Edges may be in any order; duplicates and loops are rejected.
    static LocalGraph from_edges(int64_t n, std::vector<std::pair<int32_t, int32_t>> edges);

    int64_t vertex_count() const { return static_cast<int64_t>(offsets_.size()) - 1; }
    int64_t edge_count() const { return static_cast<int64_t>(flat_.size()) / 2; }
    std::span<const int32_t> neighbors(int64_t v) const {
        return {flat_.data() + offsets_[v], flat_.data() + offsets_[v + 1]};
    }
    int degree(int64_t v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
    bool adjacent(int32_t u, int32_t v) const;

    int64_t component_count() const { return static_cast<int64_t>(component_sizes_.size()); }
    int32_t component_of(int64_t v) const { return component_id_[v]; }
    const std::vector<int64_t>& component_sizes() const { return component_sizes_; }
    const std::vector<int32_t>& component_vertices(int32_t c) const {
        return component_members_[c];
    }

    const std::optional<QuotientProvenance>& provenance(int32_t c) const {
        return provenance_[c];
    }
    void set_provenance(int32_t c, QuotientProvenance p) { provenance_[c] = std::move(p); }

    // Disjoint union; vertices of each part are shifted, provenance carried.
    static LocalGraph disjoint_union(const std::vector<LocalGraph>& parts);

  private:
    std::vector<int64_t> offsets_;  // size n+1
    std::vector<int32_t> flat_;     // concatenated sorted neighbor lists
    std::vector<int32_t> component_id_;
    std::vector<int64_t> component_sizes_;
    std::vector<std::vector<int32_t>> component_members_;
    std::vector<std::optional<QuotientProvenance>> provenance_;  // per component
    void build_components();
};

// Quotient graph Z^d / L on index(L) vertices, 2d-regular. Vertices are the
// canonical coset representatives in mixed-radix order. Requires
// min_distance(L) >= 3, otherwise throws usage_error("quotient not simple").
LocalGraph build_quotient(const SublatticeHnf& lat);

struct RootedBall {
    LocalGraph graph;        // induced subgraph on the ball
    int32_t root = 0;        // index of the center within the subgraph
    int64_t radius = 0;
    std::vector<int32_t> dist;  // distance from root, per ball vertex
};

RootedBall ball(const LocalGraph& g, int64_t v, int64_t radius);

// Radius-r ball of the d-dimensional lattice graph around the origin;
// cached per (d, r).
const RootedBall& reference_ball(int d, int64_t radius);

// Root-preserving isomorphism test (backtracking with distance/degree
// pruning); exact.
bool rooted_isomorphic(const RootedBall& a, const RootedBall& b);

bool is_r_locally_lattice(const LocalGraph& g, int d, int64_t r);
// First failing vertices (up to max_count), in vertex order; empty iff the
// graph passes.
std::vector<int64_t> r_locally_failing_vertices(const LocalGraph& g, int d, int64_t r,
                                                size_t max_count);

// Exact isomorphism for small graphs (invariant screening + backtracking).
bool graph_isomorphic(const LocalGraph& a, const LocalGraph& b);

// Certified lower bound on log |Aut(G)|: lattice-quotient components are
// vertex-transitive under translations, so each contributes log(order).
double aut_lower_bound_log(const LocalGraph& g);

}  // namespace loco
