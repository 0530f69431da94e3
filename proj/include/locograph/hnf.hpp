#pragma once

// Finite-index sublattices of Z^d in Hermite normal form, the signed
// permutation group acting on them, and orbit/minimum-distance machinery.
//
// Conventions: the basis matrix is upper triangular, column j is a basis
// vector, diagonal entries are >= 1, and off-diagonal entries satisfy
// 0 <= a(i,j) < a(i,i) for j > i. Under these constraints the matrix is a
// canonical form: two values are equal iff they generate the same lattice.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace loco {

class SublatticeHnf {
  public:
    SublatticeHnf() : d_(0) {}

    static SublatticeHnf identity(int d);

    // Canonicalize the lattice spanned by d integer column vectors.
    // Throws usage_error("degenerate lattice") if the columns are dependent.
    static SublatticeHnf from_columns(int d, const std::vector<std::vector<int64_t>>& cols);

    // Trusted constructor for entries already in normal form (row-major).
    static SublatticeHnf from_rows_unchecked(int d, std::vector<int64_t> rows);

    int dim() const { return d_; }
    int64_t at(int i, int j) const { return a_[static_cast<size_t>(i) * d_ + j]; }
    int64_t diag(int i) const { return at(i, i); }
    int64_t index() const;
    std::vector<int64_t> column(int j) const;

    // Exact membership by back-substitution against the triangular basis.
    bool contains(std::span<const int64_t> x) const;

    // Canonical coset representative: reduces coordinates d-1..0 by the
    // diagonal, back-substituting upward; result entries lie in [0, a(i,i)).
    std::vector<int64_t> reduce(std::span<const int64_t> x) const;

    bool operator==(const SublatticeHnf& o) const { return d_ == o.d_ && a_ == o.a_; }
    // Row-major lexicographic order; total, used for orbit representatives.
    std::strong_ordering operator<=>(const SublatticeHnf& o) const;

    std::span<const int64_t> rows() const { return a_; }

  private:
    int d_;
    std::vector<int64_t> a_;  // row-major, d_*d_ entries
};

class SignedPerm {
  public:
    SignedPerm() = default;
    SignedPerm(std::vector<int> perm, std::vector<int> signs);

    static SignedPerm identity(int d);
    static SignedPerm negation(int d);
    // All 2^d * d! group elements, deterministic order.
    static std::vector<SignedPerm> all(int d);
    static int64_t group_order(int d);

    int dim() const { return static_cast<int>(perm_.size()); }
    // e_i -> sign(i) * e_{target(i)}
    int target(int i) const { return perm_[i]; }
    int sign(int i) const { return signs_[i]; }

    std::vector<int64_t> apply(std::span<const int64_t> v) const;
    SignedPerm compose(const SignedPerm& inner) const;  // this after inner
    SignedPerm inverse() const;
    bool operator==(const SignedPerm&) const = default;

  private:
    std::vector<int> perm_;
    std::vector<int> signs_;
};

struct OrbitClass {
    SublatticeHnf rep;  // lexicographically least HNF in the orbit
    int64_t index = 0;
    int64_t min_distance = 0;
    int64_t orbit_size = 0;
    int64_t stabilizer_size = 0;
};

SublatticeHnf apply_signed_perm(const SignedPerm& sigma, const SublatticeHnf& lat);
bool is_invariant(const SignedPerm& sigma, const SublatticeHnf& lat);

// Lex-least HNF among all B_d images (cheaper than a full OrbitClass).
SublatticeHnf orbit_canonical_rep(const SublatticeHnf& lat);
OrbitClass orbit_of(const SublatticeHnf& lat);

// Least L1 norm of a nonzero lattice vector. Dispatches to closed-form
// walks for d <= 2 and to the shell search otherwise; always exact.
int64_t min_distance(const SublatticeHnf& lat);
// Reference implementation: expanding L1 shells with membership tests.
int64_t min_distance_shells(const SublatticeHnf& lat);
// Predicate "min_distance >= t": only shells < t are ever enumerated.
bool min_distance_at_least(const SublatticeHnf& lat, int64_t t);

// Memoized list of integer points with ||x||_1 == radius and first nonzero
// coordinate positive (one representative per +-pair).
const std::vector<std::vector<int64_t>>& l1_half_shell(int d, int64_t radius);

// Every index-n sublattice exactly once, lexicographic on (diagonal
// composition, off-diagonal residues read row-major).
void enumerate_hnf(int d, int64_t n, const std::function<void(const SublatticeHnf&)>& emit);
std::vector<SublatticeHnf> enumerate_hnf(int d, int64_t n);

// Divisor-composition count of index-n sublattices of Z^d:
//   sum over c_1*...*c_d = n of c_1^{d-1} c_2^{d-2} ... c_{d-1}.
mpz_class sublattice_count(int d, int64_t n);
mpz_class sublattice_count_upto(int d, int64_t x);  // N_d(x)

}  // namespace loco
