#pragma once

// Floating-point numerics: Riemann zeta with certified tail, the model
// constants K_d and c_d, the partition-type leading term, and the
// saddle-point upper bound log B(n) <= h(s) + n s with certified handling
// of every truncation. This is the only module that does float arithmetic;
// the exact/float boundary is log of big integers.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "locograph/census.hpp"

namespace loco {

// Partial sums plus Euler-Maclaurin tail; absolute error <= tol. s > 1.
double zeta(double s, double tol = 1e-13);

// (d+1)/d * (2^{1-d} * prod_{i=2..d} zeta(i))^{1/(d+1)}, d >= 2.
double k_constant(int d);

// prod_{i=2..d} zeta(i) / (2^{d-1} d! d); c_1 = 1.
double c_constant(int d);

// (1/u) (K u Gamma(u+2) zeta(u+1))^{1/(u+1)} (u+1)^{u/(u+1)} n^{u/(u+1)}.
double leading_term(double K, double u, double n);

struct SaddleModel {
    // Exact weight counts gamma[1..J] (index 0 unused).
    std::vector<int64_t> gamma;
    // Cumulative tail model K x^u for x beyond the horizon J, already
    // inflated by the caller's safety factor; 0 disables the tail.
    double tail_K = 0.0;
    double tail_u = 0.0;
    double truncation_tol = 1e-14;
    // When set, every truncation is replaced by an over-cover so that
    // h(s) >= the true series and the Proposition-1 bound stays hard.
    bool certified = true;

    int64_t horizon() const { return static_cast<int64_t>(gamma.size()) - 1; }

    static SaddleModel from_census(const CensusTable& census, double inflate = 1.5);
    static SaddleModel partitions(int64_t horizon, double inflate = 1.5);
};

struct SaddleResult {
    double s_star = 0.0;
    double log_b_upper = 0.0;
    // Every s evaluated during bisection with its certified h(s) + n's value;
    // the bound holds at each of them, not just the minimizer.
    std::vector<std::pair<double, double>> path;
};

// Bisection on h'(s) = -n over (0, 1] (the bracket is extended downward or
// upward as needed); throws internal_error("saddle not bracketed") for a
// degenerate model. log_b_upper is the minimum of h(s) + n s over the path.
SaddleResult saddle_estimate(const SaddleModel& model, int64_t n);

// Certified h(s) and plain h'(s) for the model, exposed for the tests.
double saddle_h(const SaddleModel& model, double s);
double saddle_h_derivative(const SaddleModel& model, double s);

// log of a positive big integer (double precision, ~16 significant digits).
double log_mpz(const mpz_class& v);

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_pvalue(double statistic, int64_t dof);

}  // namespace loco
