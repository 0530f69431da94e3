#include "locograph/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locograph/errors.hpp"

namespace loco {

double zeta(double s, double tol) {
    if (!(s > 1.0)) throw usage_error("zeta requires s > 1");
    int64_t N = 16;
    auto b6_term = [&](int64_t n) {
        return s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 * std::pow(n, -s - 5);
    };
    while (b6_term(N) > tol / 2 && N < (1 << 26)) N *= 2;
    double sum = 0.0;
    for (int64_t n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    sum += std::pow(static_cast<double>(N), 1 - s) / (s - 1);
    sum += 0.5 * std::pow(static_cast<double>(N), -s);
    sum += s / 12.0 * std::pow(static_cast<double>(N), -s - 1);
    sum -= s * (s + 1) * (s + 2) / 720.0 * std::pow(static_cast<double>(N), -s - 3);
    return sum;
}

double k_constant(int d) {
    if (d < 2) throw usage_error("k_constant requires d >= 2");
    double prod = 1.0;
    for (int i = 2; i <= d; ++i) prod *= zeta(i);
    return (d + 1.0) / d * std::pow(std::ldexp(prod, -(d - 1)), 1.0 / (d + 1));
}

double c_constant(int d) {
    if (d < 1) throw usage_error("c_constant requires d >= 1");
    double prod = 1.0;
    for (int i = 2; i <= d; ++i) prod *= zeta(i);
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    return prod / (std::ldexp(1.0, d - 1) * fact * d);
}

double leading_term(double K, double u, double n) {
    if (K <= 0 || u <= 0) throw usage_error("leading_term requires K > 0 and u > 0");
    if (n <= 0) return 0.0;
    const double inner = K * u * std::exp(std::lgamma(u + 2)) * zeta(u + 1);
    return (1.0 / u) * std::pow(inner, 1.0 / (u + 1)) * std::pow(u + 1, u / (u + 1)) *
           std::pow(n, u / (u + 1));
}

SaddleModel SaddleModel::from_census(const CensusTable& census, double inflate) {
    SaddleModel m;
    m.gamma = census.gamma;
    m.tail_K = inflate * c_constant(census.d);
    m.tail_u = census.d;
    return m;
}

SaddleModel SaddleModel::partitions(int64_t horizon, double inflate) {
    SaddleModel m;
    m.gamma.assign(horizon + 1, 1);
    m.gamma[0] = 0;
    m.tail_K = inflate;
    m.tail_u = 1.0;
    return m;
}

namespace {

struct PreparedModel {
    const SaddleModel* m;
    std::vector<double> suffix;  // suffix[j] = sum_{j' >= j} gamma(j'), j <= J
    int64_t j_min = 0;           // least weight with gamma > 0 (0 if none)

    explicit PreparedModel(const SaddleModel& model) : m(&model) {
        const int64_t J = model.horizon();
        suffix.assign(J + 2, 0.0);
        for (int64_t j = J; j >= 1; --j)
            suffix[j] = suffix[j + 1] + static_cast<double>(model.gamma[j]);
        for (int64_t j = 1; j <= J; ++j) {
            if (model.gamma[j] > 0) {
                j_min = j;
                break;
            }
        }
        if (j_min == 0 && model.tail_K > 0) j_min = J + 1;
    }

    // sum_{j > J} delta(j) e^{-tj} for the tail model, delta(j) =
    // K (j^u - (j-1)^u); over-covered when certified.
    double phi_tail(double t) const {
        if (m->tail_K <= 0) return 0.0;
        const double u = m->tail_u;
        const int64_t J = m->horizon();
        double total = 0.0;
        double prev_pow = std::pow(static_cast<double>(J), u);
        for (int64_t j = J + 1;; ++j) {
            const double cur_pow = std::pow(static_cast<double>(j), u);
            const double term = m->tail_K * (cur_pow - prev_pow) * std::exp(-t * j);
            prev_pow = cur_pow;
            total += term;
            // successive-term ratio: the power increments are u*xi^{u-1}
            // with xi in (j-1, j+1), so the ratio is at most
            // ((j+1)/(j-1))^{u-1} e^{-t}, decreasing in j; once below 1 the
            // remainder is geometrically dominated
            const double q =
                std::pow((j + 1.0) / (j - 1.0), std::max(u - 1.0, 0.0)) * std::exp(-t);
            if (q < 1.0) {
                const double rest = term * q / (1.0 - q);
                if (rest < m->truncation_tol * std::max(total, 1e-300)) {
                    if (m->certified) total += rest;
                    return total;
                }
            }
            if (j > J + 100000000) throw internal_error("tail series failed to converge");
        }
    }

    // phi(t) = sum_j gamma(j) e^{-tj} (+ tail); certified j-cut adds the
    // bound e^{-t j} * suffix(j) instead of dropping it.
    double phi(double t) const {
        const int64_t J = m->horizon();
        double total = 0.0;
        for (int64_t j = 1; j <= J; ++j) {
            if (m->gamma[j] <= 0) continue;
            const double e = std::exp(-t * j);
            const double bound = e * suffix[j];  // covers everything from j on
            if (bound < m->truncation_tol * std::max(total, 1e-300)) {
                if (m->certified) total += bound;
                total += phi_tail(t);
                return total;
            }
            total += m->gamma[j] * e;
        }
        total += phi_tail(t);
        return total;
    }

    // -phi'(t) = sum_j j gamma(j) e^{-tj} (+ tail); plain truncation — used
    // only to locate the saddle, never for the certified bound.
    double phi_deriv_neg(double t) const {
        const int64_t J = m->horizon();
        double total = 0.0;
        for (int64_t j = 1; j <= J; ++j) {
            if (m->gamma[j] <= 0) continue;
            const double term = static_cast<double>(j) * m->gamma[j] * std::exp(-t * j);
            total += term;
            if (j * suffix[j] * std::exp(-t * j) < 1e-16 * std::max(total, 1e-300)) break;
        }
        if (m->tail_K > 0) {
            const double u = m->tail_u;
            const int64_t J2 = m->horizon();
            double prev_pow = std::pow(static_cast<double>(J2), u);
            for (int64_t j = J2 + 1;; ++j) {
                const double cur_pow = std::pow(static_cast<double>(j), u);
                const double term = j * m->tail_K * (cur_pow - prev_pow) * std::exp(-t * j);
                prev_pow = cur_pow;
                total += term;
                const double q = std::pow((j + 1.0) / (j - 1.0), std::max(u, 1.0)) * std::exp(-t);
                if (q < 1.0 && term * q / (1.0 - q) < 1e-16 * std::max(total, 1e-300)) break;
                if (j > J2 + 100000000) break;
            }
        }
        return total;
    }
};

}  // namespace

double saddle_h(const SaddleModel& model, double s) {
    if (!(s > 0)) throw usage_error("saddle_h requires s > 0");
    PreparedModel pm(model);
    if (pm.j_min == 0) return 0.0;
    const double rho = std::exp(-s * pm.j_min);  // phi((m+1)s) <= rho * phi(ms)
    double total = 0.0;
    for (int64_t m = 1;; ++m) {
        const double p = pm.phi(m * s);
        total += p / m;
        const double rest_bound = p * rho / ((1.0 - rho) * (m + 1));
        if (rest_bound < model.truncation_tol * std::max(total, 1e-300)) {
            if (model.certified) total += rest_bound;
            return total;
        }
        if (m > 50000000) throw internal_error("h series failed to converge");
    }
}

double saddle_h_derivative(const SaddleModel& model, double s) {
    if (!(s > 0)) throw usage_error("saddle_h_derivative requires s > 0");
    PreparedModel pm(model);
    if (pm.j_min == 0) return 0.0;
    const double rho = std::exp(-s * pm.j_min);
    double total = 0.0;
    for (int64_t m = 1;; ++m) {
        const double p = pm.phi_deriv_neg(m * s);
        total += p;
        if (p * rho / (1.0 - rho) < 1e-15 * std::max(total, 1e-300)) break;
        if (m > 50000000) throw internal_error("h' series failed to converge");
    }
    return -total;
}

SaddleResult saddle_estimate(const SaddleModel& model, int64_t n) {
    if (n < 1) throw usage_error("saddle_estimate requires n >= 1");
    PreparedModel pm(model);
    if (pm.j_min == 0) throw internal_error("saddle not bracketed");
    SaddleResult res;
    auto record = [&](double s) {
        const double val = saddle_h(model, s) + static_cast<double>(n) * s;
        res.path.emplace_back(s, val);
        return val;
    };
    // bracket: h' is increasing (h convex); need h'(lo) < -n <= h'(hi)
    double lo = 1.0, hi = 1.0;
    while (saddle_h_derivative(model, lo) > -static_cast<double>(n)) {
        lo /= 2;
        if (lo < 1e-250) throw internal_error("saddle not bracketed");
    }
    int guard = 0;
    while (saddle_h_derivative(model, hi) < -static_cast<double>(n)) {
        hi *= 2;
        if (++guard > 80) throw internal_error("saddle not bracketed");
    }
    const double tol = std::max(1.0, 1e-6 * static_cast<double>(n));
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double dv = saddle_h_derivative(model, mid);
        record(mid);
        if (std::abs(dv + static_cast<double>(n)) <= tol) break;
        if (dv < -static_cast<double>(n))
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18 * hi) break;
    }
    record(lo);
    record(hi);
    auto best = std::min_element(res.path.begin(), res.path.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    res.s_star = best->first;
    res.log_b_upper = best->second;
    return res;
}

double log_mpz(const mpz_class& v) {
    if (v <= 0) throw usage_error("log_mpz requires a positive value");
    signed long exp2;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

namespace {

// Regularized incomplete gamma: series for x < a+1, continued fraction
// otherwise (Lentz).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double fpmin = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0 || x < 0) throw usage_error("regularized_gamma_q domain");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_pvalue(double statistic, int64_t dof) {
    if (dof < 1) throw usage_error("chi_square_pvalue requires dof >= 1");
    if (statistic <= 0) return 1.0;
    return regularized_gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

}  // namespace loco
