#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locograph/asymptotics.hpp"
#include "locograph/counting.hpp"
#include "locograph/errors.hpp"

using namespace loco;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("zeta") {
    CHECK(zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
    CHECK(zeta(4.0) == doctest::Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-12));
    CHECK(zeta(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-10));
    CHECK(zeta(1.5) == doctest::Approx(2.612375348685488).epsilon(1e-10));
    CHECK_THROWS_AS(zeta(1.0), usage_error);
    CHECK_THROWS_AS(zeta(0.5), usage_error);
}

TEST_CASE("model constants") {
    CHECK(k_constant(2) == doctest::Approx(1.4053918332009545).epsilon(1e-10));
    CHECK(k_constant(2) ==
          doctest::Approx(1.5 * std::cbrt(zeta(2.0) / 2.0)).epsilon(1e-12));
    CHECK(k_constant(3) ==
          doctest::Approx((4.0 / 3.0) * std::pow(zeta(2.0) * zeta(3.0) / 4.0, 0.25))
              .epsilon(1e-12));
    CHECK(c_constant(2) == doctest::Approx(zeta(2.0) / 8.0).epsilon(1e-12));
    CHECK(c_constant(2) == doctest::Approx(0.20561675835602830).epsilon(1e-10));
    CHECK(c_constant(3) ==
          doctest::Approx(zeta(2.0) * zeta(3.0) / (4.0 * 6.0 * 3.0)).epsilon(1e-12));
    CHECK(c_constant(1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(k_constant(1), usage_error);
}

TEST_CASE("leading term") {
    SUBCASE("u=1 calibration is the Hardy-Ramanujan exponent") {
        for (double n : {1.0, 100.0, 4096.0}) {
            CHECK(leading_term(1.0, 1.0, n) ==
                  doctest::Approx(kPi * std::sqrt(2.0 * n / 3.0)).epsilon(1e-12));
        }
        CHECK(leading_term(1.0, 1.0, 100.0) == doctest::Approx(25.650996603).epsilon(1e-9));
    }
    SUBCASE("n=0 edge") {
        CHECK(leading_term(1.0, 1.0, 0.0) == 0.0);
    }
    SUBCASE("u=d calibration carries the extra zeta factor") {
        // (1/2)(c_2 * 2 * Gamma(4) * zeta(3))^{1/3} * 3^{2/3} simplifies to
        // (3/2)(zeta(2) zeta(3)/2)^{1/3}, not the d=2 model constant
        const double expect = 1.5 * std::cbrt(zeta(2.0) * zeta(3.0) / 2.0);
        CHECK(leading_term(c_constant(2), 2.0, 1.0) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(leading_term(c_constant(2), 2.0, 1.0) == doctest::Approx(1.4943044890).epsilon(1e-9));
        CHECK(leading_term(c_constant(2), 2.0, 1000.0) ==
              doctest::Approx(expect * std::pow(1000.0, 2.0 / 3.0)).epsilon(1e-12));
    }
}

TEST_CASE("incomplete gamma and chi-square") {
    // Q(1/2, x/2) = erfc(sqrt(x/2)) for dof 1
    CHECK(chi_square_pvalue(1.0, 1) == doctest::Approx(std::erfc(std::sqrt(0.5))).epsilon(1e-10));
    // dof 2: exp(-x/2)
    CHECK(chi_square_pvalue(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-10));
    // dof 4: (1 + x/2) exp(-x/2)
    CHECK(chi_square_pvalue(5.0, 4) == doctest::Approx((1 + 2.5) * std::exp(-2.5)).epsilon(1e-10));
    CHECK(chi_square_pvalue(0.0, 3) == 1.0);
    CHECK(chi_square_pvalue(1000.0, 3) < 1e-100);
}

TEST_CASE("log of big integers") {
    CHECK(log_mpz(mpz_class(1)) == 0.0);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 100);
    CHECK(log_mpz(big) == doctest::Approx(100.0 * std::log(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_mpz(mpz_class(0)), usage_error);
}

TEST_CASE("saddle machinery on the partitions calibration") {
    SaddleModel model = SaddleModel::partitions(4000);
    auto table = euler_transform_recurrence(model.gamma, 2000);
    std::vector<mpz_class> cum(table.b.size());
    mpz_class acc = 0;
    for (size_t k = 0; k < table.b.size(); ++k) {
        acc += table.b[k];
        cum[k] = acc;
    }
    SUBCASE("upper bound holds on the whole bisection path") {
        for (int64_t n : {10, 100, 500, 1000}) {
            auto res = saddle_estimate(model, n);
            const double exact = log_mpz(cum[n]);
            CHECK(res.log_b_upper >= exact);
            for (const auto& [s, val] : res.path) CHECK(val >= exact);
        }
    }
    SUBCASE("p(100) comparison and n=1000 gap") {
        auto r100 = saddle_estimate(model, 100);
        CHECK(r100.log_b_upper >= log_mpz(cum[100]));
        CHECK(log_mpz(table.b[100]) == doctest::Approx(19.0655264239).epsilon(1e-8));
        auto r1000 = saddle_estimate(model, 1000);
        const double exact1000 = log_mpz(cum[1000]);
        CHECK(log_mpz(table.b[1000]) == doctest::Approx(72.2581645070).epsilon(1e-8));
        CHECK((r1000.log_b_upper - exact1000) / exact1000 <= 0.15);
    }
    SUBCASE("gap shrinks with n") {
        auto r200 = saddle_estimate(model, 200);
        auto r2000 = saddle_estimate(model, 2000);
        const double g200 = (r200.log_b_upper - log_mpz(cum[200])) / log_mpz(cum[200]);
        const double g2000 = (r2000.log_b_upper - log_mpz(cum[2000])) / log_mpz(cum[2000]);
        CHECK(g2000 < g200);
    }
    SUBCASE("h' is monotone increasing on a grid") {
        double prev = -1e300;
        for (double s = 0.02; s <= 0.6; s += 0.02) {
            const double d = saddle_h_derivative(model, s);
            CHECK(d > prev);
            prev = d;
        }
    }
    SUBCASE("h approximation self-consistency at small s") {
        // gamma == 1, K = 1, u = 1: h(s) s / zeta(2) stays near 1
        SaddleModel wide = SaddleModel::partitions(100000);
        for (double s : {1e-3, 3e-3, 1e-2}) {
            const double ratio = saddle_h(wide, s) * s / zeta(2.0);
            CHECK(ratio > 0.8);
            CHECK(ratio < 1.2);
        }
    }
}

TEST_CASE("saddle on a census-shaped model") {
    auto census = build_census(2, 2, 2000, 2);
    SaddleModel model = SaddleModel::from_census(census);
    CHECK(model.tail_K == doctest::Approx(1.5 * c_constant(2)));
    auto table = euler_transform_recurrence(census.gamma, 2000);
    std::vector<mpz_class> cum(table.b.size());
    mpz_class acc = 0;
    for (size_t k = 0; k < table.b.size(); ++k) {
        acc += table.b[k];
        cum[k] = acc;
    }
    auto gap = [&](int64_t n) {
        auto res = saddle_estimate(model, n);
        const double exact = log_mpz(cum[n]);
        CHECK(res.log_b_upper >= exact);
        return (res.log_b_upper - exact) / exact;
    };
    for (int64_t n : {20, 60, 120}) {
        if (cum[n] == 0) continue;
        auto res = saddle_estimate(model, n);
        CHECK(res.log_b_upper >= log_mpz(cum[n]));
    }
    // gap shrinks between n=200 and n=2000, as it does for partitions
    CHECK(gap(2000) < gap(200));
}

TEST_CASE("degenerate model is rejected") {
    SaddleModel empty;
    empty.gamma.assign(10, 0);
    CHECK_THROWS_AS(saddle_estimate(empty, 5), internal_error);
}
