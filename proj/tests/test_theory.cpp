#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sbp/theory.hpp"
#include "test_util.hpp"

using namespace sbp::theory;
using sbp::Rational;

static const auto golden = sbp_test::load_golden();

TEST_CASE("p_kappa endpoints and golden value") {
    CHECK(std::abs(p_kappa(50.0) - 1.0) <= 1e-12);
    CHECK(p_kappa(1e-12) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(p_kappa(0.6744898) - 0.5) <= 1e-6);
    CHECK(p_kappa(1.0) == doctest::Approx(golden.at("p_kappa_1")).epsilon(1e-12));
    CHECK(p_kappa(0.5) == doctest::Approx(golden.at("p_kappa_0.5")).epsilon(1e-12));
    CHECK_THROWS_AS(p_kappa(0.0), std::domain_error);
    CHECK_THROWS_AS(p_kappa(-1.0), std::domain_error);
    CHECK_THROWS_AS(p_kappa(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("mu2 closed form agrees with quadrature across kappa") {
    for (double k : {0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0})
        CHECK(std::abs(mu2_kappa(k) - mu2_kappa_quadrature(k)) <= 1e-10);
    CHECK(std::abs(mu2_kappa(50.0) - 1.0) <= 1e-9);
    // Small kappa: conditional second moment approaches kappa^2 / 3.
    CHECK(mu2_kappa(0.001) == doctest::Approx(1e-6 / 3.0).epsilon(0.01));
    CHECK(mu2_kappa(1.0) == doctest::Approx(golden.at("mu2_kappa_1")).epsilon(1e-12));
}

TEST_CASE("beta edge cases and composition") {
    CHECK(beta(1.0, 0.0) == 0.0);
    CHECK(std::abs(beta(50.0, 1.0)) <= 1e-8);
    const double expect = -(std::sqrt(0.5) / 2.0) * (1.0 - mu2_kappa(1.0));
    CHECK(beta(1.0, 0.5) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(beta(1.0, 0.5) == doctest::Approx(golden.at("beta_1_0.5")).epsilon(1e-12));
    CHECK_THROWS_AS(beta(1.0, -0.1), std::domain_error);
}

TEST_CASE("alpha_c values, monotonicity and divergence") {
    CHECK(std::abs(alpha_c(0.6744898) - 1.0) <= 1e-5);
    CHECK(alpha_c(1.0) == doctest::Approx(golden.at("alpha_c_1")).epsilon(1e-12));
    CHECK(alpha_c(0.5) == doctest::Approx(golden.at("alpha_c_0.5")).epsilon(1e-12));
    double prev = 0.0;
    for (double k : {0.1, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 30.0}) {
        const double a = alpha_c(k);
        CHECK(a > prev);
        prev = a;
    }
    CHECK(std::isinf(alpha_c(60.0)));
    // Tiny kappa stays finite and positive, never NaN.
    const double tiny = alpha_c(1e-8);
    CHECK(std::isfinite(tiny));
    CHECK(tiny > 0.0);
}

TEST_CASE("q_kappa collapse, symmetry and monotonicity") {
    for (double k : {0.5, 1.0, 2.0}) {
        const double p = p_kappa(k);
        CHECK(std::abs(q_kappa(0.5, k) - p * p) <= 1e-8);
        CHECK(std::abs(q_kappa(1.0, k) - p) <= 1e-8);
        CHECK(std::abs(q_kappa(0.0, k) - p) <= 1e-8);
        for (double x : {0.05, 0.15, 0.25, 0.35, 0.45})
            CHECK(std::abs(q_kappa(x, k) - q_kappa(1.0 - x, k)) <= 1e-9);
    }
    for (double x : {0.1, 0.3, 0.5, 0.8})
        CHECK(q_kappa(x, 0.5) < q_kappa(x, 1.0));
    CHECK(q_kappa(0.3, 1.0) == doctest::Approx(golden.at("q_0.3_1")).epsilon(1e-8));
    CHECK(q_kappa(0.5, 1.0) == doctest::Approx(golden.at("q_0.5_1")).epsilon(1e-8));
    CHECK_THROWS_AS(q_kappa(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(q_kappa(1.1, 1.0), std::domain_error);
}

TEST_CASE("big_F value, symmetry and flat center") {
    const double k = 1.0, a = 0.9;
    const double center = 2.0 * a * std::log(p_kappa(k)) + std::log(2.0);
    CHECK(std::abs(big_F(0.5, k, a) - center) <= 1e-7);
    CHECK(std::abs(big_F(0.3, k, a) - big_F(0.7, k, a)) <= 1e-9);
    CHECK(std::abs(big_F_d1(0.5, k, a)) <= 1e-4);
    CHECK_THROWS_AS(big_F(0.0, k, a), std::domain_error);
    CHECK_THROWS_AS(big_F(1.0, k, a), std::domain_error);
}

TEST_CASE("alpha = 0 leaves the entropy derivative positive on (0,1/2)") {
    for (double x : {0.01, 0.1, 0.25, 0.4, 0.49})
        CHECK(big_F_d1(x, 1.0, 0.0) > 0.0);
}

TEST_CASE("hypothesis1 checker finds the single near-edge root") {
    const auto rep = hypothesis1_check(1.0, 0.9);
    CHECK(rep.f2_at_half < 0.0);
    REQUIRE(rep.roots.size() == 1);
    // The root sits near the left edge (between 1e-4 and 1e-2 for these
    // parameters), where the sqrt singularity of q meets the entropy slope.
    CHECK(rep.roots[0] > 1e-4);
    CHECK(rep.roots[0] < 1e-2);
    CHECK(std::abs(big_F_d1(rep.roots[0], 1.0, 0.9)) < 1e-3);
    CHECK_THROWS_AS(hypothesis1_check(1.0, 0.0), std::domain_error);
}

TEST_CASE("lognormal parameters and the sigma2 = -2 mu identity") {
    const auto p0 = lognormal_params_from_beta(1e-9);
    CHECK(std::abs(p0.mu) <= 1e-12);
    CHECK(std::abs(p0.sigma2) <= 1e-12);
    for (double k : {0.5, 1.0, 2.0})
        for (double frac : {0.1, 0.5, 0.9}) {
            const auto p = lognormal_params(k, frac * alpha_c(k));
            CHECK(std::abs(p.sigma2 + 2.0 * p.mu) <= 1e-12);
            CHECK(std::abs(std::exp(p.mu + p.sigma2 / 2.0) - 1.0) <= 1e-12);
        }
    const auto p = lognormal_params(1.0, 0.9);
    CHECK(p.mu == doctest::Approx(golden.at("lognormal_mu_1_0.9")).epsilon(1e-11));
    CHECK(p.sigma2 == doctest::Approx(golden.at("lognormal_s2_1_0.9")).epsilon(1e-11));
    CHECK_THROWS_AS(lognormal_params(1.0, alpha_c(1.0) + 0.01), std::domain_error);
}

TEST_CASE("truncated L: single term, limit, monotone, bounded") {
    CHECK(truncated_L(10, 0.0) == 0.0);
    const double b = -0.3;
    CHECK(truncated_L(2, b) == doctest::Approx(std::pow(2 * b, 4) / 2.0).epsilon(1e-15));
    CHECK(std::abs(truncated_L(40, -0.25) - L_limit(-0.25)) <= 1e-9);
    CHECK(truncated_L(40, -0.25) == doctest::Approx(golden.at("L_40_-0.25")).epsilon(1e-11));
    double prev = 0.0;
    for (int m1 = 2; m1 <= 20; ++m1) {
        const double l = truncated_L(m1, b);
        CHECK(l >= prev);
        CHECK(l <= L_limit(b) + 1e-15);
        prev = l;
    }
    CHECK_THROWS_AS(L_limit(0.5), std::domain_error);
    CHECK_THROWS_AS(truncated_L(1, 0.1), std::domain_error);
}

TEST_CASE("discrete constants at tiny n are exact") {
    const Rational one = Rational::parse("1");
    const auto d1 = discrete_constants(one, 1, 1);
    CHECK(d1.p_kappa_n == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d1.mu2_kappa_n == doctest::Approx(1.0).epsilon(1e-15));

    // n = 2: only the sum 0 stays inside |S| <= sqrt(2); enumerating the four
    // sign patterns gives P = 1/2 and conditional second moment 0.
    const auto d2 = discrete_constants(one, 2, 1);
    CHECK(d2.p_kappa_n == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d2.mu2_kappa_n == doctest::Approx(0.0).epsilon(1e-15));

    const auto d24 = discrete_constants(one, 24, 21);
    CHECK(d24.p_kappa_n == doctest::Approx(golden.at("p_n_24_1")).epsilon(1e-11));
    CHECK(d24.mu2_kappa_n == doctest::Approx(golden.at("mu2_n_24_1")).epsilon(1e-11));
    CHECK(d24.beta_n == doctest::Approx(golden.at("beta_n_24_21_1")).epsilon(1e-11));
}

TEST_CASE("discrete constants converge to the continuous ones") {
    const Rational one = Rational::parse("1");
    const auto big = discrete_constants(one, 10000, 9000);
    CHECK(std::abs(big.p_kappa_n - p_kappa(1.0)) <= 5e-3);

    const double b = beta(1.0, 0.9);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (int64_t n : {100, 1000, 10000}) {
        const auto d = discrete_constants(one, n, (9 * n) / 10);
        const double gap = std::abs(d.beta_n - b);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("theory constants bundle is internally consistent") {
    const auto c = make_theory_constants(1.0, 0.9);
    CHECK(c.p_kappa > 0.0);
    CHECK(c.p_kappa < 1.0);
    CHECK(c.mu2_kappa >= 0.0);
    CHECK(c.mu2_kappa < 1.0);
    CHECK(c.beta > -0.5);
    CHECK(c.beta <= 0.0);
    CHECK(c.lognormal_sigma2 == doctest::Approx(-2.0 * c.lognormal_mu).epsilon(1e-12));
}
