#pragma once

#include <vector>

#include "sbp/rational.hpp"

namespace sbp::theory {

// Bundle of the continuous-theory constants for one (kappa, alpha) point.
struct TheoryConstants {
    double kappa = 0.0;
    double alpha = 0.0;
    double p_kappa = 0.0;       // P(|N| <= kappa)
    double mu2_kappa = 0.0;     // E[N^2 | |N| <= kappa]
    double beta = 0.0;          // -(sqrt(alpha)/2)(1 - mu2)
    double alpha_c = 0.0;       // -log 2 / log P
    double lognormal_mu = 0.0;
    double lognormal_sigma2 = 0.0;
};

// Finite-n analogues, with the band evaluated in exact integer arithmetic.
struct DiscreteConstants {
    int64_t n = 0;
    int64_t m = 0;
    double p_kappa_n = 0.0;
    double log_p_kappa_n = 0.0;
    double mu2_kappa_n = 0.0;
    double beta_n = 0.0;
};

struct Hypothesis1Report {
    double kappa = 0.0;
    double alpha = 0.0;
    double f2_at_half = 0.0;            // F''(1/2)
    std::vector<double> roots;          // roots of F' on (0, 1/2)
    int grid_points = 0;
    double margin = 0.0;                // scan interval is (margin, 1/2 - margin)
};

// P(|N| <= kappa) for standard normal N.
double p_kappa(double kappa);

// E[N^2 | |N| <= kappa], closed form 1 - 2 kappa phi(kappa) / P_kappa.
double mu2_kappa(double kappa);

// Same quantity by adaptive quadrature of the defining integral; the
// independent cross-check route for the closed form.
double mu2_kappa_quadrature(double kappa);

double beta(double kappa, double alpha);

// -log 2 / log P_kappa; +infinity once P_kappa rounds to 1 (kappa >~ 38).
double alpha_c(double kappa);

// P(|N1| <= kappa, |N2| <= kappa) for standard bivariate normal with
// correlation 2x - 1, absolute error <= 1e-8.
double q_kappa(double x, double kappa);

// F(x) = alpha log q_kappa(x) - x log x - (1-x) log(1-x), on (0,1).
double big_F(double x, double kappa, double alpha);
double big_F_d1(double x, double kappa, double alpha);
double big_F_d2(double x, double kappa, double alpha);

// Scans F' on (margin, 1/2 - margin) and refines each sign change by
// bisection; reports, never asserts.
Hypothesis1Report hypothesis1_check(double kappa, double alpha);

struct LognormalParams {
    double mu = 0.0;
    double sigma2 = 0.0;
};

// Parameters of the limit law of Z / E[Z], from beta with |beta| < 1/2.
LognormalParams lognormal_params_from_beta(double beta);

// Same, from (kappa, alpha) with alpha < alpha_c(kappa).
LognormalParams lognormal_params(double kappa, double alpha);

// Truncated series L(M1) = sum_{k=2}^{M1} (2 beta)^{2k} / k.
double truncated_L(int m1, double beta);

// Limit of L as M1 -> infinity; requires |beta| < 1/2.
double L_limit(double beta);

// Finite-n constants; kappa as an exact decimal rational so the band
// membership matches the model's integer comparisons bit for bit.
DiscreteConstants discrete_constants(const Rational& kappa, int64_t n, int64_t m);

TheoryConstants make_theory_constants(double kappa, double alpha);

} // namespace sbp::theory
