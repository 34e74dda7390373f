#include "sbp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbp/numeric.hpp"

namespace sbp::theory {

namespace {

void require_kappa(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::domain_error("kappa must be positive and finite");
}

constexpr double kQuadTol = 1e-12;

} // namespace

double p_kappa(double kappa) {
    require_kappa(kappa);
    return std::erf(kappa / std::sqrt(2.0));
}

double mu2_kappa(double kappa) {
    require_kappa(kappa);
    return 1.0 - 2.0 * kappa * normal_pdf(kappa) / p_kappa(kappa);
}

double mu2_kappa_quadrature(double kappa) {
    require_kappa(kappa);
    const double mass = integrate([](double x) { return x * x * normal_pdf(x); },
                                  -kappa, kappa, kQuadTol * std::min(1.0, kappa));
    return mass / p_kappa(kappa);
}

double beta(double kappa, double alpha) {
    require_kappa(kappa);
    if (alpha < 0.0 || !std::isfinite(alpha))
        throw std::domain_error("alpha must be nonnegative and finite");
    return -(std::sqrt(alpha) / 2.0) * (1.0 - mu2_kappa(kappa));
}

double alpha_c(double kappa) {
    require_kappa(kappa);
    // log P in a form that stays finite while the tail mass is representable.
    const double tail = std::erfc(kappa / std::sqrt(2.0));
    const double log_p = std::log1p(-tail);
    if (log_p == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(2.0) / log_p;
}

double q_kappa(double x, double kappa) {
    require_kappa(kappa);
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("q_kappa: x outside [0,1]");
    if (x == 0.0 || x == 1.0) return p_kappa(kappa);
    const double rho = 2.0 * x - 1.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    if (s == 0.0) return p_kappa(kappa);
    // Integral of the bivariate density over the rectangle [-k,k]^2, with the
    // inner coordinate integrated in closed form through normal_cdf.
    const auto f = [kappa, rho, s](double u) {
        return normal_pdf(u) *
               (normal_cdf((kappa - rho * u) / s) - normal_cdf((-kappa - rho * u) / s));
    };
    return integrate(f, -kappa, kappa, kQuadTol);
}

double big_F(double x, double kappa, double alpha) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("big_F: x must lie strictly inside (0,1)");
    const double entropy = -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
    return alpha * std::log(q_kappa(x, kappa)) + entropy;
}

namespace {

// Central-difference step, 1e-5 scaled by x(1-x) (normalized to hit 1e-5 at
// the center of the interval).
double fd_step(double x) { return 1e-5 * 4.0 * x * (1.0 - x); }

} // namespace

double big_F_d1(double x, double kappa, double alpha) {
    const double h = fd_step(x);
    return (big_F(x + h, kappa, alpha) - big_F(x - h, kappa, alpha)) / (2.0 * h);
}

double big_F_d2(double x, double kappa, double alpha) {
    // Wider step than d1: the second difference divides quadrature noise by
    // h^2, so h = 1e-5 would drown the curvature.
    const double h = std::max(1e-4, 1e-2 * 4.0 * x * (1.0 - x) * 0.25);
    const double fp = big_F(x + h, kappa, alpha);
    const double fm = big_F(x - h, kappa, alpha);
    const double f0 = big_F(x, kappa, alpha);
    return (fp - 2.0 * f0 + fm) / (h * h);
}

Hypothesis1Report hypothesis1_check(double kappa, double alpha) {
    require_kappa(kappa);
    if (!(alpha > 0.0)) throw std::domain_error("hypothesis1_check: alpha must be positive");

    Hypothesis1Report rep;
    rep.kappa = kappa;
    rep.alpha = alpha;
    rep.grid_points = 2048;
    rep.margin = 1e-7;
    rep.f2_at_half = big_F_d2(0.5, kappa, alpha);

    // F' diverges to -infinity at 0+ through the sqrt(x) singularity of
    // q_kappa, so the unique sign change can sit very close to the left
    // endpoint. A quadratically graded grid keeps resolution there without
    // wasting points in the flat middle.
    const double lo = rep.margin;
    const double hi = 0.5 - 1e-4;
    std::vector<double> grid(static_cast<size_t>(rep.grid_points));
    for (int i = 0; i < rep.grid_points; ++i) {
        const double u = static_cast<double>(i) / (rep.grid_points - 1);
        grid[static_cast<size_t>(i)] = lo + (hi - lo) * u * u;
    }

    double prev_x = grid[0];
    double prev_f = big_F_d1(prev_x, kappa, alpha);
    for (int i = 1; i < rep.grid_points; ++i) {
        const double x = grid[static_cast<size_t>(i)];
        const double f = big_F_d1(x, kappa, alpha);
        if ((prev_f < 0.0) != (f < 0.0)) {
            const double root = bisect(
                [kappa, alpha](double y) { return big_F_d1(y, kappa, alpha); },
                prev_x, x, 1e-9);
            rep.roots.push_back(root);
        }
        prev_x = x;
        prev_f = f;
    }
    return rep;
}

LognormalParams lognormal_params_from_beta(double b) {
    if (!(std::abs(b) < 0.5))
        throw std::domain_error("lognormal_params: |beta| must be below 1/2");
    const double one_minus = 1.0 - 4.0 * b * b;
    LognormalParams p;
    p.mu = 0.25 * std::log(one_minus) + b * b;
    p.sigma2 = -0.5 * std::log(one_minus) - 2.0 * b * b;
    return p;
}

LognormalParams lognormal_params(double kappa, double alpha) {
    if (alpha >= alpha_c(kappa))
        throw std::domain_error("lognormal_params: alpha must be below alpha_c(kappa)");
    return lognormal_params_from_beta(beta(kappa, alpha));
}

double truncated_L(int m1, double beta) {
    if (m1 < 2) throw std::domain_error("truncated_L: M1 must be at least 2");
    const double g = 4.0 * beta * beta; // (2 beta)^2
    double power = g;
    double sum = 0.0;
    for (int k = 2; k <= m1; ++k) {
        power *= g;
        sum += power / k;
    }
    return sum;
}

double L_limit(double beta) {
    if (!(std::abs(beta) < 0.5))
        throw std::domain_error("L_limit: |beta| must be below 1/2");
    const double g = 4.0 * beta * beta;
    return -std::log1p(-g) - g;
}

DiscreteConstants discrete_constants(const Rational& kappa, int64_t n, int64_t m) {
    if (n < 1 || m < 1) throw std::domain_error("discrete_constants: n, m must be >= 1");
    if (!kappa.positive()) throw std::domain_error("discrete_constants: kappa must be positive");

    const int64_t thr = band_threshold(kappa, n);
    const double log2 = std::log(2.0);
    LogSumExp mass;      // P_{kappa,n}
    LogSumExp second;    // sum over the band of s^2 * C(n,t) / 2^n
    for (int64_t t = 0; t <= n; ++t) {
        const int64_t s = 2 * t - n;
        if (s * s > thr) continue;
        const double log_term = log_binomial(n, t) - n * log2;
        mass.add(log_term);
        if (s != 0) second.add(log_term + 2.0 * std::log(std::abs(static_cast<double>(s))));
    }

    DiscreteConstants d;
    d.n = n;
    d.m = m;
    d.log_p_kappa_n = mass.value();
    d.p_kappa_n = std::exp(d.log_p_kappa_n);
    // Conditional second moment of s/sqrt(n) inside the band. An empty or
    // {s=0} band gives mass at the origin only, i.e. mu2 = 0.
    d.mu2_kappa_n =
        std::isfinite(d.log_p_kappa_n) && std::isfinite(second.value())
            ? std::exp(second.value() - d.log_p_kappa_n - std::log(static_cast<double>(n)))
            : 0.0;
    d.beta_n = -(std::sqrt(static_cast<double>(m)) / (2.0 * std::sqrt(static_cast<double>(n)))) *
               (1.0 - d.mu2_kappa_n);
    return d;
}

TheoryConstants make_theory_constants(double kappa, double alpha) {
    TheoryConstants c;
    c.kappa = kappa;
    c.alpha = alpha;
    c.p_kappa = p_kappa(kappa);
    c.mu2_kappa = mu2_kappa(kappa);
    c.beta = beta(kappa, alpha);
    c.alpha_c = alpha_c(kappa);
    const LognormalParams p = lognormal_params(kappa, alpha);
    c.lognormal_mu = p.mu;
    c.lognormal_sigma2 = p.sigma2;
    return c;
}

} // namespace sbp::theory
