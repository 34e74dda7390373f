#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace sbp {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// Phi(x), accurate in both tails via erfc.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// log Gamma(n+1) for integer n, cached.
double log_factorial(int64_t n);

// log C(n, k); -inf if k outside [0, n].
double log_binomial(int64_t n, int64_t k);

// Numerically stable log(sum exp(x_i)) accumulator.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term > max_) {
            if (max_ != -std::numeric_limits<double>::infinity())
                sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            else
                sum_ = 1.0;
            max_ = log_term;
        } else {
            sum_ += std::exp(log_term - max_);
        }
    }
    double value() const {
        if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = 60);

// Bisection on [lo, hi] assuming f(lo) and f(hi) have opposite signs;
// refines until the bracket is shorter than xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol);

// Regularized upper incomplete gamma Q(a, x); survival function machinery
// for the chi-square helper.
double gamma_q(double a, double x);

// P(chi2_k > x).
inline double chi2_sf(double x, double dof) { return gamma_q(0.5 * dof, 0.5 * x); }

// Kolmogorov limit law tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2),
// truncated at 100 terms.
double kolmogorov_tail(double lambda);

// Integer floor of sqrt for nonnegative v.
inline int64_t isqrt_floor(int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

} // namespace sbp
