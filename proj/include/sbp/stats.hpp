#pragma once

#include <string>
#include <vector>

namespace sbp::stats {

struct SampleBatch {
    std::vector<double> values;
    std::string label;
    uint64_t base_seed = 0;
};

struct TestVerdict {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    double p_value_or_band = 0.0;
    bool pass = false;
    bool informational = false; // report-only rows, never gate the run
    std::string details;
};

double sample_mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v); // unbiased

// One-sample Kolmogorov-Smirnov against Lognormal(mu, sigma2); asymptotic
// p-value from the KS series. Batch must be positive.
TestVerdict ks_lognormal(const SampleBatch& batch, double mu, double sigma2,
                         double p_threshold = 0.01);

// Mean within se_mult standard errors of target_mean and variance within
// var_rel_band of target_var (relative).
TestVerdict mean_variance_check(const SampleBatch& batch, double target_mean,
                                double target_var, double se_mult,
                                double var_rel_band = 0.15);

// Mean-only variant for targets whose variance band is not part of the claim.
TestVerdict mean_check(const SampleBatch& batch, double target_mean, double se_mult);

// Joint moments of (C_2..C_K) against independent centered Gaussians with
// variances (4, 6, ..., 2K); worst |z| over all mixed moments of total degree
// <= max_degree.
TestVerdict wick_joint_moments(const std::vector<SampleBatch>& batches, int max_degree,
                               double z_threshold = 4.5);

// Var(log_ratio - y) / Var(log_ratio); pass when below max_fraction.
TestVerdict variance_reduction(const SampleBatch& log_ratio, const SampleBatch& y,
                               double max_fraction = 0.35);

// Pearson chi-square goodness of fit of observed counts against cell
// probabilities; p-value from the chi-square tail.
TestVerdict chi_square_gof(const std::vector<int64_t>& counts,
                           const std::vector<double>& probs, double p_threshold = 0.01);

} // namespace sbp::stats
