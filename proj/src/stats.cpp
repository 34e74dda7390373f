#include "sbp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sbp/numeric.hpp"

namespace sbp::stats {

double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("sample_mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
    const double mean = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

} // namespace

TestVerdict ks_lognormal(const SampleBatch& batch, double mu, double sigma2,
                         double p_threshold) {
    if (batch.values.size() < 2)
        throw std::invalid_argument("ks_lognormal: need at least 2 values");
    if (!(sigma2 > 0.0)) throw std::domain_error("ks_lognormal: sigma2 must be positive");
    for (double v : batch.values)
        if (!(v > 0.0)) throw std::domain_error("ks_lognormal: nonpositive sample value");

    std::vector<double> sorted = batch.values;
    std::sort(sorted.begin(), sorted.end());
    const double sigma = std::sqrt(sigma2);
    const double nn = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf((std::log(sorted[i]) - mu) / sigma);
        const double lo = static_cast<double>(i) / nn;
        const double hi = static_cast<double>(i + 1) / nn;
        d = std::max(d, std::max(cdf - lo, hi - cdf));
    }
    const double p = kolmogorov_tail(std::sqrt(nn) * d);

    TestVerdict v;
    v.name = "ks_lognormal[" + batch.label + "]";
    v.statistic = d;
    v.threshold = p_threshold;
    v.p_value_or_band = p;
    v.pass = p > p_threshold;
    v.details = "D=" + fmt(d) + " p=" + fmt(p) + " N=" + std::to_string(sorted.size()) +
                " mu=" + fmt(mu) + " sigma2=" + fmt(sigma2);
    return v;
}

TestVerdict mean_variance_check(const SampleBatch& batch, double target_mean,
                                double target_var, double se_mult, double var_rel_band) {
    if (batch.values.size() < 30)
        throw std::invalid_argument("mean_variance_check: need at least 30 values");
    const double mean = sample_mean(batch.values);
    const double var = sample_variance(batch.values);
    const double se = std::sqrt(var / static_cast<double>(batch.values.size()));
    const double z = se > 0.0 ? (mean - target_mean) / se : 0.0;
    const double var_rel = target_var != 0.0
                               ? std::abs(var - target_var) / target_var
                               : std::abs(var);
    const bool mean_ok = std::abs(mean - target_mean) <= se_mult * se;
    const bool var_ok = var_rel <= var_rel_band;

    TestVerdict v;
    v.name = "mean_variance[" + batch.label + "]";
    v.statistic = z;
    v.threshold = se_mult;
    v.p_value_or_band = var_rel;
    v.pass = mean_ok && var_ok;
    v.details = "mean=" + fmt(mean) + " target=" + fmt(target_mean) + " z=" + fmt(z) +
                " var=" + fmt(var) + " target_var=" + fmt(target_var) +
                " var_rel=" + fmt(var_rel) + " band=" + fmt(var_rel_band);
    return v;
}

TestVerdict mean_check(const SampleBatch& batch, double target_mean, double se_mult) {
    if (batch.values.size() < 2)
        throw std::invalid_argument("mean_check: need at least 2 values");
    const double mean = sample_mean(batch.values);
    const double se =
        std::sqrt(sample_variance(batch.values) / static_cast<double>(batch.values.size()));
    const double z = se > 0.0 ? (mean - target_mean) / se : 0.0;

    TestVerdict v;
    v.name = "mean[" + batch.label + "]";
    v.statistic = z;
    v.threshold = se_mult;
    v.p_value_or_band = se;
    v.pass = std::abs(mean - target_mean) <= se_mult * se;
    v.details = "mean=" + fmt(mean) + " target=" + fmt(target_mean) + " se=" + fmt(se) +
                " z=" + fmt(z);
    return v;
}

namespace {

// Multi-indices (alpha_2..alpha_K) with 1 <= total degree <= max_degree.
void enumerate_indices(std::vector<int>& alpha, size_t pos, int remaining,
                       std::vector<std::vector<int>>& out) {
    if (pos == alpha.size()) {
        int total = 0;
        for (int a : alpha) total += a;
        if (total >= 1) out.push_back(alpha);
        return;
    }
    for (int a = 0; a <= remaining; ++a) {
        alpha[pos] = a;
        enumerate_indices(alpha, pos + 1, remaining - a, out);
    }
    alpha[pos] = 0;
}

double double_factorial_odd(int a) {
    // (a-1)!! for even a
    double r = 1.0;
    for (int v = a - 1; v >= 1; v -= 2) r *= v;
    return r;
}

} // namespace

TestVerdict wick_joint_moments(const std::vector<SampleBatch>& batches, int max_degree,
                               double z_threshold) {
    if (batches.empty()) throw std::invalid_argument("wick_joint_moments: no batches");
    const size_t nsamp = batches.front().values.size();
    for (const auto& b : batches)
        if (b.values.size() != nsamp)
            throw std::invalid_argument("wick_joint_moments: batches must be paired");
    if (nsamp < 30) throw std::invalid_argument("wick_joint_moments: need at least 30 samples");

    std::vector<std::vector<int>> indices;
    std::vector<int> alpha(batches.size(), 0);
    enumerate_indices(alpha, 0, max_degree, indices);

    double worst_z = 0.0;
    std::string worst_name = "-";
    for (const auto& idx : indices) {
        // Target: product over k of the centered Gaussian moment with
        // variance 2k (k = 2 for the first batch).
        double target = 1.0;
        for (size_t b = 0; b < idx.size(); ++b) {
            const int a = idx[b];
            if (a == 0) continue;
            if (a % 2 == 1) {
                target = 0.0;
                break;
            }
            const double var = 2.0 * static_cast<double>(b + 2);
            target *= double_factorial_odd(a) * std::pow(var, a / 2.0);
        }
        std::vector<double> prod(nsamp, 1.0);
        for (size_t b = 0; b < idx.size(); ++b)
            for (int rep = 0; rep < idx[b]; ++rep)
                for (size_t s = 0; s < nsamp; ++s) prod[s] *= batches[b].values[s];
        const double mean = sample_mean(prod);
        const double se = std::sqrt(sample_variance(prod) / static_cast<double>(nsamp));
        const double z = se > 0.0 ? (mean - target) / se : (mean == target ? 0.0 : 1e9);
        if (std::abs(z) > std::abs(worst_z)) {
            worst_z = z;
            std::string nm;
            for (size_t b = 0; b < idx.size(); ++b)
                if (idx[b] > 0)
                    nm += "C" + std::to_string(b + 2) + "^" + std::to_string(idx[b]);
            worst_name = nm;
        }
    }

    TestVerdict v;
    v.name = "wick_joint_moments";
    v.statistic = worst_z;
    v.threshold = z_threshold;
    v.p_value_or_band = static_cast<double>(indices.size());
    v.pass = std::abs(worst_z) <= z_threshold;
    v.details = "worst |z| = " + fmt(std::abs(worst_z)) + " at " + worst_name + " over " +
                std::to_string(indices.size()) + " moments";
    return v;
}

TestVerdict variance_reduction(const SampleBatch& log_ratio, const SampleBatch& y,
                               double max_fraction) {
    if (log_ratio.values.size() != y.values.size())
        throw std::domain_error("variance_reduction: unpaired batch lengths");
    if (log_ratio.values.size() < 2)
        throw std::invalid_argument("variance_reduction: need at least 2 values");
    std::vector<double> residual(log_ratio.values.size());
    for (size_t i = 0; i < residual.size(); ++i)
        residual[i] = log_ratio.values[i] - y.values[i];
    const double var_ratio = sample_variance(log_ratio.values);
    const double var_res = sample_variance(residual);
    const double frac = var_ratio > 0.0 ? var_res / var_ratio
                                        : (var_res == 0.0 ? 0.0 : 1e18);

    TestVerdict v;
    v.name = "variance_reduction[" + log_ratio.label + "]";
    v.statistic = frac;
    v.threshold = max_fraction;
    v.p_value_or_band = var_res;
    v.pass = frac < max_fraction;
    v.details = "Var(resid)=" + fmt(var_res) + " Var(log_ratio)=" + fmt(var_ratio) +
                " fraction=" + fmt(frac);
    return v;
}

TestVerdict chi_square_gof(const std::vector<int64_t>& counts,
                           const std::vector<double>& probs, double p_threshold) {
    if (counts.size() != probs.size() || counts.size() < 2)
        throw std::invalid_argument("chi_square_gof: bad cell layout");
    int64_t total = 0;
    for (int64_t c : counts) total += c;
    if (total <= 0) throw std::invalid_argument("chi_square_gof: empty sample");
    double stat = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0.0) throw std::domain_error("chi_square_gof: zero-probability cell");
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
    }
    const double dof = static_cast<double>(counts.size() - 1);
    const double p = chi2_sf(stat, dof);

    TestVerdict v;
    v.name = "chi_square_gof";
    v.statistic = stat;
    v.threshold = p_threshold;
    v.p_value_or_band = p;
    v.pass = p > p_threshold;
    v.details = "chi2=" + fmt(stat) + " dof=" + fmt(dof) + " p=" + fmt(p);
    return v;
}

} // namespace sbp::stats
