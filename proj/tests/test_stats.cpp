#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sbp/rng.hpp"
#include "sbp/stats.hpp"

using namespace sbp;
using namespace sbp::stats;

namespace {

SampleBatch lognormal_batch(double mu, double sigma2, int n, Rng& rng, const char* label) {
    SampleBatch b;
    b.label = label;
    const double sigma = std::sqrt(sigma2);
    b.values.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b.values.push_back(std::exp(mu + sigma * rng.next_normal()));
    return b;
}

} // namespace

TEST_CASE("ks_lognormal calibration: true distribution passes nearly always") {
    const double mu = -0.05, s2 = 0.1;
    int passes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng(1000 + static_cast<uint64_t>(rep), 0);
        const auto b = lognormal_batch(mu, s2, 10000, rng, "calib");
        if (ks_lognormal(b, mu, s2).pass) ++passes;
    }
    CHECK(passes >= 98);
}

TEST_CASE("ks_lognormal rejects a constant batch and a shifted lognormal") {
    SampleBatch constant;
    constant.label = "constant";
    constant.values.assign(500, 1.0);
    CHECK(!ks_lognormal(constant, 0.0, 0.1).pass);

    Rng rng(7, 0);
    const auto shifted = lognormal_batch(0.45, 0.1, 10000, rng, "shifted");
    const auto v = ks_lognormal(shifted, -0.05, 0.1);
    CHECK(!v.pass);
    CHECK(v.p_value_or_band < 1e-4);
}

TEST_CASE("ks_lognormal domain checks and order invariance") {
    SampleBatch bad;
    bad.values = {0.5, -1.0, 2.0};
    CHECK_THROWS_AS(ks_lognormal(bad, 0.0, 0.1), std::domain_error);

    Rng rng(9, 0);
    auto b = lognormal_batch(0.0, 0.2, 2000, rng, "order");
    const auto v1 = ks_lognormal(b, 0.0, 0.2);
    std::reverse(b.values.begin(), b.values.end());
    const auto v2 = ks_lognormal(b, 0.0, 0.2);
    CHECK(v1.statistic == v2.statistic);
    CHECK(v1.p_value_or_band == v2.p_value_or_band);
}

TEST_CASE("mean_variance_check calibration on standard normals") {
    int passes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng(2000 + static_cast<uint64_t>(rep), 0);
        SampleBatch b;
        b.label = "normals";
        for (int i = 0; i < 1000; ++i) b.values.push_back(rng.next_normal());
        if (mean_variance_check(b, 0.0, 1.0, 4.0).pass) ++passes;
    }
    CHECK(passes >= 99);
}

TEST_CASE("mean_variance_check fails zero-variance data against unit variance") {
    SampleBatch b;
    b.values.assign(100, 0.0);
    CHECK(!mean_variance_check(b, 0.0, 1.0, 4.0).pass);
}

TEST_CASE("wick joint moments: independent gaussians pass, correlated copies fail") {
    Rng rng(3000, 0);
    const int n = 20000;
    std::vector<SampleBatch> good(3);
    for (int k = 0; k < 3; ++k) {
        good[static_cast<size_t>(k)].label = "C" + std::to_string(k + 2);
        const double sd = std::sqrt(2.0 * (k + 2));
        for (int i = 0; i < n; ++i)
            good[static_cast<size_t>(k)].values.push_back(sd * rng.next_normal());
    }
    CHECK(wick_joint_moments(good, 4).pass);

    // Perfect correlation shows up in the (1,1) cross moment.
    std::vector<SampleBatch> badpair(2);
    badpair[0].label = "C2";
    badpair[1].label = "C3";
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        badpair[0].values.push_back(2.0 * z);
        badpair[1].values.push_back(std::sqrt(6.0) * z);
    }
    CHECK(!wick_joint_moments(badpair, 2).pass);
}

TEST_CASE("variance reduction endpoints and shift invariance") {
    Rng rng(4000, 0);
    SampleBatch ratio;
    ratio.label = "lr";
    for (int i = 0; i < 500; ++i) ratio.values.push_back(rng.next_normal());

    SampleBatch same = ratio;
    CHECK(variance_reduction(ratio, same).statistic == doctest::Approx(0.0));

    SampleBatch zero;
    zero.values.assign(500, 0.0);
    CHECK(variance_reduction(ratio, zero).statistic == doctest::Approx(1.0));

    // Adding a constant to both series leaves the ratio alone.
    SampleBatch y;
    for (int i = 0; i < 500; ++i) y.values.push_back(0.5 * ratio.values[static_cast<size_t>(i)]);
    const double base = variance_reduction(ratio, y).statistic;
    SampleBatch ratio_shift = ratio, y_shift = y;
    for (auto& v : ratio_shift.values) v += 3.25;
    for (auto& v : y_shift.values) v += 3.25;
    CHECK(variance_reduction(ratio_shift, y_shift).statistic ==
          doctest::Approx(base).epsilon(1e-12));

    SampleBatch shorter;
    shorter.values.assign(10, 0.0);
    CHECK_THROWS_AS(variance_reduction(ratio, shorter), std::domain_error);
}

TEST_CASE("chi-square helper flags a biased die") {
    std::vector<int64_t> fair = {170, 160, 172, 168, 165, 165};
    const std::vector<double> probs(6, 1.0 / 6.0);
    CHECK(chi_square_gof(fair, probs).pass);
    std::vector<int64_t> biased = {400, 100, 100, 100, 100, 200};
    CHECK(!chi_square_gof(biased, probs).pass);
}
