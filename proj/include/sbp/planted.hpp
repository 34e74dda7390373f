#pragma once

#include <cstdint>
#include <vector>

#include "sbp/model.hpp"

namespace sbp::planted {

using model::ConstraintMatrix;
using model::ModelParams;
using model::SpinVector;

inline constexpr int64_t kRowRejectionBudget = 1000000;

struct PlantedInstance {
    SpinVector planted;
    ConstraintMatrix matrix;
    std::vector<int64_t> rejections; // per-row count of rejected draws
};

struct PairPlantedInstance {
    SpinVector x1;
    SpinVector x2;
    int64_t overlap = 0; // <x1, x2> = t sqrt(n)
    ConstraintMatrix matrix;
    std::vector<int64_t> rejections;
};

// G ~ P conditioned on a uniformly drawn planted solution; per-row rejection
// sampling with acceptance probability P_{kappa,n}.
PlantedInstance sample_planted(const ModelParams& params, Rng& rng);

// Two planted solutions at exact integer overlap; X2 chosen by drawing the
// agreement set uniformly among the (n choose (n+ov)/2) subsets.
PairPlantedInstance sample_planted_pair(const ModelParams& params, int64_t overlap, Rng& rng);

struct RowCorrelationEstimate {
    double pair_mean = 0.0;    // mean over p != q of gauged E*[G_{j,p} G_{j,q}]
    double pair_se = 0.0;
    double triple_mean = 0.0;  // mean over distinct p,q,r of the gauged triple product
    double triple_se = 0.0;
    int64_t rows = 0;
};

// Monte Carlo estimate of the gauged planted row correlations, averaged over
// all index pairs (and triples) per row. `instances` planted draws contribute
// m rows each.
RowCorrelationEstimate planted_row_correlation(const ModelParams& params, int instances,
                                               Rng& rng);

// Gauge transform: multiply column i by x_i, mapping the planted solution to
// the all-ones vector.
ConstraintMatrix gauge_to_all_ones(const ConstraintMatrix& g, const SpinVector& x);

} // namespace sbp::planted
