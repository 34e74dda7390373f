#include "sbp/planted.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sbp/errors.hpp"

namespace sbp::planted {

namespace {

SpinVector random_spins(int n, Rng& rng) {
    SpinVector x(n);
    for (auto& w : x.words()) w = rng.next_u64();
    x.mask_tail();
    return x;
}

// Fills row j of g with Rademacher entries until |<row, x>| lands in the band
// (and, for the pair case, |<row, x2>| as well). Returns the rejection count.
int64_t fill_conditioned_row(ConstraintMatrix& g, int j, const SpinVector& x1,
                             const SpinVector* x2, int64_t thr, Rng& rng) {
    int64_t rejected = 0;
    auto& row = g.row(j);
    for (;;) {
        for (auto& w : row.words()) w = rng.next_u64();
        row.mask_tail();
        const int64_t s1 = dot(row, x1);
        if (s1 * s1 <= thr) {
            if (x2 == nullptr) return rejected;
            const int64_t s2 = dot(row, *x2);
            if (s2 * s2 <= thr) return rejected;
        }
        if (++rejected >= kRowRejectionBudget)
            throw sampling_error("planted row sampler: rejection budget exceeded at row " +
                                 std::to_string(j));
    }
}

} // namespace

PlantedInstance sample_planted(const ModelParams& params, Rng& rng) {
    PlantedInstance inst;
    inst.planted = random_spins(params.n, rng);
    inst.matrix = ConstraintMatrix(params.m, params.n);
    inst.rejections.resize(static_cast<size_t>(params.m));
    const int64_t thr = params.band();
    for (int j = 0; j < params.m; ++j)
        inst.rejections[static_cast<size_t>(j)] =
            fill_conditioned_row(inst.matrix, j, inst.planted, nullptr, thr, rng);
    return inst;
}

PairPlantedInstance sample_planted_pair(const ModelParams& params, int64_t overlap, Rng& rng) {
    const int n = params.n;
    if (overlap < -n || overlap > n || ((overlap - n) % 2) != 0)
        throw std::domain_error("sample_planted_pair: infeasible overlap " +
                                std::to_string(overlap));
    const int64_t agree = (n + overlap) / 2;

    PairPlantedInstance inst;
    inst.overlap = overlap;
    inst.x1 = random_spins(n, rng);

    // Uniform agreement set of the prescribed size via partial Fisher-Yates.
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int64_t k = 0; k < agree; ++k) {
        const auto pick = k + static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n - k)));
        std::swap(idx[static_cast<size_t>(k)], idx[static_cast<size_t>(pick)]);
    }
    inst.x2 = inst.x1;
    for (int64_t k = agree; k < n; ++k) inst.x2.flip(idx[static_cast<size_t>(k)]);

    inst.matrix = ConstraintMatrix(params.m, n);
    inst.rejections.resize(static_cast<size_t>(params.m));
    const int64_t thr = params.band();
    for (int j = 0; j < params.m; ++j)
        inst.rejections[static_cast<size_t>(j)] =
            fill_conditioned_row(inst.matrix, j, inst.x1, &inst.x2, thr, rng);
    return inst;
}

ConstraintMatrix gauge_to_all_ones(const ConstraintMatrix& g, const SpinVector& x) {
    ConstraintMatrix out = g;
    for (int i = 0; i < g.cols(); ++i)
        if (x.sign(i) < 0) out.negate_column(i);
    return out;
}

RowCorrelationEstimate planted_row_correlation(const ModelParams& params, int instances,
                                               Rng& rng) {
    if (params.n < 3) throw std::invalid_argument("planted_row_correlation: need n >= 3");
    const double n = params.n;
    // Per gauged row with entry sum s, the average product over ordered
    // distinct pairs is (s^2 - n) / (n(n-1)) and over ordered distinct
    // triples (s^3 - (3n-2) s) / (n(n-1)(n-2)); power sums of +-1 entries
    // collapse to s and n.
    double pair_sum = 0.0, pair_sq = 0.0;
    double triple_sum = 0.0, triple_sq = 0.0;
    int64_t rows = 0;
    for (int it = 0; it < instances; ++it) {
        const PlantedInstance inst = sample_planted(params, rng);
        for (int j = 0; j < params.m; ++j) {
            // Gauged row sum: sum_i G_{j,i} x_i, which is the row sum after
            // mapping the planted vector to all-ones.
            const double s = dot(inst.matrix.row(j), inst.planted);
            const double pair = (s * s - n) / (n * (n - 1.0));
            const double triple =
                (s * s * s - (3.0 * n - 2.0) * s) / (n * (n - 1.0) * (n - 2.0));
            pair_sum += pair;
            pair_sq += pair * pair;
            triple_sum += triple;
            triple_sq += triple * triple;
            ++rows;
        }
    }
    RowCorrelationEstimate est;
    est.rows = rows;
    const double r = static_cast<double>(rows);
    est.pair_mean = pair_sum / r;
    est.triple_mean = triple_sum / r;
    est.pair_se = std::sqrt(std::max(0.0, pair_sq / r - est.pair_mean * est.pair_mean) / r);
    est.triple_se =
        std::sqrt(std::max(0.0, triple_sq / r - est.triple_mean * est.triple_mean) / r);
    return est;
}

} // namespace sbp::planted
