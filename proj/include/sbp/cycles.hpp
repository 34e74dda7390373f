#pragma once

#include <map>
#include <string>

#include "sbp/model.hpp"

namespace sbp::cycles {

using model::ConstraintMatrix;

inline constexpr int kFastMaxK = 4;

struct CycleStats {
    int n = 0;
    int m = 0;
    std::map<int, double> c;   // k -> C_k, (nm)^{-k/2} normalization applied
    std::string method;        // "fast", "bruteforce" or "mixed"
};

struct CorrectionTerm {
    double y = 0.0;
    int m1 = 0;
    double beta_used = 0.0;
};

// Planting geometry for the shifted counts. For a pair plant the matrix is
// assumed gauged so that x1 = all-ones and x2 = +1 on the first
// agree_count coordinates.
struct PlantInfo {
    enum class Kind { single, pair };
    Kind kind = Kind::single;
    double beta_n = 0.0;
    int agree_count = 0; // pair only
};

// Literal evaluation of the defining sum over ordered disjoint index tuples;
// the reference oracle. Budget: k <= 3 for n,m <= 40, k <= 5 for n,m <= 10.
double cycle_stat_bruteforce(const ConstraintMatrix& g, int k);

// Exact C_k through trace identities with inclusion-exclusion corrections;
// k in {2,3,4}. Equals the bruteforce value bit for bit (both divide the same
// integer by the same power of nm).
double cycle_stat_fast(const ConstraintMatrix& g, int k);

// Shifted count C-bar_k; same budgets as the bruteforce path.
double cycle_stat_shifted(const ConstraintMatrix& g, int k, const PlantInfo& plant);

// C_2 .. C_m1, fast path where available, bruteforce fallback within budget.
CycleStats compute_cycle_stats(const ConstraintMatrix& g, int m1);

// Y_{M1} assembled from stored cycle stats; throws capability_error listing
// any missing k.
CorrectionTerm correction_Y(const CycleStats& stats, int m1, double beta);

} // namespace sbp::cycles
