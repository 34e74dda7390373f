#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbp/bitvec.hpp"
#include "sbp/rational.hpp"
#include "sbp/rng.hpp"

namespace sbp::model {

using SpinVector = BitVec;

struct ModelParams {
    Rational kappa;
    int n = 0;
    int m = 0;
    uint64_t seed = 0;

    static ModelParams from_alpha(const Rational& kappa, const Rational& alpha,
                                  int n, uint64_t seed = 0);
    int64_t band() const { return band_threshold(kappa, n); }
};

// m x n disorder matrix of +-1 entries, one bit row per constraint.
class ConstraintMatrix {
public:
    ConstraintMatrix() = default;
    ConstraintMatrix(int m, int n) : n_(n), rows_(static_cast<size_t>(m), BitVec(n)) {}

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return n_; }
    const BitVec& row(int j) const { return rows_[static_cast<size_t>(j)]; }
    BitVec& row(int j) { return rows_[static_cast<size_t>(j)]; }
    int entry(int j, int i) const { return rows_[static_cast<size_t>(j)].sign(i); }
    void set_entry(int j, int i, bool plus) { rows_[static_cast<size_t>(j)].set_bit(i, plus); }

    void negate_column(int i) {
        for (auto& r : rows_) r.flip(i);
    }

    friend bool operator==(const ConstraintMatrix& a, const ConstraintMatrix& b) = default;

private:
    int n_ = 0;
    std::vector<BitVec> rows_;
};

struct SolutionSet {
    uint64_t count = 0;
    // Explicit solutions, kept only when n <= kListMaxN and count <= kListMaxZ.
    std::optional<std::vector<SpinVector>> solutions;
};

inline constexpr int kDefaultNMax = 30;
inline constexpr int kListMaxN = 24;
inline constexpr uint64_t kListMaxZ = 1000000;

struct CountOptions {
    int n_max = kDefaultNMax;
    bool list_solutions = false;
    int workers = 1;
};

ConstraintMatrix sample_matrix(const ModelParams& params, Rng& rng);

// Exact integer dot product of row j with X.
int row_sum(const ConstraintMatrix& g, int j, const SpinVector& x);

// True iff every row sum lands in the band (integer comparison against
// floor(kappa^2 n)).
bool satisfies(const ConstraintMatrix& g, const SpinVector& x, const Rational& kappa);

// Exact Z via a Gray-code walk over {-1,+1}^n; deterministic for any worker
// count. Throws capability_error when n exceeds opts.n_max.
SolutionSet count_solutions(const ConstraintMatrix& g, const Rational& kappa,
                            const CountOptions& opts = {});

// A uniformly chosen solution (reservoir over the Gray-code scan) together
// with the exact count; nullopt solution when Z = 0.
struct UniformSolutionDraw {
    uint64_t count = 0;
    std::optional<SpinVector> solution;
};
UniformSolutionDraw draw_uniform_solution(const ConstraintMatrix& g, const Rational& kappa,
                                          Rng& rng, int n_max = kDefaultNMax);

// log E[Z] = n log 2 + m log P_{kappa,n}.
double expected_log_z(const ModelParams& params);

// log P_t of the pair-probability identity, parameterized by the integer
// overlap <X1, X2> = ov (ov = t sqrt(n), same parity as n).
double log_pair_prob(const ModelParams& params, int64_t overlap);

// E[Z^2] / (E[Z])^2 by exact summation over all feasible overlaps.
double second_moment_ratio(const ModelParams& params);

// Smallest Hamming distance <= radius from x to another solution, if any.
// Precondition: x satisfies g.
std::optional<int> nearest_other_solution(const ConstraintMatrix& g, const SpinVector& x,
                                          const Rational& kappa, int radius);

// Matrix fixture format: header "SBP v1 n m kappa", then m rows of '+'/'-'
// characters; optional trailing "x1 ..." / "x2 ..." planted-vector lines.
void write_matrix(std::ostream& os, const ConstraintMatrix& g, const Rational& kappa,
                  const SpinVector* x1 = nullptr, const SpinVector* x2 = nullptr);
struct MatrixFixture {
    ConstraintMatrix matrix;
    Rational kappa;
    std::optional<SpinVector> x1;
    std::optional<SpinVector> x2;
};
MatrixFixture read_matrix(std::istream& is);

} // namespace sbp::model
