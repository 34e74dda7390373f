#include "sbp/cycles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sbp/errors.hpp"

namespace sbp::cycles {

namespace {

using Int = __int128;

double scale_cycle(Int raw, int n, int m, int k) {
    return static_cast<double>(raw) /
           std::pow(static_cast<double>(n) * static_cast<double>(m), 0.5 * k);
}

void check_budget(int n, int m, int k, const char* who) {
    if (k < 2) throw std::domain_error(std::string(who) + ": k must be >= 2");
    const bool ok = (k <= 3 && n <= 40 && m <= 40) || (k <= 5 && n <= 10 && m <= 10);
    if (!ok)
        throw capability_error(std::string(who) + ": budget exceeded for k = " +
                               std::to_string(k) + ", n = " + std::to_string(n) +
                               ", m = " + std::to_string(m));
}

// Entries as +-1 ints, row-major, for the literal paths.
std::vector<int> dense_entries(const ConstraintMatrix& g) {
    std::vector<int> e(static_cast<size_t>(g.rows()) * g.cols());
    for (int j = 0; j < g.rows(); ++j)
        for (int i = 0; i < g.cols(); ++i)
            e[static_cast<size_t>(j) * g.cols() + i] = g.entry(j, i);
    return e;
}

// Enumerates ordered tuples of distinct values in [0, limit); calls leaf once
// per complete tuple with running payload maintained by the caller through
// enter/leave callbacks.
template <typename Enter, typename Leave, typename Leaf>
void ordered_tuples(int limit, int k, std::vector<int>& tuple, uint64_t used, int depth,
                    Enter&& enter, Leave&& leave, Leaf&& leaf) {
    if (depth == k) {
        leaf(tuple);
        return;
    }
    for (int v = 0; v < limit; ++v) {
        if (used & (uint64_t{1} << v)) continue;
        tuple[static_cast<size_t>(depth)] = v;
        if (enter(depth, v)) {
            ordered_tuples(limit, k, tuple, used | (uint64_t{1} << v), depth + 1, enter,
                           leave, leaf);
        }
        leave(depth, v);
    }
}

} // namespace

double cycle_stat_bruteforce(const ConstraintMatrix& g, int k) {
    const int n = g.cols();
    const int m = g.rows();
    check_budget(n, m, k, "cycle_stat_bruteforce");
    const std::vector<int> e = dense_entries(g);

    Int total = 0;
    std::vector<int> ivec(static_cast<size_t>(k));
    std::vector<int> jvec(static_cast<size_t>(k));
    // Running +-1 product along the j recursion.
    std::vector<int> prod(static_cast<size_t>(k) + 1);

    auto enumerate_j = [&](const std::vector<int>& is) {
        prod[0] = 1;
        ordered_tuples(
            m, k, jvec, 0, 0,
            [&](int depth, int j) {
                const int a = is[static_cast<size_t>(depth)];
                const int b = is[static_cast<size_t>((depth + 1) % k)];
                prod[static_cast<size_t>(depth) + 1] =
                    prod[static_cast<size_t>(depth)] *
                    e[static_cast<size_t>(j) * n + a] * e[static_cast<size_t>(j) * n + b];
                return true;
            },
            [](int, int) {},
            [&](const std::vector<int>&) { total += prod[static_cast<size_t>(k)]; });
    };

    ordered_tuples(
        n, k, ivec, 0, 0, [](int, int) { return true; }, [](int, int) {},
        [&](const std::vector<int>& is) { enumerate_j(is); });

    return scale_cycle(total, n, m, k);
}

namespace {

// Column bitsets (length m) for overlap computations.
std::vector<BitVec> column_bits(const ConstraintMatrix& g) {
    std::vector<BitVec> cols(static_cast<size_t>(g.cols()), BitVec(g.rows()));
    for (int j = 0; j < g.rows(); ++j)
        for (int i = 0; i < g.cols(); ++i)
            cols[static_cast<size_t>(i)].set_bit(j, g.entry(j, i) > 0);
    return cols;
}

struct FastContext {
    int n = 0;
    int m = 0;
    std::vector<int64_t> w;  // n x n column-overlap matrix, zero diagonal
    int64_t at(int p, int q) const { return w[static_cast<size_t>(p) * n + q]; }
};

FastContext make_fast_context(const ConstraintMatrix& g) {
    FastContext ctx;
    ctx.n = g.cols();
    ctx.m = g.rows();
    const auto cols = column_bits(g);
    ctx.w.assign(static_cast<size_t>(ctx.n) * ctx.n, 0);
    for (int p = 0; p < ctx.n; ++p)
        for (int q = p + 1; q < ctx.n; ++q) {
            const int64_t v = dot(cols[static_cast<size_t>(p)], cols[static_cast<size_t>(q)]);
            ctx.w[static_cast<size_t>(p) * ctx.n + q] = v;
            ctx.w[static_cast<size_t>(q) * ctx.n + p] = v;
        }
    return ctx;
}

Int fast_n2(const FastContext& ctx) {
    Int s2 = 0;
    for (int p = 0; p < ctx.n; ++p)
        for (int q = 0; q < ctx.n; ++q) {
            const int64_t v = ctx.at(p, q);
            s2 += static_cast<Int>(v) * v;
        }
    return s2 - static_cast<Int>(ctx.m) * ctx.n * (ctx.n - 1);
}

// W^2 as int64 (entries bounded by n m^2).
std::vector<int64_t> w_squared(const FastContext& ctx) {
    const int n = ctx.n;
    std::vector<int64_t> m2(static_cast<size_t>(n) * n, 0);
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r) {
            const int64_t wpr = ctx.at(p, r);
            if (wpr == 0) continue;
            const int64_t* wr = ctx.w.data() + static_cast<size_t>(r) * n;
            int64_t* out = m2.data() + static_cast<size_t>(p) * n;
            for (int q = 0; q < n; ++q) out[q] += wpr * wr[q];
        }
    return m2;
}

Int fast_n3(const FastContext& ctx) {
    const int n = ctx.n;
    const auto m2 = w_squared(ctx);
    Int tr3 = 0;
    Int s2 = 0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            tr3 += static_cast<Int>(m2[static_cast<size_t>(p) * n + q]) * ctx.at(q, p);
            s2 += static_cast<Int>(ctx.at(p, q)) * ctx.at(p, q);
        }
    return tr3 - 3 * static_cast<Int>(n - 2) * s2 +
           2 * static_cast<Int>(ctx.m) * n * (n - 1) * (n - 2);
}

Int fast_n4(const ConstraintMatrix& g, const FastContext& ctx) {
    const int n = ctx.n;
    const int m = ctx.m;
    const auto m2 = w_squared(ctx);

    Int tr4 = 0, tr3 = 0, s2 = 0, f4 = 0, diag_sq = 0;
    for (int p = 0; p < n; ++p) {
        const int64_t dp = m2[static_cast<size_t>(p) * n + p];
        diag_sq += static_cast<Int>(dp) * dp;
        for (int q = 0; q < n; ++q) {
            const int64_t m2pq = m2[static_cast<size_t>(p) * n + q];
            const int64_t wpq = ctx.at(p, q);
            tr4 += static_cast<Int>(m2pq) * m2pq;
            tr3 += static_cast<Int>(m2pq) * ctx.at(q, p);
            s2 += static_cast<Int>(wpq) * wpq;
            f4 += static_cast<Int>(wpq) * wpq * wpq * wpq;
        }
    }

    // Sum over distinct 4-tuples of the plain 4-cycle W12 W23 W34 W41.
    const Int cycle4 = tr4 - 2 * diag_sq + f4;

    // Q-terms: per row j, with X = D_j W D_j, the sum over two disjoint index
    // pairs of X_ab X_cd equals (g^T W g)^2 - 4 |W g|^2 + 2 tr(W^2).
    Int qchain = 0;
    std::vector<int64_t> wg(static_cast<size_t>(n));
    for (int j = 0; j < m; ++j) {
        for (int p = 0; p < n; ++p) {
            int64_t acc = 0;
            const int64_t* wrow = ctx.w.data() + static_cast<size_t>(p) * n;
            for (int q = 0; q < n; ++q) acc += wrow[q] * g.entry(j, q);
            wg[static_cast<size_t>(p)] = acc;
        }
        Int quad = 0, norm = 0;
        for (int p = 0; p < n; ++p) {
            quad += static_cast<Int>(g.entry(j, p)) * wg[static_cast<size_t>(p)];
            norm += static_cast<Int>(wg[static_cast<size_t>(p)]) * wg[static_cast<size_t>(p)];
        }
        qchain += quad * quad - 4 * norm + 2 * s2;
    }

    // Q^2 over distinct 4-tuples: row-overlap moments.
    const auto rows_overlap = [&](int j, int jp) -> int64_t {
        return dot(g.row(j), g.row(jp));
    };
    Int q2 = 0;
    const Int n128 = n;
    for (int j = 0; j < m; ++j)
        for (int jp = 0; jp < m; ++jp) {
            const int64_t s = (j == jp) ? n : rows_overlap(j, jp);
            const Int ss = static_cast<Int>(s) * s;
            q2 += ss * ss - 6 * n128 * ss + 8 * ss + 3 * n128 * n128 - 6 * n128;
        }

    const Int falling = static_cast<Int>(n) * (n - 1) * (n - 2) * (n - 3);
    return cycle4 - 4 * static_cast<Int>(n - 3) * tr3 - 2 * qchain +
           10 * static_cast<Int>(n - 2) * (n - 3) * s2 + q2 -
           6 * static_cast<Int>(m) * falling;
}

} // namespace

double cycle_stat_fast(const ConstraintMatrix& g, int k) {
    const int n = g.cols();
    const int m = g.rows();
    if (k < 2) throw std::domain_error("cycle_stat_fast: k must be >= 2");
    if (k > kFastMaxK)
        throw capability_error("cycle_stat_fast: k = " + std::to_string(k) +
                               " beyond the closed-form family (k <= " +
                               std::to_string(kFastMaxK) + ")");
    const FastContext ctx = make_fast_context(g);
    Int raw = 0;
    switch (k) {
        case 2: raw = fast_n2(ctx); break;
        case 3: raw = fast_n3(ctx); break;
        case 4: raw = fast_n4(g, ctx); break;
        default: break;
    }
    return scale_cycle(raw, n, m, k);
}

double cycle_stat_shifted(const ConstraintMatrix& g, int k, const PlantInfo& plant) {
    const int n = g.cols();
    const int m = g.rows();
    check_budget(n, m, k, "cycle_stat_shifted");
    const std::vector<int> e = dense_entries(g);
    const double root_mn = std::sqrt(static_cast<double>(m) * n);
    const double single_shift = 2.0 * plant.beta_n / root_mn;
    const double pair_shift = 4.0 * plant.beta_n / root_mn;
    const int agree = plant.agree_count;

    const auto edge_shift = [&](int a, int b) {
        if (plant.kind == PlantInfo::Kind::single) return single_shift;
        const bool in_q = (a < agree) == (b < agree);
        return in_q ? pair_shift : 0.0;
    };

    double total = 0.0;
    std::vector<int> ivec(static_cast<size_t>(k));
    std::vector<int> jvec(static_cast<size_t>(k));
    std::vector<double> prod(static_cast<size_t>(k) + 1);

    auto enumerate_j = [&](const std::vector<int>& is) {
        prod[0] = 1.0;
        ordered_tuples(
            m, k, jvec, 0, 0,
            [&](int depth, int j) {
                const int a = is[static_cast<size_t>(depth)];
                const int b = is[static_cast<size_t>((depth + 1) % k)];
                const double factor =
                    e[static_cast<size_t>(j) * n + a] * e[static_cast<size_t>(j) * n + b] -
                    edge_shift(a, b);
                prod[static_cast<size_t>(depth) + 1] = prod[static_cast<size_t>(depth)] * factor;
                return true;
            },
            [](int, int) {},
            [&](const std::vector<int>&) { total += prod[static_cast<size_t>(k)]; });
    };

    ordered_tuples(
        n, k, ivec, 0, 0, [](int, int) { return true; }, [](int, int) {},
        [&](const std::vector<int>& is) { enumerate_j(is); });

    return total / std::pow(static_cast<double>(n) * m, 0.5 * k);
}

CycleStats compute_cycle_stats(const ConstraintMatrix& g, int m1) {
    if (m1 < 2) throw std::domain_error("compute_cycle_stats: M1 must be >= 2");
    CycleStats stats;
    stats.n = g.cols();
    stats.m = g.rows();
    bool used_fast = false, used_brute = false;
    for (int k = 2; k <= m1; ++k) {
        if (k <= kFastMaxK) {
            stats.c[k] = cycle_stat_fast(g, k);
            used_fast = true;
        } else {
            stats.c[k] = cycle_stat_bruteforce(g, k); // throws if over budget
            used_brute = true;
        }
    }
    stats.method = used_fast && used_brute ? "mixed" : (used_fast ? "fast" : "bruteforce");
    return stats;
}

CorrectionTerm correction_Y(const CycleStats& stats, int m1, double beta) {
    if (m1 < 2) throw std::domain_error("correction_Y: M1 must be >= 2");
    std::string missing;
    for (int k = 2; k <= m1; ++k)
        if (!stats.c.contains(k)) missing += (missing.empty() ? "" : ", ") + std::to_string(k);
    if (!missing.empty())
        throw capability_error("correction_Y: missing cycle stats for k = " + missing);

    CorrectionTerm term;
    term.m1 = m1;
    term.beta_used = beta;
    const double tb = 2.0 * beta;
    double tb_k = tb; // (2 beta)^k
    for (int k = 2; k <= m1; ++k) {
        tb_k *= tb;
        term.y += (2.0 * tb_k * stats.c.at(k) - tb_k * tb_k) / (4.0 * k);
    }
    return term;
}

} // namespace sbp::cycles
