#include "sbp/model.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sbp/errors.hpp"
#include "sbp/numeric.hpp"
#include "sbp/theory.hpp"

namespace sbp::model {

ModelParams ModelParams::from_alpha(const Rational& kappa, const Rational& alpha,
                                    int n, uint64_t seed) {
    ModelParams p;
    p.kappa = kappa;
    p.n = n;
    p.m = static_cast<int>(alpha.floor_times(n));
    p.seed = seed;
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("ModelParams: need n >= 1 and m >= 1");
    return p;
}

ConstraintMatrix sample_matrix(const ModelParams& params, Rng& rng) {
    ConstraintMatrix g(params.m, params.n);
    for (int j = 0; j < params.m; ++j) {
        auto& words = g.row(j).words();
        for (auto& w : words) w = rng.next_u64();
        g.row(j).mask_tail();
    }
    return g;
}

int row_sum(const ConstraintMatrix& g, int j, const SpinVector& x) {
    if (j < 0 || j >= g.rows()) throw std::out_of_range("row_sum: row index out of range");
    if (x.size() != g.cols()) throw std::invalid_argument("row_sum: dimension mismatch");
    return dot(g.row(j), x);
}

bool satisfies(const ConstraintMatrix& g, const SpinVector& x, const Rational& kappa) {
    const int64_t thr = band_threshold(kappa, g.cols());
    for (int j = 0; j < g.rows(); ++j) {
        const int64_t s = dot(g.row(j), x);
        if (s * s > thr) return false;
    }
    return true;
}

namespace {

struct GrayScanContext {
    int n = 0;
    int m = 0;
    int32_t thr = 0;
    // Column-major doubled entries: delta[i*m + j] = 2 * G_{j,i}.
    std::vector<int32_t> delta;
};

GrayScanContext make_scan_context(const ConstraintMatrix& g, const Rational& kappa) {
    GrayScanContext ctx;
    ctx.n = g.cols();
    ctx.m = g.rows();
    const int64_t thr = band_threshold(kappa, ctx.n);
    const int64_t cap = static_cast<int64_t>(ctx.n) * ctx.n;
    ctx.thr = static_cast<int32_t>(std::min(thr, cap));
    ctx.delta.resize(static_cast<size_t>(ctx.n) * ctx.m);
    for (int i = 0; i < ctx.n; ++i)
        for (int j = 0; j < ctx.m; ++j)
            ctx.delta[static_cast<size_t>(i) * ctx.m + j] = 2 * g.entry(j, i);
    return ctx;
}

SpinVector spins_from_mask(uint64_t bits, int n) {
    SpinVector x(n);
    if (n > 0) {
        x.words()[0] = bits;
        x.mask_tail();
    }
    return x;
}

// Row sums for the configuration encoded by gray(code).
std::vector<int32_t> initial_sums(const ConstraintMatrix& g, uint64_t code) {
    const uint64_t bits = code ^ (code >> 1);
    const SpinVector x = spins_from_mask(bits, g.cols());
    std::vector<int32_t> sums(static_cast<size_t>(g.rows()));
    for (int j = 0; j < g.rows(); ++j) sums[static_cast<size_t>(j)] = dot(g.row(j), x);
    return sums;
}

// Walks Gray codes in [first, last) and calls on_solution(code) for each
// satisfying configuration. The walk is branch-light: per step one column of
// deltas is applied while the violation count is updated in place.
template <typename OnSolution>
void gray_walk(const GrayScanContext& ctx, const ConstraintMatrix& g, uint64_t first,
               uint64_t last, OnSolution&& on_solution) {
    std::vector<int32_t> sums = initial_sums(g, first);
    const int m = ctx.m;
    const int32_t thr = ctx.thr;
    int bad = 0;
    for (int j = 0; j < m; ++j)
        bad += sums[static_cast<size_t>(j)] * sums[static_cast<size_t>(j)] > thr;
    if (bad == 0) on_solution(first);

    for (uint64_t code = first + 1; code < last; ++code) {
        const int bit = std::countr_zero(code);
        const bool now_plus = ((code ^ (code >> 1)) >> bit) & 1;
        const int32_t* d = ctx.delta.data() + static_cast<size_t>(bit) * m;
        int delta_bad = 0;
        if (now_plus) {
            for (int j = 0; j < m; ++j) {
                const int32_t old = sums[static_cast<size_t>(j)];
                const int32_t nw = old + d[j];
                delta_bad += (nw * nw > thr) - (old * old > thr);
                sums[static_cast<size_t>(j)] = nw;
            }
        } else {
            for (int j = 0; j < m; ++j) {
                const int32_t old = sums[static_cast<size_t>(j)];
                const int32_t nw = old - d[j];
                delta_bad += (nw * nw > thr) - (old * old > thr);
                sums[static_cast<size_t>(j)] = nw;
            }
        }
        bad += delta_bad;
        if (bad == 0) on_solution(code);
    }
}

// Fixed chunking, a function of n alone, so results cannot depend on the
// worker count.
int chunk_count(int n) {
    const int log_chunks = std::clamp(n - 16, 0, 8);
    return 1 << log_chunks;
}

} // namespace

SolutionSet count_solutions(const ConstraintMatrix& g, const Rational& kappa,
                            const CountOptions& opts) {
    const int n = g.cols();
    if (n > opts.n_max || n > 62)
        throw capability_error("count_solutions: n = " + std::to_string(n) +
                               " exceeds n_max = " + std::to_string(std::min(opts.n_max, 62)));
    const GrayScanContext ctx = make_scan_context(g, kappa);
    const uint64_t total = uint64_t{1} << n;
    const int chunks = chunk_count(n);
    const uint64_t per = total / static_cast<uint64_t>(chunks);

    const bool want_list = opts.list_solutions && n <= kListMaxN;
    std::vector<uint64_t> counts(static_cast<size_t>(chunks), 0);
    std::vector<std::vector<uint64_t>> lists(static_cast<size_t>(chunks));

    const int workers = std::max(1, std::min(opts.workers, chunks));
    std::atomic<int> next{0};
    auto run = [&] {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chunks) return;
            const uint64_t first = per * static_cast<uint64_t>(c);
            const uint64_t last = (c + 1 == chunks) ? total : first + per;
            uint64_t local = 0;
            auto& list = lists[static_cast<size_t>(c)];
            gray_walk(ctx, g, first, last, [&](uint64_t code) {
                ++local;
                if (want_list && list.size() < kListMaxZ) list.push_back(code ^ (code >> 1));
            });
            counts[static_cast<size_t>(c)] = local;
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    SolutionSet out;
    for (uint64_t c : counts) out.count += c;
    if (want_list && out.count <= kListMaxZ) {
        std::vector<SpinVector> sols;
        sols.reserve(out.count);
        for (const auto& list : lists)
            for (uint64_t bits : list) sols.push_back(spins_from_mask(bits, n));
        out.solutions = std::move(sols);
    }
    return out;
}

UniformSolutionDraw draw_uniform_solution(const ConstraintMatrix& g, const Rational& kappa,
                                          Rng& rng, int n_max) {
    const int n = g.cols();
    if (n > n_max || n > 62)
        throw capability_error("draw_uniform_solution: n exceeds n_max");
    const GrayScanContext ctx = make_scan_context(g, kappa);
    const uint64_t total = uint64_t{1} << n;
    UniformSolutionDraw draw;
    uint64_t kept_bits = 0;
    gray_walk(ctx, g, 0, total, [&](uint64_t code) {
        ++draw.count;
        if (rng.next_below(draw.count) == 0) kept_bits = code ^ (code >> 1);
    });
    if (draw.count > 0) draw.solution = spins_from_mask(kept_bits, n);
    return draw;
}

double expected_log_z(const ModelParams& params) {
    const auto d = theory::discrete_constants(params.kappa, params.n, params.m);
    return params.n * std::log(2.0) + params.m * d.log_p_kappa_n;
}

namespace {

// log of the one-row pair probability: both <g, X1> and <g, X2> land in the
// band when X1, X2 have integer overlap ov. Summation over the joint row-sum
// values (s1, s2) with binomial weights, all in log space.
double log_pair_row_prob(const Rational& kappa, int n, int64_t ov) {
    const int64_t thr = band_threshold(kappa, n);
    const int64_t smax = isqrt_floor(std::min(thr, static_cast<int64_t>(n) * n));
    const int64_t T = (n + ov) / 2;
    const double log2 = std::log(2.0);
    LogSumExp acc;
    // s == n (mod 2) for any +-1 sum over n entries.
    const int64_t parity = ((n % 2) + 2) % 2;
    for (int64_t s1 = -smax; s1 <= smax; ++s1) {
        if (((s1 % 2) + 2) % 2 != parity) continue;
        for (int64_t s2 = -smax; s2 <= smax; ++s2) {
            if (((s2 % 2) + 2) % 2 != parity) continue;
            const int64_t twoA = s1 + s2; // 2A, A = sum over the agreement block
            const int64_t twoB = s1 - s2;
            if ((T + twoA / 2) % 2 != 0) continue;       // a must be an integer
            const int64_t a = (T + twoA / 2) / 2;
            const int64_t nb = n - T;
            if ((nb + twoB / 2) % 2 != 0) continue;      // b must be an integer
            const int64_t b = (nb + twoB / 2) / 2;
            if (a < 0 || a > T || b < 0 || b > nb) continue;
            acc.add(log_binomial(T, a) + log_binomial(nb, b) - n * log2);
        }
    }
    return acc.value();
}

} // namespace

double log_pair_prob(const ModelParams& params, int64_t overlap) {
    const int n = params.n;
    if (overlap < -n || overlap > n || ((overlap - n) % 2) != 0)
        throw std::domain_error("log_pair_prob: infeasible overlap " + std::to_string(overlap));
    return params.m * log_pair_row_prob(params.kappa, n, overlap);
}

double second_moment_ratio(const ModelParams& params) {
    const int n = params.n;
    const double log2 = std::log(2.0);
    const auto d = theory::discrete_constants(params.kappa, n, std::max(params.m, 1));
    LogSumExp acc;
    for (int64_t T = 0; T <= n; ++T) {
        double term = log_binomial(n, T) - n * log2;
        if (params.m > 0) {
            const double row = log_pair_row_prob(params.kappa, n, 2 * T - n);
            if (!std::isfinite(row)) continue;
            term += params.m * (row - 2.0 * d.log_p_kappa_n);
        }
        acc.add(term);
    }
    return std::exp(acc.value());
}

std::optional<int> nearest_other_solution(const ConstraintMatrix& g, const SpinVector& x,
                                          const Rational& kappa, int radius) {
    if (!satisfies(g, x, kappa))
        throw std::invalid_argument("nearest_other_solution: x is not a solution");
    const int n = g.cols();
    const int m = g.rows();
    if (radius > n) radius = n;
    if (radius <= 0) return std::nullopt;

    const int64_t thr = band_threshold(kappa, n);
    // Flip deltas relative to the base configuration: flipping i changes row j
    // by -2 G_{j,i} x_i.
    std::vector<int32_t> flip(static_cast<size_t>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            flip[static_cast<size_t>(i) * m + j] = -2 * g.entry(j, i) * x.sign(i);

    std::vector<int64_t> sums(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) sums[static_cast<size_t>(j)] = dot(g.row(j), x);

    // Depth-first enumeration of flip sets of exact size d, increasing d.
    std::function<bool(int, int, int)> descend = [&](int start, int remaining, int depth) -> bool {
        if (remaining == 0) {
            for (int j = 0; j < m; ++j) {
                const int64_t s = sums[static_cast<size_t>(j)];
                if (s * s > thr) return false;
            }
            return true;
        }
        for (int i = start; i <= n - remaining; ++i) {
            const int32_t* f = flip.data() + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) sums[static_cast<size_t>(j)] += f[j];
            const bool hit = descend(i + 1, remaining - 1, depth);
            for (int j = 0; j < m; ++j) sums[static_cast<size_t>(j)] -= f[j];
            if (hit) return true;
        }
        return false;
    };

    for (int d = 1; d <= radius; ++d)
        if (descend(0, d, d)) return d;
    return std::nullopt;
}

void write_matrix(std::ostream& os, const ConstraintMatrix& g, const Rational& kappa,
                  const SpinVector* x1, const SpinVector* x2) {
    os << "SBP v1 " << g.cols() << ' ' << g.rows() << ' ' << kappa.text() << '\n';
    for (int j = 0; j < g.rows(); ++j) {
        for (int i = 0; i < g.cols(); ++i) os << (g.entry(j, i) > 0 ? '+' : '-');
        os << '\n';
    }
    const auto emit = [&](const char* tag, const SpinVector& x) {
        os << tag << ' ';
        for (int i = 0; i < x.size(); ++i) os << (x.sign(i) > 0 ? '+' : '-');
        os << '\n';
    };
    if (x1 != nullptr) emit("x1", *x1);
    if (x2 != nullptr) emit("x2", *x2);
}

namespace {

SpinVector parse_spins(const std::string& text, int n) {
    if (static_cast<int>(text.size()) != n)
        throw config_error("matrix fixture: spin line has wrong length");
    SpinVector x(n);
    for (int i = 0; i < n; ++i) {
        if (text[static_cast<size_t>(i)] == '+')
            x.set_bit(i, true);
        else if (text[static_cast<size_t>(i)] == '-')
            x.set_bit(i, false);
        else
            throw config_error("matrix fixture: expected '+' or '-'");
    }
    return x;
}

} // namespace

MatrixFixture read_matrix(std::istream& is) {
    std::string magic, version, kappa_text;
    int n = 0, m = 0;
    if (!(is >> magic >> version >> n >> m >> kappa_text) || magic != "SBP" || version != "v1")
        throw config_error("matrix fixture: bad header (expected 'SBP v1 n m kappa')");
    MatrixFixture fx;
    fx.kappa = Rational::parse(kappa_text);
    fx.matrix = ConstraintMatrix(m, n);
    std::string line;
    std::getline(is, line);
    for (int j = 0; j < m; ++j) {
        if (!std::getline(is, line)) throw config_error("matrix fixture: truncated rows");
        const SpinVector row = parse_spins(line, n);
        fx.matrix.row(j) = row;
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, spins;
        ls >> tag >> spins;
        if (tag == "x1")
            fx.x1 = parse_spins(spins, n);
        else if (tag == "x2")
            fx.x2 = parse_spins(spins, n);
        else
            throw config_error("matrix fixture: unknown trailing line '" + tag + "'");
    }
    return fx;
}

} // namespace sbp::model
