#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace orka {

std::vector<std::uint32_t> MoveSet::enumeration_order() const {
    std::vector<std::uint32_t> ord(count());
    for (std::uint32_t c = 0; c < ord.size(); ++c) ord[c] = c;
    if (centered_ties) {
        auto key = [this](std::uint32_t c) {
            const long ax = std::labs(move_x(c)), ay = std::labs(move_y(c));
            return std::max(ax, ay) * 2 + std::min(ax, ay);  // 0 first, then ring by ring
        };
        std::stable_sort(ord.begin(), ord.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    }
    return ord;
}

namespace {

struct GTables {
    // g[t-1][lag index] = w_{j,j-t} * <D_:j, S_s(D_:{j-t})>
    std::vector<std::vector<double>> g;

    void build(std::size_t jj, std::size_t tmax, const CorrelationBand& band,
               const KernelWeights& kernel) {
        g.resize(tmax);
        for (std::size_t t = 1; t <= tmax; ++t) {
            const long radius = band.lipschitz * static_cast<long>(t);
            const std::size_t e = 2 * static_cast<std::size_t>(radius) + 1;
            auto& gt = g[t - 1];
            gt.resize(band.dims == 2 ? e * e : e);
            const double w = kernel.entry(jj, jj - t);
            if (band.dims == 2) {
                for (long sy = -radius; sy <= radius; ++sy)
                    for (long sx = -radius; sx <= radius; ++sx)
                        gt[static_cast<std::size_t>(sx + radius) +
                           e * static_cast<std::size_t>(sy + radius)] =
                            w * band.value(jj, jj - t, sx, sy);
            } else {
                for (long s = -radius; s <= radius; ++s)
                    gt[static_cast<std::size_t>(s + radius)] = w * band.value(jj, jj - t, s);
            }
        }
    }

    double at(std::size_t t, long sx, long sy, long c, int dims) const {
        const long radius = c * static_cast<long>(t);
        const std::size_t e = 2 * static_cast<std::size_t>(radius) + 1;
        std::size_t idx = static_cast<std::size_t>(sx + radius);
        if (dims == 2) idx += e * static_cast<std::size_t>(sy + radius);
        return g[t - 1][idx];
    }
};

template <typename BpT>
LongestPathResult run_dp(const CorrelationBand& band, const KernelWeights& kernel,
                         const MoveSet& moves, std::size_t K, std::uint64_t states) {
    const std::size_t n = band.n;
    const std::size_t B = moves.count();
    const std::size_t hmax = K - 1;  // moves remembered per state
    const long C = moves.lipschitz;
    const int dims = moves.dims;

    std::vector<long> mvx(B), mvy(B);
    for (std::size_t c = 0; c < B; ++c) {
        mvx[c] = moves.move_x(c);
        mvy[c] = moves.move_y(c);
    }
    const auto order = moves.enumeration_order();
    std::vector<std::uint32_t> rank(B);
    for (std::uint32_t r = 0; r < B; ++r) rank[order[r]] = r;

    std::vector<double> prev(states, 0.0), cur(states, 0.0);
    std::vector<std::vector<BpT>> bp(n);
    std::vector<std::size_t> pow_b(hmax + 2, 1);
    for (std::size_t i = 1; i < pow_b.size(); ++i) pow_b[i] = pow_b[i - 1] * B;

    GTables gt;
    prev[0] = 0.0;

    // State digits most-recent-at-the-top: the move into column jj sits at the
    // highest place, the oldest remembered move at the lowest. Dropping the
    // oldest move then reads B consecutive predecessor entries, which keeps
    // the relaxation loop sequential in memory.
    for (std::size_t jj = 1; jj < n; ++jj) {
        const std::size_t h = std::min(jj, hmax);
        const std::size_t hp = std::min(jj - 1, hmax);
        const bool growing = h > hp;
        const std::size_t tmax = std::min(jj, K);
        gt.build(jj, tmax, band, kernel);
        auto& bpj = bp[jj];
        if (!growing) bpj.resize(pow_b[h]);

        if (hmax == 0) {
            // K = 1: a single state per partition, the move itself is the edge
            double best = -std::numeric_limits<double>::infinity();
            BpT bestc = 0;
            for (std::size_t r = 0; r < B; ++r) {
                const std::size_t c = order[r];
                const double cand = prev[0] + gt.at(1, mvx[c], mvy[c], C, dims);
                if (cand > best) {
                    best = cand;
                    bestc = static_cast<BpT>(c);
                }
            }
            cur[0] = best;
            bpj[0] = bestc;
            std::swap(prev, cur);
            continue;
        }

        const std::size_t tail = pow_b[h - 1];  // modulus that strips the newest digit
        // Depth-first over state digits; digit t holds the move into column
        // jj-t+1, so the running move sum is the lag lambda_jj - lambda_{jj-t}.
        auto rec = [&](auto&& self, std::size_t t, std::size_t idx, long sx, long sy,
                       double acc) -> void {
            if (t > h) {
                if (growing) {
                    cur[idx] = prev[idx % tail] + acc;
                } else {
                    const double* row = prev.data() + (idx % tail) * B;
                    double best = -std::numeric_limits<double>::infinity();
                    BpT bestc = 0;
                    for (std::size_t r = 0; r < B; ++r) {
                        const std::size_t c = order[r];
                        const double cand =
                            row[c] + gt.at(K, sx + mvx[c], sy + mvy[c], C, dims);
                        if (cand > best) {
                            best = cand;
                            bestc = static_cast<BpT>(c);
                        }
                    }
                    cur[idx] = best + acc;
                    bpj[idx] = bestc;
                }
                return;
            }
            const std::size_t step = pow_b[h - t];
            for (std::size_t c = 0; c < B; ++c) {
                const long nx = sx + mvx[c], ny = sy + mvy[c];
                self(self, t + 1, idx + c * step, nx, ny,
                     acc + gt.at(t, nx, ny, C, dims));
            }
        };
        rec(rec, 1, 0, 0, 0, 0.0);
        std::swap(prev, cur);
    }

    // implicit 0-weight edges into the sink: argmax over the last partition,
    // ties resolved toward the preferred enumeration order, oldest move first
    const std::size_t hlast = std::min(n - 1, hmax);
    const std::size_t last_states = pow_b[hlast];
    auto pref_key = [&](std::size_t idx) {
        std::size_t key = 0;
        for (std::size_t t = 0; t < hlast; ++t) {
            key += rank[idx % B] * pow_b[t];  // low digit = oldest move
            idx /= B;
        }
        return key;
    };
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < last_states; ++i) {
        if (prev[i] > prev[best_idx] ||
            (prev[i] == prev[best_idx] && pref_key(i) < pref_key(best_idx)))
            best_idx = i;
    }

    // moves m_j = lambda_{j+1} - lambda_j: recent ones from the final state
    // label, older ones from the backpointer chain
    std::vector<long> mx(n - 1, 0), my(n - 1, 0);
    for (std::size_t t = 1; t <= hlast; ++t) {
        const std::size_t c = (best_idx / pow_b[hlast - t]) % B;
        mx[n - 1 - t] = mvx[c];
        my[n - 1 - t] = mvy[c];
    }
    std::size_t state = best_idx;
    for (std::size_t jj = n - 1; jj >= K && jj < n; --jj) {
        const std::size_t c = bp[jj][state];
        mx[jj - K] = mvx[c];
        my[jj - K] = mvy[c];
        state = hmax >= 1 ? (state % pow_b[hmax - 1]) * B + c : 0;
        if (jj == K) break;
    }

    // relative shifts r_j = -m_j
    std::vector<long> rx(n - 1), ry(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        rx[j] = -mx[j];
        ry[j] = -my[j];
    }
    LongestPathResult res;
    res.lambda = recover_lambda(rx, dims == 2 ? std::span<const long>(ry)
                                              : std::span<const long>(),
                                C);
    res.path_weight = prev[best_idx];
    res.nodes_per_partition = states;
    res.partition_nodes.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj)
        res.partition_nodes[jj] = pow_b[std::min(jj, hmax)];
    return res;
}

}  // namespace

LongestPathResult longest_path(const CorrelationBand& band, const KernelWeights& kernel,
                               const MoveSet& moves, std::size_t k_band,
                               std::uint64_t node_budget) {
    const std::size_t n = band.n;
    if (n == 0) throw std::invalid_argument("empty correlation band");
    if (moves.dims != band.dims) throw std::invalid_argument("move set dimension mismatch");
    if (moves.lipschitz != band.lipschitz)
        throw std::invalid_argument("move set Lipschitz bound does not match band");
    if (n == 1) {
        LongestPathResult res;
        res.lambda = ShiftVector::zeros(1, moves.dims);
        res.lambda.lipschitz = static_cast<int>(moves.lipschitz);
        res.partition_nodes = {1};
        return res;
    }
    if (k_band < 1 || k_band > n - 1)
        throw std::invalid_argument("k_band must be in [1, N-1]");
    if (band.band_width < k_band || kernel.band_width < k_band)
        throw std::invalid_argument("band does not cover k_band");

    const std::size_t B = moves.count();
    std::uint64_t states = 1;
    for (std::size_t i = 0; i + 1 < k_band; ++i) {
        if (states > node_budget / B + 1) throw BudgetError(states * B, node_budget);
        states *= B;
    }
    if (states > node_budget) throw BudgetError(states, node_budget);

    if (B <= 0xFF) return run_dp<std::uint8_t>(band, kernel, moves, k_band, states);
    if (B <= 0xFFFF) return run_dp<std::uint16_t>(band, kernel, moves, k_band, states);
    return run_dp<std::uint32_t>(band, kernel, moves, k_band, states);
}

double edge_weight(std::size_t j, std::span<const long> history_x,
                   std::span<const long> history_y, const CorrelationBand& band,
                   const KernelWeights& kernel, std::size_t k_band) {
    if (j == 0) return 0.0;
    const std::size_t tmax = std::min(j, k_band);
    if (history_x.size() < tmax)
        throw std::invalid_argument("edge history shorter than the covered span");
    double w = 0.0;
    long sx = 0, sy = 0;
    for (std::size_t t = 1; t <= tmax; ++t) {
        // the r-history sums to lambda_{j-t} - lambda_j; the lookup lag is its negation
        sx += history_x[t - 1];
        if (!history_y.empty()) sy += history_y[t - 1];
        w += kernel.entry(j, j - t) * band.value(j, j - t, -sx, -sy);
    }
    return w;
}

ShiftVector recover_lambda(std::span<const long> rx, std::span<const long> ry,
                           long lipschitz) {
    ShiftVector lam;
    lam.dims = ry.empty() ? 1 : 2;
    lam.lipschitz = static_cast<int>(lipschitz);
    lam.x.resize(rx.size() + 1, 0);
    for (std::size_t j = 0; j < rx.size(); ++j) lam.x[j + 1] = lam.x[j] - rx[j];
    if (!ry.empty()) {
        lam.y.resize(ry.size() + 1, 0);
        for (std::size_t j = 0; j < ry.size(); ++j) lam.y[j + 1] = lam.y[j] - ry[j];
    }
    return lam;
}

}  // namespace orka
