#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace orka {

namespace {

// log(sinh(x)) without overflow
double log_sinh(double x) {
    if (x > 30.0) return x - std::log(2.0);
    return std::log(std::sinh(x));
}

struct Enumerator {
    const MoveSet& moves;
    std::vector<std::uint32_t> order;
    std::size_t steps;                 // N - 1
    std::vector<std::size_t> digits;   // rank per step, step 0 most significant
    bool done = false;

    Enumerator(const MoveSet& m, std::size_t n) : moves(m), order(m.enumeration_order()),
                                                  steps(n - 1), digits(n - 1, 0) {}

    ShiftVector lambda() const {
        ShiftVector lam = ShiftVector::zeros(steps + 1, moves.dims);
        lam.lipschitz = static_cast<int>(moves.lipschitz);
        for (std::size_t j = 0; j < steps; ++j) {
            const std::uint32_t c = order[digits[j]];
            lam.x[j + 1] = lam.x[j] + moves.move_x(c);
            if (moves.dims == 2) lam.y[j + 1] = lam.y[j] + moves.move_y(c);
        }
        return lam;
    }

    void advance() {
        for (std::size_t j = steps; j-- > 0;) {
            if (++digits[j] < moves.count()) return;
            digits[j] = 0;
        }
        done = true;
    }
};

}  // namespace

BruteForceResult brute_force_best_lambda(const Matrix& d, double mu, long c,
                                         std::size_t k_band, int dims,
                                         std::uint64_t budget) {
    const std::size_t n = d.cols();
    if (n == 0) throw std::invalid_argument("empty data matrix");
    const std::size_t k_eff = n > 1 ? std::min(k_band, n - 1) : 0;

    MoveSet moves;
    moves.dims = dims;
    moves.lipschitz = c;
    moves.centered_ties = std::isinf(mu);

    BruteForceResult res;
    if (n == 1) {
        res.lambda = ShiftVector::zeros(1, dims);
        res.lambda.lipschitz = static_cast<int>(c);
        KernelWeights kw = build_kernel(1, mu, 0);
        res.tau = kw.entry(0, 0) * dot(d.column(0), d.column(0));
        res.candidates = 1;
        return res;
    }

    std::uint64_t total = 1;
    const std::uint64_t base = moves.count();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (total > budget / base) throw BudgetError(total * base, budget);
        total *= base;
    }
    if (total > budget) throw BudgetError(total, budget);

    CorrelationBand band = correlate_band(d, c, k_eff);
    KernelWeights kernel = build_kernel(n, mu, k_eff);

    double best = -std::numeric_limits<double>::infinity();
    Enumerator en(moves, n);
    while (!en.done) {
        ShiftVector lam = en.lambda();
        const double t = tau_k(lam, band, kernel);
        if (t > best) {
            best = t;
            res.lambda = std::move(lam);
        }
        ++res.candidates;
        en.advance();
    }
    res.tau = best;
    return res;
}

ErrorBoundReport error_bounds(std::size_t n, std::size_t k, double mu) {
    if (!(mu > 0.0) || std::isinf(mu))
        throw std::invalid_argument("error bounds require 0 < mu < infinity");
    if (k + 1 >= n) throw std::invalid_argument("error bounds require K < N-1");

    ErrorBoundReport r;
    r.n = n;
    r.k = k;
    r.mu = mu;
    r.phi = kernel_phi(mu);
    const double nd = static_cast<double>(n);
    const double nk = static_cast<double>(n - k);
    const double log_g = -std::log(mu) - log_sinh(r.phi) - log_sinh(nd * r.phi);
    r.g = std::exp(log_g);
    r.bound_exp = std::exp(std::log(2.0) + log_g + 2.0 * std::log(nk) + nk * r.phi);
    r.bound_gauss = std::exp(log_g + 2.0 * std::log(nk) + nk * nk * r.phi * r.phi / 2.0);
    r.theorem_bound = std::min(r.bound_exp, r.bound_gauss);
    return r;
}

TheoremCheck verify_theorem(const Matrix& d, double mu, long c, std::size_t k,
                            std::uint64_t budget) {
    const std::size_t n = d.cols();
    if (n < 2) throw std::invalid_argument("theorem check needs at least two columns");
    const std::size_t k_full = n - 1;

    MoveSet moves;
    moves.dims = 1;
    moves.lipschitz = c;

    std::uint64_t total = 1;
    const std::uint64_t base = moves.count();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (total > budget / base) throw BudgetError(total * base, budget);
        total *= base;
    }

    CorrelationBand band = correlate_band(d, c, k_full);
    KernelWeights kernel = build_kernel(n, mu, k_full);

    // truncated view of the same band
    CorrelationBand band_trunc = band;
    band_trunc.band_width = k;

    double best_full = -std::numeric_limits<double>::infinity();
    double best_trunc = -std::numeric_limits<double>::infinity();
    TheoremCheck chk;
    Enumerator en(moves, n);
    while (!en.done) {
        ShiftVector lam = en.lambda();
        const double tf = tau_k(lam, band, kernel);
        const double tt = tau_k(lam, band_trunc, kernel);
        if (tf > best_full) {
            best_full = tf;
            chk.best_full = lam;
        }
        if (tt > best_trunc) {
            best_trunc = tt;
            chk.best_truncated = lam;
        }
        en.advance();
    }
    chk.left = best_full - tau_k(chk.best_truncated, band, kernel);
    chk.bound = error_bounds(n, k, mu);
    chk.holds = chk.left <= chk.bound.theorem_bound + 1e-9;
    return chk;
}

}  // namespace orka
