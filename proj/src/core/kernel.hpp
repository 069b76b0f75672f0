#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace orka {

constexpr double kMuInfinity = std::numeric_limits<double>::infinity();

// phi = arccosh(1 + 1/(2 mu)), the off-diagonal decay rate of (I + mu T)^-1.
double kernel_phi(double mu);

// Entry (j, k) of (I + mu T)^-1 for an n x n system, 0-based indices.
//
// The hyperbolic closed form is exact but its cosh/sinh terms grow like
// e^{n phi}; it throws KernelOverflowError instead of silently returning inf.
// The spectral sum is the numerically preferred production path.
double kernel_entry_hyperbolic(std::size_t j, std::size_t k, std::size_t n, double mu);
double kernel_entry_spectral(std::size_t j, std::size_t k, std::size_t n, double mu);

// Banded table of (I + mu T)^-1 entries for |j - k| <= band_width.
struct KernelWeights {
    std::size_t n = 0;
    double mu = 0.0;
    std::size_t band_width = 0;
    double phi = 0.0;  // 0 unless 0 < mu < infinity

    // diagonal d stored at [d * n, d * n + (n - d)): w(j, j + d)
    std::vector<double> w;

    double entry(std::size_t j, std::size_t k) const {
        const std::size_t d = j > k ? j - k : k - j;
        return w[d * n + (j < k ? j : k)];
    }
};

KernelWeights build_kernel(std::size_t n, double mu, std::size_t k_band);

// Two-sweep elimination for (I + mu T) x = b, factorized once and reused
// across the M independent row systems.
class TridiagSolver {
public:
    TridiagSolver(std::size_t n, double mu);

    void solve(std::span<const double> b, std::span<double> x) const;
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    double mu_;
    std::vector<double> cp_;         // normalized superdiagonal
    std::vector<double> inv_denom_;  // reciprocal pivots
};

// Minimizer U of ||S_{-lambda}(D) - U||_F^2 + mu * total_change(U), mu finite.
Matrix solve_shifted_quadratic(const Matrix& d, const ShiftVector& lambda, double mu);

}  // namespace orka
