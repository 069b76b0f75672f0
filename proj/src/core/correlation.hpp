#pragma once

#include <cstddef>
#include <vector>

#include "kernel.hpp"
#include "matrix.hpp"

namespace orka {

enum class CorrelationMethod { kAuto, kFft, kDirect };

// Precomputed inner products <D_:j, S_s(D_:k)> for all column pairs with
// 0 < j - k <= band_width and all lags |s| <= lipschitz * (j - k) per
// component, plus the lag-0 diagonal.
struct CorrelationBand {
    std::size_t n = 0;
    std::size_t band_width = 0;
    long lipschitz = 0;
    int dims = 1;
    std::size_t frame_rows = 0, frame_cols = 1;

    std::vector<double> diag;                 // <D_:j, D_:j>
    std::vector<std::vector<double>> table;   // table[d-1]: (n-d) windows of extent(d)^dims

    std::size_t extent(std::size_t d) const { return 2 * static_cast<std::size_t>(lipschitz) * d + 1; }
    std::size_t window_size(std::size_t d) const {
        const std::size_t e = extent(d);
        return dims == 2 ? e * e : e;
    }

    // <D_:j, S_(sx,sy)(D_:k)>; pairs with k > j resolved by the flip identity
    // <D_:j, S_s(D_:k)> = <D_:k, S_{-s}(D_:j)>. Throws std::out_of_range for
    // lags outside the stored window.
    double value(std::size_t j, std::size_t k, long sx, long sy = 0) const;
};

CorrelationBand correlate_band(const Matrix& d, long c, std::size_t k_band,
                               CorrelationMethod method = CorrelationMethod::kAuto,
                               int workers = 1);

// K-truncated kernel-weighted correlation objective tau_K, including the
// lambda-independent diagonal terms.
double tau_k(const ShiftVector& lambda, const CorrelationBand& band, const KernelWeights& kernel);

// ||S_{-lambda}(D) - U||_F^2 + mu * total_change(U), mu finite.
double full_objective(const Matrix& u, const ShiftVector& lambda, const Matrix& d, double mu);

}  // namespace orka
