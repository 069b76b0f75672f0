#pragma once

#include <cstdint>

#include "matrix.hpp"

namespace orka {

// 10 log10(peak^2 M N / ||ref - x||_F^2), peak = max |entry| of ref.
// Identical inputs give +infinity.
double psnr(const Matrix& ref, const Matrix& x);

// Diagonal markers separated by gaps growing from 0 to 14 zeros: 16 ones on
// the diagonal of a 121 x 121 matrix.
Matrix gen_gap_matrix();

struct PulseSceneParams {
    std::size_t m = 128, n = 32;
    double velocity = 1.0;     // samples per measurement; path is the rounded line
    double width = 4.0;        // Gaussian pulse std dev in samples
    double center = -1.0;      // start position; negative means m / 2
    double form_drift = 0.0;   // smooth amplitude/width modulation, 0 = constant form
    double noise_psnr_db = 0;  // target PSNR of data vs clean; ignored unless add_noise
    bool add_noise = false;
    std::uint64_t seed = 1;
};

struct PulseScene {
    Matrix data;        // clean + exactly-scaled Gaussian noise when requested
    Matrix clean;
    ShiftVector truth;  // per-column integer shift path
};

PulseScene gen_pulse_scene(const PulseSceneParams& p);

struct MovingSquareScene {
    Matrix clip;        // frames as columns, frame shape set
    Matrix background;  // static component, replicated per frame
    ShiftVector truth;  // dims = 2 per-frame square position offsets
};

// Static zero-mean Gaussian background plus a bright square translating
// (vx, vy) pixels per frame with cyclic wrap.
MovingSquareScene gen_moving_square(std::size_t frame_rows, std::size_t frame_cols,
                                    std::size_t frames, long vx, long vy,
                                    std::size_t square, double amplitude,
                                    std::uint64_t seed);

// i.i.d. N(0,1) entries; optionally scaled to unit column norms.
Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed,
                     bool normalize_columns = false);

// Adds Gaussian noise rescaled so psnr(clean, result) hits the target exactly.
Matrix with_noise_at_psnr(const Matrix& clean, double target_db, std::uint64_t seed);

}  // namespace orka
