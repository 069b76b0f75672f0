#include "synth.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace orka {

double psnr(const Matrix& ref, const Matrix& x) {
    if (!ref.same_shape(x)) throw std::invalid_argument("psnr: shape mismatch");
    if (ref.size() == 0) throw std::invalid_argument("psnr: empty matrices");
    double err = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double e = ref.data()[i] - x.data()[i];
        err += e * e;
    }
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    const double peak = ref.max_abs();
    return 10.0 * std::log10(peak * peak * static_cast<double>(ref.size()) / err);
}

Matrix gen_gap_matrix() {
    // marker column positions: 0, 1, 3, 6, 10, ... (gap g zeros after marker g)
    std::vector<std::size_t> pos;
    std::size_t p = 0;
    for (std::size_t g = 0; g <= 15; ++g) {
        pos.push_back(p);
        p += g + 1;
    }
    const std::size_t n = pos.back() + 1;  // 121
    Matrix m(n, n);
    for (std::size_t q : pos) m(q, q) = 1.0;
    return m;
}

PulseScene gen_pulse_scene(const PulseSceneParams& p) {
    if (p.m == 0 || p.n == 0) throw std::invalid_argument("empty scene");
    if (!(p.width > 0.0)) throw std::invalid_argument("pulse width must be positive");

    PulseScene scene;
    scene.clean = Matrix(p.m, p.n);
    scene.truth = ShiftVector::zeros(p.n, 1);

    const double md = static_cast<double>(p.m);
    const double center = p.center < 0.0 ? md / 2.0 : p.center;
    for (std::size_t k = 0; k < p.n; ++k)
        scene.truth.x[k] = std::lround(p.velocity * static_cast<double>(k));

    if (p.form_drift == 0.0) {
        // constant form: build the template once and shift it, so the clean
        // scene is exactly a shifted replication of one column
        std::vector<double> tmpl(p.m);
        for (std::size_t i = 0; i < p.m; ++i) {
            double dd = static_cast<double>(i) - center;
            dd -= md * std::round(dd / md);  // cyclic distance
            tmpl[i] = std::exp(-dd * dd / (2.0 * p.width * p.width));
        }
        for (std::size_t k = 0; k < p.n; ++k)
            shift_into(tmpl, scene.clean.column(k), scene.truth.x[k]);
    } else {
        const double two_pi = 2.0 * std::acos(-1.0);
        for (std::size_t k = 0; k < p.n; ++k) {
            const double phase = two_pi * static_cast<double>(k) / static_cast<double>(p.n);
            const double amp = 1.0 + p.form_drift * std::sin(phase);
            const double w = p.width * (1.0 + 0.5 * p.form_drift * std::cos(phase));
            const double pk = center + static_cast<double>(scene.truth.x[k]);
            for (std::size_t i = 0; i < p.m; ++i) {
                double dd = static_cast<double>(i) - pk;
                dd -= md * std::round(dd / md);
                scene.clean(i, k) = amp * std::exp(-dd * dd / (2.0 * w * w));
            }
        }
    }

    scene.data = p.add_noise ? with_noise_at_psnr(scene.clean, p.noise_psnr_db, p.seed)
                             : scene.clean;
    return scene;
}

MovingSquareScene gen_moving_square(std::size_t frame_rows, std::size_t frame_cols,
                                    std::size_t frames, long vx, long vy,
                                    std::size_t square, double amplitude,
                                    std::uint64_t seed) {
    if (frame_rows == 0 || frame_cols == 0 || frames == 0)
        throw std::invalid_argument("empty clip");
    if (square == 0 || square > frame_rows || square > frame_cols)
        throw std::invalid_argument("square does not fit the frame");

    const std::size_t pixels = frame_rows * frame_cols;
    MovingSquareScene scene;
    scene.background = Matrix(pixels, frames);
    scene.background.set_frame_shape(frame_rows, frame_cols);
    scene.clip = Matrix(pixels, frames);
    scene.clip.set_frame_shape(frame_rows, frame_cols);
    scene.truth = ShiftVector::zeros(frames, 2);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> bg(pixels);
    for (double& v : bg) v = gauss(rng);

    const long fr = static_cast<long>(frame_rows);
    const long fc = static_cast<long>(frame_cols);
    const long x0 = fr / 4, y0 = fc / 4;
    for (std::size_t t = 0; t < frames; ++t) {
        const long td = static_cast<long>(t);
        scene.truth.x[t] = vx * td;
        scene.truth.y[t] = vy * td;
        auto col = scene.clip.column(t);
        auto bcol = scene.background.column(t);
        for (std::size_t i = 0; i < pixels; ++i) {
            bcol[i] = bg[i];
            col[i] = bg[i];
        }
        for (std::size_t dy = 0; dy < square; ++dy) {
            const long y = (((y0 + vy * td + static_cast<long>(dy)) % fc) + fc) % fc;
            for (std::size_t dx = 0; dx < square; ++dx) {
                const long x = (((x0 + vx * td + static_cast<long>(dx)) % fr) + fr) % fr;
                col[static_cast<std::size_t>(x + fr * y)] += amplitude;
            }
        }
    }
    return scene;
}

Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed,
                     bool normalize_columns) {
    Matrix a(m, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = gauss(rng);
    if (normalize_columns) a.normalize_columns();
    return a;
}

Matrix with_noise_at_psnr(const Matrix& clean, double target_db, std::uint64_t seed) {
    if (clean.size() == 0) throw std::invalid_argument("empty matrix");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> z(clean.size());
    double zz = 0.0;
    for (double& v : z) {
        v = gauss(rng);
        zz += v * v;
    }
    if (zz == 0.0) throw std::runtime_error("degenerate noise draw");
    const double peak = clean.max_abs();
    const double target_err =
        peak * peak * static_cast<double>(clean.size()) * std::pow(10.0, -target_db / 10.0);
    const double scale = std::sqrt(target_err / zz);
    Matrix out = clean;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += scale * z[i];
    return out;
}

}  // namespace orka
