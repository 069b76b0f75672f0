#include "correlation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

namespace orka {

namespace {

inline std::size_t wrap(long i, std::size_t m) {
    long r = i % static_cast<long>(m);
    if (r < 0) r += static_cast<long>(m);
    return static_cast<std::size_t>(r);
}

void parallel_for(std::size_t count, int workers, const auto& fn) {
    const std::size_t nt = workers > 1 ? std::min<std::size_t>(workers, count) : 1;
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += nt) fn(i, t);
        });
    for (auto& th : pool) th.join();
}

struct FftBuffer {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    FftBuffer(std::size_t nreal, std::size_t ncplx) {
        real = fftw_alloc_real(nreal);
        cplx = fftw_alloc_complex(ncplx);
    }
    ~FftBuffer() {
        fftw_free(real);
        fftw_free(cplx);
    }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
};

// Cross-correlation engine over the columns of D, shared by 1D and 2D data.
// corr(s) = <a, S_s(b)> = IFFT(FFT(a) * conj(FFT(b)))(s).
class CrossCorrelator {
public:
    CrossCorrelator(const Matrix& d, bool want_fft, int workers)
        : d_(d), m_(d.rows()), fr_(d.frame_rows()), fc_(d.frame_cols()),
          two_d_(d.frame_cols() > 1), mc_(two_d_ ? fc_ * (fr_ / 2 + 1) : m_ / 2 + 1) {
        if (!want_fft) return;
        scratch_.reserve(std::max(workers, 1));
        for (int t = 0; t < std::max(workers, 1); ++t)
            scratch_.emplace_back(std::make_unique<FftBuffer>(m_, mc_));
        auto& s0 = *scratch_.front();
        if (two_d_) {
            // frames are stored x-fastest, which FFTW sees as row-major (fc, fr)
            fwd_ = fftw_plan_dft_r2c_2d(static_cast<int>(fc_), static_cast<int>(fr_),
                                        s0.real, s0.cplx, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r_2d(static_cast<int>(fc_), static_cast<int>(fr_),
                                        s0.cplx, s0.real, FFTW_ESTIMATE);
        } else {
            fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(m_), s0.real, s0.cplx, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(m_), s0.cplx, s0.real, FFTW_ESTIMATE);
        }
        spectra_.assign(d.cols() * mc_, {0.0, 0.0});
        for (std::size_t k = 0; k < d.cols(); ++k) {
            auto col = d.column(k);
            std::copy(col.begin(), col.end(), s0.real);
            fftw_execute_dft_r2c(fwd_, s0.real, s0.cplx);
            auto* out = reinterpret_cast<std::complex<double>*>(s0.cplx);
            std::copy(out, out + mc_, spectra_.begin() + k * mc_);
        }
    }

    ~CrossCorrelator() {
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
    }

    // Full circular cross-correlation of columns j and k into the window of
    // lags |s| <= radius per component.
    void fft_window(std::size_t j, std::size_t k, long radius, double* out, int tid) const {
        auto& sb = *scratch_[tid];
        const auto* a = spectra_.data() + j * mc_;
        const auto* b = spectra_.data() + k * mc_;
        auto* prod = reinterpret_cast<std::complex<double>*>(sb.cplx);
        for (std::size_t f = 0; f < mc_; ++f) prod[f] = a[f] * std::conj(b[f]);
        fftw_execute_dft_c2r(bwd_, sb.cplx, sb.real);
        const double scale = 1.0 / static_cast<double>(m_);
        const std::size_t e = 2 * static_cast<std::size_t>(radius) + 1;
        if (two_d_) {
            for (long sy = -radius; sy <= radius; ++sy)
                for (long sx = -radius; sx <= radius; ++sx)
                    out[static_cast<std::size_t>(sx + radius) +
                        e * static_cast<std::size_t>(sy + radius)] =
                        sb.real[wrap(sx, fr_) + fr_ * wrap(sy, fc_)] * scale;
        } else {
            for (long s = -radius; s <= radius; ++s)
                out[static_cast<std::size_t>(s + radius)] = sb.real[wrap(s, m_)] * scale;
        }
    }

    void direct_window(std::size_t j, std::size_t k, long radius, double* out) const {
        const std::size_t e = 2 * static_cast<std::size_t>(radius) + 1;
        if (two_d_) {
            for (long sy = -radius; sy <= radius; ++sy)
                for (long sx = -radius; sx <= radius; ++sx)
                    out[static_cast<std::size_t>(sx + radius) +
                        e * static_cast<std::size_t>(sy + radius)] =
                        shifted_dot_2d(d_.column(j), d_.column(k), fr_, fc_, sx, sy);
        } else {
            for (long s = -radius; s <= radius; ++s)
                out[static_cast<std::size_t>(s + radius)] = shifted_dot(d_.column(j), d_.column(k), s);
        }
    }

private:
    const Matrix& d_;
    std::size_t m_, fr_, fc_;
    bool two_d_;
    std::size_t mc_;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
    std::vector<std::unique_ptr<FftBuffer>> scratch_;
    std::vector<std::complex<double>> spectra_;
};

}  // namespace

double CorrelationBand::value(std::size_t j, std::size_t k, long sx, long sy) const {
    if (j == k) {
        if (sx != 0 || sy != 0)
            throw std::out_of_range("diagonal correlation stored at lag 0 only");
        return diag[j];
    }
    if (j < k) return value(k, j, -sx, -sy);
    const std::size_t d = j - k;
    if (d > band_width) throw std::out_of_range("column pair outside correlation band");
    const long radius = lipschitz * static_cast<long>(d);
    if (std::labs(sx) > radius || std::labs(sy) > radius)
        throw std::out_of_range("lag outside Lipschitz window");
    const std::size_t e = extent(d);
    std::size_t idx = static_cast<std::size_t>(sx + radius);
    if (dims == 2) idx += e * static_cast<std::size_t>(sy + radius);
    return table[d - 1][k * window_size(d) + idx];
}

CorrelationBand correlate_band(const Matrix& d, long c, std::size_t k_band,
                               CorrelationMethod method, int workers) {
    const std::size_t n = d.cols(), m = d.rows();
    if (n == 0 || m == 0) throw std::invalid_argument("empty data matrix");
    if (k_band >= n) throw std::invalid_argument("band width must be at most N-1");
    if (c < 0) throw std::invalid_argument("Lipschitz bound must be nonnegative");

    CorrelationBand band;
    band.n = n;
    band.band_width = k_band;
    band.lipschitz = c;
    band.dims = d.frame_cols() > 1 ? 2 : 1;
    band.frame_rows = d.frame_rows();
    band.frame_cols = d.frame_cols();
    band.diag.resize(n);
    for (std::size_t j = 0; j < n; ++j) band.diag[j] = dot(d.column(j), d.column(j));

    // per-distance method choice; FFT pays off once the lag window outgrows
    // the log-size of one transform
    const double log2m = std::log2(static_cast<double>(std::max<std::size_t>(m, 2)));
    std::vector<bool> use_fft(k_band + 1, false);
    bool any_fft = false;
    for (std::size_t dist = 1; dist <= k_band; ++dist) {
        std::size_t e = 2 * static_cast<std::size_t>(c) * dist + 1;
        std::size_t wsize = band.dims == 2 ? e * e : e;
        bool fft = method == CorrelationMethod::kFft ||
                   (method == CorrelationMethod::kAuto && wsize > 4.0 * log2m);
        use_fft[dist] = fft;
        any_fft = any_fft || fft;
    }

    CrossCorrelator xc(d, any_fft, workers);
    band.table.resize(k_band);
    for (std::size_t dist = 1; dist <= k_band; ++dist) {
        const long radius = c * static_cast<long>(dist);
        const std::size_t wsize = band.window_size(dist);
        auto& tab = band.table[dist - 1];
        tab.resize((n - dist) * wsize);
        const bool fft = use_fft[dist];
        parallel_for(n - dist, workers, [&](std::size_t p, int tid) {
            double* out = tab.data() + p * wsize;
            if (fft)
                xc.fft_window(p + dist, p, radius, out, tid);
            else
                xc.direct_window(p + dist, p, radius, out);
        });
    }
    return band;
}

double tau_k(const ShiftVector& lambda, const CorrelationBand& band, const KernelWeights& kernel) {
    const std::size_t n = band.n;
    if (lambda.size() != n) throw std::invalid_argument("shift vector length mismatch");
    if (kernel.n != n || kernel.band_width < band.band_width)
        throw std::invalid_argument("kernel band does not cover the correlation band");

    double tau = 0.0;
    for (std::size_t j = 0; j < n; ++j) tau += kernel.entry(j, j) * band.diag[j];
    for (std::size_t dist = 1; dist <= band.band_width; ++dist)
        for (std::size_t j = dist; j < n; ++j) {
            const std::size_t k = j - dist;
            const long sx = lambda.x[j] - lambda.x[k];
            const long sy = lambda.dims == 2 ? lambda.y[j] - lambda.y[k] : 0;
            tau += 2.0 * kernel.entry(j, k) * band.value(j, k, sx, sy);
        }
    return tau;
}

double full_objective(const Matrix& u, const ShiftVector& lambda, const Matrix& d, double mu) {
    if (std::isinf(mu)) throw std::invalid_argument("full objective requires finite mu");
    Matrix aligned = shift_columns(d, lambda.negated());
    double fid = 0.0;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
        const double r = aligned.data()[i] - u.data()[i];
        fid += r * r;
    }
    return fid + mu * total_change(u);
}

}  // namespace orka
