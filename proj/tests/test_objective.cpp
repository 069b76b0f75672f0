#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/correlation.hpp"
#include "core/kernel.hpp"
#include "core/matrix.hpp"
#include "core/synth.hpp"

using namespace orka;

namespace {

// tau_K straight from its definition: kernel-weighted shifted inner products
// over all ordered column pairs within the band
double tau_reference(const Matrix& d, const ShiftVector& lam, double mu, std::size_t k) {
    const std::size_t n = d.cols();
    double tau = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            const std::size_t dist = j > l ? j - l : l - j;
            if (dist > k) continue;
            double ip;
            if (d.frame_cols() > 1)
                ip = shifted_dot_2d(d.column(j), d.column(l), d.frame_rows(), d.frame_cols(),
                                    lam.x[j] - lam.x[l], lam.y[j] - lam.y[l]);
            else
                ip = shifted_dot(d.column(j), d.column(l), lam.x[j] - lam.x[l]);
            tau += kernel_entry_spectral(j, l, n, mu) * ip;
        }
    return tau;
}

ShiftVector random_path(std::size_t n, long c, int dims, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> step(-c, c);
    ShiftVector lam = ShiftVector::zeros(n, dims);
    lam.lipschitz = static_cast<int>(c);
    for (std::size_t j = 1; j < n; ++j) {
        lam.x[j] = lam.x[j - 1] + step(rng);
        if (dims == 2) lam.y[j] = lam.y[j - 1] + step(rng);
    }
    return lam;
}

}  // namespace

TEST_CASE("fft and direct correlation tables agree") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix d = random_matrix(24 + rep * 7, 8, 100 + rep);
        CorrelationBand fft = correlate_band(d, 2, 5, CorrelationMethod::kFft);
        CorrelationBand direct = correlate_band(d, 2, 5, CorrelationMethod::kDirect);
        for (std::size_t dist = 1; dist <= 5; ++dist)
            for (std::size_t j = dist; j < 8; ++j)
                for (long s = -2 * static_cast<long>(dist); s <= 2 * static_cast<long>(dist); ++s)
                    CHECK(fft.value(j, j - dist, s) ==
                          doctest::Approx(direct.value(j, j - dist, s)).epsilon(1e-10));
    }
}

TEST_CASE("fft and direct agree on frames") {
    Matrix clip = random_matrix(6 * 5, 4, 9);
    clip.set_frame_shape(6, 5);
    CorrelationBand fft = correlate_band(clip, 1, 3, CorrelationMethod::kFft);
    CorrelationBand direct = correlate_band(clip, 1, 3, CorrelationMethod::kDirect);
    for (std::size_t dist = 1; dist <= 3; ++dist) {
        const long r = static_cast<long>(dist);
        for (std::size_t j = dist; j < 4; ++j)
            for (long sy = -r; sy <= r; ++sy)
                for (long sx = -r; sx <= r; ++sx)
                    CHECK(fft.value(j, j - dist, sx, sy) ==
                          doctest::Approx(direct.value(j, j - dist, sx, sy)).epsilon(1e-10));
    }
}

TEST_CASE("band values equal shifted inner products and flip") {
    Matrix d = random_matrix(20, 6, 77);
    CorrelationBand band = correlate_band(d, 2, 4);
    for (std::size_t dist = 1; dist <= 4; ++dist)
        for (std::size_t j = dist; j < 6; ++j)
            for (long s = -2 * static_cast<long>(dist); s <= 2 * static_cast<long>(dist); ++s) {
                const double direct = shifted_dot(d.column(j), d.column(j - dist), s);
                CHECK(band.value(j, j - dist, s) == doctest::Approx(direct).epsilon(1e-10));
                CHECK(band.value(j - dist, j, -s) == doctest::Approx(direct).epsilon(1e-10));
            }
    CHECK_THROWS_AS(band.value(5, 1, 9), std::out_of_range);
    CHECK_THROWS_AS(band.value(5, 0, 0), std::out_of_range);
}

TEST_CASE("tau_k equals its definition") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix d = random_matrix(14, 7, 500 + rep);
        ShiftVector lam = random_path(7, 2, 1, rng);
        for (double mu : {0.0, 0.3, 5.0, kMuInfinity}) {
            for (std::size_t k : {1u, 3u, 6u}) {
                CorrelationBand band = correlate_band(d, 2, k);
                KernelWeights kernel = build_kernel(7, mu, k);
                CHECK(tau_k(lam, band, kernel) ==
                      doctest::Approx(tau_reference(d, lam, mu, k)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("minimized objective reduces to frobenius norm minus tau") {
    // min over U of the full objective at fixed lambda leaves ||D||^2 - tau_{N-1}
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix d = random_matrix(8, 5, 900 + rep);
        ShiftVector lam = random_path(5, 1, 1, rng);
        const double mu = 0.1 + 2.0 * (rep % 5);
        Matrix u = solve_shifted_quadratic(d, lam, mu);
        const double lhs = full_objective(u, lam, d, mu);
        CorrelationBand band = correlate_band(d, 1, 4);
        KernelWeights kernel = build_kernel(5, mu, 4);
        const double rhs = d.frob_norm_sq() - tau_k(lam, band, kernel);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("auto method matches direct") {
    Matrix d = random_matrix(256, 6, 1234);
    CorrelationBand a = correlate_band(d, 3, 5, CorrelationMethod::kAuto);
    CorrelationBand direct = correlate_band(d, 3, 5, CorrelationMethod::kDirect);
    for (std::size_t dist = 1; dist <= 5; ++dist)
        for (std::size_t j = dist; j < 6; ++j)
            for (long s = -3 * static_cast<long>(dist); s <= 3 * static_cast<long>(dist); ++s)
                CHECK(a.value(j, j - dist, s) ==
                      doctest::Approx(direct.value(j, j - dist, s)).epsilon(1e-9));
}

TEST_CASE("worker threads do not change the table") {
    Matrix d = random_matrix(128, 10, 4321);
    CorrelationBand one = correlate_band(d, 2, 6, CorrelationMethod::kFft, 1);
    CorrelationBand four = correlate_band(d, 2, 6, CorrelationMethod::kFft, 4);
    for (std::size_t dist = 1; dist <= 6; ++dist)
        for (std::size_t p = 0; p < one.table[dist - 1].size(); ++p)
            CHECK(one.table[dist - 1][p] == four.table[dist - 1][p]);
}
