#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/oracle.hpp"
#include "core/synth.hpp"

using namespace orka;

TEST_CASE("phi value and monotonicity") {
    CHECK(kernel_phi(0.5) == doctest::Approx(std::acosh(2.0)).epsilon(1e-12));
    CHECK(kernel_phi(0.5) == doctest::Approx(1.3169578969248166).epsilon(1e-12));
    double prev = kernel_phi(1e-3);
    for (double mu : {1e-2, 1e-1, 1.0, 10.0, 1e3}) {
        const double phi = kernel_phi(mu);
        CHECK(phi < prev);  // heavier smoothing decays more slowly
        prev = phi;
    }
}

TEST_CASE("error bound report stays finite and sane") {
    for (std::size_t n : {8u, 32u, 128u}) {
        for (double mu : {1e-2, 1.0, 1e3}) {
            for (std::size_t k = 1; k + 1 < n; k += 3) {
                ErrorBoundReport r = error_bounds(n, k, mu);
                CHECK(std::isfinite(r.theorem_bound));
                CHECK(r.theorem_bound > 0.0);
                CHECK(r.theorem_bound <= r.bound_exp + 1e-300);
                CHECK(r.theorem_bound <= r.bound_gauss + 1e-300);
                CHECK(r.g > 0.0);
            }
            // larger K leaves less truncated mass
            CHECK(error_bounds(n, n - 2, mu).theorem_bound <
                  error_bounds(n, 1, mu).theorem_bound);
        }
    }
    CHECK_THROWS_AS(error_bounds(8, 7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(error_bounds(8, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(error_bounds(8, 2, kMuInfinity), std::invalid_argument);
}

TEST_CASE("brute force exactness on tiny instances") {
    // N = 2: the best lag is the argmax of the single correlation window
    Matrix d = random_matrix(16, 2, 42, true);
    BruteForceResult bf = brute_force_best_lambda(d, 1.0, 2, 1);
    CHECK(bf.candidates == 5);
    CorrelationBand band = correlate_band(d, 2, 1);
    KernelWeights kernel = build_kernel(2, 1.0, 1);
    double best = -1e300;
    for (long s = -2; s <= 2; ++s) {
        ShiftVector lam = ShiftVector::zeros(2);
        lam.x[1] = s;
        best = std::max(best, tau_k(lam, band, kernel));
    }
    CHECK(bf.tau == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("brute force respects the enumeration budget") {
    Matrix d = random_matrix(8, 14, 3);
    CHECK_THROWS_AS(brute_force_best_lambda(d, 1.0, 1, 3, 1, 1000), BudgetError);
}

TEST_CASE("theorem bound holds on random normalized instances") {
    for (int rep = 0; rep < 15; ++rep) {
        Matrix d = random_matrix(12, 6, 7000 + rep, true);
        for (double mu : {0.1, 1.0, 10.0}) {
            for (std::size_t k : {1u, 2u, 3u}) {
                TheoremCheck chk = verify_theorem(d, mu, 1, k);
                CHECK(chk.holds);
                CHECK(chk.left >= -1e-9);  // full optimum can only be better
            }
        }
    }
}

TEST_CASE("theorem check agrees with the standalone brute force") {
    Matrix d = random_matrix(10, 5, 11, true);
    TheoremCheck chk = verify_theorem(d, 1.0, 1, 3);
    BruteForceResult bf = brute_force_best_lambda(d, 1.0, 1, 4);
    CorrelationBand band = correlate_band(d, 1, 4);
    KernelWeights kernel = build_kernel(5, 1.0, 4);
    CHECK(tau_k(chk.best_full, band, kernel) == doctest::Approx(bf.tau).epsilon(1e-12));
}
