#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/errors.hpp"
#include "core/graph.hpp"
#include "core/oracle.hpp"
#include "core/synth.hpp"

using namespace orka;

namespace {

double dp_tau(const Matrix& d, double mu, long c, std::size_t k, int dims = 1,
              ShiftVector* lam_out = nullptr) {
    const std::size_t n = d.cols();
    CorrelationBand band = correlate_band(d, c, k);
    KernelWeights kernel = build_kernel(n, mu, k);
    MoveSet moves;
    moves.dims = dims;
    moves.lipschitz = c;
    LongestPathResult lp = longest_path(band, kernel, moves, k);
    if (lam_out) *lam_out = lp.lambda;
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) diag += kernel.entry(j, j) * band.diag[j];
    const double tau = 2.0 * lp.path_weight + diag;
    // the weight-sum identity must hold for the path the DP actually returns
    CHECK(tau == doctest::Approx(tau_k(lp.lambda, band, kernel)).epsilon(1e-9));
    return tau;
}

}  // namespace

TEST_CASE("dp matches brute force at every truncation") {
    for (int rep = 0; rep < 50; ++rep) {
        Matrix d = random_matrix(12, 6, 2000 + rep, true);
        for (double mu : {0.5, 1000.0}) {
            for (std::size_t k = 1; k <= 5; ++k) {
                BruteForceResult bf = brute_force_best_lambda(d, mu, 1, k);
                CHECK(dp_tau(d, mu, 1, k) == doctest::Approx(bf.tau).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("dp matches brute force with wider moves") {
    for (int rep = 0; rep < 10; ++rep) {
        Matrix d = random_matrix(16, 5, 3000 + rep, true);
        for (std::size_t k = 1; k <= 4; ++k) {
            BruteForceResult bf = brute_force_best_lambda(d, 2.0, 2, k);
            CHECK(dp_tau(d, 2.0, 2, k) == doctest::Approx(bf.tau).epsilon(1e-9));
        }
    }
}

TEST_CASE("dp matches brute force on 2d clips") {
    for (int rep = 0; rep < 5; ++rep) {
        Matrix clip = random_matrix(5 * 4, 4, 4000 + rep);
        clip.set_frame_shape(5, 4);
        for (std::size_t k = 1; k <= 3; ++k) {
            BruteForceResult bf = brute_force_best_lambda(clip, 1.0, 1, k, 2);
            ShiftVector lam;
            CHECK(dp_tau(clip, 1.0, 1, k, 2, &lam) == doctest::Approx(bf.tau).epsilon(1e-9));
            CHECK(lam.dims == 2);
        }
    }
}

TEST_CASE("recovered path is anchored, lipschitz and deterministic") {
    Matrix d = random_matrix(14, 8, 5150, true);
    ShiftVector first;
    dp_tau(d, 1.0, 1, 4, 1, &first);
    CHECK(first.anchored());
    CHECK(first.lipschitz_ok(1));
    for (int rep = 0; rep < 3; ++rep) {
        ShiftVector again;
        dp_tau(d, 1.0, 1, 4, 1, &again);
        CHECK(again.x == first.x);
    }
}

TEST_CASE("partition node counts follow the mixed-radix layout") {
    Matrix d = random_matrix(10, 7, 66);
    CorrelationBand band = correlate_band(d, 1, 3);
    KernelWeights kernel = build_kernel(7, 1.0, 3);
    MoveSet moves;
    LongestPathResult lp = longest_path(band, kernel, moves, 3);
    CHECK(lp.nodes_per_partition == 9);  // (2C+1)^(K-1)
    REQUIRE(lp.partition_nodes.size() == 7);
    CHECK(lp.partition_nodes[0] == 1);
    CHECK(lp.partition_nodes[1] == 3);
    for (std::size_t j = 2; j < 7; ++j) CHECK(lp.partition_nodes[j] == 9);
}

TEST_CASE("node budget is enforced") {
    Matrix d = random_matrix(10, 12, 8);
    CorrelationBand band = correlate_band(d, 2, 8);
    KernelWeights kernel = build_kernel(12, 1.0, 8);
    MoveSet moves;
    moves.lipschitz = 2;
    CHECK_THROWS_AS(longest_path(band, kernel, moves, 8, 1000), BudgetError);
    try {
        longest_path(band, kernel, moves, 8, 1000);
    } catch (const BudgetError& e) {
        CHECK(e.budget() == 1000);
        CHECK(e.nodes() > 1000);
    }
}

TEST_CASE("edge weights reproduce the path total") {
    Matrix d = random_matrix(12, 7, 321, true);
    const std::size_t k = 3;
    CorrelationBand band = correlate_band(d, 1, k);
    KernelWeights kernel = build_kernel(7, 2.0, k);
    MoveSet moves;
    LongestPathResult lp = longest_path(band, kernel, moves, k);

    // r_j = lambda_j - lambda_{j+1}; history for column j is r_{j-1}, r_{j-2}, ...
    std::vector<long> r(6);
    for (std::size_t j = 0; j < 6; ++j) r[j] = lp.lambda.x[j] - lp.lambda.x[j + 1];
    double total = 0.0;
    for (std::size_t j = 1; j < 7; ++j) {
        std::vector<long> hist;
        for (std::size_t t = 1; t <= std::min(j, k); ++t) hist.push_back(r[j - t]);
        total += edge_weight(j, hist, {}, band, kernel, k);
    }
    CHECK(total == doctest::Approx(lp.path_weight).epsilon(1e-9));
}

TEST_CASE("recover_lambda applies relative shifts") {
    const std::vector<long> r = {-1, -1, -1};
    ShiftVector lam = recover_lambda(r, {}, 1);
    CHECK(lam.x == std::vector<long>{0, 1, 2, 3});

    const std::vector<long> rx = {1, 0, -2}, ry = {0, 1, 1};
    ShiftVector lam2 = recover_lambda(rx, ry, 2);
    CHECK(lam2.x == std::vector<long>{0, -1, -1, 1});
    CHECK(lam2.y == std::vector<long>{0, 0, -1, -2});
}

TEST_CASE("ties drift downward by c per step") {
    // all-equal columns: every path weighs the same, the tie-break must pick
    // a shift that falls by C each measurement
    Matrix d(6, 5);
    for (std::size_t i = 0; i < d.size(); ++i) d.data()[i] = 1.0;
    ShiftVector lam;
    dp_tau(d, 1000.0, 1, 2, 1, &lam);
    CHECK(lam.x == std::vector<long>{0, -1, -2, -3, -4});
}
