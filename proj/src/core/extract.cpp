#include "extract.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace orka {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fidelity(const Matrix& u, const ShiftVector& lambda, const Matrix& d) {
    Matrix aligned = shift_columns(d, lambda.negated());
    double s = 0.0;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
        const double r = aligned.data()[i] - u.data()[i];
        s += r * r;
    }
    return s;
}

}  // namespace

ObjectEstimate extract(const Matrix& d, const ExtractionParams& p) {
    if (d.rows() == 0 || d.cols() == 0) throw std::invalid_argument("empty data matrix");
    if (p.dims != 1 && p.dims != 2) throw std::invalid_argument("dims must be 1 or 2");
    if (p.dims == 2 && d.frame_cols() <= 1 && d.rows() > 1)
        throw std::invalid_argument("dims = 2 requires a frame shape on the data");
    if (p.lipschitz < 0) throw std::invalid_argument("Lipschitz bound must be nonnegative");
    if (p.mu < 0.0) throw std::invalid_argument("mu must be nonnegative");

    const std::size_t n = d.cols();
    ObjectEstimate est;

    if (p.mu == 0.0) {
        // no penalty: U = D, lambda = 0 is exact
        est.u = d;
        est.lambda = ShiftVector::zeros(n, p.dims);
        est.lambda.lipschitz = static_cast<int>(p.lipschitz);
        est.objective = 0.0;
        for (std::size_t j = 0; j < n; ++j) est.tau += dot(d.column(j), d.column(j));
        return est;
    }

    const std::size_t k_eff = n > 1 ? std::min(p.k_band, n - 1) : 0;
    auto t0 = std::chrono::steady_clock::now();
    CorrelationBand band = n > 1
        ? correlate_band(d, p.lipschitz, k_eff, p.method, p.workers)
        : CorrelationBand{};
    est.t_correlate = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    KernelWeights kernel = build_kernel(n, p.mu, k_eff);
    est.t_kernel = seconds_since(t0);

    if (n == 1) {
        est.lambda = ShiftVector::zeros(1, p.dims);
        est.lambda.lipschitz = static_cast<int>(p.lipschitz);
    } else {
        MoveSet moves;
        moves.dims = p.dims;
        moves.lipschitz = p.lipschitz;
        moves.centered_ties = std::isinf(p.mu);
        t0 = std::chrono::steady_clock::now();
        LongestPathResult lp = longest_path(band, kernel, moves, std::max<std::size_t>(k_eff, 1),
                                            p.node_budget);
        est.t_graph = seconds_since(t0);
        est.lambda = lp.lambda;
        est.nodes_per_partition = lp.nodes_per_partition;
        double diag_terms = 0.0;
        for (std::size_t j = 0; j < n; ++j) diag_terms += kernel.entry(j, j) * band.diag[j];
        // the DP drops the lambda-independent diagonal and counts each pair once
        est.tau = 2.0 * lp.path_weight + diag_terms;
    }

    t0 = std::chrono::steady_clock::now();
    est.u = std::isinf(p.mu) ? mean_projection(d, est.lambda)
                             : solve_shifted_quadratic(d, est.lambda, p.mu);
    est.t_solve = seconds_since(t0);

    est.objective = std::isinf(p.mu) ? fidelity(est.u, est.lambda, d)
                                     : full_objective(est.u, est.lambda, d, p.mu);
    return est;
}

Decomposition decompose(const Matrix& d, std::span<const ExtractionParams> per_iteration) {
    if (per_iteration.empty()) throw std::invalid_argument("at least one iteration required");
    Decomposition dec;
    dec.residual = d;
    for (const auto& p : per_iteration) {
        ObjectEstimate est = extract(dec.residual, p);
        Matrix contribution = shift_columns(est.u, est.lambda);
        dec.object_energy.push_back(contribution.frob_norm_sq());
        for (std::size_t i = 0; i < dec.residual.size(); ++i)
            dec.residual.data()[i] -= contribution.data()[i];
        dec.objects.push_back(std::move(est));
    }
    return dec;
}

ObjectEstimate extract_video(const Matrix& clip, const ExtractionParams& p) {
    if (p.dims != 2) throw std::invalid_argument("extract_video requires dims = 2");
    return extract(clip, p);
}

}  // namespace orka
