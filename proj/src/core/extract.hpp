#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "correlation.hpp"
#include "graph.hpp"
#include "kernel.hpp"
#include "matrix.hpp"

namespace orka {

struct ExtractionParams {
    double mu = 1.0;        // regularization; kMuInfinity forces a constant object
    long lipschitz = 1;     // C, per spatial component
    std::size_t k_band = 4; // K, clamped to N-1
    int dims = 1;           // 2 for video frames
    CorrelationMethod method = CorrelationMethod::kAuto;
    int workers = 1;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

struct ObjectEstimate {
    Matrix u;
    ShiftVector lambda;
    // fidelity + mu * total change for finite mu, fidelity only when mu
    // is infinite
    double objective = 0.0;
    double tau = 0.0;  // tau_K of the recovered shift vector
    std::uint64_t nodes_per_partition = 1;
    double t_correlate = 0.0, t_kernel = 0.0, t_graph = 0.0, t_solve = 0.0;
};

struct Decomposition {
    std::vector<ObjectEstimate> objects;
    std::vector<double> object_energy;  // ||S_lambda(U)||_F^2 per object
    Matrix residual;
};

// One ORKA pass: banded correlations -> kernel -> longest path -> exact solve.
ObjectEstimate extract(const Matrix& d, const ExtractionParams& p);

// Residual peeling: extract, subtract S_lambda(U), repeat. One parameter set
// per iteration (e.g. mu = infinity for a background pass, small mu after).
Decomposition decompose(const Matrix& d, std::span<const ExtractionParams> per_iteration);

// Frames-as-measurements adapter; requires a frame shape on the matrix and
// dims = 2 parameters.
ObjectEstimate extract_video(const Matrix& clip, const ExtractionParams& p);

}  // namespace orka
