#include "kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace orka {

namespace {

// cosh/sinh overflow past ~710; stay a little under.
constexpr double kHypArgLimit = 700.0;

void check_indices(std::size_t j, std::size_t k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("kernel size must be positive");
    if (j >= n || k >= n) throw std::invalid_argument("kernel index out of range");
}

}  // namespace

double kernel_phi(double mu) {
    if (!(mu > 0.0) || std::isinf(mu)) return 0.0;
    return std::acosh(1.0 + 1.0 / (2.0 * mu));
}

double kernel_entry_hyperbolic(std::size_t j, std::size_t k, std::size_t n, double mu) {
    check_indices(j, k, n);
    if (!(mu > 0.0) || std::isinf(mu))
        throw std::invalid_argument("hyperbolic form requires 0 < mu < infinity");
    if (n == 1) return 1.0;  // T degenerates to the 1x1 zero matrix

    const double phi = kernel_phi(mu);
    const double nd = static_cast<double>(n);
    // 0-based indices: N+1-j-k becomes n-1-j-k.
    const double a1 = std::fabs(nd - 1.0 - static_cast<double>(j + k));
    const double a2 = nd - std::fabs(static_cast<double>(j) - static_cast<double>(k));
    const double amax = std::max({a1 * phi, a2 * phi, nd * phi});
    if (amax > kHypArgLimit) throw KernelOverflowError(amax);

    return (std::cosh(a1 * phi) + std::cosh(a2 * phi)) /
           (2.0 * mu * std::sinh(phi) * std::sinh(nd * phi));
}

double kernel_entry_spectral(std::size_t j, std::size_t k, std::size_t n, double mu) {
    check_indices(j, k, n);
    if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
    const double nd = static_cast<double>(n);
    if (std::isinf(mu)) return 1.0 / nd;
    if (mu == 0.0) return j == k ? 1.0 : 0.0;
    if (n == 1) return 1.0;

    const double dj = static_cast<double>(j), dk = static_cast<double>(k);
    double s = 1.0;
    for (std::size_t l = 1; l < n; ++l) {
        const double ld = static_cast<double>(l);
        const double sn = std::sin(ld * M_PI / (2.0 * nd));
        // 1-based j+k-1 becomes j+k+1 with 0-based indices
        s += (std::cos(ld * (dj - dk) * M_PI / nd) +
              std::cos(ld * (dj + dk + 1.0) * M_PI / nd)) /
             (1.0 + 4.0 * mu * sn * sn);
    }
    return s / nd;
}

KernelWeights build_kernel(std::size_t n, double mu, std::size_t k_band) {
    if (n == 0) throw std::invalid_argument("kernel size must be positive");
    if (k_band >= n) throw std::invalid_argument("band width must be at most n-1");
    KernelWeights kw;
    kw.n = n;
    kw.mu = mu;
    kw.band_width = k_band;
    kw.phi = kernel_phi(mu);
    kw.w.assign((k_band + 1) * n, 0.0);
    for (std::size_t d = 0; d <= k_band; ++d)
        for (std::size_t j = 0; j + d < n; ++j)
            kw.w[d * n + j] = kernel_entry_spectral(j, j + d, n, mu);
    return kw;
}

TridiagSolver::TridiagSolver(std::size_t n, double mu) : n_(n), mu_(mu) {
    if (n == 0) throw std::invalid_argument("system size must be positive");
    if (mu < 0.0 || std::isinf(mu)) throw std::invalid_argument("mu must be finite and nonnegative");
    cp_.resize(n);
    inv_denom_.resize(n);
    auto diag = [&](std::size_t i) {
        return (i == 0 || i + 1 == n_) ? 1.0 + mu_ : 1.0 + 2.0 * mu_;
    };
    if (n == 1) {
        inv_denom_[0] = 1.0;  // I + mu * (0)
        cp_[0] = 0.0;
        return;
    }
    double denom = diag(0);
    inv_denom_[0] = 1.0 / denom;
    cp_[0] = -mu_ / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag(i) + mu_ * cp_[i - 1];  // sub/super diagonals are -mu
        inv_denom_[i] = 1.0 / denom;
        cp_[i] = -mu_ / denom;
    }
}

void TridiagSolver::solve(std::span<const double> b, std::span<double> x) const {
    x[0] = b[0] * inv_denom_[0];
    for (std::size_t i = 1; i < n_; ++i)
        x[i] = (b[i] + mu_ * x[i - 1]) * inv_denom_[i];
    for (std::size_t i = n_ - 1; i-- > 0;)
        x[i] -= cp_[i] * x[i + 1];
}

Matrix solve_shifted_quadratic(const Matrix& d, const ShiftVector& lambda, double mu) {
    if (std::isinf(mu)) throw std::invalid_argument("mu = infinity is handled by mean_projection");
    Matrix rhs = shift_columns(d, lambda.negated());
    if (mu == 0.0) return rhs;

    const std::size_t m = d.rows(), n = d.cols();
    TridiagSolver solver(n, mu);
    Matrix u(m, n);
    u.set_frame_shape(d.frame_rows(), d.frame_cols());
    std::vector<double> row(n), sol(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) row[k] = rhs(j, k);
        solver.solve(row, sol);
        for (std::size_t k = 0; k < n; ++k) u(j, k) = sol[k];
    }
    return u;
}

}  // namespace orka
