#include "matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace orka {

namespace {

inline std::size_t wrap(long i, std::size_t m) {
    long r = i % static_cast<long>(m);
    if (r < 0) r += static_cast<long>(m);
    return static_cast<std::size_t>(r);
}

}  // namespace

void Matrix::set_frame_shape(std::size_t fr, std::size_t fc) {
    if (fr * fc != rows_)
        throw std::invalid_argument("frame shape does not match column length");
    frame_rows_ = fr;
    frame_cols_ = fc;
}

double Matrix::frob_norm_sq() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return s;
}

double Matrix::frob_norm() const { return std::sqrt(frob_norm_sq()); }

double Matrix::column_norm(std::size_t k) const {
    double s = 0.0;
    for (double x : column(k)) s += x * x;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

void Matrix::normalize_columns() {
    for (std::size_t k = 0; k < cols_; ++k) {
        double nrm = column_norm(k);
        if (nrm > 0.0)
            for (double& x : column(k)) x /= nrm;
    }
    normalized_ = true;
}

ShiftVector ShiftVector::zeros(std::size_t n, int dims) {
    ShiftVector s;
    s.dims = dims;
    s.x.assign(n, 0);
    if (dims == 2) s.y.assign(n, 0);
    return s;
}

ShiftVector ShiftVector::negated() const {
    ShiftVector s = *this;
    for (long& v : s.x) v = -v;
    for (long& v : s.y) v = -v;
    return s;
}

bool ShiftVector::lipschitz_ok(long c) const {
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
        if (std::labs(x[k] - x[k + 1]) > c) return false;
    for (std::size_t k = 0; k + 1 < y.size(); ++k)
        if (std::labs(y[k] - y[k + 1]) > c) return false;
    return true;
}

void shift_into(std::span<const double> src, std::span<double> dst, long s) {
    const std::size_t m = src.size();
    const std::size_t off = wrap(s, m);
    // dst[i] = src[(i - s) mod m]
    for (std::size_t i = 0; i < m - off; ++i) dst[i + off] = src[i];
    for (std::size_t i = m - off; i < m; ++i) dst[i + off - m] = src[i];
}

void shift_into_2d(std::span<const double> src, std::span<double> dst,
                   std::size_t fr, std::size_t fc, long sx, long sy) {
    const std::size_t ox = wrap(sx, fr), oy = wrap(sy, fc);
    for (std::size_t y = 0; y < fc; ++y) {
        const std::size_t yd = y + oy < fc ? y + oy : y + oy - fc;
        const double* in = src.data() + y * fr;
        double* out = dst.data() + yd * fr;
        for (std::size_t x = 0; x < fr - ox; ++x) out[x + ox] = in[x];
        for (std::size_t x = fr - ox; x < fr; ++x) out[x + ox - fr] = in[x];
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double shifted_dot(std::span<const double> a, std::span<const double> b, long s) {
    const std::size_t m = a.size();
    const std::size_t off = wrap(s, m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m - off; ++i) acc += a[i + off] * b[i];
    for (std::size_t i = m - off; i < m; ++i) acc += a[i + off - m] * b[i];
    return acc;
}

double shifted_dot_2d(std::span<const double> a, std::span<const double> b,
                      std::size_t fr, std::size_t fc, long sx, long sy) {
    const std::size_t ox = wrap(sx, fr), oy = wrap(sy, fc);
    double acc = 0.0;
    for (std::size_t y = 0; y < fc; ++y) {
        const std::size_t ya = y + oy < fc ? y + oy : y + oy - fc;
        const double* pa = a.data() + ya * fr;
        const double* pb = b.data() + y * fr;
        for (std::size_t x = 0; x < fr - ox; ++x) acc += pa[x + ox] * pb[x];
        for (std::size_t x = fr - ox; x < fr; ++x) acc += pa[x + ox - fr] * pb[x];
    }
    return acc;
}

Matrix shift_columns(const Matrix& a, const ShiftVector& lambda) {
    if (lambda.size() != a.cols())
        throw std::invalid_argument("shift vector length does not match column count");
    if (lambda.dims == 2 && a.frame_cols() == 1 && a.frame_rows() == a.rows() && a.rows() > 1)
        throw std::invalid_argument("2D shift on a matrix without frame shape");
    Matrix out(a.rows(), a.cols());
    out.set_frame_shape(a.frame_rows(), a.frame_cols());
    for (std::size_t k = 0; k < a.cols(); ++k) {
        if (lambda.dims == 2)
            shift_into_2d(a.column(k), out.column(k), a.frame_rows(), a.frame_cols(),
                          lambda.x[k], lambda.y[k]);
        else
            shift_into(a.column(k), out.column(k), lambda.x[k]);
    }
    return out;
}

double total_change(const Matrix& u) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < u.cols(); ++k) {
        auto a = u.column(k), b = u.column(k + 1);
        for (std::size_t i = 0; i < u.rows(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
    }
    return s;
}

Matrix mean_projection(const Matrix& d, const ShiftVector& lambda) {
    Matrix aligned = shift_columns(d, lambda.negated());
    std::vector<double> mean(d.rows(), 0.0);
    for (std::size_t k = 0; k < d.cols(); ++k) {
        auto col = aligned.column(k);
        for (std::size_t i = 0; i < d.rows(); ++i) mean[i] += col[i];
    }
    for (double& v : mean) v /= static_cast<double>(d.cols());
    Matrix out(d.rows(), d.cols());
    out.set_frame_shape(d.frame_rows(), d.frame_cols());
    for (std::size_t k = 0; k < d.cols(); ++k) {
        auto col = out.column(k);
        for (std::size_t i = 0; i < d.rows(); ++i) col[i] = mean[i];
    }
    return out;
}

}  // namespace orka
