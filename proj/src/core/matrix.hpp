#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orka {

// Dense M x N matrix of doubles, column-major. Columns are measurements.
// For video data a column holds one flattened frame of shape frame_rows x
// frame_cols, pixel (x, y) stored at index x + frame_rows * y.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), frame_rows_(rows), frame_cols_(1),
          v_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t k) { return v_[k * rows_ + i]; }
    double operator()(std::size_t i, std::size_t k) const { return v_[k * rows_ + i]; }

    std::span<double> column(std::size_t k) { return {v_.data() + k * rows_, rows_}; }
    std::span<const double> column(std::size_t k) const { return {v_.data() + k * rows_, rows_}; }

    double* data() noexcept { return v_.data(); }
    const double* data() const noexcept { return v_.data(); }
    std::size_t size() const noexcept { return v_.size(); }

    // Frame shape of one column; (rows, 1) unless set_frame_shape was called.
    std::size_t frame_rows() const noexcept { return frame_rows_; }
    std::size_t frame_cols() const noexcept { return frame_cols_; }
    void set_frame_shape(std::size_t fr, std::size_t fc);

    double frob_norm_sq() const;
    double frob_norm() const;
    double column_norm(std::size_t k) const;
    double max_abs() const;

    // Scales every column to unit 2-norm (zero columns are left alone) and
    // sets the normalized_columns flag required by the approximation bounds.
    void normalize_columns();
    bool normalized_columns() const noexcept { return normalized_; }

    bool same_shape(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ &&
               frame_rows_ == o.frame_rows_ && frame_cols_ == o.frame_cols_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::size_t frame_rows_ = 0, frame_cols_ = 1;
    std::vector<double> v_;
    bool normalized_ = false;
};

// Per-measurement integer shifts, one or two spatial components.
struct ShiftVector {
    int dims = 1;
    int lipschitz = 0;    // C; 0 means "not recorded"
    std::vector<long> x;  // length N
    std::vector<long> y;  // length N when dims == 2, else empty

    std::size_t size() const noexcept { return x.size(); }

    static ShiftVector zeros(std::size_t n, int dims = 1);

    ShiftVector negated() const;
    bool lipschitz_ok(long c) const;
    bool anchored() const { return x.empty() || (x[0] == 0 && (dims == 1 || y[0] == 0)); }
};

// Cyclic column shift: column k of the result is column k of a rotated
// downward by lambda_k positions (per frame axis in the 2D case).
Matrix shift_columns(const Matrix& a, const ShiftVector& lambda);

// Single-column cyclic shift, dst = S_s(src). 1D convention: dst[i] = src[(i - s) mod m].
void shift_into(std::span<const double> src, std::span<double> dst, long s);
void shift_into_2d(std::span<const double> src, std::span<double> dst,
                   std::size_t fr, std::size_t fc, long sx, long sy);

// <a, S_s(b)> without materializing the shifted column.
double shifted_dot(std::span<const double> a, std::span<const double> b, long s);
double shifted_dot_2d(std::span<const double> a, std::span<const double> b,
                      std::size_t fr, std::size_t fc, long sx, long sy);

double dot(std::span<const double> a, std::span<const double> b);

// Sum of squared column-to-column differences.
double total_change(const Matrix& u);

// Every column of the result equals the mean column of S_{-lambda}(d).
// This is the exact solve for mu = infinity.
Matrix mean_projection(const Matrix& d, const ShiftVector& lambda);

}  // namespace orka
