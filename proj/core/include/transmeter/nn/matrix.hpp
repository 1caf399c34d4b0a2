#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace transmeter::nn {

// Dense row-major matrix of doubles. All engine math runs in 64-bit floats.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> flat() { return {data_.data(), data_.size()}; }
    std::span<const double> flat() const { return {data_.data(), data_.size()}; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    // Rows [begin, end) as a new matrix.
    Matrix slice_rows(std::size_t begin, std::size_t end) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// c = a * b, shapes (m x k)(k x n).
Matrix matmul(const Matrix& a, const Matrix& b);
// c = a * b^T, shapes (m x k)(n x k) -> (m x n). The forward x * W^T kernel.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// c = a^T * b, shapes (m x k)(m x n) -> (k x n). The dW = dz^T * x kernel.
Matrix matmul_tn(const Matrix& a, const Matrix& b);

void add_row_vector(Matrix& m, std::span<const double> v);
std::vector<double> column_sums(const Matrix& m);
Matrix scaled(const Matrix& m, double factor);
void add_scaled_in_place(Matrix& dst, const Matrix& src, double factor);
Matrix vstack(const Matrix& top, const Matrix& bottom);

// Throws NumericError if any entry is NaN or Inf. `what` names the producer.
void ensure_finite(const Matrix& m, const char* what);
void ensure_finite(std::span<const double> v, const char* what);

}  // namespace transmeter::nn
