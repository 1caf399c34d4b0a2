#include "transmeter/nn/matrix.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "transmeter/errors.hpp"

namespace transmeter::nn {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols()) {
            throw ShapeError("from_rows: ragged initializer");
        }
        std::size_t c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

Matrix Matrix::slice_rows(std::size_t begin, std::size_t end) const {
    if (begin > end || end > rows_) {
        throw ShapeError("slice_rows: range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") out of " + std::to_string(rows_) + " rows");
    }
    Matrix out(end - begin, cols_);
    std::memcpy(out.data(), data_.data() + begin * cols_, (end - begin) * cols_ * sizeof(double));
    return out;
}

namespace {

void check_inner(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw ShapeError(std::string(op) + ": inner dimensions " + std::to_string(a) +
                         " and " + std::to_string(b) + " do not match");
    }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.rows(), "matmul");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.data() + i * c.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const double* bk = b.data() + k * b.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) {
                ci[j] += aik * bk[j];
            }
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.cols(), "matmul_nt");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.data() + i * a.cols();
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.data() + j * b.cols();
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += ai[k] * bj[k];
            }
            c(i, j) = acc;
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_inner(a.rows(), b.rows(), "matmul_tn");
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.data() + k * a.cols();
        const double* bk = b.data() + k * b.cols();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            double* ci = c.data() + i * c.cols();
            const double aki = ak[i];
            for (std::size_t j = 0; j < b.cols(); ++j) {
                ci[j] += aki * bk[j];
            }
        }
    }
    return c;
}

void add_row_vector(Matrix& m, std::span<const double> v) {
    if (v.size() != m.cols()) {
        throw ShapeError("add_row_vector: vector length " + std::to_string(v.size()) +
                         " vs " + std::to_string(m.cols()) + " columns");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double* row = m.data() + i * m.cols();
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] += v[j];
    }
}

std::vector<double> column_sums(const Matrix& m) {
    std::vector<double> sums(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.data() + i * m.cols();
        for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += row[j];
    }
    return sums;
}

Matrix scaled(const Matrix& m, double factor) {
    Matrix out = m;
    for (double& v : out.flat()) v *= factor;
    return out;
}

void add_scaled_in_place(Matrix& dst, const Matrix& src, double factor) {
    if (!dst.same_shape(src)) {
        throw ShapeError("add_scaled_in_place: shape mismatch");
    }
    const double* s = src.data();
    double* d = dst.data();
    for (std::size_t i = 0; i < dst.size(); ++i) d[i] += factor * s[i];
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.empty() && top.rows() == 0) {
        if (bottom.rows() == 0) return Matrix(0, top.cols() ? top.cols() : bottom.cols());
    }
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) {
        throw ShapeError("vstack: column counts differ");
    }
    Matrix out(top.rows() + bottom.rows(), top.cols());
    std::memcpy(out.data(), top.data(), top.size() * sizeof(double));
    std::memcpy(out.data() + top.size(), bottom.data(), bottom.size() * sizeof(double));
    return out;
}

void ensure_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NumericError(std::string(what) + " produced a non-finite value");
        }
    }
}

void ensure_finite(const Matrix& m, const char* what) {
    ensure_finite(m.flat(), what);
}

}  // namespace transmeter::nn
