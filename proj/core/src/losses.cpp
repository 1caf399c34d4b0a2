#include "transmeter/nn/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "transmeter/errors.hpp"

namespace transmeter::nn {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw ShapeError(std::string(op) + ": lengths " + std::to_string(a) + " and " +
                         std::to_string(b) + " differ");
    }
}

}  // namespace

double bce_loss(std::span<const double> y_hat, std::span<const int> y) {
    check_lengths(y_hat.size(), y.size(), "bce_loss");
    if (y_hat.empty()) {
        throw InvalidArgument("bce_loss: empty batch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < y_hat.size(); ++i) {
        const double p = std::clamp(y_hat[i], kProbClamp, 1.0 - kProbClamp);
        total += y[i] ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(y_hat.size());
}

std::vector<double> bce_gradient(std::span<const double> y_hat, std::span<const int> y) {
    check_lengths(y_hat.size(), y.size(), "bce_gradient");
    const double n = static_cast<double>(y_hat.size());
    std::vector<double> grad(y_hat.size(), 0.0);
    for (std::size_t i = 0; i < y_hat.size(); ++i) {
        const double p = y_hat[i];
        if (p < kProbClamp || p > 1.0 - kProbClamp) {
            continue;  // flat region of the clamped loss
        }
        grad[i] = (p - static_cast<double>(y[i])) / (p * (1.0 - p)) / n;
    }
    return grad;
}

double mse_recon_loss(const Matrix& x_hat, const Matrix& x) {
    if (!x_hat.same_shape(x)) {
        throw ShapeError("mse_recon_loss: shapes differ");
    }
    if (x.rows() == 0) {
        throw InvalidArgument("mse_recon_loss: empty batch");
    }
    double total = 0.0;
    const double* a = x_hat.data();
    const double* b = x.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total / static_cast<double>(x.rows());
}

Matrix mse_recon_gradient(const Matrix& x_hat, const Matrix& x) {
    if (!x_hat.same_shape(x)) {
        throw ShapeError("mse_recon_gradient: shapes differ");
    }
    Matrix grad(x.rows(), x.cols());
    const double scale = 2.0 / static_cast<double>(x.rows());
    for (std::size_t i = 0; i < x.size(); ++i) {
        grad.data()[i] = scale * (x_hat.data()[i] - x.data()[i]);
    }
    return grad;
}

}  // namespace transmeter::nn
