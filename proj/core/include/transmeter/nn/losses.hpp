#pragma once

#include <span>
#include <vector>

#include "transmeter/nn/matrix.hpp"

namespace transmeter::nn {

// Probabilities are clamped to [kProbClamp, 1 - kProbClamp] inside the
// cross-entropy so the logs stay defined at 0 and 1.
inline constexpr double kProbClamp = 1e-7;

// Mean over the batch of -y*log(p) - (1-y)*log(1-p). y entries must be 0/1.
double bce_loss(std::span<const double> y_hat, std::span<const int> y);

// dL/dp for bce_loss. Zero where p sits outside the clamp interval, since the
// clamped loss is flat there.
std::vector<double> bce_gradient(std::span<const double> y_hat, std::span<const int> y);

// Mean over rows of the squared Euclidean distance between x_hat and x
// (per-row sum over features, then batch mean).
double mse_recon_loss(const Matrix& x_hat, const Matrix& x);

// dL/dx_hat for mse_recon_loss: 2 (x_hat - x) / rows.
Matrix mse_recon_gradient(const Matrix& x_hat, const Matrix& x);

}  // namespace transmeter::nn
