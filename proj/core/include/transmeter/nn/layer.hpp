#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "transmeter/nn/matrix.hpp"
#include "transmeter/rng.hpp"

namespace transmeter::nn {

enum class Activation { Relu, Sigmoid, Linear };
enum class Mode { Train, Eval };

// One fully connected layer: affine -> (batch norm) -> activation.
struct DenseLayer {
    Matrix weight;             // out x in
    std::vector<double> bias;  // out

    bool has_batchnorm = false;
    Activation activation = Activation::Linear;

    std::vector<double> bn_gamma;
    std::vector<double> bn_beta;
    std::vector<double> bn_running_mean;
    std::vector<double> bn_running_var;
    double bn_momentum = 0.1;
    double bn_epsilon = 1e-5;

    std::size_t in_dim() const { return weight.cols(); }
    std::size_t out_dim() const { return weight.rows(); }
};

// Weights drawn i.i.d. from N(0, 2/fan_in). Throws InvalidArgument on fan_in == 0.
Matrix he_init(std::size_t fan_in, std::size_t rows, std::size_t cols, Rng& rng);

// He-initialized weights, zero bias; batch-norm scale 1 / shift 0, running stats (0, 1).
DenseLayer make_dense_layer(std::size_t in, std::size_t out, Activation activation,
                            bool batchnorm, Rng& rng);

// Forward intermediates captured in train mode; required by dense_backward.
struct BatchNormCache {
    std::vector<double> mean;
    std::vector<double> var;  // population variance of the batch (divisor n)
    Matrix normalized;        // (z - mean) / sqrt(var + eps)
};

struct LayerCache {
    Matrix input;
    std::optional<BatchNormCache> bn;
    Matrix preact;  // after affine and batch norm, before activation
    Matrix output;
};

// Batch norm on pre-activations z. Train mode normalizes with batch statistics
// and updates the running stats; eval mode uses the running stats. A train-mode
// batch of fewer than two rows throws InvalidBatch.
Matrix batchnorm_forward(DenseLayer& layer, const Matrix& z, Mode mode,
                         BatchNormCache* cache = nullptr);

// Affine, then batch norm if enabled, then activation. Caches intermediates
// when `cache` is given (train-mode backward needs them).
Matrix dense_forward(DenseLayer& layer, const Matrix& x, Mode mode,
                     LayerCache* cache = nullptr);

// Gradients of one layer's parameters. gamma/beta stay empty without batch norm.
struct LayerGradients {
    Matrix weight;
    std::vector<double> bias;
    std::vector<double> gamma;
    std::vector<double> beta;
};

// Reverse-mode step through one layer: takes dL/d(output), fills dL/d(input),
// returns parameter gradients. Includes the batch-statistics chain rule.
LayerGradients dense_backward(const DenseLayer& layer, const LayerCache& cache,
                              const Matrix& dout, Matrix& dinput);

// Identity forward; backward multiplies the upstream gradient by -lambda.
// Placed between the homogeneous representation and the domain classifier to
// realize the adversarial min-max in one backward pass.
struct GradientReversal {
    double lambda = 1.0;

    Matrix forward(const Matrix& x) const { return x; }
    Matrix backward(const Matrix& upstream) const { return scaled(upstream, -lambda); }
};

}  // namespace transmeter::nn
