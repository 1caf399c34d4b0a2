#pragma once

#include <functional>
#include <span>
#include <vector>

#include "transmeter/nn/layer.hpp"

namespace transmeter::nn {

using GradientSet = std::vector<LayerGradients>;

enum class ParamKind { Weight, Bias, Gamma, Beta };

struct ParamRef {
    std::size_t layer;
    ParamKind kind;
};

// Fixed stack of dense layers. Forward in train mode records the caches that
// backward consumes; backward without a cached forward is a state error.
class Network {
public:
    Network() = default;
    explicit Network(std::vector<DenseLayer> layers);

    Matrix forward(const Matrix& x, Mode mode);

    // Gradients of every parameter given dL/d(output), plus dL/d(input).
    std::pair<GradientSet, Matrix> backward(const Matrix& dout);

    const std::vector<DenseLayer>& layers() const { return layers_; }
    std::vector<DenseLayer>& layers() { return layers_; }

    std::size_t input_dim() const { return layers_.front().in_dim(); }
    std::size_t output_dim() const { return layers_.back().out_dim(); }
    bool has_cache() const { return has_cache_; }

    void visit_parameters(const std::function<void(std::span<double>, ParamRef)>& fn);
    void visit_parameters(const std::function<void(std::span<const double>, ParamRef)>& fn) const;

private:
    std::vector<DenseLayer> layers_;
    std::vector<LayerCache> cache_;
    bool has_cache_ = false;
};

// Convenience equality over all trainable parameters (not running stats).
bool same_parameters(const Network& a, const Network& b);

// Zero gradients shaped like the network's parameters.
GradientSet zero_gradients(const Network& net);

void check_gradient_shapes(const Network& net, const GradientSet& grads);

}  // namespace transmeter::nn
