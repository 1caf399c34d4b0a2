#include "transmeter/nn/network.hpp"

#include <string>

#include "transmeter/errors.hpp"

namespace transmeter::nn {

Network::Network(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) {
        throw InvalidArgument("Network: needs at least one layer");
    }
    for (std::size_t i = 1; i < layers_.size(); ++i) {
        if (layers_[i].in_dim() != layers_[i - 1].out_dim()) {
            throw ShapeError("Network: layer " + std::to_string(i) + " input width " +
                             std::to_string(layers_[i].in_dim()) + " vs previous output " +
                             std::to_string(layers_[i - 1].out_dim()));
        }
    }
}

Matrix Network::forward(const Matrix& x, Mode mode) {
    if (mode == Mode::Train) {
        cache_.assign(layers_.size(), LayerCache{});
        Matrix cur = x;
        for (std::size_t i = 0; i < layers_.size(); ++i) {
            cur = dense_forward(layers_[i], cur, mode, &cache_[i]);
        }
        has_cache_ = true;
        return cur;
    }
    Matrix cur = x;
    for (auto& layer : layers_) {
        cur = dense_forward(layer, cur, mode, nullptr);
    }
    return cur;
}

std::pair<GradientSet, Matrix> Network::backward(const Matrix& dout) {
    if (!has_cache_) {
        throw StateError("Network::backward called without a train-mode forward pass");
    }
    GradientSet grads(layers_.size());
    Matrix upstream = dout;
    for (std::size_t i = layers_.size(); i-- > 0;) {
        Matrix dinput;
        grads[i] = dense_backward(layers_[i], cache_[i], upstream, dinput);
        upstream = std::move(dinput);
    }
    return {std::move(grads), std::move(upstream)};
}

void Network::visit_parameters(const std::function<void(std::span<double>, ParamRef)>& fn) {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        DenseLayer& l = layers_[i];
        fn(l.weight.flat(), {i, ParamKind::Weight});
        fn({l.bias.data(), l.bias.size()}, {i, ParamKind::Bias});
        if (l.has_batchnorm) {
            fn({l.bn_gamma.data(), l.bn_gamma.size()}, {i, ParamKind::Gamma});
            fn({l.bn_beta.data(), l.bn_beta.size()}, {i, ParamKind::Beta});
        }
    }
}

void Network::visit_parameters(
    const std::function<void(std::span<const double>, ParamRef)>& fn) const {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const DenseLayer& l = layers_[i];
        fn(l.weight.flat(), {i, ParamKind::Weight});
        fn({l.bias.data(), l.bias.size()}, {i, ParamKind::Bias});
        if (l.has_batchnorm) {
            fn({l.bn_gamma.data(), l.bn_gamma.size()}, {i, ParamKind::Gamma});
            fn({l.bn_beta.data(), l.bn_beta.size()}, {i, ParamKind::Beta});
        }
    }
}

bool same_parameters(const Network& a, const Network& b) {
    if (a.layers().size() != b.layers().size()) return false;
    bool equal = true;
    for (std::size_t i = 0; i < a.layers().size(); ++i) {
        const DenseLayer& la = a.layers()[i];
        const DenseLayer& lb = b.layers()[i];
        if (!(la.weight == lb.weight) || la.bias != lb.bias || la.bn_gamma != lb.bn_gamma ||
            la.bn_beta != lb.bn_beta) {
            equal = false;
        }
    }
    return equal;
}

GradientSet zero_gradients(const Network& net) {
    GradientSet grads(net.layers().size());
    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        const DenseLayer& l = net.layers()[i];
        grads[i].weight = Matrix(l.out_dim(), l.in_dim());
        grads[i].bias.assign(l.out_dim(), 0.0);
        if (l.has_batchnorm) {
            grads[i].gamma.assign(l.out_dim(), 0.0);
            grads[i].beta.assign(l.out_dim(), 0.0);
        }
    }
    return grads;
}

void check_gradient_shapes(const Network& net, const GradientSet& grads) {
    if (grads.size() != net.layers().size()) {
        throw ShapeError("gradient set has " + std::to_string(grads.size()) + " layers, network " +
                         std::to_string(net.layers().size()));
    }
    for (std::size_t i = 0; i < grads.size(); ++i) {
        const DenseLayer& l = net.layers()[i];
        const LayerGradients& g = grads[i];
        if (g.weight.rows() != l.out_dim() || g.weight.cols() != l.in_dim() ||
            g.bias.size() != l.out_dim()) {
            throw ShapeError("gradient shapes for layer " + std::to_string(i) +
                             " do not mirror the parameters");
        }
        if (l.has_batchnorm &&
            (g.gamma.size() != l.out_dim() || g.beta.size() != l.out_dim())) {
            throw ShapeError("batch-norm gradient shapes for layer " + std::to_string(i) +
                             " do not mirror the parameters");
        }
    }
}

}  // namespace transmeter::nn
