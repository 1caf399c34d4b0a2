#include "transmeter/nn/adam.hpp"

#include <cmath>
#include <span>

#include "transmeter/errors.hpp"

namespace transmeter::nn {

AdamState::AdamState(const Network& net, AdamConfig config)
    : config_(config), first_moment_(zero_gradients(net)), second_moment_(zero_gradients(net)) {
    if (config_.lr <= 0.0) {
        throw InvalidArgument("AdamState: learning rate must be positive");
    }
}

namespace {

void update_span(std::span<double> params, std::span<const double> grads,
                 std::span<double> m, std::span<double> v, const AdamConfig& c,
                 double corr1, double corr2) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
        v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
        const double m_hat = m[i] / corr1;
        const double v_hat = v[i] / corr2;
        params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
}

}  // namespace

void AdamState::step(Network& net, const GradientSet& grads) {
    check_gradient_shapes(net, grads);
    ++step_count_;
    const double corr1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
    const double corr2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));

    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        DenseLayer& l = net.layers()[i];
        const LayerGradients& g = grads[i];
        LayerGradients& m = first_moment_[i];
        LayerGradients& v = second_moment_[i];
        update_span(l.weight.flat(), g.weight.flat(), m.weight.flat(), v.weight.flat(),
                    config_, corr1, corr2);
        update_span(l.bias, g.bias, m.bias, v.bias, config_, corr1, corr2);
        if (l.has_batchnorm) {
            update_span(l.bn_gamma, g.gamma, m.gamma, v.gamma, config_, corr1, corr2);
            update_span(l.bn_beta, g.beta, m.beta, v.beta, config_, corr1, corr2);
        }
        ensure_finite(l.weight, "adam_step");
    }
}

void adam_step(Network& net, const GradientSet& grads, AdamState& state) {
    state.step(net, grads);
}

}  // namespace transmeter::nn
