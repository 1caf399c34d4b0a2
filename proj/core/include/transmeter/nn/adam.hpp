#pragma once

#include <cstdint>

#include "transmeter/nn/network.hpp"

namespace transmeter::nn {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Bias-corrected Adam. Moment accumulators mirror the network's parameter
// shapes exactly; one state per parameter block.
class AdamState {
public:
    AdamState(const Network& net, AdamConfig config);

    // In-place update of `net` from `grads`; increments the step count.
    void step(Network& net, const GradientSet& grads);

    std::int64_t step_count() const { return step_count_; }
    const AdamConfig& config() const { return config_; }
    const GradientSet& first_moment() const { return first_moment_; }
    const GradientSet& second_moment() const { return second_moment_; }

private:
    AdamConfig config_;
    std::int64_t step_count_ = 0;
    GradientSet first_moment_;
    GradientSet second_moment_;
};

// Standard update: p -= lr * m_hat / (sqrt(v_hat) + eps).
void adam_step(Network& net, const GradientSet& grads, AdamState& state);

}  // namespace transmeter::nn
