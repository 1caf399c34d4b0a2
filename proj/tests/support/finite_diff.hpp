#pragma once

// Central finite-difference oracle for gradient checks. Perturbs every
// trainable parameter of a network and recomputes the scalar loss through the
// forward path only, so it stays independent of the backward implementation
// it verifies.

#include <cmath>
#include <functional>

#include "transmeter/nn/network.hpp"

namespace transmeter::test {

struct GradCheckStats {
    double max_rel_error = 0.0;
    std::size_t checked = 0;
};

// |ga - gf| / max(1, |ga|, |gf|): relative for large gradients, absolute near
// zero where finite differences lose precision.
inline double rel_error(double analytic, double numeric) {
    const double scale = std::max({1.0, std::fabs(analytic), std::fabs(numeric)});
    return std::fabs(analytic - numeric) / scale;
}

// `loss` must recompute the scalar objective from scratch (train-mode forward)
// every time it is called. `analytic` holds dL/dparam in the same layout as
// Network::visit_parameters traverses.
inline GradCheckStats finite_diff_check(nn::Network& net, const nn::GradientSet& analytic,
                                        const std::function<double()>& loss, double h = 1e-5) {
    GradCheckStats stats;
    net.visit_parameters([&](std::span<double> values, nn::ParamRef ref) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double original = values[i];
            values[i] = original + h;
            const double up = loss();
            values[i] = original - h;
            const double down = loss();
            values[i] = original;
            const double numeric = (up - down) / (2.0 * h);

            double ga = 0.0;
            const nn::LayerGradients& lg = analytic[ref.layer];
            switch (ref.kind) {
                case nn::ParamKind::Weight: ga = lg.weight.flat()[i]; break;
                case nn::ParamKind::Bias: ga = lg.bias[i]; break;
                case nn::ParamKind::Gamma: ga = lg.gamma[i]; break;
                case nn::ParamKind::Beta: ga = lg.beta[i]; break;
            }
            stats.max_rel_error = std::max(stats.max_rel_error, rel_error(ga, numeric));
            ++stats.checked;
        }
    });
    return stats;
}

}  // namespace transmeter::test
