#pragma once

#include <cstddef>
#include <vector>

#include "transmeter/nn/network.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

// Pre-trained classifier for a source dataset: a dense stack with batch norm
// and ReLU on hidden layers and a sigmoid scalar output.
struct SourceModel {
    nn::Network net;
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden_widths;
};

// He-initialized stack d_s -> hidden_widths -> 1. Depth of 4 or 5 hidden
// layers matches the experimental protocol; other depths are accepted.
SourceModel build_source_model(std::size_t d_s, const std::vector<std::size_t>& hidden_widths,
                               Rng& rng);

// Same architecture as a source model, used for target-only baselines.
nn::Network build_dense_classifier(std::size_t input_dim,
                                   const std::vector<std::size_t>& hidden_widths, Rng& rng);

}  // namespace transmeter
