#pragma once

#include <cstddef>
#include <vector>

#include "transmeter/data/batching.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/nn/network.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

// The four trainable blocks. The encoder maps target rows into the source
// feature space (the homogeneous representation); the decoder maps them back;
// the label predictor classifies homogeneous rows; the single-layer domain
// classifier discriminates source from target rows.
struct TransmeterModel {
    nn::Network encoder;           // d_t -> ... -> d_s, final layer linear, no bn
    nn::Network decoder;           // d_s -> reversed hidden -> d_t, final linear
    nn::Network label_predictor;   // d_s -> ... -> 1, sigmoid
    nn::Network domain_classifier; // d_s -> 1, single sigmoid layer

    std::size_t d_s = 0;
    std::size_t d_t = 0;
    double alpha = 0.0;  // domain-loss weight (also the reversal coefficient)
    double beta = 0.0;   // reconstruction-loss weight
};

// Encoder hidden layers use bn+ReLU; its final d_s layer is linear without bn
// so encoded rows can match z-normalized source statistics of either sign.
// The decoder mirrors the encoder widths. The label predictor deep-copies the
// source model when given, otherwise it is He-initialized with `lp_widths`.
TransmeterModel build_transmeter(std::size_t d_s, std::size_t d_t,
                                 const std::vector<std::size_t>& encoder_widths,
                                 const SourceModel* source,
                                 const std::vector<std::size_t>& lp_widths,
                                 double alpha, double beta, Rng& rng);

// Homogeneous representation of a batch: source rows pass through unchanged,
// target rows pass through the encoder. Output width is d_s for every row.
nn::Matrix homogeneous(TransmeterModel& model, const Batch& batch, nn::Mode mode);

// Sigmoid label probabilities, one per batch row.
std::vector<double> predict_label(TransmeterModel& model, const Batch& batch, nn::Mode mode);

// Sigmoid source/target probabilities, one per batch row.
std::vector<double> predict_domain(TransmeterModel& model, const Batch& batch, nn::Mode mode);

// Decoder output for a target-only batch; a batch with source rows is an error
// because reconstruction is defined on target instances only.
nn::Matrix reconstruct(TransmeterModel& model, const Batch& batch, nn::Mode mode);

std::vector<double> probabilities_from(const nn::Matrix& column);

}  // namespace transmeter
