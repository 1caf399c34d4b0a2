#include "transmeter/model/transmeter_model.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "transmeter/errors.hpp"

namespace transmeter {

namespace {

nn::Network build_encoder(std::size_t d_t, std::size_t d_s,
                          const std::vector<std::size_t>& widths, Rng& rng) {
    std::vector<nn::DenseLayer> layers;
    std::size_t in = d_t;
    for (std::size_t w : widths) {
        layers.push_back(nn::make_dense_layer(in, w, nn::Activation::Relu, true, rng));
        in = w;
    }
    layers.push_back(nn::make_dense_layer(in, d_s, nn::Activation::Linear, false, rng));
    return nn::Network(std::move(layers));
}

nn::Network build_decoder(std::size_t d_s, std::size_t d_t,
                          const std::vector<std::size_t>& encoder_widths, Rng& rng) {
    std::vector<std::size_t> widths(encoder_widths.rbegin(), encoder_widths.rend());
    std::vector<nn::DenseLayer> layers;
    std::size_t in = d_s;
    for (std::size_t w : widths) {
        layers.push_back(nn::make_dense_layer(in, w, nn::Activation::Relu, true, rng));
        in = w;
    }
    layers.push_back(nn::make_dense_layer(in, d_t, nn::Activation::Linear, false, rng));
    return nn::Network(std::move(layers));
}

}  // namespace

TransmeterModel build_transmeter(std::size_t d_s, std::size_t d_t,
                                 const std::vector<std::size_t>& encoder_widths,
                                 const SourceModel* source,
                                 const std::vector<std::size_t>& lp_widths,
                                 double alpha, double beta, Rng& rng) {
    if (encoder_widths.empty()) {
        throw InvalidArgument("build_transmeter: encoder widths must be non-empty");
    }
    if (alpha < 0.0 || beta < 0.0) {
        throw InvalidArgument("build_transmeter: alpha and beta must be nonnegative");
    }
    if (source && source->input_dim != d_s) {
        throw ShapeError("build_transmeter: source model expects input " +
                         std::to_string(source->input_dim) + ", d_s is " + std::to_string(d_s));
    }

    TransmeterModel model;
    model.d_s = d_s;
    model.d_t = d_t;
    model.alpha = alpha;
    model.beta = beta;
    model.encoder = build_encoder(d_t, d_s, encoder_widths, rng);
    model.decoder = build_decoder(d_s, d_t, encoder_widths, rng);
    if (source) {
        model.label_predictor = source->net;  // deep copy; training never touches the original
    } else {
        model.label_predictor = build_dense_classifier(d_s, lp_widths, rng);
    }
    model.domain_classifier = nn::Network(
        {nn::make_dense_layer(d_s, 1, nn::Activation::Sigmoid, false, rng)});
    return model;
}

nn::Matrix homogeneous(TransmeterModel& model, const Batch& batch, nn::Mode mode) {
    if (batch.rows() == 0) {
        throw InvalidArgument("homogeneous: empty batch");
    }
    if (batch.source_rows() > 0 && batch.source_features.cols() != model.d_s) {
        throw ShapeError("homogeneous: source rows have width " +
                         std::to_string(batch.source_features.cols()) + ", expected d_s = " +
                         std::to_string(model.d_s));
    }
    if (batch.target_rows() > 0 && batch.target_features.cols() != model.d_t) {
        throw ShapeError("homogeneous: target rows have width " +
                         std::to_string(batch.target_features.cols()) + ", expected d_t = " +
                         std::to_string(model.d_t));
    }

    if (batch.target_rows() == 0) {
        return batch.source_features;  // identity branch, bit-exact
    }
    nn::Matrix encoded = model.encoder.forward(batch.target_features, mode);
    if (batch.source_rows() == 0) {
        return encoded;
    }
    return nn::vstack(batch.source_features, encoded);
}

std::vector<double> probabilities_from(const nn::Matrix& column) {
    std::vector<double> out(column.rows());
    for (std::size_t i = 0; i < column.rows(); ++i) out[i] = column(i, 0);
    return out;
}

std::vector<double> predict_label(TransmeterModel& model, const Batch& batch, nn::Mode mode) {
    const nn::Matrix ho = homogeneous(model, batch, mode);
    return probabilities_from(model.label_predictor.forward(ho, mode));
}

std::vector<double> predict_domain(TransmeterModel& model, const Batch& batch, nn::Mode mode) {
    const nn::Matrix ho = homogeneous(model, batch, mode);
    return probabilities_from(model.domain_classifier.forward(ho, mode));
}

nn::Matrix reconstruct(TransmeterModel& model, const Batch& batch, nn::Mode mode) {
    if (batch.source_rows() > 0) {
        throw InvalidArgument("reconstruct: batch must contain target rows only");
    }
    if (batch.target_rows() == 0) {
        throw InvalidArgument("reconstruct: empty batch");
    }
    const nn::Matrix ho = homogeneous(model, batch, mode);
    return model.decoder.forward(ho, mode);
}

}  // namespace transmeter
