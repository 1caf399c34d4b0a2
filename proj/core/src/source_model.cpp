#include "transmeter/model/source_model.hpp"

#include "transmeter/errors.hpp"

namespace transmeter {

nn::Network build_dense_classifier(std::size_t input_dim,
                                   const std::vector<std::size_t>& hidden_widths, Rng& rng) {
    if (hidden_widths.empty()) {
        throw InvalidArgument("build_dense_classifier: hidden widths must be non-empty");
    }
    std::vector<nn::DenseLayer> layers;
    std::size_t in = input_dim;
    for (std::size_t w : hidden_widths) {
        layers.push_back(nn::make_dense_layer(in, w, nn::Activation::Relu, /*batchnorm=*/true, rng));
        in = w;
    }
    layers.push_back(nn::make_dense_layer(in, 1, nn::Activation::Sigmoid, /*batchnorm=*/false, rng));
    return nn::Network(std::move(layers));
}

SourceModel build_source_model(std::size_t d_s, const std::vector<std::size_t>& hidden_widths,
                               Rng& rng) {
    SourceModel model;
    model.net = build_dense_classifier(d_s, hidden_widths, rng);
    model.input_dim = d_s;
    model.hidden_widths = hidden_widths;
    return model;
}

}  // namespace transmeter
