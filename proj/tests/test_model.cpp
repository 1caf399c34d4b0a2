#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "transmeter/data/batching.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/model/checkpoint.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/model/transmeter_model.hpp"
#include "transmeter/nn/losses.hpp"

using namespace transmeter;
using nn::Matrix;
using nn::Mode;

namespace {

void zero_all_parameters(nn::Network& net) {
    net.visit_parameters([](std::span<double> values, nn::ParamRef) {
        for (double& v : values) v = 0.0;
    });
}

nn::DenseLayer identity_layer(std::size_t d) {
    nn::DenseLayer layer;
    layer.weight = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) layer.weight(i, i) = 1.0;
    layer.bias.assign(d, 0.0);
    layer.activation = nn::Activation::Linear;
    return layer;
}

Dataset random_dataset(std::size_t n, std::size_t d, Rng& rng, const std::string& name) {
    Dataset ds;
    ds.name = name;
    ds.features = Matrix(n, d);
    for (double& v : ds.features.flat()) v = rng.normal(0.0, 1.0);
    ds.labels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) ds.labels[i] = rng.uniform() < 0.5 ? 0 : 1;
    return ds;
}

bool networks_bit_equal(const nn::Network& a, const nn::Network& b) {
    if (a.layers().size() != b.layers().size()) return false;
    for (std::size_t i = 0; i < a.layers().size(); ++i) {
        const auto& la = a.layers()[i];
        const auto& lb = b.layers()[i];
        if (!(la.weight == lb.weight) || la.bias != lb.bias) return false;
        if (la.has_batchnorm != lb.has_batchnorm) return false;
        if (la.activation != lb.activation) return false;
        if (la.bn_gamma != lb.bn_gamma || la.bn_beta != lb.bn_beta) return false;
        if (la.bn_running_mean != lb.bn_running_mean) return false;
        if (la.bn_running_var != lb.bn_running_var) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("build_source_model wires the expected layer widths") {
    Rng rng(1);
    const SourceModel model = build_source_model(14, {64, 32, 16, 8}, rng);
    const auto& layers = model.net.layers();
    REQUIRE(layers.size() == 5);
    CHECK(layers[0].in_dim() == 14);
    CHECK(layers[0].out_dim() == 64);
    CHECK(layers[3].out_dim() == 8);
    CHECK(layers[4].out_dim() == 1);
    CHECK(layers[4].activation == nn::Activation::Sigmoid);
    CHECK_FALSE(layers[4].has_batchnorm);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(layers[i].has_batchnorm);
        CHECK(layers[i].activation == nn::Activation::Relu);
        for (double b : layers[i].bias) CHECK(b == 0.0);
    }
}

TEST_CASE("build_source_model is deterministic per seed and rejects empty widths") {
    Rng a(3), b(3);
    const SourceModel ma = build_source_model(5, {8, 4}, a);
    const SourceModel mb = build_source_model(5, {8, 4}, b);
    CHECK(networks_bit_equal(ma.net, mb.net));
    Rng c(3);
    CHECK_THROWS_AS(build_source_model(5, {}, c), InvalidArgument);
}

TEST_CASE("build_transmeter mirrors the encoder into the decoder") {
    Rng rng(5);
    const TransmeterModel model = build_transmeter(14, 8, {64, 32, 32}, nullptr,
                                                   {64, 32, 16, 8}, 0.1, 0.1, rng);
    const auto& enc = model.encoder.layers();
    REQUIRE(enc.size() == 4);
    CHECK(enc[0].in_dim() == 8);
    CHECK(enc[0].out_dim() == 64);
    CHECK(enc[2].out_dim() == 32);
    CHECK(enc[3].out_dim() == 14);
    CHECK(enc[3].activation == nn::Activation::Linear);
    CHECK_FALSE(enc[3].has_batchnorm);

    const auto& dec = model.decoder.layers();
    REQUIRE(dec.size() == 4);
    CHECK(dec[0].in_dim() == 14);
    CHECK(dec[0].out_dim() == 32);
    CHECK(dec[1].out_dim() == 32);
    CHECK(dec[2].out_dim() == 64);
    CHECK(dec[3].out_dim() == 8);
    CHECK(dec[3].activation == nn::Activation::Linear);

    const auto& dc = model.domain_classifier.layers();
    REQUIRE(dc.size() == 1);
    CHECK(dc[0].in_dim() == 14);
    CHECK(dc[0].out_dim() == 1);
    CHECK(dc[0].activation == nn::Activation::Sigmoid);
}

TEST_CASE("build_transmeter copies source parameters by value") {
    Rng rng(7);
    const SourceModel source = build_source_model(6, {8, 4}, rng);
    Rng rng2(9);
    TransmeterModel model = build_transmeter(6, 4, {8}, &source, {8, 4}, 0.1, 0.1, rng2);
    CHECK(networks_bit_equal(model.label_predictor, source.net));

    // mutating the copy must not touch the original
    model.label_predictor.layers()[0].weight(0, 0) += 1.0;
    Rng rng3(9);
    const TransmeterModel fresh = build_transmeter(6, 4, {8}, &source, {8, 4}, 0.1, 0.1, rng3);
    CHECK(networks_bit_equal(fresh.label_predictor, source.net));
}

TEST_CASE("build_transmeter without a source He-initializes the label predictor") {
    Rng rng(11);
    const SourceModel source = build_source_model(6, {8, 4}, rng);
    Rng rng2(13);
    const TransmeterModel model = build_transmeter(6, 4, {8}, nullptr, {8, 4}, 0.1, 0.1, rng2);
    CHECK_FALSE(networks_bit_equal(model.label_predictor, source.net));
    CHECK(model.label_predictor.input_dim() == 6);
    CHECK(model.label_predictor.output_dim() == 1);
}

TEST_CASE("build_transmeter rejects a source model with the wrong input width") {
    Rng rng(15);
    const SourceModel source = build_source_model(6, {8}, rng);
    Rng rng2(15);
    CHECK_THROWS_AS(build_transmeter(7, 4, {8}, &source, {8}, 0.1, 0.1, rng2), ShapeError);
}

TEST_CASE("homogeneous is the bit-exact identity on source rows") {
    Rng rng(17);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    Rng data_rng(19);
    const Dataset source = random_dataset(7, 5, data_rng, "s");
    const Batch batch = make_source_batch(source);
    const Matrix ho = homogeneous(model, batch, Mode::Eval);
    CHECK(ho == source.features);
}

TEST_CASE("homogeneous through a zeroed encoder gives zero rows") {
    Rng rng(21);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    zero_all_parameters(model.encoder);
    Rng data_rng(23);
    const Dataset target = random_dataset(4, 3, data_rng, "t");
    const Batch batch = make_target_batch(target);
    const Matrix ho_eval = homogeneous(model, batch, Mode::Eval);
    for (double v : ho_eval.flat()) CHECK(v == 0.0);
    const Matrix ho_train = homogeneous(model, batch, Mode::Train);
    for (double v : ho_train.flat()) CHECK(v == 0.0);
}

TEST_CASE("homogeneous mixed batch matches a standalone encoder forward") {
    Rng rng(25);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    Rng data_rng(27);
    const Dataset source = random_dataset(4, 5, data_rng, "s");
    const Dataset target = random_dataset(3, 3, data_rng, "t");
    const Batch batch = make_mixed_batch(source, target);

    nn::Network encoder_copy = model.encoder;
    const Matrix expected = encoder_copy.forward(target.features, Mode::Eval);
    const Matrix ho = homogeneous(model, batch, Mode::Eval);
    REQUIRE(ho.rows() == 7);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 5; ++c) CHECK(ho(r, c) == source.features(r, c));
    }
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 5; ++c) CHECK(ho(4 + r, c) == expected(r, c));
    }
}

TEST_CASE("homogeneous rejects width mismatches") {
    Rng rng(29);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    Rng data_rng(31);
    const Dataset bad = random_dataset(4, 4, data_rng, "bad");
    CHECK_THROWS_AS(homogeneous(model, make_target_batch(bad), Mode::Eval), ShapeError);
    CHECK_THROWS_AS(homogeneous(model, make_source_batch(bad), Mode::Eval), ShapeError);
}

TEST_CASE("predict_label with zero parameters outputs one half") {
    Rng rng(33);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    zero_all_parameters(model.label_predictor);
    Rng data_rng(35);
    const Dataset source = random_dataset(4, 5, data_rng, "s");
    const auto probs = predict_label(model, make_source_batch(source), Mode::Eval);
    for (double p : probs) CHECK(p == doctest::Approx(0.5));
}

TEST_CASE("predict paths stay in [0, 1] and are per-row in eval mode") {
    Rng rng(37);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    Rng data_rng(39);
    const Dataset target = random_dataset(6, 3, data_rng, "t");
    const Batch batch = make_target_batch(target);
    const auto labels = predict_label(model, batch, Mode::Eval);
    const auto domains = predict_domain(model, batch, Mode::Eval);
    for (double p : labels) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    for (double p : domains) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }

    // row 2 alone gives the same answer as row 2 inside the batch
    std::vector<std::size_t> idx{2};
    const Batch single = make_target_batch(subset(target, idx));
    CHECK(predict_label(model, single, Mode::Eval)[0] == labels[2]);
}

TEST_CASE("a directly fitted domain classifier separates constructed reps") {
    Rng rng(41);
    TransmeterModel model = build_transmeter(2, 2, {4}, nullptr, {4}, 0.1, 0.1, rng);
    model.encoder = nn::Network({identity_layer(2)});
    // source rows at (+3, 0), target rows at (-3, 0); weight (-10, 0) splits them
    auto& dc = model.domain_classifier.layers()[0];
    dc.weight(0, 0) = -10.0;
    dc.weight(0, 1) = 0.0;
    dc.bias[0] = 0.0;

    Dataset source, target;
    source.name = "s";
    source.features = Matrix::from_rows({{3, 0}, {3, 0.5}, {3, -0.5}});
    source.labels = {0, 1, 0};
    target.name = "t";
    target.features = Matrix::from_rows({{-3, 0}, {-3, 0.4}, {-3, -0.4}});
    target.labels = {1, 0, 1};

    const Batch batch = make_mixed_batch(source, target);
    const auto probs = predict_domain(model, batch, Mode::Eval);
    CHECK(nn::bce_loss(probs, batch.domain_labels) < 0.01);
}

TEST_CASE("reconstruct through a zeroed decoder yields zeros of width d_t") {
    Rng rng(43);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    zero_all_parameters(model.decoder);
    Rng data_rng(45);
    const Dataset target = random_dataset(4, 3, data_rng, "t");
    const Matrix xhat = reconstruct(model, make_target_batch(target), Mode::Eval);
    CHECK(xhat.rows() == 4);
    CHECK(xhat.cols() == 3);
    for (double v : xhat.flat()) CHECK(v == 0.0);
}

TEST_CASE("reconstruct rejects batches containing source rows") {
    Rng rng(47);
    TransmeterModel model = build_transmeter(5, 3, {6}, nullptr, {6, 4}, 0.1, 0.1, rng);
    Rng data_rng(49);
    const Dataset source = random_dataset(2, 5, data_rng, "s");
    const Dataset target = random_dataset(2, 3, data_rng, "t");
    CHECK_THROWS_AS(reconstruct(model, make_mixed_batch(source, target), Mode::Eval),
                    InvalidArgument);
}

TEST_CASE("identity encoder-decoder pair reconstructs exactly") {
    Rng rng(51);
    TransmeterModel model = build_transmeter(3, 3, {4}, nullptr, {4}, 0.1, 0.1, rng);
    model.encoder = nn::Network({identity_layer(3)});
    model.decoder = nn::Network({identity_layer(3)});
    Rng data_rng(53);
    const Dataset target = random_dataset(5, 3, data_rng, "t");
    const Batch batch = make_target_batch(target);
    const Matrix xhat = reconstruct(model, batch, Mode::Eval);
    CHECK(xhat == target.features);
    CHECK(nn::mse_recon_loss(xhat, target.features) == 0.0);
}

TEST_CASE("source checkpoints round-trip bit-exactly") {
    Rng rng(55);
    SourceModel model = build_source_model(4, {6, 3}, rng);
    // dirty the running stats so the round trip covers them
    Rng data_rng(57);
    Matrix x(8, 4);
    for (double& v : x.flat()) v = data_rng.normal(0.0, 1.0);
    model.net.forward(x, Mode::Train);

    const auto path = std::filesystem::temp_directory_path() / "tm_source.ckpt";
    SourceCheckpointMeta meta;
    meta.dataset = "unit";
    meta.seed = 9;
    meta.split_fraction = 0.7;
    meta.test_accuracy = 0.875;
    save_source_checkpoint(path, model, meta);

    SourceCheckpointMeta loaded_meta;
    const SourceModel loaded = load_source_checkpoint(path, &loaded_meta);
    CHECK(networks_bit_equal(loaded.net, model.net));
    CHECK(loaded.input_dim == 4);
    CHECK(loaded.hidden_widths == std::vector<std::size_t>{6, 3});
    CHECK(loaded_meta.dataset == "unit");
    CHECK(loaded_meta.seed == 9);
    CHECK(loaded_meta.split_fraction == 0.7);
    CHECK(loaded_meta.test_accuracy == 0.875);
}

TEST_CASE("transmeter checkpoints round-trip bit-exactly") {
    Rng rng(59);
    TransmeterModel model = build_transmeter(5, 3, {6, 4}, nullptr, {6, 4}, 0.3, 0.5, rng);
    Rng data_rng(61);
    Matrix x(6, 3);
    for (double& v : x.flat()) v = data_rng.normal(0.0, 1.0);
    model.encoder.forward(x, Mode::Train);

    const auto path = std::filesystem::temp_directory_path() / "tm_transmeter.ckpt";
    TransmeterCheckpointMeta meta;
    meta.source_dataset = "src";
    meta.target_dataset = "tgt";
    meta.flip = true;
    meta.seed = 4;
    save_transmeter_checkpoint(path, model, meta);

    TransmeterCheckpointMeta loaded_meta;
    const TransmeterModel loaded = load_transmeter_checkpoint(path, &loaded_meta);
    CHECK(networks_bit_equal(loaded.encoder, model.encoder));
    CHECK(networks_bit_equal(loaded.decoder, model.decoder));
    CHECK(networks_bit_equal(loaded.label_predictor, model.label_predictor));
    CHECK(networks_bit_equal(loaded.domain_classifier, model.domain_classifier));
    CHECK(loaded.d_s == 5);
    CHECK(loaded.d_t == 3);
    CHECK(loaded.alpha == 0.3);
    CHECK(loaded.beta == 0.5);
    CHECK(loaded_meta.flip);
    CHECK(loaded_meta.seed == 4);
}

TEST_CASE("checkpoint loader rejects the wrong kind") {
    Rng rng(63);
    const SourceModel model = build_source_model(3, {4}, rng);
    const auto path = std::filesystem::temp_directory_path() / "tm_kind.ckpt";
    save_source_checkpoint(path, model, {});
    CHECK_THROWS_AS(load_transmeter_checkpoint(path), LoadError);
}
