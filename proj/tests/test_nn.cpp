#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/finite_diff.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/nn/adam.hpp"
#include "transmeter/nn/layer.hpp"
#include "transmeter/nn/losses.hpp"
#include "transmeter/nn/network.hpp"

using namespace transmeter;
using nn::Activation;
using nn::Matrix;
using nn::Mode;

namespace {

nn::DenseLayer fixed_layer(Matrix weight, std::vector<double> bias, Activation act,
                           bool bn = false) {
    nn::DenseLayer layer;
    layer.weight = std::move(weight);
    layer.bias = std::move(bias);
    layer.activation = act;
    layer.has_batchnorm = bn;
    if (bn) {
        const std::size_t d = layer.weight.rows();
        layer.bn_gamma.assign(d, 1.0);
        layer.bn_beta.assign(d, 0.0);
        layer.bn_running_mean.assign(d, 0.0);
        layer.bn_running_var.assign(d, 1.0);
    }
    return layer;
}

nn::Network random_network(std::size_t input, const std::vector<std::size_t>& widths,
                           const std::vector<Activation>& acts, const std::vector<bool>& bns,
                           Rng& rng) {
    std::vector<nn::DenseLayer> layers;
    std::size_t in = input;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        layers.push_back(nn::make_dense_layer(in, widths[i], acts[i], bns[i], rng));
        in = widths[i];
    }
    return nn::Network(std::move(layers));
}

}  // namespace

TEST_CASE("he_init samples have the right spread") {
    Rng rng(42);
    const Matrix m = nn::he_init(100, 100, 100, rng);
    double mean = 0.0;
    for (double v : m.flat()) mean += v;
    mean /= static_cast<double>(m.size());
    double var = 0.0;
    for (double v : m.flat()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(m.size());
    const double stddev = std::sqrt(var);
    // true value sqrt(2/100) = 0.141421; 3-sigma band for 10000 samples
    CHECK(stddev > 0.13);
    CHECK(stddev < 0.153);
    CHECK(std::fabs(mean) < 0.01);
}

TEST_CASE("he_init is deterministic per seed") {
    Rng a(7), b(7);
    const Matrix ma = nn::he_init(2, 1, 1, a);
    const Matrix mb = nn::he_init(2, 1, 1, b);
    CHECK(ma(0, 0) == mb(0, 0));
}

TEST_CASE("he_init rejects zero fan-in") {
    Rng rng(1);
    CHECK_THROWS_AS(nn::he_init(0, 1, 1, rng), InvalidArgument);
}

TEST_CASE("dense_forward identity") {
    auto layer = fixed_layer(Matrix::from_rows({{1, 0}, {0, 1}}), {0, 0}, Activation::Linear);
    const Matrix x = Matrix::from_rows({{1, -3}});
    const Matrix y = nn::dense_forward(layer, x, Mode::Eval);
    CHECK(y(0, 0) == 1.0);
    CHECK(y(0, 1) == -3.0);
}

TEST_CASE("dense_forward hand matrix arithmetic") {
    auto layer = fixed_layer(Matrix::from_rows({{1, 2}, {3, 4}}), {0, 0}, Activation::Linear);
    const Matrix y = nn::dense_forward(layer, Matrix::from_rows({{1, 1}}), Mode::Eval);
    CHECK(y(0, 0) == doctest::Approx(3.0));
    CHECK(y(0, 1) == doctest::Approx(7.0));
}

TEST_CASE("dense_forward relu clips negatives") {
    auto layer = fixed_layer(Matrix::from_rows({{1, 0}, {0, 1}}), {0, 0}, Activation::Relu);
    const Matrix y = nn::dense_forward(layer, Matrix::from_rows({{-1, 2}}), Mode::Eval);
    CHECK(y(0, 0) == 0.0);
    CHECK(y(0, 1) == 2.0);
}

TEST_CASE("dense_forward rejects width mismatch") {
    auto layer = fixed_layer(Matrix::from_rows({{1, 2}}), {0}, Activation::Linear);
    CHECK_THROWS_AS(nn::dense_forward(layer, Matrix::from_rows({{1, 2, 3}}), Mode::Eval),
                    ShapeError);
}

TEST_CASE("dense_forward eval is a per-row function") {
    Rng rng(11);
    auto layer = nn::make_dense_layer(3, 4, Activation::Relu, true, rng);
    Matrix batch(5, 3);
    for (double& v : batch.flat()) v = rng.normal(0.0, 1.0);
    const Matrix full = nn::dense_forward(layer, batch, Mode::Eval);
    for (std::size_t r = 0; r < batch.rows(); ++r) {
        const Matrix single = nn::dense_forward(layer, batch.slice_rows(r, r + 1), Mode::Eval);
        for (std::size_t c = 0; c < full.cols(); ++c) {
            CHECK(full(r, c) == single(0, c));
        }
    }
}

TEST_CASE("batchnorm constant column collapses to beta") {
    auto layer = fixed_layer(Matrix::from_rows({{1}}), {0}, Activation::Linear, true);
    layer.bn_beta[0] = 0.5;
    const Matrix z = Matrix::from_rows({{3}, {3}, {3}});
    const Matrix y = nn::batchnorm_forward(layer, z, Mode::Train);
    for (std::size_t r = 0; r < 3; ++r) CHECK(y(r, 0) == doctest::Approx(0.5));
}

TEST_CASE("batchnorm hand computation, variance one") {
    auto layer = fixed_layer(Matrix::from_rows({{1}}), {0}, Activation::Linear, true);
    const Matrix z = Matrix::from_rows({{0}, {2}});
    const Matrix y = nn::batchnorm_forward(layer, z, Mode::Train);
    // mean 1, population variance 1: (0-1)/sqrt(1+1e-5)
    CHECK(y(0, 0) == doctest::Approx(-0.999995).epsilon(1e-6));
    CHECK(y(1, 0) == doctest::Approx(0.999995).epsilon(1e-6));
}

TEST_CASE("batchnorm eval with identity running stats is near pass-through") {
    auto layer = fixed_layer(Matrix::from_rows({{1}}), {0}, Activation::Linear, true);
    const Matrix z = Matrix::from_rows({{0.25}, {-1.5}});
    const Matrix y = nn::batchnorm_forward(layer, z, Mode::Eval);
    CHECK(y(0, 0) == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(y(1, 0) == doctest::Approx(-1.5).epsilon(1e-4));
}

TEST_CASE("batchnorm updates running stats with momentum") {
    auto layer = fixed_layer(Matrix::from_rows({{1}}), {0}, Activation::Linear, true);
    nn::batchnorm_forward(layer, Matrix::from_rows({{0}, {2}}), Mode::Train);
    CHECK(layer.bn_running_mean[0] == doctest::Approx(0.1));       // 0.9*0 + 0.1*1
    CHECK(layer.bn_running_var[0] == doctest::Approx(0.9 + 0.1));  // 0.9*1 + 0.1*1
}

TEST_CASE("batchnorm rejects train-mode batch of one") {
    auto layer = fixed_layer(Matrix::from_rows({{1}}), {0}, Activation::Linear, true);
    CHECK_THROWS_AS(nn::batchnorm_forward(layer, Matrix::from_rows({{1}}), Mode::Train),
                    InvalidBatch);
}

TEST_CASE("bce_loss midpoint") {
    const std::vector<double> p{0.5};
    const std::vector<int> y{1};
    CHECK(nn::bce_loss(p, y) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("bce_loss clamp boundary") {
    const std::vector<double> p{1.0};
    const std::vector<int> y{1};
    const double loss = nn::bce_loss(p, y);
    CHECK(loss == doctest::Approx(-std::log(1.0 - 1e-7)).epsilon(1e-12));
    CHECK(loss <= 1.1e-7);
    CHECK(loss >= 0.0);
}

TEST_CASE("bce_loss hand value") {
    const std::vector<double> p{0.8, 0.2};
    const std::vector<int> y{1, 0};
    // both rows contribute -log(0.8)
    CHECK(nn::bce_loss(p, y) == doctest::Approx(-std::log(0.8)).epsilon(1e-12));
    CHECK(nn::bce_loss(p, y) == doctest::Approx(0.2231435).epsilon(1e-6));
}

TEST_CASE("bce_loss rejects length mismatch") {
    const std::vector<double> p{0.5, 0.5};
    const std::vector<int> y{1};
    CHECK_THROWS_AS(nn::bce_loss(p, y), ShapeError);
}

TEST_CASE("bce_loss is nonnegative for random inputs") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(8);
        std::vector<int> y(8);
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = rng.uniform();
            y[i] = rng.uniform() < 0.5 ? 0 : 1;
        }
        CHECK(nn::bce_loss(p, y) >= 0.0);
    }
}

TEST_CASE("mse_recon_loss basics") {
    const Matrix x = Matrix::from_rows({{1, 2}});
    CHECK(nn::mse_recon_loss(x, x) == 0.0);

    const Matrix a = Matrix::from_rows({{3, 4}});
    const Matrix b = Matrix::from_rows({{0, 0}});
    CHECK(nn::mse_recon_loss(a, b) == doctest::Approx(25.0));

    const Matrix c = Matrix::from_rows({{1, 0}, {0, 2}});
    const Matrix d = Matrix::from_rows({{0, 0}, {0, 0}});
    CHECK(nn::mse_recon_loss(c, d) == doctest::Approx(2.5));

    CHECK_THROWS_AS(nn::mse_recon_loss(a, c), ShapeError);
}

TEST_CASE("mse_recon_loss zero only at equality") {
    Rng rng(5);
    Matrix x(3, 4);
    for (double& v : x.flat()) v = rng.normal(0.0, 1.0);
    Matrix y = x;
    y(1, 2) += 1e-9;
    CHECK(nn::mse_recon_loss(y, x) > 0.0);
}

TEST_CASE("gradient reversal forward is bit-identical") {
    const nn::GradientReversal grl{0.3};
    Matrix x(2, 3);
    Rng rng(9);
    for (double& v : x.flat()) v = rng.normal(0.0, 1.0);
    const Matrix y = grl.forward(x);
    CHECK(y == x);
}

TEST_CASE("gradient reversal scales and negates the backward pass") {
    const nn::GradientReversal grl{0.3};
    const Matrix g = Matrix::from_rows({{1.0, -2.0}});
    const Matrix out = grl.backward(g);
    CHECK(out(0, 0) == doctest::Approx(-0.3));
    CHECK(out(0, 1) == doctest::Approx(0.6));

    const nn::GradientReversal zero{0.0};
    const Matrix z = zero.backward(g);
    CHECK(z(0, 0) == 0.0);
    CHECK(z(0, 1) == 0.0);
}

TEST_CASE("gradient reversal lambda ratio property") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = 0.01 + 3.0 * rng.uniform();
        const double b = 0.01 + 3.0 * rng.uniform();
        Matrix g(2, 2);
        for (double& v : g.flat()) v = rng.normal(0.0, 1.0);
        const Matrix ga = nn::GradientReversal{a}.backward(g);
        const Matrix gb = nn::GradientReversal{b}.backward(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(ga.flat()[i] == doctest::Approx((a / b) * gb.flat()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("backward reproduces the scalar chain rule") {
    // y = w x, L = (y - t)^2 with x = 1, w = 2, t = 0: dL/dw = 2 * 2 * 1 = 4
    nn::Network net({fixed_layer(Matrix::from_rows({{2}}), {0}, Activation::Linear)});
    const Matrix y = net.forward(Matrix::from_rows({{1}}), Mode::Train);
    CHECK(y(0, 0) == 2.0);
    const Matrix upstream = Matrix::from_rows({{2.0 * (y(0, 0) - 0.0)}});
    auto [grads, dx] = net.backward(upstream);
    CHECK(grads[0].weight(0, 0) == doctest::Approx(4.0));
    CHECK(dx(0, 0) == doctest::Approx(8.0));  // dL/dx = dL/dy * w
}

TEST_CASE("backward with zero upstream yields zero gradients") {
    Rng rng(23);
    nn::Network net = random_network(3, {4, 1}, {Activation::Relu, Activation::Sigmoid},
                                     {true, false}, rng);
    Matrix x(4, 3);
    for (double& v : x.flat()) v = rng.normal(0.0, 1.0);
    net.forward(x, Mode::Train);
    auto [grads, dx] = net.backward(Matrix(4, 1, 0.0));
    for (const auto& layer : grads) {
        for (double v : layer.weight.flat()) CHECK(v == 0.0);
        for (double v : layer.bias) CHECK(v == 0.0);
        for (double v : layer.gamma) CHECK(v == 0.0);
        for (double v : layer.beta) CHECK(v == 0.0);
    }
}

TEST_CASE("backward without forward is a state error") {
    Rng rng(29);
    nn::Network net = random_network(2, {1}, {Activation::Sigmoid}, {false}, rng);
    CHECK_THROWS_AS(net.backward(Matrix(1, 1, 1.0)), StateError);
}

TEST_CASE("three-layer network passes a finite-difference check") {
    Rng rng(31);
    nn::Network net = random_network(
        3, {5, 4, 1}, {Activation::Relu, Activation::Relu, Activation::Sigmoid},
        {true, true, false}, rng);
    Matrix x(6, 3);
    for (double& v : x.flat()) v = rng.normal(0.0, 1.0);
    std::vector<int> labels(6);
    for (int& y : labels) y = rng.uniform() < 0.5 ? 0 : 1;

    auto loss = [&]() {
        const Matrix out = net.forward(x, Mode::Train);
        std::vector<double> probs(out.rows());
        for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
        return nn::bce_loss(probs, labels);
    };

    const double base = loss();
    (void)base;
    const Matrix out = net.forward(x, Mode::Train);
    std::vector<double> probs(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
    const std::vector<double> dprob = nn::bce_gradient(probs, labels);
    Matrix dout(out.rows(), 1);
    for (std::size_t i = 0; i < dprob.size(); ++i) dout(i, 0) = dprob[i];
    auto [grads, dx] = net.backward(dout);

    const auto stats = test::finite_diff_check(net, grads, loss);
    CHECK(stats.checked > 0);
    CHECK(stats.max_rel_error < 1e-4);
}

TEST_CASE("adam first step matches the closed form") {
    nn::Network net({fixed_layer(Matrix::from_rows({{0}}), {0}, Activation::Linear)});
    nn::AdamState state(net, {});
    nn::GradientSet grads = nn::zero_gradients(net);
    grads[0].weight(0, 0) = 1.0;
    grads[0].bias[0] = 0.0;
    nn::adam_step(net, grads, state);
    const double expected = -1e-3 / (1.0 + 1e-8);  // -lr * mhat / (sqrt(vhat) + eps) at t = 1
    CHECK(net.layers()[0].weight(0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::fabs(net.layers()[0].weight(0, 0) - (-9.99999995e-4)) < 1e-11);
    CHECK(state.step_count() == 1);
}

TEST_CASE("adam with zero gradients never moves parameters") {
    Rng rng(37);
    nn::Network net = random_network(2, {3, 1}, {Activation::Relu, Activation::Sigmoid},
                                     {true, false}, rng);
    nn::Network before = net;
    nn::AdamState state(net, {});
    const nn::GradientSet zeros = nn::zero_gradients(net);
    for (int i = 0; i < 5; ++i) nn::adam_step(net, zeros, state);
    CHECK(nn::same_parameters(net, before));
    CHECK(state.step_count() == 5);
}

TEST_CASE("adam is a pure function of inputs and state") {
    Rng rng(41);
    nn::Network net_a = random_network(2, {3, 1}, {Activation::Relu, Activation::Sigmoid},
                                       {false, false}, rng);
    nn::Network net_b = net_a;
    nn::AdamState state_a(net_a, {});
    nn::AdamState state_b = state_a;

    nn::GradientSet grads = nn::zero_gradients(net_a);
    Rng grad_rng(43);
    for (auto& layer : grads) {
        for (double& v : layer.weight.flat()) v = grad_rng.normal(0.0, 1.0);
        for (double& v : layer.bias) v = grad_rng.normal(0.0, 1.0);
    }
    nn::adam_step(net_a, grads, state_a);
    nn::adam_step(net_b, grads, state_b);
    CHECK(nn::same_parameters(net_a, net_b));
}

TEST_CASE("adam rejects mismatched gradient shapes") {
    Rng rng(47);
    nn::Network net = random_network(2, {3, 1}, {Activation::Relu, Activation::Sigmoid},
                                     {false, false}, rng);
    nn::Network other = random_network(2, {4, 1}, {Activation::Relu, Activation::Sigmoid},
                                       {false, false}, rng);
    nn::AdamState state(net, {});
    CHECK_THROWS_AS(nn::adam_step(net, nn::zero_gradients(other), state), ShapeError);
}

TEST_CASE("random small networks pass finite-difference checks") {
    Rng rng(53);
    const Activation acts[] = {Activation::Relu, Activation::Sigmoid, Activation::Linear};
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t depth = 1 + rng.uniform_index(3);
        const std::size_t input = 2 + rng.uniform_index(3);
        std::vector<std::size_t> widths;
        std::vector<Activation> activations;
        std::vector<bool> bns;
        for (std::size_t l = 0; l + 1 < depth; ++l) {
            widths.push_back(2 + rng.uniform_index(6));
            activations.push_back(acts[rng.uniform_index(3)]);
            bns.push_back(rng.uniform() < 0.5);
        }
        widths.push_back(1);
        activations.push_back(Activation::Sigmoid);
        bns.push_back(false);

        nn::Network net = random_network(input, widths, activations, bns, rng);
        Matrix x(4, input);
        for (double& v : x.flat()) v = rng.normal(0.0, 1.0);
        std::vector<int> labels(4);
        for (int& y : labels) y = rng.uniform() < 0.5 ? 0 : 1;

        auto loss = [&]() {
            const Matrix out = net.forward(x, Mode::Train);
            std::vector<double> probs(out.rows());
            for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
            return nn::bce_loss(probs, labels);
        };
        const Matrix out = net.forward(x, Mode::Train);
        std::vector<double> probs(out.rows());
        for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
        const std::vector<double> dprob = nn::bce_gradient(probs, labels);
        Matrix dout(out.rows(), 1);
        for (std::size_t i = 0; i < dprob.size(); ++i) dout(i, 0) = dprob[i];
        auto [grads, dx] = net.backward(dout);

        const auto stats = test::finite_diff_check(net, grads, loss);
        CHECK(stats.max_rel_error < 1e-4);
    }
}
