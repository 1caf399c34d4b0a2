#include "transmeter/nn/layer.hpp"

#include <cmath>
#include <string>

#include "transmeter/errors.hpp"

namespace transmeter::nn {

Matrix he_init(std::size_t fan_in, std::size_t rows, std::size_t cols, Rng& rng) {
    if (fan_in == 0) {
        throw InvalidArgument("he_init: fan_in must be at least 1");
    }
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
    Matrix m(rows, cols);
    for (double& v : m.flat()) v = rng.normal(0.0, stddev);
    return m;
}

DenseLayer make_dense_layer(std::size_t in, std::size_t out, Activation activation,
                            bool batchnorm, Rng& rng) {
    DenseLayer layer;
    layer.weight = he_init(in, out, in, rng);
    layer.bias.assign(out, 0.0);
    layer.activation = activation;
    layer.has_batchnorm = batchnorm;
    if (batchnorm) {
        layer.bn_gamma.assign(out, 1.0);
        layer.bn_beta.assign(out, 0.0);
        layer.bn_running_mean.assign(out, 0.0);
        layer.bn_running_var.assign(out, 1.0);
    }
    return layer;
}

Matrix batchnorm_forward(DenseLayer& layer, const Matrix& z, Mode mode,
                         BatchNormCache* cache) {
    const std::size_t n = z.rows();
    const std::size_t d = z.cols();
    if (d != layer.out_dim()) {
        throw ShapeError("batchnorm_forward: width " + std::to_string(d) + " vs layer out " +
                         std::to_string(layer.out_dim()));
    }

    Matrix out(n, d);
    if (mode == Mode::Train) {
        if (n < 2) {
            throw InvalidBatch("batchnorm_forward: train-mode batch must have at least 2 rows");
        }
        std::vector<double> mean(d, 0.0), var(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) mean[j] += z(i, j);
        }
        for (double& m : mean) m /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double c = z(i, j) - mean[j];
                var[j] += c * c;
            }
        }
        for (double& v : var) v /= static_cast<double>(n);

        Matrix normalized(n, d);
        for (std::size_t j = 0; j < d; ++j) {
            const double inv = 1.0 / std::sqrt(var[j] + layer.bn_epsilon);
            for (std::size_t i = 0; i < n; ++i) {
                const double xhat = (z(i, j) - mean[j]) * inv;
                normalized(i, j) = xhat;
                out(i, j) = layer.bn_gamma[j] * xhat + layer.bn_beta[j];
            }
        }
        const double m = layer.bn_momentum;
        for (std::size_t j = 0; j < d; ++j) {
            layer.bn_running_mean[j] = (1.0 - m) * layer.bn_running_mean[j] + m * mean[j];
            layer.bn_running_var[j] = (1.0 - m) * layer.bn_running_var[j] + m * var[j];
        }
        if (cache) {
            cache->mean = std::move(mean);
            cache->var = std::move(var);
            cache->normalized = std::move(normalized);
        }
    } else {
        for (std::size_t j = 0; j < d; ++j) {
            const double inv = 1.0 / std::sqrt(layer.bn_running_var[j] + layer.bn_epsilon);
            for (std::size_t i = 0; i < n; ++i) {
                out(i, j) = layer.bn_gamma[j] * (z(i, j) - layer.bn_running_mean[j]) * inv +
                            layer.bn_beta[j];
            }
        }
    }
    return out;
}

namespace {

void apply_activation(Matrix& m, Activation activation) {
    switch (activation) {
        case Activation::Relu:
            for (double& v : m.flat()) v = v > 0.0 ? v : 0.0;
            break;
        case Activation::Sigmoid:
            for (double& v : m.flat()) v = 1.0 / (1.0 + std::exp(-v));
            break;
        case Activation::Linear:
            break;
    }
}

}  // namespace

Matrix dense_forward(DenseLayer& layer, const Matrix& x, Mode mode, LayerCache* cache) {
    if (x.cols() != layer.in_dim()) {
        throw ShapeError("dense_forward: input width " + std::to_string(x.cols()) +
                         " vs layer in " + std::to_string(layer.in_dim()));
    }
    Matrix z = matmul_nt(x, layer.weight);
    add_row_vector(z, layer.bias);

    Matrix preact;
    if (layer.has_batchnorm) {
        BatchNormCache bn;
        preact = batchnorm_forward(layer, z, mode, cache ? &bn : nullptr);
        if (cache) cache->bn = std::move(bn);
    } else {
        preact = std::move(z);
    }

    Matrix out = preact;
    apply_activation(out, layer.activation);
    ensure_finite(out, "dense_forward");

    if (cache) {
        cache->input = x;
        cache->preact = std::move(preact);
        cache->output = out;
    }
    return out;
}

LayerGradients dense_backward(const DenseLayer& layer, const LayerCache& cache,
                              const Matrix& dout, Matrix& dinput) {
    if (!dout.same_shape(cache.output)) {
        throw ShapeError("dense_backward: upstream gradient shape mismatch");
    }
    const std::size_t n = dout.rows();
    const std::size_t d = dout.cols();

    // Activation.
    Matrix da(n, d);
    switch (layer.activation) {
        case Activation::Relu:
            for (std::size_t i = 0; i < dout.size(); ++i) {
                da.data()[i] = cache.preact.data()[i] > 0.0 ? dout.data()[i] : 0.0;
            }
            break;
        case Activation::Sigmoid:
            for (std::size_t i = 0; i < dout.size(); ++i) {
                const double s = cache.output.data()[i];
                da.data()[i] = dout.data()[i] * s * (1.0 - s);
            }
            break;
        case Activation::Linear:
            da = dout;
            break;
    }

    LayerGradients grads;

    // Batch norm, including the dependence of batch mean/var on every row.
    Matrix dz;
    if (layer.has_batchnorm) {
        const BatchNormCache& bn = *cache.bn;
        grads.gamma.assign(d, 0.0);
        grads.beta.assign(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                grads.gamma[j] += da(i, j) * bn.normalized(i, j);
                grads.beta[j] += da(i, j);
            }
        }
        dz = Matrix(n, d);
        const double nn = static_cast<double>(n);
        for (std::size_t j = 0; j < d; ++j) {
            const double inv = 1.0 / std::sqrt(bn.var[j] + layer.bn_epsilon);
            double sum_dxhat = 0.0;
            double sum_dxhat_xhat = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dxhat = da(i, j) * layer.bn_gamma[j];
                sum_dxhat += dxhat;
                sum_dxhat_xhat += dxhat * bn.normalized(i, j);
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double dxhat = da(i, j) * layer.bn_gamma[j];
                dz(i, j) = inv / nn *
                           (nn * dxhat - sum_dxhat - bn.normalized(i, j) * sum_dxhat_xhat);
            }
        }
    } else {
        dz = std::move(da);
    }

    grads.weight = matmul_tn(dz, cache.input);
    grads.bias = column_sums(dz);
    dinput = matmul(dz, layer.weight);

    ensure_finite(grads.weight, "dense_backward");
    ensure_finite(dinput, "dense_backward");
    return grads;
}

}  // namespace transmeter::nn
