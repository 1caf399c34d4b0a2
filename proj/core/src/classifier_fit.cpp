#include "transmeter/train/classifier_fit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "transmeter/data/batching.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/nn/adam.hpp"
#include "transmeter/nn/losses.hpp"
#include "transmeter/train/early_stopping.hpp"
#include "transmeter/transfer/score.hpp"

namespace transmeter {

namespace {
constexpr std::uint64_t kFitSalt = 0x636c617373696669ULL;
}

std::vector<double> predict_probabilities(nn::Network& net, const nn::Matrix& features) {
    const nn::Matrix out = net.forward(features, nn::Mode::Eval);
    std::vector<double> probs(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
    return probs;
}

FitResult fit_dense_classifier(const Dataset& data, const std::vector<std::size_t>& hidden_widths,
                               const TrainConfig& cfg) {
    if (!has_both_classes(data)) {
        throw DegenerateData("fit_dense_classifier: training data has a single class");
    }
    if (data.size() < 4) {
        throw DegenerateData("fit_dense_classifier: too few rows to fit and validate");
    }

    Rng rng(derive_run_seed(cfg, kFitSalt));

    std::vector<std::size_t> order = shuffled_indices(data.size(), rng);
    std::size_t n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(data.size()) * cfg.validation_fraction + 1e-9));
    n_val = std::clamp<std::size_t>(n_val, 1, data.size() - 2);
    const Dataset val = subset(data, {order.begin(), order.begin() + n_val});
    const Dataset fit = subset(data, {order.begin() + n_val, order.end()});

    Rng model_rng = rng.fork(1);
    nn::Network net = build_dense_classifier(data.dim(), hidden_widths, model_rng);
    nn::AdamState optimizer(net, nn::AdamConfig{.lr = cfg.lr});
    EarlyStopping stopping(cfg.patience);

    const std::size_t batch_size =
        std::max<std::size_t>(2, std::min(2 * cfg.per_domain_batch, fit.size()));

    nn::Network best = net;
    FitResult result;
    Rng batch_rng = rng.fork(2);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double loss_sum = 0.0;
        const std::vector<PlainBatch> batches = plain_batches(fit, batch_size, batch_rng);
        for (const PlainBatch& batch : batches) {
            const nn::Matrix out = net.forward(batch.features, nn::Mode::Train);
            std::vector<double> probs(out.rows());
            for (std::size_t i = 0; i < out.rows(); ++i) probs[i] = out(i, 0);
            loss_sum += nn::bce_loss(probs, batch.labels);

            const std::vector<double> dprob = nn::bce_gradient(probs, batch.labels);
            nn::Matrix dout(out.rows(), 1);
            for (std::size_t i = 0; i < dprob.size(); ++i) dout(i, 0) = dprob[i];
            auto [grads, dinput] = net.backward(dout);
            optimizer.step(net, grads);
        }

        const std::vector<double> val_probs = predict_probabilities(net, val.features);
        const double val_loss = nn::bce_loss(val_probs, val.labels);

        EpochRecord record;
        record.train = combine_objective(loss_sum / static_cast<double>(batches.size()), 0.0,
                                         0.0, 0.0, 0.0);
        record.validation = combine_objective(val_loss, 0.0, 0.0, 0.0, 0.0);
        record.validation_accuracy = evaluate_accuracy(val_probs, val.labels);
        record.seconds_since_start =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.history.epochs.push_back(record);

        const bool stop = stopping.observe(val_loss);
        if (stopping.improved()) {
            best = net;
        }
        result.history.stopped_epoch = epoch;
        if (stop) break;
    }
    result.history.best_epoch = stopping.best_epoch();
    result.net = std::move(best);
    result.holdout_accuracy =
        evaluate_accuracy(predict_probabilities(result.net, val.features), val.labels);
    return result;
}

PretrainResult pretrain_source(const Dataset& train_split, const TrainConfig& cfg,
                               const std::vector<std::size_t>& hidden_widths) {
    FitResult fit = fit_dense_classifier(train_split, hidden_widths, cfg);
    PretrainResult result;
    result.model.net = std::move(fit.net);
    result.model.input_dim = train_split.dim();
    result.model.hidden_widths = hidden_widths;
    result.holdout_accuracy = fit.holdout_accuracy;
    result.history = std::move(fit.history);
    return result;
}

}  // namespace transmeter
