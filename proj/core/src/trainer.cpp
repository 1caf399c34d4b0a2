#include "transmeter/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "transmeter/data/batching.hpp"
#include "transmeter/data/preprocess.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/nn/losses.hpp"
#include "transmeter/train/early_stopping.hpp"
#include "transmeter/transfer/score.hpp"

namespace transmeter {

namespace {
constexpr std::uint64_t kTrainSalt = 0x7472616e736d7472ULL;
}

std::uint64_t derive_run_seed(const TrainConfig& cfg, std::uint64_t salt) {
    return mix_seed({salt, cfg.base_seed, cfg.seed, double_bits(cfg.alpha),
                     double_bits(cfg.beta), cfg.flip ? 1u : 0u});
}

TransmeterGradients compute_gradients(TransmeterModel& model, const Batch& batch,
                                      const TrainConfig& cfg, ObjectiveBreakdown* breakdown) {
    if (batch.rows() == 0) {
        throw InvalidArgument("compute_gradients: empty batch");
    }
    const std::size_t n_src = batch.source_rows();
    const std::size_t n_tgt = batch.target_rows();
    const double beta_eff = cfg.effective_beta();

    // Shared forward: the homogeneous representation is built once and feeds
    // every head. The encoder's cache covers the target block only, since
    // source rows are not a function of the encoder parameters.
    const nn::Matrix ho = homogeneous(model, batch, nn::Mode::Train);

    const nn::Matrix label_out = model.label_predictor.forward(ho, nn::Mode::Train);
    const std::vector<double> label_probs = probabilities_from(label_out);
    const double label_loss = nn::bce_loss(label_probs, batch.labels);

    const nn::Matrix domain_out = model.domain_classifier.forward(ho, nn::Mode::Train);
    const std::vector<double> domain_probs = probabilities_from(domain_out);
    const double domain_loss = nn::bce_loss(domain_probs, batch.domain_labels);

    double recon_loss = 0.0;
    nn::Matrix recon_out;
    if (beta_eff > 0.0 && n_tgt > 0) {
        const nn::Matrix ho_target = ho.slice_rows(n_src, batch.rows());
        recon_out = model.decoder.forward(ho_target, nn::Mode::Train);
        recon_loss = nn::mse_recon_loss(recon_out, batch.target_features);
    }

    // Backward. Each head seeds its own loss gradient; dL/dHo contributions
    // accumulate before flowing into the encoder (target rows only).
    TransmeterGradients grads;
    nn::Matrix dho(batch.rows(), model.d_s);

    {
        const std::vector<double> dprob = nn::bce_gradient(label_probs, batch.labels);
        nn::Matrix dout(batch.rows(), 1);
        for (std::size_t i = 0; i < dprob.size(); ++i) dout(i, 0) = dprob[i];
        auto [g, dinput] = model.label_predictor.backward(dout);
        grads.label_predictor = std::move(g);
        add_scaled_in_place(dho, dinput, 1.0);
    }
    {
        const std::vector<double> dprob = nn::bce_gradient(domain_probs, batch.domain_labels);
        nn::Matrix dout(batch.rows(), 1);
        for (std::size_t i = 0; i < dprob.size(); ++i) dout(i, 0) = dprob[i];
        auto [g, dinput] = model.domain_classifier.backward(dout);
        grads.domain_classifier = std::move(g);  // unscaled: the classifier descends on L_dc
        // Reversal junction: the encoder sees -alpha times the domain gradient.
        const nn::GradientReversal reversal{model.alpha};
        add_scaled_in_place(dho, reversal.backward(dinput), 1.0);
    }

    nn::Matrix dho_target = dho.slice_rows(n_src, batch.rows());
    if (beta_eff > 0.0 && n_tgt > 0) {
        nn::Matrix dxhat = nn::mse_recon_gradient(recon_out, batch.target_features);
        for (double& v : dxhat.flat()) v *= beta_eff;
        auto [g, dinput] = model.decoder.backward(dxhat);
        grads.decoder = std::move(g);
        add_scaled_in_place(dho_target, dinput, 1.0);
    } else {
        grads.decoder = nn::zero_gradients(model.decoder);
    }

    if (n_tgt > 0) {
        auto [g, dinput] = model.encoder.backward(dho_target);
        grads.encoder = std::move(g);
    } else {
        grads.encoder = nn::zero_gradients(model.encoder);
    }

    if (breakdown) {
        *breakdown = combine_objective(label_loss, domain_loss, recon_loss, cfg.alpha, beta_eff);
    }
    return grads;
}

TransmeterOptimizers::TransmeterOptimizers(const TransmeterModel& model, nn::AdamConfig config)
    : encoder(model.encoder, config),
      decoder(model.decoder, config),
      label_predictor(model.label_predictor, config),
      domain_classifier(model.domain_classifier, config) {}

ObjectiveBreakdown train_step(TransmeterModel& model, const Batch& batch, const TrainConfig& cfg,
                              TransmeterOptimizers& opts) {
    ObjectiveBreakdown breakdown;
    TransmeterGradients grads = compute_gradients(model, batch, cfg, &breakdown);
    if (batch.target_rows() > 0) {
        opts.encoder.step(model.encoder, grads.encoder);
    }
    if (cfg.effective_beta() > 0.0 && batch.target_rows() > 0) {
        opts.decoder.step(model.decoder, grads.decoder);
    }
    opts.label_predictor.step(model.label_predictor, grads.label_predictor);
    opts.domain_classifier.step(model.domain_classifier, grads.domain_classifier);
    return breakdown;
}

std::vector<double> predict_target_probabilities(TransmeterModel& model, const Dataset& target) {
    const Batch batch = make_target_batch(target);
    return predict_label(model, batch, nn::Mode::Eval);
}

namespace {

// Validation view: held-out target rows plus an equal number of source rows
// (fewer if the source pool is smaller) so the label and domain terms are
// evaluated over both domains.
Batch make_validation_batch(const Dataset& source, const Dataset& target_val, Rng& rng) {
    const std::size_t n = std::min(source.size(), target_val.size());
    std::vector<std::size_t> idx = shuffled_indices(source.size(), rng);
    idx.resize(std::max<std::size_t>(n, 1));
    return make_mixed_batch(subset(source, idx), target_val);
}

}  // namespace

std::pair<TransmeterModel, TrainHistory> train_transmeter(const Dataset& source_train,
                                                          const Dataset& target_train,
                                                          const TrainConfig& cfg,
                                                          const SourceModel* source_model,
                                                          const ModelWidths& widths) {
    if (cfg.max_epochs == 0) {
        throw InvalidArgument("train_transmeter: max_epochs must be at least 1");
    }
    const Dataset target = cfg.flip ? flip_labels(target_train) : target_train;
    if (!has_both_classes(target)) {
        throw DegenerateData("train_transmeter: target split has a single class");
    }
    if (target.size() < 3 || source_train.size() < 2) {
        throw DegenerateData("train_transmeter: too few rows to train and validate");
    }

    Rng rng(derive_run_seed(cfg, kTrainSalt));

    // Held-out validation slice of the target rows.
    std::vector<std::size_t> order = shuffled_indices(target.size(), rng);
    std::size_t n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(target.size()) * cfg.validation_fraction + 1e-9));
    n_val = std::clamp<std::size_t>(n_val, 1, target.size() - 2);
    const std::vector<std::size_t> val_idx(order.begin(), order.begin() + n_val);
    const std::vector<std::size_t> fit_idx(order.begin() + n_val, order.end());
    const Dataset target_val = subset(target, val_idx);
    const Dataset target_fit = subset(target, fit_idx);

    Rng model_rng = rng.fork(1);
    TransmeterModel model = build_transmeter(
        source_train.dim(), target.dim(), widths.encoder_hidden,
        cfg.use_pretrained_init ? source_model : nullptr,
        source_model ? source_model->hidden_widths : widths.source_hidden, cfg.alpha,
        cfg.effective_beta(), model_rng);

    Rng val_rng = rng.fork(2);
    const Batch validation_batch = make_validation_batch(source_train, target_val, val_rng);
    const Batch val_target_only = make_target_batch(target_val);

    const std::size_t per_domain = std::max<std::size_t>(
        2, std::min({cfg.per_domain_batch, source_train.size(), target_fit.size()}));

    TransmeterOptimizers opts(model, nn::AdamConfig{.lr = cfg.lr});
    EarlyStopping stopping(cfg.patience);
    TransmeterModel best_model = model;
    TrainHistory history;

    Rng batch_rng = rng.fork(3);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double label_sum = 0.0, domain_sum = 0.0, recon_sum = 0.0;
        const std::vector<Batch> batches =
            balanced_batches(source_train, target_fit, per_domain, batch_rng);
        for (const Batch& batch : batches) {
            const ObjectiveBreakdown b = train_step(model, batch, cfg, opts);
            label_sum += b.label_loss;
            domain_sum += b.domain_loss;
            recon_sum += b.recon_loss;
        }
        const double nb = static_cast<double>(batches.size());

        EpochRecord record;
        record.train = combine_objective(label_sum / nb, domain_sum / nb, recon_sum / nb,
                                         cfg.alpha, cfg.effective_beta());
        record.validation = compute_objective(model, validation_batch, cfg, nn::Mode::Eval);
        record.validation_accuracy = evaluate_accuracy(
            predict_label(model, val_target_only, nn::Mode::Eval), target_val.labels);
        record.seconds_since_start =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        history.epochs.push_back(record);

        const bool stop = stopping.observe(record.validation.total);
        if (stopping.improved()) {
            best_model = model;
        }
        history.stopped_epoch = epoch;
        if (stop) break;
    }
    history.best_epoch = stopping.best_epoch();
    return {std::move(best_model), std::move(history)};
}

}  // namespace transmeter
