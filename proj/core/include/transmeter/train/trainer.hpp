#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/model/transmeter_model.hpp"
#include "transmeter/nn/adam.hpp"
#include "transmeter/train/config.hpp"
#include "transmeter/train/objective.hpp"

namespace transmeter {

struct EpochRecord {
    ObjectiveBreakdown train;
    ObjectiveBreakdown validation;
    double validation_accuracy = 0.0;
    double seconds_since_start = 0.0;
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
    std::size_t stopped_epoch = 0;  // 1-based; last epoch that ran
    std::size_t best_epoch = 0;     // 1-based; epoch whose parameters were restored
};

// Per-parameter gradients of the full objective, one set per block. The
// domain classifier's set is its own unscaled descent direction on L_dc; the
// encoder's set already contains the reversal-negated alpha-scaled domain
// term plus the label and weighted reconstruction terms.
struct TransmeterGradients {
    nn::GradientSet encoder;
    nn::GradientSet decoder;
    nn::GradientSet label_predictor;
    nn::GradientSet domain_classifier;
};

// One shared train-mode forward (homogeneous representation built once), one
// backward pass through all heads. Fills `breakdown` with the batch losses.
TransmeterGradients compute_gradients(TransmeterModel& model, const Batch& batch,
                                      const TrainConfig& cfg, ObjectiveBreakdown* breakdown);

// Independent optimizer per parameter block.
struct TransmeterOptimizers {
    nn::AdamState encoder;
    nn::AdamState decoder;
    nn::AdamState label_predictor;
    nn::AdamState domain_classifier;

    TransmeterOptimizers(const TransmeterModel& model, nn::AdamConfig config);
};

// Gradients followed by one Adam step per block. With reconstruction off the
// decoder is left untouched.
ObjectiveBreakdown train_step(TransmeterModel& model, const Batch& batch, const TrainConfig& cfg,
                              TransmeterOptimizers& opts);

// The full adversarial loop: builds the model (copying the source classifier
// into the label predictor when configured), holds out a validation fraction
// of the target rows plus matching source rows, iterates balanced batches,
// stops on `patience` consecutive epochs of rising validation total loss, and
// restores the best-epoch parameters. Flips target labels first when
// cfg.flip is set.
std::pair<TransmeterModel, TrainHistory> train_transmeter(const Dataset& source_train,
                                                          const Dataset& target_train,
                                                          const TrainConfig& cfg,
                                                          const SourceModel* source_model,
                                                          const ModelWidths& widths = {});

// Label probabilities for a whole dataset routed target -> encoder -> label
// predictor in eval mode.
std::vector<double> predict_target_probabilities(TransmeterModel& model, const Dataset& target);

}  // namespace transmeter
