#pragma once

#include "transmeter/data/dataset.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/train/config.hpp"
#include "transmeter/train/trainer.hpp"

namespace transmeter {

// Shared machinery for source pretraining and target-only baselines: Adam +
// binary cross-entropy with early stopping on an internal validation split
// and best-epoch restoration.
struct FitResult {
    nn::Network net;
    TrainHistory history;
    double holdout_accuracy = 0.0;  // accuracy on the internal validation split
};

FitResult fit_dense_classifier(const Dataset& data, const std::vector<std::size_t>& hidden_widths,
                               const TrainConfig& cfg);

struct PretrainResult {
    SourceModel model;
    double holdout_accuracy = 0.0;
    TrainHistory history;
};

// Trains a source classifier on an already-normalized training split. The
// returned accuracy is measured on the internal early-stopping holdout; test
// accuracy on a real test split is the caller's job.
PretrainResult pretrain_source(const Dataset& train_split, const TrainConfig& cfg,
                               const std::vector<std::size_t>& hidden_widths = {64, 32, 16, 8});

// Probabilities from a plain classifier in eval mode.
std::vector<double> predict_probabilities(nn::Network& net, const nn::Matrix& features);

}  // namespace transmeter
