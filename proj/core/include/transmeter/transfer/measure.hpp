#pragma once

#include <cstdint>
#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/train/config.hpp"
#include "transmeter/train/grid_search.hpp"
#include "transmeter/transfer/report.hpp"

namespace transmeter {

// Protocol-level settings shared across pairs of one measurement run.
struct ProtocolSettings {
    double split_fraction = 0.7;
    int folds = 3;
    std::uint64_t base_seed = 1;
    TrainConfig base;     // lr, batching, epochs, patience, ablation switches
    ModelWidths widths;
};

// A source dataset together with its pre-trained classifier and the seed /
// split fraction that produced the classifier's training split.
struct SourceHandle {
    Dataset data;  // raw, unnormalized
    SourceModel model;
    std::uint64_t pretrain_seed = 1;
    double pretrain_split = 0.7;
};

// Deterministic split + z-normalization of a raw dataset, as used for both
// pretraining and measuring; statistics come from the train part only.
std::pair<Dataset, Dataset> prepare_splits(const Dataset& raw, double fraction,
                                           std::uint64_t seed);

// The full protocol for one pair: normalize both sides, grid-search with
// k-fold CV, retrain on the whole target training split with the winning
// config, score acc_T through encoder -> label predictor on the target test
// split (flipped labels applied consistently when the winning config flips),
// and train the target-only baseline for acc_0 on original labels.
TransferReport measure_pair(const SourceHandle& source, const Dataset& target_raw,
                            const GridSpec& grid, const ProtocolSettings& proto,
                            const std::vector<std::uint64_t>& baseline_seeds);

}  // namespace transmeter
