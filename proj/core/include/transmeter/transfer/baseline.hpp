#pragma once

#include <cstdint>
#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/train/config.hpp"

namespace transmeter {

// Target-only reference accuracy acc_0: a dense classifier with the label
// predictor's widths but input width d_t, trained on the target training
// split with the same optimizer and early-stopping machinery. One model per
// seed in `seeds`; the best test accuracy is returned.
double train_baseline(const Dataset& target_train, const Dataset& target_test,
                      const TrainConfig& cfg, const std::vector<std::uint64_t>& seeds,
                      const ModelWidths& widths = {});

}  // namespace transmeter
