#include "transmeter/transfer/baseline.hpp"

#include <algorithm>

#include "transmeter/errors.hpp"
#include "transmeter/train/classifier_fit.hpp"
#include "transmeter/transfer/score.hpp"

namespace transmeter {

double train_baseline(const Dataset& target_train, const Dataset& target_test,
                      const TrainConfig& cfg, const std::vector<std::uint64_t>& seeds,
                      const ModelWidths& widths) {
    if (seeds.empty()) {
        throw InvalidArgument("train_baseline: seed set must be non-empty");
    }
    double best = 0.0;
    for (std::uint64_t seed : seeds) {
        TrainConfig run = cfg;
        run.seed = seed;
        run.flip = false;  // the baseline always trains on original labels
        FitResult fit = fit_dense_classifier(target_train, widths.source_hidden, run);
        const double acc = evaluate_accuracy(
            predict_probabilities(fit.net, target_test.features), target_test.labels);
        best = std::max(best, acc);
    }
    return best;
}

}  // namespace transmeter
