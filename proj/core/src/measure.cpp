#include "transmeter/transfer/measure.hpp"

#include <chrono>

#include "transmeter/data/preprocess.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/train/trainer.hpp"
#include "transmeter/transfer/baseline.hpp"
#include "transmeter/transfer/score.hpp"

namespace transmeter {

namespace {
constexpr std::uint64_t kSplitSalt = 0x73706c6974ULL;
}

std::pair<Dataset, Dataset> prepare_splits(const Dataset& raw, double fraction,
                                           std::uint64_t seed) {
    Rng rng(mix_seed({kSplitSalt, seed, fnv1a(raw.name)}));
    auto [train, test] = split(raw, fraction, rng);
    znormalize(train, {&test});
    return {std::move(train), std::move(test)};
}

TransferReport measure_pair(const SourceHandle& source, const Dataset& target_raw,
                            const GridSpec& grid, const ProtocolSettings& proto,
                            const std::vector<std::uint64_t>& baseline_seeds) {
    const auto start = std::chrono::steady_clock::now();

    if (source.model.input_dim != source.data.dim()) {
        throw ShapeError("measure_pair: source model expects " +
                         std::to_string(source.model.input_dim) + " features, dataset '" +
                         source.data.name + "' has " + std::to_string(source.data.dim()));
    }

    // The source split must reproduce the one the classifier was trained on.
    auto [source_train, source_test] =
        prepare_splits(source.data, source.pretrain_split, source.pretrain_seed);
    (void)source_test;
    auto [target_train, target_test] =
        prepare_splits(target_raw, proto.split_fraction, proto.base_seed);

    TrainConfig base = proto.base;
    base.base_seed = proto.base_seed;

    const GridResult grid_result = grid_search(source_train, target_train, grid, proto.folds,
                                               base, &source.model, proto.widths);

    // Final model on the full target training split with a fresh internal
    // validation split for early stopping.
    auto [model, history] = train_transmeter(source_train, target_train, grid_result.best,
                                             &source.model, proto.widths);

    const Dataset test_eff =
        grid_result.best.flip ? flip_labels(target_test) : target_test;
    const double acc_T = evaluate_accuracy(predict_target_probabilities(model, test_eff),
                                           test_eff.labels);

    const double acc_0 = train_baseline(target_train, target_test, base, baseline_seeds,
                                        proto.widths);

    TransferReport report;
    report.source_name = source.data.name;
    report.target_name = target_raw.name;
    report.acc_0 = acc_0;
    report.acc_T = acc_T;
    report.transferability = transferability(acc_T, acc_0);
    report.chosen_config = grid_result.best;
    report.flip_used = grid_result.best.flip;
    report.cv_score = grid_result.cv_score;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace transmeter
