#include "transmeter/train/grid_search.hpp"

#include <algorithm>
#include <limits>

#include "transmeter/data/preprocess.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/train/trainer.hpp"
#include "transmeter/transfer/score.hpp"

namespace transmeter {

namespace {
constexpr std::uint64_t kFoldSalt = 0x666f6c6473ULL;
}

GridResult grid_search(const Dataset& source_train, const Dataset& target_train,
                       const GridSpec& grid, int k, const TrainConfig& base,
                       const SourceModel* source_model, const ModelWidths& widths) {
    if (grid.alphas.empty() || grid.betas.empty() || grid.seeds.empty()) {
        throw InvalidArgument("grid_search: empty grid");
    }
    if (k < 2) {
        throw InvalidArgument("grid_search: k must be at least 2");
    }

    std::vector<double> alphas = grid.alphas;
    std::vector<double> betas = grid.betas;
    std::vector<std::uint64_t> seeds = grid.seeds;
    std::sort(alphas.begin(), alphas.end());
    std::sort(betas.begin(), betas.end());
    std::sort(seeds.begin(), seeds.end());
    const std::vector<bool> flips = grid.search_flip ? std::vector<bool>{false, true}
                                                     : std::vector<bool>{false};

    // One fold plan shared by every config keeps the comparison fair.
    Rng fold_rng(mix_seed({kFoldSalt, base.base_seed}));
    const FoldPlan folds = make_folds(target_train, k, fold_rng);

    GridResult result;
    double best_score = -std::numeric_limits<double>::infinity();
    bool have_best = false;

    for (double alpha : alphas) {
        for (double beta : betas) {
            for (bool flip : flips) {
                for (std::uint64_t seed : seeds) {
                    TrainConfig cfg = base;
                    cfg.alpha = alpha;
                    cfg.beta = beta;
                    cfg.flip = flip;
                    cfg.seed = seed;

                    double fold_sum = 0.0;
                    bool failed = false;
                    for (int fold = 0; fold < k; ++fold) {
                        const Dataset fit = subset(target_train, folds.complement_indices(fold));
                        Dataset val = subset(target_train, folds.fold_indices(fold));
                        if (flip) val = flip_labels(val);
                        try {
                            auto [model, history] =
                                train_transmeter(source_train, fit, cfg, source_model, widths);
                            fold_sum += evaluate_accuracy(
                                predict_target_probabilities(model, val), val.labels);
                        } catch (const NumericError&) {
                            failed = true;  // diverged config scores -inf, search continues
                            break;
                        }
                    }
                    ++result.evaluated;
                    if (failed) {
                        ++result.failed;
                        continue;
                    }
                    const double score = fold_sum / static_cast<double>(k);
                    if (score > best_score) {  // strict: lexicographic order breaks ties
                        best_score = score;
                        result.best = cfg;
                        have_best = true;
                    }
                }
            }
        }
    }

    if (!have_best) {
        throw DegenerateData("grid_search: every configuration diverged");
    }
    result.cv_score = best_score;
    return result;
}

}  // namespace transmeter
