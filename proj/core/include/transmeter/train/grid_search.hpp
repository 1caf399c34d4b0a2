#pragma once

#include <cstdint>
#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/model/source_model.hpp"
#include "transmeter/train/config.hpp"

namespace transmeter {

// The hyperparameter lattice: alpha x beta x flip x seed. Flip doubles the
// grid so every (alpha, beta, seed) combination trains twice, once with
// flipped target labels.
struct GridSpec {
    std::vector<double> alphas = {0.003, 0.01, 0.1, 0.3, 1.0, 10.0};
    std::vector<double> betas = {0.1, 0.5};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    bool search_flip = true;

    std::size_t size() const {
        return alphas.size() * betas.size() * seeds.size() * (search_flip ? 2 : 1);
    }
};

struct GridResult {
    TrainConfig best;
    double cv_score = 0.0;       // mean validation-fold target accuracy
    std::size_t evaluated = 0;   // configs scored
    std::size_t failed = 0;      // configs that diverged and scored -inf
};

// k-fold cross-validation over the target training split; every fold reuses
// the whole source split. Scores are mean validation-fold accuracies of the
// composed encoder -> label predictor; ties go to the lexicographically
// smaller (alpha, beta, flip, seed). Configs iterate in that order with the
// grids sorted ascending and flip false before true.
GridResult grid_search(const Dataset& source_train, const Dataset& target_train,
                       const GridSpec& grid, int k, const TrainConfig& base,
                       const SourceModel* source_model, const ModelWidths& widths = {});

}  // namespace transmeter
