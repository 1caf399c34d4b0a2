#pragma once

#include <utility>
#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

// Uniform random permutation, then prefix split; train gets floor(n * fraction)
// rows and both parts are non-empty.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, Rng& rng);

// Per-feature mean and std of the training split (population std, divisor n).
// Features whose raw std is zero get std 1 so they normalize to zero.
struct NormStats {
    std::vector<double> mean;
    std::vector<double> std;
};

// Statistics come from `train` only; `train` and every dataset in `others` are
// transformed in place as (x - mean) / std with those statistics.
NormStats znormalize(Dataset& train, const std::vector<Dataset*>& others);

// Shuffled round-robin fold assignment; fold sizes differ by at most one.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignments;  // per instance, in [0, k)

    std::vector<std::size_t> fold_indices(int fold) const;
    std::vector<std::size_t> complement_indices(int fold) const;
};

FoldPlan make_folds(const Dataset& ds, int k, Rng& rng);

// Every label y becomes 1 - y; features are untouched.
Dataset flip_labels(const Dataset& ds);

}  // namespace transmeter
