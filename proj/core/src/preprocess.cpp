#include "transmeter/data/preprocess.hpp"

#include <cmath>
#include <string>

#include "transmeter/errors.hpp"

namespace transmeter {

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, Rng& rng) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidArgument("split: train_fraction must lie in (0, 1)");
    }
    if (ds.size() < 2) {
        throw InvalidArgument("split: need at least 2 rows");
    }
    const std::vector<std::size_t> order = shuffled_indices(ds.size(), rng);
    // The 1e-9 nudge keeps products like 690 * 0.7 from landing one ulp below
    // the exact integer and flooring to 482 instead of 483.
    std::size_t n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(ds.size()) * train_fraction + 1e-9));
    if (n_train == 0) n_train = 1;
    if (n_train >= ds.size()) n_train = ds.size() - 1;

    std::vector<std::size_t> train_idx(order.begin(), order.begin() + n_train);
    std::vector<std::size_t> test_idx(order.begin() + n_train, order.end());
    return {subset(ds, train_idx), subset(ds, test_idx)};
}

NormStats znormalize(Dataset& train, const std::vector<Dataset*>& others) {
    const std::size_t d = train.dim();
    for (const Dataset* ds : others) {
        if (ds->dim() != d) {
            throw ShapeError("znormalize: dataset '" + ds->name + "' has dim " +
                             std::to_string(ds->dim()) + ", train has " + std::to_string(d));
        }
    }

    NormStats stats;
    stats.mean.assign(d, 0.0);
    stats.std.assign(d, 0.0);
    const double n = static_cast<double>(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) stats.mean[c] += train.features(r, c);
    }
    for (double& m : stats.mean) m /= n;
    for (std::size_t r = 0; r < train.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = train.features(r, c) - stats.mean[c];
            stats.std[c] += diff * diff;
        }
    }
    for (double& s : stats.std) {
        s = std::sqrt(s / n);
        if (s == 0.0) s = 1.0;  // constant feature: normalize to all zeros
    }

    auto apply = [&](Dataset& ds) {
        for (std::size_t r = 0; r < ds.size(); ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                ds.features(r, c) = (ds.features(r, c) - stats.mean[c]) / stats.std[c];
            }
        }
    };
    apply(train);
    for (Dataset* ds : others) apply(*ds);
    return stats;
}

std::vector<std::size_t> FoldPlan::fold_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::complement_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) out.push_back(i);
    }
    return out;
}

FoldPlan make_folds(const Dataset& ds, int k, Rng& rng) {
    if (k < 2) {
        throw InvalidArgument("make_folds: k must be at least 2");
    }
    if (static_cast<std::size_t>(k) > ds.size()) {
        throw InvalidArgument("make_folds: k = " + std::to_string(k) + " exceeds " +
                              std::to_string(ds.size()) + " rows");
    }
    FoldPlan plan;
    plan.k = k;
    plan.assignments.assign(ds.size(), 0);
    const std::vector<std::size_t> order = shuffled_indices(ds.size(), rng);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        plan.assignments[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(k));
    }
    return plan;
}

Dataset flip_labels(const Dataset& ds) {
    Dataset out = ds;
    for (int& y : out.labels) y = 1 - y;
    return out;
}

}  // namespace transmeter
