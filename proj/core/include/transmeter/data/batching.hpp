#pragma once

#include <vector>

#include "transmeter/data/dataset.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

// A training batch. Source rows (domain label 0) and target rows (domain
// label 1) keep their native widths d_s and d_t; labels and domain labels run
// source block first, then target block.
struct Batch {
    nn::Matrix source_features;      // n_src x d_s
    nn::Matrix target_features;     // n_tgt x d_t
    std::vector<int> labels;         // n_src + n_tgt
    std::vector<int> domain_labels;  // n_src zeros then n_tgt ones

    std::size_t source_rows() const { return source_features.rows(); }
    std::size_t target_rows() const { return target_features.rows(); }
    std::size_t rows() const { return source_rows() + target_rows(); }

    std::vector<int> target_labels() const {
        return {labels.begin() + static_cast<std::ptrdiff_t>(source_rows()), labels.end()};
    }
};

Batch make_source_batch(const Dataset& source);
Batch make_target_batch(const Dataset& target);
Batch make_mixed_batch(const Dataset& source, const Dataset& target);

// One epoch of balanced batches: per_domain rows from each domain per batch.
// Both pools are reshuffled at the epoch start; whichever pool runs out first
// cycles with a reshuffle until the larger pool has been fully visited, so an
// epoch has ceil(max(n_s, n_t) / per_domain) batches.
std::vector<Batch> balanced_batches(const Dataset& source, const Dataset& target,
                                    std::size_t per_domain, Rng& rng);

// Single-dataset epoch batches for plain classifier training. A trailing
// remainder of one row is skipped (batch-norm needs two); the shuffle rotates
// which row sits there across epochs.
struct PlainBatch {
    nn::Matrix features;
    std::vector<int> labels;
};
std::vector<PlainBatch> plain_batches(const Dataset& ds, std::size_t batch_size, Rng& rng);

}  // namespace transmeter
