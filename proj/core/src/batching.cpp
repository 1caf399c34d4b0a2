#include "transmeter/data/batching.hpp"

#include <algorithm>

#include "transmeter/errors.hpp"

namespace transmeter {

namespace {

// Walks a pool of row indices; reshuffles and wraps when exhausted.
class PoolCursor {
public:
    PoolCursor(std::size_t n, Rng& rng) : rng_(rng), indices_(shuffled_indices(n, rng)) {}

    std::size_t take() {
        if (pos_ == indices_.size()) {
            indices_ = shuffled_indices(indices_.size(), rng_);
            pos_ = 0;
        }
        return indices_[pos_++];
    }

private:
    Rng& rng_;
    std::vector<std::size_t> indices_;
    std::size_t pos_ = 0;
};

}  // namespace

Batch make_source_batch(const Dataset& source) {
    Batch b;
    b.source_features = source.features;
    b.target_features = nn::Matrix(0, 0);
    b.labels = source.labels;
    b.domain_labels.assign(source.size(), 0);
    return b;
}

Batch make_target_batch(const Dataset& target) {
    Batch b;
    b.source_features = nn::Matrix(0, 0);
    b.target_features = target.features;
    b.labels = target.labels;
    b.domain_labels.assign(target.size(), 1);
    return b;
}

Batch make_mixed_batch(const Dataset& source, const Dataset& target) {
    Batch b;
    b.source_features = source.features;
    b.target_features = target.features;
    b.labels = source.labels;
    b.labels.insert(b.labels.end(), target.labels.begin(), target.labels.end());
    b.domain_labels.assign(source.size(), 0);
    b.domain_labels.insert(b.domain_labels.end(), target.size(), 1);
    return b;
}

std::vector<Batch> balanced_batches(const Dataset& source, const Dataset& target,
                                    std::size_t per_domain, Rng& rng) {
    if (per_domain == 0) {
        throw InvalidArgument("balanced_batches: per_domain must be at least 1");
    }
    if (source.size() == 0 || target.size() == 0) {
        throw InvalidArgument("balanced_batches: source and target must be non-empty");
    }

    const std::size_t larger = std::max(source.size(), target.size());
    const std::size_t n_batches = (larger + per_domain - 1) / per_domain;

    PoolCursor src_cursor(source.size(), rng);
    PoolCursor tgt_cursor(target.size(), rng);

    std::vector<Batch> batches;
    batches.reserve(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        Batch batch;
        batch.source_features = nn::Matrix(per_domain, source.dim());
        batch.target_features = nn::Matrix(per_domain, target.dim());
        batch.labels.reserve(2 * per_domain);
        batch.domain_labels.reserve(2 * per_domain);

        for (std::size_t i = 0; i < per_domain; ++i) {
            const std::size_t r = src_cursor.take();
            for (std::size_t c = 0; c < source.dim(); ++c) {
                batch.source_features(i, c) = source.features(r, c);
            }
            batch.labels.push_back(source.labels[r]);
            batch.domain_labels.push_back(0);
        }
        for (std::size_t i = 0; i < per_domain; ++i) {
            const std::size_t r = tgt_cursor.take();
            for (std::size_t c = 0; c < target.dim(); ++c) {
                batch.target_features(i, c) = target.features(r, c);
            }
            batch.labels.push_back(target.labels[r]);
            batch.domain_labels.push_back(1);
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

std::vector<PlainBatch> plain_batches(const Dataset& ds, std::size_t batch_size, Rng& rng) {
    if (batch_size < 2) {
        throw InvalidArgument("plain_batches: batch_size must be at least 2");
    }
    if (ds.size() < 2) {
        throw InvalidArgument("plain_batches: need at least 2 rows");
    }
    const std::vector<std::size_t> order = shuffled_indices(ds.size(), rng);

    std::vector<PlainBatch> batches;
    std::size_t pos = 0;
    while (pos < order.size()) {
        const std::size_t take = std::min(batch_size, order.size() - pos);
        if (take < 2) break;  // lone trailing row; next epoch's shuffle rotates it
        PlainBatch b;
        b.features = nn::Matrix(take, ds.dim());
        b.labels.reserve(take);
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t r = order[pos + i];
            for (std::size_t c = 0; c < ds.dim(); ++c) {
                b.features(i, c) = ds.features(r, c);
            }
            b.labels.push_back(ds.labels[r]);
        }
        batches.push_back(std::move(b));
        pos += take;
    }
    return batches;
}

}  // namespace transmeter
