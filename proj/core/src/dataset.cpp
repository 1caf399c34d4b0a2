#include "transmeter/data/dataset.hpp"

#include <string>

#include "transmeter/errors.hpp"

namespace transmeter {

void validate_dataset(const Dataset& ds) {
    if (ds.size() == 0 || ds.dim() == 0) {
        throw InvalidArgument("dataset '" + ds.name + "' must have at least one row and column");
    }
    if (ds.labels.size() != ds.size()) {
        throw ShapeError("dataset '" + ds.name + "': " + std::to_string(ds.labels.size()) +
                         " labels for " + std::to_string(ds.size()) + " rows");
    }
    for (int y : ds.labels) {
        if (y != 0 && y != 1) {
            throw InvalidArgument("dataset '" + ds.name + "': label " + std::to_string(y) +
                                  " is not binary");
        }
    }
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.name = ds.name;
    out.features = nn::Matrix(indices.size(), ds.dim());
    out.labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const std::size_t src = indices[r];
        if (src >= ds.size()) {
            throw InvalidArgument("subset: row index " + std::to_string(src) + " out of range");
        }
        for (std::size_t c = 0; c < ds.dim(); ++c) {
            out.features(r, c) = ds.features(src, c);
        }
        out.labels.push_back(ds.labels[src]);
    }
    return out;
}

bool has_both_classes(const Dataset& ds) {
    bool saw0 = false, saw1 = false;
    for (int y : ds.labels) {
        (y ? saw1 : saw0) = true;
        if (saw0 && saw1) return true;
    }
    return false;
}

}  // namespace transmeter
