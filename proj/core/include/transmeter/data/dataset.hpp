#pragma once

#include <string>
#include <vector>

#include "transmeter/nn/matrix.hpp"

namespace transmeter {

// A named tabular binary-classification dataset: n rows of d features.
struct Dataset {
    std::string name;
    nn::Matrix features;      // n x d
    std::vector<int> labels;  // n entries, each 0 or 1

    std::size_t dim() const { return features.cols(); }
    std::size_t size() const { return features.rows(); }
};

// Throws unless labels match rows, every label is 0/1, and n, d >= 1.
void validate_dataset(const Dataset& ds);

// Rows picked by index, in the given order.
Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices);

bool has_both_classes(const Dataset& ds);

}  // namespace transmeter
