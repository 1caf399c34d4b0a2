#pragma once

#include <span>
#include <vector>

namespace transmeter {

// Fraction of rows where thresholding at 0.5 (inclusive, mapping to class 1)
// matches the label.
double evaluate_accuracy(std::span<const double> predictions, std::span<const int> labels);

// The relative accuracy improvement (acc_T - acc_0) / acc_0 * 100, in
// percent. Negative values mean negative transfer. acc_0 == 0 is undefined.
double transferability(double acc_T, double acc_0);

}  // namespace transmeter
