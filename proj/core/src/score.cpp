#include "transmeter/transfer/score.hpp"

#include "transmeter/errors.hpp"

namespace transmeter {

double evaluate_accuracy(std::span<const double> predictions, std::span<const int> labels) {
    if (predictions.empty()) {
        throw InvalidArgument("evaluate_accuracy: empty input");
    }
    if (predictions.size() != labels.size()) {
        throw ShapeError("evaluate_accuracy: lengths differ");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int predicted = predictions[i] >= 0.5 ? 1 : 0;
        if (predicted == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

double transferability(double acc_T, double acc_0) {
    if (acc_0 <= 0.0) {
        throw UndefinedScore("transferability: undefined for acc_0 = 0");
    }
    return (acc_T - acc_0) / acc_0 * 100.0;
}

}  // namespace transmeter
