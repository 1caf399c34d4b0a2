#include "transmeter/train/early_stopping.hpp"

#include "transmeter/errors.hpp"

namespace transmeter {

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
    if (patience == 0) {
        throw InvalidArgument("EarlyStopping: patience must be at least 1");
    }
}

bool EarlyStopping::observe(double validation_loss) {
    ++epoch_;
    improved_ = validation_loss < best_loss_;
    if (improved_) {
        best_loss_ = validation_loss;
        best_epoch_ = epoch_;
    }
    if (validation_loss > previous_loss_) {
        ++consecutive_rises_;
    } else {
        consecutive_rises_ = 0;
    }
    previous_loss_ = validation_loss;
    return consecutive_rises_ >= patience_;
}

}  // namespace transmeter
