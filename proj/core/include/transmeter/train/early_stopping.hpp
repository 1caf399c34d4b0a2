#pragma once

#include <cstddef>
#include <limits>

namespace transmeter {

// Stops after `patience` consecutive epochs whose validation loss rose above
// the previous epoch's. Tracks the best (lowest-loss) epoch for restoration.
// Epochs are 1-based.
class EarlyStopping {
public:
    explicit EarlyStopping(std::size_t patience);

    // Feed one epoch's validation loss; true means stop after this epoch.
    bool observe(double validation_loss);

    // True right after observe() when that epoch set a new best.
    bool improved() const { return improved_; }

    std::size_t best_epoch() const { return best_epoch_; }
    double best_loss() const { return best_loss_; }
    std::size_t epochs_seen() const { return epoch_; }

private:
    std::size_t patience_;
    std::size_t epoch_ = 0;
    std::size_t consecutive_rises_ = 0;
    double previous_loss_ = std::numeric_limits<double>::infinity();
    double best_loss_ = std::numeric_limits<double>::infinity();
    std::size_t best_epoch_ = 0;
    bool improved_ = false;
};

}  // namespace transmeter
