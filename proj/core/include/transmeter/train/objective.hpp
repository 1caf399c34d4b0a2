#pragma once

#include "transmeter/data/batching.hpp"
#include "transmeter/model/transmeter_model.hpp"
#include "transmeter/train/config.hpp"

namespace transmeter {

// The three loss terms and their weighted combination
// total = label_loss - alpha * domain_loss + beta * recon_loss.
// `beta` holds the effective weight (0 when reconstruction is disabled);
// recon_loss is still reported for target rows when a decoder pass ran.
struct ObjectiveBreakdown {
    double label_loss = 0.0;
    double domain_loss = 0.0;
    double recon_loss = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double total = 0.0;
};

ObjectiveBreakdown combine_objective(double label_loss, double domain_loss, double recon_loss,
                                     double alpha, double beta);

// label loss averages over all rows, domain loss over all rows, recon loss
// over target rows only (zero if the batch has none). Throws on empty batches.
ObjectiveBreakdown compute_objective(TransmeterModel& model, const Batch& batch,
                                     const TrainConfig& cfg, nn::Mode mode = nn::Mode::Eval);

}  // namespace transmeter
