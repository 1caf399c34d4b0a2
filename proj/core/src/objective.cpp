#include "transmeter/train/objective.hpp"

#include "transmeter/errors.hpp"
#include "transmeter/nn/losses.hpp"

namespace transmeter {

ObjectiveBreakdown combine_objective(double label_loss, double domain_loss, double recon_loss,
                                     double alpha, double beta) {
    ObjectiveBreakdown b;
    b.label_loss = label_loss;
    b.domain_loss = domain_loss;
    b.recon_loss = recon_loss;
    b.alpha = alpha;
    b.beta = beta;
    b.total = label_loss - alpha * domain_loss + beta * recon_loss;
    return b;
}

ObjectiveBreakdown compute_objective(TransmeterModel& model, const Batch& batch,
                                     const TrainConfig& cfg, nn::Mode mode) {
    if (batch.rows() == 0) {
        throw InvalidArgument("compute_objective: empty batch");
    }
    const nn::Matrix ho = homogeneous(model, batch, mode);

    const std::vector<double> label_probs =
        probabilities_from(model.label_predictor.forward(ho, mode));
    const double label_loss = nn::bce_loss(label_probs, batch.labels);

    const std::vector<double> domain_probs =
        probabilities_from(model.domain_classifier.forward(ho, mode));
    const double domain_loss = nn::bce_loss(domain_probs, batch.domain_labels);

    double recon_loss = 0.0;
    if (batch.target_rows() > 0) {
        const nn::Matrix ho_target = ho.slice_rows(batch.source_rows(), batch.rows());
        const nn::Matrix reconstructed = model.decoder.forward(ho_target, mode);
        recon_loss = nn::mse_recon_loss(reconstructed, batch.target_features);
    }
    return combine_objective(label_loss, domain_loss, recon_loss, cfg.alpha,
                             cfg.effective_beta());
}

}  // namespace transmeter
