#pragma once

#include <cstdint>
#include <vector>

namespace transmeter {

// Everything one training run needs. use_pretrained_init off is the -S
// ablation; use_reconstruction off is the -R ablation (beta treated as 0).
struct TrainConfig {
    double alpha = 0.1;
    double beta = 0.1;
    std::uint64_t seed = 1;
    bool flip = false;

    double lr = 1e-3;
    std::size_t per_domain_batch = 32;  // full pool if the pool is smaller
    std::size_t max_epochs = 500;
    std::size_t patience = 10;  // consecutive epochs of rising validation loss
    bool use_pretrained_init = true;
    bool use_reconstruction = true;
    double validation_fraction = 0.2;

    // Run-level seed mixed with (alpha, beta, flip, seed) to derive each
    // training run's generator; lets grid configs run independently.
    std::uint64_t base_seed = 0;

    double effective_beta() const { return use_reconstruction ? beta : 0.0; }
};

// Architecture knobs shared by the protocol. The label predictor reuses the
// source model's widths whenever a source model is given.
struct ModelWidths {
    std::vector<std::size_t> source_hidden = {64, 32, 16, 8};
    std::vector<std::size_t> encoder_hidden = {64, 32, 32};
};

// Deterministic generator seed for one run of this config.
std::uint64_t derive_run_seed(const TrainConfig& cfg, std::uint64_t salt);

}  // namespace transmeter
