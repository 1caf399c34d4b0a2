#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "transmeter/train/config.hpp"

namespace transmeter {

// Result of measuring one (source, target) pair.
struct TransferReport {
    std::string source_name;
    std::string target_name;
    double acc_0 = 0.0;
    double acc_T = 0.0;
    double transferability = 0.0;  // percent; negative means negative transfer
    TrainConfig chosen_config;
    bool flip_used = false;
    double cv_score = 0.0;
    double wall_time_seconds = 0.0;
};

enum class AblationVariant { Full, NoPretrain, NoRecon };

// -S clears use_pretrained_init; -R clears use_reconstruction; Full returns
// the base unchanged.
TrainConfig ablation_config(const TrainConfig& base, AblationVariant variant);

AblationVariant ablation_from_name(const std::string& name);
std::string ablation_name(AblationVariant variant);

// One JSON record per line.
void write_reports_jsonl(const std::filesystem::path& path,
                         const std::vector<TransferReport>& reports);
std::vector<TransferReport> read_reports_jsonl(const std::filesystem::path& path);

// Comma-separated summary: source, target, acc_0, acc_T, transferability,
// flip, alpha, beta, seed, wall_time.
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<TransferReport>& reports);

}  // namespace transmeter
