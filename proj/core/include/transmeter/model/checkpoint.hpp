#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "transmeter/model/source_model.hpp"
#include "transmeter/model/transmeter_model.hpp"

namespace transmeter {

// Checkpoints are self-describing text: per layer its shape, activation and
// batch-norm flags, then row-major parameter arrays rendered as hex floats so
// round trips are bit-exact.

struct SourceCheckpointMeta {
    std::string dataset;
    std::uint64_t seed = 0;
    double split_fraction = 0.7;  // train split used before pretraining
    double test_accuracy = 0.0;
};

struct TransmeterCheckpointMeta {
    std::string source_dataset;
    std::string target_dataset;
    bool flip = false;
    std::uint64_t seed = 0;
};

void save_source_checkpoint(const std::filesystem::path& path, const SourceModel& model,
                            const SourceCheckpointMeta& meta);
SourceModel load_source_checkpoint(const std::filesystem::path& path,
                                   SourceCheckpointMeta* meta = nullptr);

void save_transmeter_checkpoint(const std::filesystem::path& path, const TransmeterModel& model,
                                const TransmeterCheckpointMeta& meta);
TransmeterModel load_transmeter_checkpoint(const std::filesystem::path& path,
                                           TransmeterCheckpointMeta* meta = nullptr);

}  // namespace transmeter
