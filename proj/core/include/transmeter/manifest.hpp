#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "transmeter/train/config.hpp"
#include "transmeter/train/grid_search.hpp"

namespace transmeter {

// Record of one CLI run: the resolved inputs pin everything a replay needs to
// reproduce the output files byte for byte, including the measured per-pair
// wall times (replays reuse them instead of re-measuring).
struct PairResult {
    std::string source;
    double acc_0 = 0.0;
    double acc_T = 0.0;
    double transferability = 0.0;
    bool flip_used = false;
    double wall_time_seconds = 0.0;
};

struct RunManifest {
    std::string command;
    std::string registry_path;
    std::string registry_hash;  // FNV-1a of the registry bytes, hex

    std::string target;
    std::vector<std::string> sources;
    GridSpec grid;
    TrainConfig base;
    ModelWidths widths;
    double split_fraction = 0.7;
    int folds = 3;
    std::uint64_t base_seed = 1;
    std::string ablation = "full";
    int jobs = 1;
    bool pretrain_missing = false;
    std::uint64_t pretrain_seed = 1;

    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
    std::vector<PairResult> results;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

std::string iso_timestamp_now();

}  // namespace transmeter
