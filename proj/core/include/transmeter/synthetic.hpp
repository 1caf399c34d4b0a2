#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "transmeter/data/dataset.hpp"

namespace transmeter {

// Desk-scale synthetic families for exercising the full pipeline with a known
// answer. The "ordering" suite holds one target plus three sources:
//   source_informative - fresh draws from the target's generating process,
//     pushed through an invertible linear map and padded with noise columns;
//   source_noise       - independent features with coin-flip labels;
//   source_flipped     - source_informative's process with inverted labels.
// The informative and flipped sources should outrank the noise source, and
// the flipped source should win with target-label flipping enabled.
struct SyntheticSuite {
    std::string name;
    Dataset target;
    std::vector<Dataset> sources;
    std::string expected_best;  // aside from its flipped twin
    std::string notes;
};

SyntheticSuite make_ordering_suite(std::uint64_t seed);

// CSVs plus notes.txt and a ready-to-use registry.ini in `dir`.
void write_suite(const SyntheticSuite& suite, const std::filesystem::path& dir);

}  // namespace transmeter
