#pragma once

#include <string>
#include <vector>

#include "transmeter/transfer/report.hpp"

namespace transmeter {

struct Ranking {
    std::vector<std::pair<std::string, double>> ordered;  // score descending
    int k = 0;
    std::vector<std::string> selected;  // top k plus every tie with the k-th score
};

// Sort by transferability descending (name ascending within equal scores),
// take the top k, and expand the selection to every source tying the k-th
// score, so more than k sources may be selected.
Ranking rank_sources(const std::vector<TransferReport>& reports, int k);

}  // namespace transmeter
