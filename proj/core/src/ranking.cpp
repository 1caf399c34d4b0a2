#include "transmeter/transfer/ranking.hpp"

#include <algorithm>

#include "transmeter/errors.hpp"

namespace transmeter {

Ranking rank_sources(const std::vector<TransferReport>& reports, int k) {
    if (k < 1) {
        throw InvalidArgument("rank_sources: k must be at least 1");
    }
    if (reports.empty()) {
        throw InvalidArgument("rank_sources: no reports");
    }

    Ranking ranking;
    ranking.k = k;
    for (const TransferReport& r : reports) {
        ranking.ordered.emplace_back(r.source_name, r.transferability);
    }
    std::sort(ranking.ordered.begin(), ranking.ordered.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });

    const std::size_t cutoff = std::min<std::size_t>(k, ranking.ordered.size());
    const double kth_score = ranking.ordered[cutoff - 1].second;
    for (const auto& [name, score] : ranking.ordered) {
        if (score >= kth_score) {
            ranking.selected.push_back(name);
        }
    }
    return ranking;
}

}  // namespace transmeter
