#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"

namespace ordeval {

struct ReliefFParams {
    int k_neighbors = 10;
    // Number of pivot rows; unset = every row (deterministic and
    // row-order invariant). Sampling mode draws without replacement.
    std::optional<int> pivot_count;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AttributeScore {
    std::string attribute;
    double score = 0.0;
    int rank = 0;
};

struct ReliefFResult {
    std::vector<AttributeScore> scores;  // declaration order, ranks populated
    int k_used = 0;
    int pivots_used = 0;
    // Pivots whose class had no other member; they contribute no hit updates.
    int single_class_pivots = 0;
};

// Nearest-neighbor relevance of each attribute to the response, response
// treated as nominal classes (one per observed code). Scores lie in [-1, 1];
// with all-rows pivots the result is exactly invariant to row permutation.
ReliefFResult relieff_scores(const OrdinalDataset& dataset, const ReliefFParams& params,
                             int threads = 1);

// Stable descending sort by score (ties keep declaration order) with ranks
// 1..a assigned; returns the ranked ordering.
std::vector<AttributeScore> rank_attributes(std::vector<AttributeScore> scores);

}  // namespace ordeval
