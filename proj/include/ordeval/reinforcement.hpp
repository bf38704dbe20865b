#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"

namespace ordeval {

enum class Direction { up, down };

const char* direction_name(Direction d);

struct OrdEvalParams {
    // Number of most-similar rows forming each pivot's context.
    // Unset: min(n - 1, 30).
    std::optional<int> context_size;
    int bootstrap_replicates = 200;
    double alpha = 0.05;
    int min_support = 5;
    std::uint64_t seed = 0;
    bool exclude_evaluated_attribute = true;

    int resolved_context_size(int n) const;
    void validate() const;
};

struct NullBox {
    double q025 = 0.0;
    double q25 = 0.0;
    double median = 0.5;
    double q75 = 1.0;
    double q975 = 1.0;
};

struct ReinforcementCell {
    Direction direction = Direction::up;
    int value = 0;  // UP: target of the increase; DOWN: source of the decrease
    std::optional<double> probability;       // success / events, needs min_support
    long success = 0;
    long events = 0;
    NullBox null_box;
    bool significant = false;
    std::optional<double> anti_probability;  // opposite-direction response change
    long anti_success = 0;
};

struct BaseRates {
    double up = 0.0;    // P(response increases) over all ordered context pairs
    double down = 0.0;  // P(response decreases) likewise
};

struct ReinforcementProfile {
    std::string attribute;
    OrdinalScale scale;
    std::vector<ReinforcementCell> cells;  // (UP,v),(DOWN,v) for v = 2..max_code
    BaseRates base_rates;
    OrdEvalParams params;  // resolved parameters the profile was computed with

    const ReinforcementCell& cell(Direction d, int value) const;
    ReinforcementCell& cell(Direction d, int value);
};

// Raw event tallies for one attribute, before any significance machinery.
struct ReinforcementCounts {
    int max_code = 0;
    // Indexed by value - 2 for values 2..max_code.
    std::vector<long> up_events, up_success, up_anti;
    std::vector<long> down_events, down_success, down_anti;
    long pair_count = 0;
    long response_up_pairs = 0;
    long response_down_pairs = 0;

    explicit ReinforcementCounts(int max_code_ = 0);
    bool operator==(const ReinforcementCounts&) const = default;
};

// The k rows most similar to `pivot`, excluding the pivot itself, with every
// row tied at the k-th distance included. `exclude_attr` drops that attribute
// from the distance.
std::vector<int> nearest_context(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                                 int pivot, std::optional<int> exclude_attr, int k);

// Tallies upward/downward reinforcement events for one attribute over all
// (pivot, context member) pairs. Increases are attributed to the target
// value, decreases to the source value; equal or missing values record
// nothing.
ReinforcementCounts compute_reinforcements(const OrdinalDataset& dataset, int attr,
                                           const OrdEvalParams& params);

// Per-cell boxes of the permutation null: the attribute column is shuffled
// B times (preserving its marginal distribution), probabilities recomputed,
// and the 2.5/25/50/75/97.5 empirical percentiles collected. Cells undefined
// in a replicate contribute no sample. Deterministic for a fixed seed.
// Returned in profile cell order: (UP,v),(DOWN,v) for v = 2..max_code.
std::vector<NullBox> null_distribution(const OrdinalDataset& dataset, int attr,
                                       const OrdEvalParams& params, int threads = 1);

// Full evaluation of one attribute: counts, permutation-null boxes at the
// 2.5/25/50/75/97.5 percentiles, and significance flags. Deterministic for a
// fixed seed; `threads` parallelizes bootstrap replicates without changing
// the result.
ReinforcementProfile evaluate_attribute(const OrdinalDataset& dataset, int attr,
                                        const OrdEvalParams& params, int threads = 1);

// Evaluates every attribute with an independent RNG stream derived from
// params.seed and the attribute index. Output order follows declaration
// order; parallel and serial runs produce identical profiles.
std::vector<ReinforcementProfile> evaluate_all(const OrdinalDataset& dataset,
                                               const OrdEvalParams& params, int threads = 1);

}  // namespace ordeval
