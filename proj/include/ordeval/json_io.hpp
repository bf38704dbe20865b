#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ordeval/csv.hpp"
#include "ordeval/kano.hpp"
#include "ordeval/reinforcement.hpp"
#include "ordeval/relieff.hpp"
#include "ordeval/synth.hpp"

namespace ordeval {

inline constexpr int kSchemaVersion = 1;

nlohmann::json scores_to_json(const std::vector<AttributeScore>& ranked, const ReliefFParams& params,
                              const ReliefFResult& result);

nlohmann::json profiles_to_json(const std::vector<ReinforcementProfile>& profiles);
std::vector<ReinforcementProfile> profiles_from_json(const nlohmann::json& j);

nlohmann::json classifications_to_json(const std::vector<KanoClassification>& classifications);

nlohmann::json validation_report_to_json(const ValidationReport& report);

nlohmann::json ground_truth_to_json(const GroundTruth& truth);

nlohmann::json synth_spec_to_json(const SyntheticPopulationSpec& spec);
// Throws ValidationError carrying the JSON field path on malformed input.
SyntheticPopulationSpec synth_spec_from_json(const nlohmann::json& j);

}  // namespace ordeval
