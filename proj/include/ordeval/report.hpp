#pragma once

#include <string>
#include <vector>

#include "ordeval/kano.hpp"
#include "ordeval/reinforcement.hpp"
#include "ordeval/relieff.hpp"

namespace ordeval {

struct ProfilePlotOptions {
    int axis_px = 240;    // length of each half axis mapping [0, 1]
    int row_px = 64;      // height per value row
    bool legend = true;
};

// Reinforcement profile as a standalone SVG document: one row per value
// (highest on top), downward bars growing left, upward bars growing right,
// permutation-null box-and-whiskers above each bar. Undefined cells render a
// hollow placeholder; significant cells carry a "significant" class. Output
// is byte-identical for identical inputs.
std::string render_profile(const ReinforcementProfile& profile, const ProfilePlotOptions& options = {});

// Relevance ranking as horizontal bars around a marked zero axis, ordered by
// rank. Accepts the ranked ordering from rank_attributes.
std::string render_ranking(const std::vector<AttributeScore>& ranked);

// Plain-text report: one section per attribute (score, cell table, category
// with evidence) plus a closing two-column summary table. The attribute sets
// of the three inputs must agree.
std::string render_text_report(const std::vector<ReinforcementProfile>& profiles,
                               const std::vector<KanoClassification>& classifications,
                               const std::vector<AttributeScore>& ranked_scores);

}  // namespace ordeval
