#pragma once

#include <string>
#include <vector>

#include "ordeval/reinforcement.hpp"

namespace ordeval {

enum class KanoBase {
    must_be,
    one_dimensional,
    attractive,
    indifferent_inconclusive,
    reverse,
};

const char* kano_base_name(KanoBase base);
KanoBase kano_base_from_name(const std::string& name);

// A base category, or a mixture of two or more when subpopulations disagree.
struct KanoCategory {
    std::vector<KanoBase> components;

    static KanoCategory single(KanoBase base) { return {{base}}; }
    static KanoCategory mixed(std::vector<KanoBase> bases);

    bool is_mixed() const { return components.size() >= 2; }
    KanoBase base() const { return components.front(); }
    std::string name() const;  // "MUST_BE" or "MIXED(MUST_BE, ONE_DIMENSIONAL)"
    bool operator==(const KanoCategory&) const = default;
};

// A significant cell backing a classification. `anti` marks cells whose
// probability fell below the null box (same-direction reinforcement
// significantly weaker than chance, i.e. the response moves against the
// attribute).
struct EvidenceCell {
    Direction direction = Direction::up;
    int value = 0;
    bool anti = false;
    double probability = 0.0;
};

struct ZoneSummary {
    std::vector<int> low, mid, high;  // partition of values 2..s
    bool low_significant = false;
    bool mid_significant = false;
    bool high_significant = false;
};

struct KanoClassification {
    std::string attribute;
    KanoCategory category = KanoCategory::single(KanoBase::indifferent_inconclusive);
    std::vector<EvidenceCell> evidence;
    ZoneSummary zones;
    std::string notes;
};

struct KanoRuleConfig {
    // Zone split over values 2..s: first ceil(m * low_fraction) values are
    // the low zone, last ceil(m * high_fraction) the high zone.
    double low_fraction = 1.0 / 3.0;
    double high_fraction = 1.0 / 3.0;
    // Rule 5 threshold: fraction of defined cells that must be significant
    // for a spanning pattern to read as one-dimensional.
    double coverage_fraction = 0.5;
    // Keep a significant cell as evidence only when corroborated by the same
    // value's other direction or an adjacent value's same direction on the
    // same side. Controls the chance of reading isolated noise as a pattern.
    bool require_corroboration = true;
    // Evidence must clear the null box edge by this multiple of the box's
    // half-width (q975 - median, or median - q025 on the anti side). Cells
    // just past the edge stay significant but do not drive the category;
    // with ~2(s-1) cells tested per attribute, chance-level crossings are
    // expected and sit close to the edge.
    double evidence_margin = 1.5;
    // A single linear relation is at its weakest at the bottom of the scale
    // (value 2 pairs only ever see one-step jumps). When both direction
    // cells at value 2 are evidence and their clearance reaches this
    // fraction of the best mid/high clearance, the profile reads as a
    // must-be group overlaid on an upper pattern instead of one linear
    // relation, and the spanning rule hands over to the mixed rule.
    // 0 disables the check.
    double bottom_pair_dominance = 0.4;
};

// Zone partition of values 2..s (total and disjoint).
ZoneSummary zone_partition(const OrdinalScale& scale, const KanoRuleConfig& rules);

// Maps a reinforcement profile to a Kano category with supporting evidence.
// Deterministic; INDIFFERENT_INCONCLUSIVE exactly when the curated evidence
// set is empty.
KanoClassification classify(const ReinforcementProfile& profile, const KanoRuleConfig& rules = {});

std::vector<KanoClassification> classify_all(const std::vector<ReinforcementProfile>& profiles,
                                             const KanoRuleConfig& rules = {});

// Closed vocabulary used by the text report's summary table.
std::string kano_category_phrase(const KanoCategory& category);

}  // namespace ordeval
