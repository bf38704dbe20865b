#include "ordeval/kano.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ordeval/errors.hpp"

namespace ordeval {

const char* kano_base_name(KanoBase base) {
    switch (base) {
        case KanoBase::must_be: return "MUST_BE";
        case KanoBase::one_dimensional: return "ONE_DIMENSIONAL";
        case KanoBase::attractive: return "ATTRACTIVE";
        case KanoBase::indifferent_inconclusive: return "INDIFFERENT_INCONCLUSIVE";
        case KanoBase::reverse: return "REVERSE";
    }
    return "INDIFFERENT_INCONCLUSIVE";
}

KanoBase kano_base_from_name(const std::string& name) {
    if (name == "MUST_BE") return KanoBase::must_be;
    if (name == "ONE_DIMENSIONAL") return KanoBase::one_dimensional;
    if (name == "ATTRACTIVE") return KanoBase::attractive;
    if (name == "INDIFFERENT_INCONCLUSIVE" || name == "INDIFFERENT") {
        return KanoBase::indifferent_inconclusive;
    }
    if (name == "REVERSE") return KanoBase::reverse;
    throw ValidationError("unknown Kano category name '" + name + "'");
}

KanoCategory KanoCategory::mixed(std::vector<KanoBase> bases) {
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    if (bases.size() < 2) throw ValidationError("mixed category needs at least 2 distinct bases");
    return {std::move(bases)};
}

std::string KanoCategory::name() const {
    if (!is_mixed()) return kano_base_name(components.front());
    std::string out = "MIXED(";
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i > 0) out += ", ";
        out += kano_base_name(components[i]);
    }
    out += ")";
    return out;
}

ZoneSummary zone_partition(const OrdinalScale& scale, const KanoRuleConfig& rules) {
    ZoneSummary zones;
    const int m = scale.max_code - 1;  // values 2..max_code
    int n_low = static_cast<int>(std::ceil(m * rules.low_fraction));
    n_low = std::clamp(n_low, 1, m);
    int n_high = static_cast<int>(std::ceil(m * rules.high_fraction));
    n_high = std::clamp(n_high, 0, m - n_low);
    for (int v = 2; v <= scale.max_code; ++v) {
        const int pos = v - 2;
        if (pos < n_low) zones.low.push_back(v);
        else if (pos >= m - n_high) zones.high.push_back(v);
        else zones.mid.push_back(v);
    }
    return zones;
}

namespace {

enum class Zone { low, mid, high };

Zone zone_of(int value, const ZoneSummary& zones) {
    if (std::find(zones.low.begin(), zones.low.end(), value) != zones.low.end()) return Zone::low;
    if (std::find(zones.high.begin(), zones.high.end(), value) != zones.high.end()) return Zone::high;
    return Zone::mid;
}

struct RawCell {
    Direction direction;
    int value;
    bool anti;  // probability below the null box
    double probability;
};

// How far the probability clears the upper box edge, in half-box widths.
// Zero inside or below the box; a degenerate box counts any crossing as a
// large clearance.
double upper_clearance(const ReinforcementCell& cell) {
    if (!cell.probability || *cell.probability <= cell.null_box.q975) return 0.0;
    const double half = cell.null_box.q975 - cell.null_box.median;
    return half > 0.0 ? (*cell.probability - cell.null_box.q975) / half : 1e9;
}

// Clears the box edge by at least margin * half-box-width on its side.
bool clears_margin(const ReinforcementCell& cell, double margin) {
    if (!cell.probability) return false;
    const double p = *cell.probability;
    const NullBox& box = cell.null_box;
    if (p > box.q975) return p - box.q975 >= margin * (box.q975 - box.median);
    if (p < box.q025) return box.q025 - p >= margin * (box.median - box.q025);
    return false;
}

// A corroborating partner only needs plain significance on the same side;
// the margin requirement stays with the cell under consideration.
bool significant_same_side(const ReinforcementProfile& profile, Direction d, int value, bool anti) {
    if (value < 2 || value > profile.scale.max_code) return false;
    const ReinforcementCell& cell = profile.cell(d, value);
    if (!cell.significant || !cell.probability) return false;
    const bool cell_anti = *cell.probability < cell.null_box.q025;
    return cell_anti == anti;
}

}  // namespace

KanoClassification classify(const ReinforcementProfile& profile, const KanoRuleConfig& rules) {
    KanoClassification out;
    out.attribute = profile.attribute;
    out.zones = zone_partition(profile.scale, rules);

    long defined_cells = 0;
    std::vector<RawCell> raw;
    for (const ReinforcementCell& cell : profile.cells) {
        if (cell.probability) ++defined_cells;
        if (!cell.significant || !cell.probability) continue;
        raw.push_back({cell.direction, cell.value, *cell.probability < cell.null_box.q025,
                       *cell.probability});
    }

    if (defined_cells == 0) {
        out.notes = "insufficient support: all cells below min_support";
        return out;
    }
    if (raw.empty()) {
        out.notes = "no significant reinforcement";
        return out;
    }

    // Evidence curation: keep corroborated cells that clear the box by a
    // margin, discount marginal or isolated ones.
    std::vector<RawCell> kept;
    long discounted = 0;
    for (const RawCell& cell : raw) {
        bool keep = clears_margin(profile.cell(cell.direction, cell.value), rules.evidence_margin);
        if (keep && rules.require_corroboration) {
            const Direction other =
                cell.direction == Direction::up ? Direction::down : Direction::up;
            keep = significant_same_side(profile, other, cell.value, cell.anti) ||
                   significant_same_side(profile, cell.direction, cell.value - 1, cell.anti) ||
                   significant_same_side(profile, cell.direction, cell.value + 1, cell.anti);
        }
        if (keep) kept.push_back(cell);
        else ++discounted;
    }

    if (kept.empty()) {
        out.notes = "inconclusive: " + std::to_string(discounted) +
                    " isolated significant cell(s) discounted as chance-level";
        return out;
    }
    if (discounted > 0) {
        out.notes = std::to_string(discounted) + " isolated significant cell(s) discounted; ";
    }

    for (const RawCell& cell : kept) {
        out.evidence.push_back({cell.direction, cell.value, cell.anti, cell.probability});
        switch (zone_of(cell.value, out.zones)) {
            case Zone::low: out.zones.low_significant = true; break;
            case Zone::mid: out.zones.mid_significant = true; break;
            case Zone::high: out.zones.high_significant = true; break;
        }
    }

    long regular_cells = 0;
    long anti_cells = 0;
    std::set<int> regular_values;
    for (const RawCell& cell : kept) {
        if (cell.anti) ++anti_cells;
        else {
            ++regular_cells;
            regular_values.insert(cell.value);
        }
    }

    // Rule 2: reverse quality when anti-direction evidence dominates.
    if (anti_cells > regular_cells) {
        out.category = KanoCategory::single(KanoBase::reverse);
        out.notes += "attribute increases significantly predict response decreases";
        return out;
    }

    const auto in_zone = [&](const std::vector<int>& zone) {
        return std::any_of(regular_values.begin(), regular_values.end(), [&](int v) {
            return std::find(zone.begin(), zone.end(), v) != zone.end();
        });
    };
    const bool touches_low = in_zone(out.zones.low);
    const bool touches_mid = in_zone(out.zones.mid);
    const bool touches_high = in_zone(out.zones.high);

    const auto only_in = [&](const std::vector<int>& zone) {
        return std::all_of(regular_values.begin(), regular_values.end(), [&](int v) {
            return std::find(zone.begin(), zone.end(), v) != zone.end();
        });
    };

    // Rule 3 / 4: evidence confined to one end of the scale.
    if (!regular_values.empty() && only_in(out.zones.low)) {
        out.category = KanoCategory::single(KanoBase::must_be);
        out.notes += "significant reinforcement confined to low values";
        return out;
    }
    if (!regular_values.empty() && only_in(out.zones.high)) {
        out.category = KanoCategory::single(KanoBase::attractive);
        out.notes += "significant reinforcement confined to high values";
        return out;
    }

    // Rule 5: broad coverage spanning the mid zone reads as linear, unless a
    // corroborated pair at the bottom value rivals the upper cells.
    const int zones_touched = (touches_low ? 1 : 0) + (touches_mid ? 1 : 0) + (touches_high ? 1 : 0);
    const bool covers = regular_cells >= rules.coverage_fraction * static_cast<double>(defined_cells);
    bool bottom_dominant = false;
    if (rules.bottom_pair_dominance > 0.0) {
        bool up2 = false;
        bool down2 = false;
        double bottom_clearance = 0.0;
        double upper_max = 0.0;
        for (const RawCell& cell : kept) {
            if (cell.anti) continue;
            const double ratio = upper_clearance(profile.cell(cell.direction, cell.value));
            if (cell.value == 2) {
                (cell.direction == Direction::up ? up2 : down2) = true;
                bottom_clearance = std::max(bottom_clearance, ratio);
            } else if (zone_of(cell.value, out.zones) != Zone::low) {
                upper_max = std::max(upper_max, ratio);
            }
        }
        bottom_dominant = up2 && down2 && upper_max > 0.0 &&
                          bottom_clearance >= rules.bottom_pair_dominance * upper_max;
    }
    if (zones_touched >= 2 && touches_mid && covers && !bottom_dominant) {
        out.category = KanoCategory::single(KanoBase::one_dimensional);
        out.notes += "reinforcement spans the scale";
        return out;
    }

    // Rule 6: separated low and upper evidence marks subgroup disagreement.
    // Each perception group needs at least two supporting cells; a lone cell
    // on one side reads as spillover of the other group's pattern.
    if (touches_low && (touches_mid || touches_high)) {
        long low_cells = 0;
        long upper_cells = 0;
        bool upper_mid = false;
        for (const RawCell& cell : kept) {
            if (cell.anti) continue;
            if (zone_of(cell.value, out.zones) == Zone::low) {
                ++low_cells;
            } else {
                ++upper_cells;
                if (zone_of(cell.value, out.zones) == Zone::mid) upper_mid = true;
            }
        }
        if (low_cells >= 2 && upper_cells >= 2) {
            const KanoBase upper = upper_mid ? KanoBase::one_dimensional : KanoBase::attractive;
            out.category = KanoCategory::mixed({KanoBase::must_be, upper});
            out.notes += "distinct low-value and upper-value reinforcement groups";
            return out;
        }
        if (low_cells >= upper_cells) {
            out.category = KanoCategory::single(KanoBase::must_be);
            out.notes += "low-value reinforcement with isolated upper spillover";
            return out;
        }
        out.category = KanoCategory::single(upper_mid ? KanoBase::one_dimensional
                                                      : KanoBase::attractive);
        out.notes += "upper-value reinforcement with isolated low spillover";
        return out;
    }

    // Fallback: mid-anchored evidence without rule-5 coverage.
    out.category = KanoCategory::single(KanoBase::one_dimensional);
    out.notes += "partial value coverage; linear tendency";
    return out;
}

std::vector<KanoClassification> classify_all(const std::vector<ReinforcementProfile>& profiles,
                                             const KanoRuleConfig& rules) {
    if (profiles.empty()) throw ValidationError("cannot classify an empty profile list");
    std::vector<KanoClassification> out;
    out.reserve(profiles.size());
    for (const auto& profile : profiles) out.push_back(classify(profile, rules));
    return out;
}

std::string kano_category_phrase(const KanoCategory& category) {
    if (!category.is_mixed()) {
        switch (category.base()) {
            case KanoBase::must_be: return "Must-be quality";
            case KanoBase::one_dimensional: return "One-dimensional quality";
            case KanoBase::attractive: return "Attractive quality";
            case KanoBase::indifferent_inconclusive: return "Indifferent or inconclusive";
            case KanoBase::reverse: return "Reverse quality";
        }
    }
    std::string out = "Mixed:";
    for (std::size_t i = 0; i < category.components.size(); ++i) {
        out += (i == 0 ? " " : " and ");
        switch (category.components[i]) {
            case KanoBase::must_be: out += "must-be"; break;
            case KanoBase::one_dimensional: out += "one-dimensional"; break;
            case KanoBase::attractive: out += "attractive"; break;
            case KanoBase::indifferent_inconclusive: out += "indifferent"; break;
            case KanoBase::reverse: out += "reverse"; break;
        }
    }
    out += " quality";
    return out;
}

}  // namespace ordeval
