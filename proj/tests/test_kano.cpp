#include <doctest.h>

#include <algorithm>
#include <set>

#include "ordeval/kano.hpp"
#include "ordeval/rng.hpp"

using namespace ordeval;

namespace {

enum class CellState { undefined, insignificant, sig_high, sig_low, sig_marginal };

// Builds a profile on a 1..s scale from explicit cell states. Significant
// cells sit far outside the shared null box [0.4, 0.6]; insignificant ones
// at the base rate 0.5.
ReinforcementProfile make_profile(int s, const std::vector<std::pair<std::pair<Direction, int>, CellState>>& states) {
    ReinforcementProfile profile;
    profile.attribute = "probe";
    profile.scale = {s, {}};
    profile.base_rates = {0.5, 0.5};
    profile.cells.resize(static_cast<std::size_t>(2 * (s - 1)));
    for (int v = 2; v <= s; ++v) {
        for (const Direction d : {Direction::up, Direction::down}) {
            ReinforcementCell& cell = profile.cell(d, v);
            cell.direction = d;
            cell.value = v;
            cell.events = 100;
            cell.success = 50;
            cell.null_box = {0.4, 0.45, 0.5, 0.55, 0.6};
            cell.probability = 0.5;
            cell.anti_probability = 0.3;
        }
    }
    for (const auto& [key, state] : states) {
        ReinforcementCell& cell = profile.cell(key.first, key.second);
        switch (state) {
            case CellState::undefined:
                cell.probability.reset();
                cell.anti_probability.reset();
                cell.events = 2;
                break;
            case CellState::insignificant:
                break;
            case CellState::sig_high:
                cell.probability = 0.9;
                cell.significant = true;
                break;
            case CellState::sig_low:
                cell.probability = 0.05;
                cell.anti_probability = 0.85;
                cell.significant = true;
                break;
            case CellState::sig_marginal:
                // Just past the box edge: flagged, but below the evidence margin.
                cell.probability = 0.62;
                cell.significant = true;
                break;
        }
    }
    return profile;
}

using CellSpec = std::vector<std::pair<std::pair<Direction, int>, CellState>>;

CellSpec both_directions(const std::vector<int>& values, CellState state) {
    CellSpec spec;
    for (const int v : values) {
        spec.push_back({{Direction::up, v}, state});
        spec.push_back({{Direction::down, v}, state});
    }
    return spec;
}

ReinforcementProfile all_undefined_profile(int s) {
    CellSpec spec;
    for (int v = 2; v <= s; ++v) {
        spec.push_back({{Direction::up, v}, CellState::undefined});
        spec.push_back({{Direction::down, v}, CellState::undefined});
    }
    return make_profile(s, spec);
}

}  // namespace

TEST_CASE("zone partition is total and disjoint for every scale") {
    for (int s = 2; s <= 9; ++s) {
        const ZoneSummary zones = zone_partition(OrdinalScale{s, {}}, {});
        std::set<int> seen;
        for (const auto* zone : {&zones.low, &zones.mid, &zones.high}) {
            for (const int v : *zone) {
                CHECK(seen.insert(v).second);  // disjoint
            }
        }
        CHECK(static_cast<int>(seen.size()) == s - 1);  // total over 2..s
        CHECK(*seen.begin() == 2);
        CHECK(*seen.rbegin() == s);
    }
    // The canonical 7-point split.
    const ZoneSummary z7 = zone_partition(OrdinalScale{7, {}}, {});
    CHECK(z7.low == std::vector<int>{2, 3});
    CHECK(z7.mid == std::vector<int>{4, 5});
    CHECK(z7.high == std::vector<int>{6, 7});
}

TEST_CASE("significant UP+DOWN across values 3..6 reads one-dimensional") {
    const ReinforcementProfile profile =
        make_profile(7, both_directions({3, 4, 5, 6}, CellState::sig_high));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::one_dimensional));
    CHECK(cls.evidence.size() == 8);
    CHECK(cls.zones.low_significant);
    CHECK(cls.zones.mid_significant);
    CHECK(cls.zones.high_significant);
}

TEST_CASE("significance confined to values 2,3 reads must-be") {
    const ReinforcementProfile profile =
        make_profile(7, both_directions({2, 3}, CellState::sig_high));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::must_be));
    CHECK(cls.zones.low_significant);
    CHECK_FALSE(cls.zones.mid_significant);
    CHECK_FALSE(cls.zones.high_significant);
}

TEST_CASE("significance confined to value 7 reads attractive") {
    const ReinforcementProfile profile = make_profile(7, both_directions({7}, CellState::sig_high));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::attractive));
}

TEST_CASE("no significant cells reads indifferent/inconclusive") {
    const ReinforcementProfile profile = make_profile(7, {});
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::indifferent_inconclusive));
    CHECK(cls.evidence.empty());
}

TEST_CASE("low-zone plus upper evidence without broad coverage reads mixed") {
    // Value 2 both directions, values 5 and 6 upward only: 4 of 12 cells is
    // under the one-dimensional coverage bar, so the low and upper groups
    // stay separate perceptions.
    CellSpec spec = both_directions({2}, CellState::sig_high);
    spec.push_back({{Direction::up, 5}, CellState::sig_high});
    spec.push_back({{Direction::up, 6}, CellState::sig_high});
    const KanoClassification cls = classify(make_profile(7, spec));
    CHECK(cls.category == KanoCategory::mixed({KanoBase::must_be, KanoBase::one_dimensional}));
    CHECK(cls.zones.low_significant);
}

TEST_CASE("low plus high-only evidence mixes must-be with attractive") {
    CellSpec spec = both_directions({2}, CellState::sig_high);
    spec.push_back({{Direction::up, 7}, CellState::sig_high});
    spec.push_back({{Direction::down, 7}, CellState::sig_high});
    const KanoClassification cls = classify(make_profile(7, spec));
    CHECK(cls.category == KanoCategory::mixed({KanoBase::must_be, KanoBase::attractive}));
}

TEST_CASE("a strong bottom pair redirects broad coverage to mixed") {
    // Equal-strength evidence at 2 and across 4..6 would satisfy the
    // spanning rule, but a bottom pair this strong is inconsistent with one
    // linear relation (value-2 cells only ever see one-step jumps).
    const ReinforcementProfile profile =
        make_profile(7, both_directions({2, 4, 5, 6}, CellState::sig_high));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::mixed({KanoBase::must_be, KanoBase::one_dimensional}));
}

TEST_CASE("a lone upper cell is spillover, not a mixed component") {
    // DOWN@5 is flagged but marginal: it corroborates UP@5 without becoming
    // evidence itself, leaving a single upper cell against the low pair.
    CellSpec spec = both_directions({2}, CellState::sig_high);
    spec.push_back({{Direction::up, 5}, CellState::sig_high});
    spec.push_back({{Direction::down, 5}, CellState::sig_marginal});
    const KanoClassification cls = classify(make_profile(7, spec));
    CHECK(cls.category == KanoCategory::single(KanoBase::must_be));
    CHECK(cls.notes.find("spillover") != std::string::npos);
}

TEST_CASE("marginal significant cells do not drive the category") {
    const ReinforcementProfile profile =
        make_profile(7, both_directions({6, 7}, CellState::sig_marginal));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::indifferent_inconclusive));
    CHECK(cls.notes.find("discounted") != std::string::npos);
}

TEST_CASE("dominant anti-direction evidence reads reverse") {
    const ReinforcementProfile profile =
        make_profile(7, both_directions({3, 4, 5, 6}, CellState::sig_low));
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::reverse));
    for (const auto& ev : cls.evidence) CHECK(ev.anti);
}

TEST_CASE("all cells undefined reads inconclusive with a support note") {
    const KanoClassification cls = classify(all_undefined_profile(7));
    CHECK(cls.category == KanoCategory::single(KanoBase::indifferent_inconclusive));
    CHECK(cls.notes.find("insufficient support") != std::string::npos);
    CHECK(cls.evidence.empty());
}

TEST_CASE("an isolated significant cell is discounted as chance-level") {
    const ReinforcementProfile profile =
        make_profile(7, {{{Direction::up, 5}, CellState::sig_high}});
    const KanoClassification cls = classify(profile);
    CHECK(cls.category == KanoCategory::single(KanoBase::indifferent_inconclusive));
    CHECK(cls.evidence.empty());
    CHECK(cls.notes.find("discounted") != std::string::npos);

    KanoRuleConfig raw;
    raw.require_corroboration = false;
    const KanoClassification cls_raw = classify(profile, raw);
    CHECK(cls_raw.category != KanoCategory::single(KanoBase::indifferent_inconclusive));
}

TEST_CASE("classification is deterministic") {
    CellSpec spec = both_directions({2, 6}, CellState::sig_high);
    const ReinforcementProfile profile = make_profile(7, spec);
    const KanoClassification a = classify(profile);
    const KanoClassification b = classify(profile);
    CHECK(a.category == b.category);
    CHECK(a.notes == b.notes);
    CHECK(a.evidence.size() == b.evidence.size());
}

TEST_CASE("removing a significant cell never un-does indifference") {
    Rng rng(97);
    for (int trial = 0; trial < 200; ++trial) {
        CellSpec spec;
        for (int v = 2; v <= 7; ++v) {
            for (const Direction d : {Direction::up, Direction::down}) {
                const int roll = rng.uniform_int(0, 9);
                CellState state = CellState::insignificant;
                if (roll == 0) state = CellState::sig_high;
                else if (roll == 1) state = CellState::sig_low;
                else if (roll == 2) state = CellState::undefined;
                spec.push_back({{d, v}, state});
            }
        }
        ReinforcementProfile profile = make_profile(7, spec);
        if (classify(profile).category != KanoCategory::single(KanoBase::indifferent_inconclusive)) {
            continue;
        }
        for (auto& cell : profile.cells) {
            if (!cell.significant) continue;
            ReinforcementProfile reduced = profile;
            reduced.cell(cell.direction, cell.value).significant = false;
            CHECK(classify(reduced).category ==
                  KanoCategory::single(KanoBase::indifferent_inconclusive));
        }
    }
}

TEST_CASE("classify_all preserves order and rejects empty input") {
    std::vector<ReinforcementProfile> profiles;
    for (int i = 0; i < 6; ++i) {
        ReinforcementProfile p = make_profile(7, {});
        p.attribute = "attr" + std::to_string(i);
        profiles.push_back(std::move(p));
    }
    const std::vector<KanoClassification> all = classify_all(profiles);
    REQUIRE(all.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(all[static_cast<std::size_t>(i)].attribute == "attr" + std::to_string(i));
        CHECK(all[static_cast<std::size_t>(i)].category ==
              KanoCategory::single(KanoBase::indifferent_inconclusive));
    }
    CHECK_THROWS(classify_all({}));
}

TEST_CASE("category names and phrases form a closed vocabulary") {
    CHECK(KanoCategory::single(KanoBase::must_be).name() == "MUST_BE");
    CHECK(KanoCategory::mixed({KanoBase::one_dimensional, KanoBase::must_be}).name() ==
          "MIXED(MUST_BE, ONE_DIMENSIONAL)");
    CHECK(kano_category_phrase(KanoCategory::single(KanoBase::attractive)) == "Attractive quality");
    CHECK(kano_category_phrase(KanoCategory::mixed({KanoBase::must_be, KanoBase::one_dimensional})) ==
          "Mixed: must-be and one-dimensional quality");
    CHECK(kano_base_from_name("REVERSE") == KanoBase::reverse);
    CHECK(kano_base_from_name("INDIFFERENT") == KanoBase::indifferent_inconclusive);
    CHECK_THROWS(kano_base_from_name("SOMETHING_ELSE"));
    CHECK_THROWS(KanoCategory::mixed({KanoBase::must_be}));
}
