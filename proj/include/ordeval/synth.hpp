#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"
#include "ordeval/kano.hpp"

namespace ordeval {

// Idealized satisfaction curve of one attribute. Step categories swing by the
// scale halfspan (s - 1) / 2, linear ones by slope * (value - midpoint), so a
// unit-weight attribute can move the response across half the scale.
struct KanoShape {
    KanoBase category = KanoBase::indifferent_inconclusive;
    int threshold = 0;    // must_be: negative below; attractive: positive at/above
    double slope = 1.0;   // one_dimensional / reverse
    double weight = 1.0;  // relative contribution; normalized per subgroup
};

struct SubgroupSpec {
    double weight = 1.0;
    std::map<std::string, KanoShape> overrides;  // attribute name -> shape
};

struct SyntheticPopulationSpec {
    int n = 0;
    OrdinalScale scale{7, {}};
    std::vector<std::pair<std::string, KanoShape>> attributes;
    std::vector<SubgroupSpec> subgroups;  // empty = one full-weight subgroup
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError with a field path
};

// Contribution of one attribute value to the latent satisfaction, centered
// at 0 (a value at the scale midpoint of a linear attribute contributes 0).
double ideal_contribution(const KanoShape& shape, int value, const OrdinalScale& scale);

// Draws respondents: subgroup by weight, attribute codes uniform over the
// scale, response = clamp(round(midpoint + weighted contributions + Gaussian
// noise)). Each respondent has a derived RNG stream, so the result is a pure
// function of the spec.
OrdinalDataset generate_population(const SyntheticPopulationSpec& spec);

struct GroundTruthAttribute {
    std::string name;
    KanoCategory dominant;
    std::vector<std::pair<double, KanoBase>> subgroup_categories;  // (weight, category)
    std::string note;
};

struct GroundTruth {
    std::vector<GroundTruthAttribute> attributes;
};

// Expected category per attribute. A single category dominates when it holds
// at least `dominance_threshold` of the population weight; otherwise the
// truth is MIXED over every category holding a non-trivial share.
GroundTruth ground_truth(const SyntheticPopulationSpec& spec, double dominance_threshold = 0.75);

}  // namespace ordeval
