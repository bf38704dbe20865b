#include "ordeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ordeval/errors.hpp"
#include "ordeval/rng.hpp"

namespace ordeval {

void SyntheticPopulationSpec::validate() const {
    if (n < 1) throw ValidationError("n: must be at least 1");
    if (noise_sigma < 0.0) throw ValidationError("noise_sigma: must be non-negative");
    scale.validate();
    if (attributes.empty()) throw ValidationError("attributes: at least one attribute required");

    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        const auto& [name, shape] = attributes[i];
        const std::string path = "attributes[" + std::to_string(i) + "]";
        if (name.empty()) throw ValidationError(path + ".name: must not be empty");
        if (++seen[name] > 1) throw ValidationError(path + ".name: duplicate attribute '" + name + "'");
        if (shape.weight < 0.0) throw ValidationError(path + ".weight: must be non-negative");
        if ((shape.category == KanoBase::must_be || shape.category == KanoBase::attractive) &&
            !scale.contains(shape.threshold)) {
            throw ValidationError(path + ".threshold: " + std::to_string(shape.threshold) +
                                  " outside scale 1.." + std::to_string(scale.max_code));
        }
    }

    if (!subgroups.empty()) {
        double total = 0.0;
        for (std::size_t g = 0; g < subgroups.size(); ++g) {
            const std::string path = "subgroups[" + std::to_string(g) + "]";
            if (subgroups[g].weight <= 0.0 || subgroups[g].weight > 1.0) {
                throw ValidationError(path + ".weight: must lie in (0, 1]");
            }
            total += subgroups[g].weight;
            for (const auto& [name, shape] : subgroups[g].overrides) {
                if (seen.find(name) == seen.end()) {
                    throw ValidationError(path + ".overrides: unknown attribute '" + name + "'");
                }
                if ((shape.category == KanoBase::must_be || shape.category == KanoBase::attractive) &&
                    !scale.contains(shape.threshold)) {
                    throw ValidationError(path + ".overrides['" + name + "'].threshold: " +
                                          std::to_string(shape.threshold) + " outside scale");
                }
            }
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("subgroups: weights sum to " + std::to_string(total) + ", expected 1");
        }
    }
}

double ideal_contribution(const KanoShape& shape, int value, const OrdinalScale& scale) {
    const double midpoint = (1.0 + scale.max_code) / 2.0;
    const double halfspan = (scale.max_code - 1.0) / 2.0;
    switch (shape.category) {
        case KanoBase::must_be:
            return value < shape.threshold ? -halfspan : 0.0;
        case KanoBase::attractive:
            return value >= shape.threshold ? halfspan : 0.0;
        case KanoBase::one_dimensional:
            return shape.slope * (value - midpoint);
        case KanoBase::reverse:
            return -shape.slope * (value - midpoint);
        case KanoBase::indifferent_inconclusive:
            return 0.0;
    }
    return 0.0;
}

namespace {

// Effective shapes of one subgroup: defaults overlaid with its overrides.
std::vector<KanoShape> subgroup_shapes(const SyntheticPopulationSpec& spec,
                                       const SubgroupSpec& subgroup) {
    std::vector<KanoShape> shapes;
    shapes.reserve(spec.attributes.size());
    for (const auto& [name, shape] : spec.attributes) {
        auto it = subgroup.overrides.find(name);
        shapes.push_back(it != subgroup.overrides.end() ? it->second : shape);
    }
    return shapes;
}

std::vector<double> normalized_weights(const std::vector<KanoShape>& shapes) {
    double total = 0.0;
    for (const auto& shape : shapes) total += shape.weight;
    std::vector<double> weights(shapes.size(), 0.0);
    if (total <= 0.0) return weights;
    for (std::size_t j = 0; j < shapes.size(); ++j) weights[j] = shapes[j].weight / total;
    return weights;
}

}  // namespace

OrdinalDataset generate_population(const SyntheticPopulationSpec& spec) {
    spec.validate();
    if (spec.n < 2) {
        throw ValidationError("n: a generated dataset needs at least 2 respondents");
    }
    const int n = spec.n;
    const int a = static_cast<int>(spec.attributes.size());
    const int s = spec.scale.max_code;
    const double midpoint = (1.0 + s) / 2.0;

    std::vector<SubgroupSpec> groups = spec.subgroups;
    if (groups.empty()) groups.push_back(SubgroupSpec{1.0, {}});

    std::vector<std::vector<KanoShape>> shapes;
    std::vector<std::vector<double>> weights;
    for (const auto& group : groups) {
        shapes.push_back(subgroup_shapes(spec, group));
        weights.push_back(normalized_weights(shapes.back()));
    }

    std::vector<int> cells(static_cast<std::size_t>(n) * a, kMissingCode);
    std::vector<int> response(static_cast<std::size_t>(n), 1);

    for (int i = 0; i < n; ++i) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));

        // Fixed draw order per respondent: subgroup, codes, noise.
        std::size_t g = 0;
        const double u = rng.uniform01();
        double cumulative = 0.0;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            cumulative += groups[gi].weight;
            if (u < cumulative) {
                g = gi;
                break;
            }
            g = gi;
        }

        double latent = midpoint;
        for (int j = 0; j < a; ++j) {
            const int code = rng.uniform_int(1, s);
            cells[static_cast<std::size_t>(i) * a + j] = code;
            latent += weights[g][static_cast<std::size_t>(j)] *
                      ideal_contribution(shapes[g][static_cast<std::size_t>(j)], code, spec.scale);
        }
        if (spec.noise_sigma > 0.0) latent += rng.gaussian(spec.noise_sigma);

        const long rounded = std::lround(latent);
        response[static_cast<std::size_t>(i)] =
            static_cast<int>(std::clamp(rounded, 1L, static_cast<long>(s)));
    }

    std::vector<std::string> names;
    std::vector<OrdinalScale> scales;
    for (const auto& [name, shape] : spec.attributes) {
        names.push_back(name);
        scales.push_back(spec.scale);
    }

    // A degenerate draw can leave the response constant; nudge the first row
    // so the dataset invariant (>= 2 distinct responses) holds. Relevant only
    // for tiny noiseless populations.
    bool distinct = false;
    for (int i = 1; i < n; ++i) {
        if (response[static_cast<std::size_t>(i)] != response[0]) distinct = true;
    }
    if (!distinct) {
        response[0] = response[0] == 1 ? 2 : response[0] - 1;
    }

    return {std::move(names), std::move(scales), spec.scale, std::move(cells), std::move(response)};
}

GroundTruth ground_truth(const SyntheticPopulationSpec& spec, double dominance_threshold) {
    spec.validate();
    std::vector<SubgroupSpec> groups = spec.subgroups;
    if (groups.empty()) groups.push_back(SubgroupSpec{1.0, {}});

    GroundTruth truth;
    for (std::size_t j = 0; j < spec.attributes.size(); ++j) {
        GroundTruthAttribute attr;
        attr.name = spec.attributes[j].first;

        std::map<KanoBase, double> weight_by_category;
        for (const auto& group : groups) {
            const std::vector<KanoShape> shapes = subgroup_shapes(spec, group);
            KanoBase category = shapes[j].category;
            // Zero-weight attributes cannot influence the response.
            if (shapes[j].weight <= 0.0) category = KanoBase::indifferent_inconclusive;
            attr.subgroup_categories.emplace_back(group.weight, category);
            weight_by_category[category] += group.weight;
        }

        std::vector<std::pair<double, KanoBase>> ranked;
        for (const auto& [category, weight] : weight_by_category) ranked.emplace_back(weight, category);
        std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
            return x.first > y.first;
        });

        if (ranked.size() == 1 || ranked.front().first >= dominance_threshold) {
            attr.dominant = KanoCategory::single(ranked.front().second);
            if (ranked.size() > 1) {
                attr.note = "minority perception: " + std::string(kano_base_name(ranked[1].second));
            }
        } else {
            std::vector<KanoBase> components;
            for (const auto& [weight, category] : ranked) {
                if (weight >= 0.10) components.push_back(category);
            }
            attr.dominant = KanoCategory::mixed(std::move(components));
        }
        truth.attributes.push_back(std::move(attr));
    }
    return truth;
}

}  // namespace ordeval
