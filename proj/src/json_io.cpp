#include "ordeval/json_io.hpp"

#include <cmath>

#include "ordeval/errors.hpp"

namespace ordeval {

using nlohmann::json;

namespace {

json params_to_json(const OrdEvalParams& params) {
    return {
        {"context_size", params.context_size ? json(*params.context_size) : json(nullptr)},
        {"bootstrap_replicates", params.bootstrap_replicates},
        {"alpha", params.alpha},
        {"min_support", params.min_support},
        {"seed", params.seed},
        {"exclude_evaluated_attribute", params.exclude_evaluated_attribute},
    };
}

OrdEvalParams params_from_json(const json& j) {
    OrdEvalParams params;
    if (j.contains("context_size") && !j.at("context_size").is_null()) {
        params.context_size = j.at("context_size").get<int>();
    }
    params.bootstrap_replicates = j.value("bootstrap_replicates", params.bootstrap_replicates);
    params.alpha = j.value("alpha", params.alpha);
    params.min_support = j.value("min_support", params.min_support);
    params.seed = j.value("seed", params.seed);
    params.exclude_evaluated_attribute =
        j.value("exclude_evaluated_attribute", params.exclude_evaluated_attribute);
    return params;
}

json cell_to_json(const ReinforcementCell& cell) {
    return {
        {"direction", direction_name(cell.direction)},
        {"value", cell.value},
        {"probability", cell.probability ? json(*cell.probability) : json(nullptr)},
        {"success", cell.success},
        {"events", cell.events},
        {"null_box",
         {{"q025", cell.null_box.q025},
          {"q25", cell.null_box.q25},
          {"median", cell.null_box.median},
          {"q75", cell.null_box.q75},
          {"q975", cell.null_box.q975}}},
        {"significant", cell.significant},
        {"anti_probability", cell.anti_probability ? json(*cell.anti_probability) : json(nullptr)},
    };
}

ReinforcementCell cell_from_json(const json& j) {
    ReinforcementCell cell;
    const std::string direction = j.at("direction").get<std::string>();
    if (direction != "UP" && direction != "DOWN") {
        throw ValidationError("unknown cell direction '" + direction + "'");
    }
    cell.direction = direction == "DOWN" ? Direction::down : Direction::up;
    cell.value = j.at("value").get<int>();
    if (!j.at("probability").is_null()) cell.probability = j.at("probability").get<double>();
    cell.success = j.at("success").get<long>();
    cell.events = j.at("events").get<long>();
    const json& nb = j.at("null_box");
    cell.null_box = {nb.at("q025").get<double>(), nb.at("q25").get<double>(),
                     nb.at("median").get<double>(), nb.at("q75").get<double>(),
                     nb.at("q975").get<double>()};
    cell.significant = j.at("significant").get<bool>();
    if (!j.at("anti_probability").is_null()) {
        cell.anti_probability = j.at("anti_probability").get<double>();
        cell.anti_success = static_cast<long>(std::lround(*cell.anti_probability * cell.events));
    }
    return cell;
}

}  // namespace

json scores_to_json(const std::vector<AttributeScore>& ranked, const ReliefFParams& params,
                    const ReliefFResult& result) {
    json entries = json::array();
    for (const auto& score : ranked) {
        entries.push_back({{"attribute", score.attribute}, {"score", score.score}, {"rank", score.rank}});
    }
    return {
        {"schema_version", kSchemaVersion},
        {"params",
         {{"k_neighbors", params.k_neighbors},
          {"pivot_count", params.pivot_count ? json(*params.pivot_count) : json("all")},
          {"seed", params.seed}}},
        {"metadata",
         {{"k_used", result.k_used},
          {"pivots_used", result.pivots_used},
          {"single_class_pivots", result.single_class_pivots}}},
        {"scores", entries},
    };
}

json profiles_to_json(const std::vector<ReinforcementProfile>& profiles) {
    json arr = json::array();
    for (const auto& profile : profiles) {
        json cells = json::array();
        for (const auto& cell : profile.cells) cells.push_back(cell_to_json(cell));
        arr.push_back({
            {"attribute", profile.attribute},
            {"scale", {{"min", 1}, {"max", profile.scale.max_code}}},
            {"base_rates", {{"up", profile.base_rates.up}, {"down", profile.base_rates.down}}},
            {"params", params_to_json(profile.params)},
            {"cells", cells},
        });
    }
    return {{"schema_version", kSchemaVersion}, {"profiles", arr}};
}

std::vector<ReinforcementProfile> profiles_from_json(const json& j) {
    std::vector<ReinforcementProfile> profiles;
    try {
        for (const json& p : j.at("profiles")) {
            ReinforcementProfile profile;
            profile.attribute = p.at("attribute").get<std::string>();
            profile.scale.max_code = p.at("scale").at("max").get<int>();
            profile.scale.validate();
            profile.base_rates.up = p.at("base_rates").at("up").get<double>();
            profile.base_rates.down = p.at("base_rates").at("down").get<double>();
            if (p.contains("params")) profile.params = params_from_json(p.at("params"));
            profile.cells.resize(static_cast<std::size_t>(2 * (profile.scale.max_code - 1)));
            for (const json& c : p.at("cells")) {
                const ReinforcementCell cell = cell_from_json(c);
                if (cell.value < 2 || cell.value > profile.scale.max_code) {
                    throw ValidationError("cell value " + std::to_string(cell.value) +
                                          " outside scale 2.." +
                                          std::to_string(profile.scale.max_code) +
                                          " in profile '" + profile.attribute + "'");
                }
                profile.cell(cell.direction, cell.value) = cell;
            }
            profiles.push_back(std::move(profile));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed profiles document: ") + e.what());
    }
    return profiles;
}

json classifications_to_json(const std::vector<KanoClassification>& classifications) {
    json arr = json::array();
    for (const auto& cls : classifications) {
        json evidence = json::array();
        for (const auto& ev : cls.evidence) {
            evidence.push_back({{"direction", direction_name(ev.direction)},
                                {"value", ev.value},
                                {"anti", ev.anti},
                                {"probability", ev.probability}});
        }
        json entry = {
            {"attribute", cls.attribute},
            {"category", cls.category.name()},
            {"evidence", evidence},
            {"zones",
             {{"low", cls.zones.low}, {"mid", cls.zones.mid}, {"high", cls.zones.high}}},
            {"zone_significance",
             {{"low", cls.zones.low_significant},
              {"mid", cls.zones.mid_significant},
              {"high", cls.zones.high_significant}}},
            {"notes", cls.notes},
        };
        if (cls.category.is_mixed()) {
            json components = json::array();
            for (const KanoBase base : cls.category.components) components.push_back(kano_base_name(base));
            entry["mixed_components"] = components;
        }
        arr.push_back(std::move(entry));
    }
    return {{"schema_version", kSchemaVersion}, {"classifications", arr}};
}

json validation_report_to_json(const ValidationReport& report) {
    return {
        {"schema_version", kSchemaVersion},
        {"rows_read", report.rows_read},
        {"rows_rejected", report.rows_rejected},
        {"inferred_scales", report.inferred_scales},
        {"errors", report.errors},
    };
}

json ground_truth_to_json(const GroundTruth& truth) {
    json arr = json::array();
    for (const auto& attr : truth.attributes) {
        json subgroups = json::array();
        for (const auto& [weight, category] : attr.subgroup_categories) {
            subgroups.push_back({{"weight", weight}, {"category", kano_base_name(category)}});
        }
        json entry = {
            {"name", attr.name},
            {"dominant", attr.dominant.name()},
            {"subgroups", subgroups},
        };
        if (attr.dominant.is_mixed()) {
            json components = json::array();
            for (const KanoBase base : attr.dominant.components) {
                components.push_back(kano_base_name(base));
            }
            entry["dominant_components"] = components;
        }
        if (!attr.note.empty()) entry["note"] = attr.note;
        arr.push_back(std::move(entry));
    }
    return {{"schema_version", kSchemaVersion}, {"attributes", arr}};
}

namespace {

KanoShape shape_from_json(const json& j, const std::string& path) {
    KanoShape shape;
    if (!j.contains("category")) throw ValidationError(path + ".category: required");
    try {
        shape.category = kano_base_from_name(j.at("category").get<std::string>());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ".category: " + e.what());
    }
    if (j.contains("threshold")) shape.threshold = j.at("threshold").get<int>();
    if (j.contains("slope")) shape.slope = j.at("slope").get<double>();
    if (j.contains("weight")) shape.weight = j.at("weight").get<double>();
    return shape;
}

json shape_to_json(const KanoShape& shape) {
    json out = {{"category", kano_base_name(shape.category)}, {"weight", shape.weight}};
    if (shape.category == KanoBase::must_be || shape.category == KanoBase::attractive) {
        out["threshold"] = shape.threshold;
    }
    if (shape.category == KanoBase::one_dimensional || shape.category == KanoBase::reverse) {
        out["slope"] = shape.slope;
    }
    return out;
}

}  // namespace

json synth_spec_to_json(const SyntheticPopulationSpec& spec) {
    json attrs = json::array();
    for (const auto& [name, shape] : spec.attributes) {
        json a = shape_to_json(shape);
        a["name"] = name;
        attrs.push_back(std::move(a));
    }
    json subgroups = json::array();
    for (const auto& group : spec.subgroups) {
        json overrides = json::object();
        for (const auto& [name, shape] : group.overrides) overrides[name] = shape_to_json(shape);
        subgroups.push_back({{"weight", group.weight}, {"overrides", overrides}});
    }
    return {
        {"schema_version", kSchemaVersion},
        {"n", spec.n},
        {"scale", spec.scale.max_code},
        {"noise_sigma", spec.noise_sigma},
        {"seed", spec.seed},
        {"attributes", attrs},
        {"subgroups", subgroups},
    };
}

SyntheticPopulationSpec synth_spec_from_json(const json& j) {
    SyntheticPopulationSpec spec;
    try {
        if (!j.contains("n")) throw ValidationError("n: required");
        spec.n = j.at("n").get<int>();
        if (j.contains("scale")) spec.scale.max_code = j.at("scale").get<int>();
        spec.noise_sigma = j.value("noise_sigma", 0.0);
        spec.seed = j.value("seed", static_cast<std::uint64_t>(0));

        if (!j.contains("attributes") || !j.at("attributes").is_array()) {
            throw ValidationError("attributes: required array");
        }
        std::size_t idx = 0;
        for (const json& a : j.at("attributes")) {
            const std::string path = "attributes[" + std::to_string(idx) + "]";
            if (!a.contains("name")) throw ValidationError(path + ".name: required");
            spec.attributes.emplace_back(a.at("name").get<std::string>(), shape_from_json(a, path));
            ++idx;
        }
        if (j.contains("subgroups")) {
            std::size_t g = 0;
            for (const json& sg : j.at("subgroups")) {
                const std::string path = "subgroups[" + std::to_string(g) + "]";
                SubgroupSpec group;
                if (!sg.contains("weight")) throw ValidationError(path + ".weight: required");
                group.weight = sg.at("weight").get<double>();
                if (sg.contains("overrides")) {
                    for (const auto& [name, shape] : sg.at("overrides").items()) {
                        group.overrides[name] =
                            shape_from_json(shape, path + ".overrides['" + name + "']");
                    }
                }
                spec.subgroups.push_back(std::move(group));
                ++g;
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed population spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace ordeval
