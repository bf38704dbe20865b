#include "ordeval/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordeval/csv.hpp"
#include "ordeval/errors.hpp"
#include "ordeval/json_io.hpp"
#include "ordeval/kano.hpp"
#include "ordeval/parallel.hpp"
#include "ordeval/reinforcement.hpp"
#include "ordeval/relieff.hpp"
#include "ordeval/report.hpp"
#include "ordeval/synth.hpp"

namespace ordeval {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;

struct CommonOpts {
    std::string input;
    std::string response = "response";
    std::vector<std::string> scales;  // "7" or "column=7"
    std::string out_dir = ".";
    std::string formats = "json,csv,svg,text";
    std::optional<int> context_size;
    int bootstrap = 200;
    double alpha = 0.05;
    int min_support = 5;
    int relieff_k = 10;
    std::optional<std::uint64_t> seed;
    bool include_evaluated = false;
    double kano_margin = KanoRuleConfig{}.evidence_margin;
    double kano_coverage = KanoRuleConfig{}.coverage_fraction;
    bool kano_no_corroboration = false;
    int threads = 0;
};

KanoRuleConfig kano_rules(const CommonOpts& opts) {
    KanoRuleConfig rules;
    rules.evidence_margin = opts.kano_margin;
    rules.coverage_fraction = opts.kano_coverage;
    rules.require_corroboration = !opts.kano_no_corroboration;
    return rules;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ORDEVAL_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

IngestionConfig ingestion_config(const CommonOpts& opts) {
    IngestionConfig config;
    config.response_column = opts.response;
    for (const std::string& spec : opts.scales) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            config.default_scale = std::stoi(spec);
        } else {
            config.scale_overrides[spec.substr(0, eq)] = std::stoi(spec.substr(eq + 1));
        }
    }
    return config;
}

OrdEvalParams ordeval_params(const CommonOpts& opts, std::uint64_t seed) {
    OrdEvalParams params;
    params.context_size = opts.context_size;
    params.bootstrap_replicates = opts.bootstrap;
    params.alpha = opts.alpha;
    params.min_support = opts.min_support;
    params.seed = seed;
    params.exclude_evaluated_attribute = !opts.include_evaluated;
    return params;
}

bool wants(const std::string& formats, const std::string& format) {
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == format) return true;
    }
    return false;
}

void validate_formats(const std::string& formats) {
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "json" && item != "csv" && item != "svg" && item != "text") {
            throw ValidationError("unknown output format '" + item +
                                  "' (expected json, csv, svg or text)");
        }
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << content;
}

void write_json(const fs::path& path, const json& j) {
    write_file(path, j.dump(2) + "\n");
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    }
    return out.empty() ? "attribute" : out;
}

LoadResult load_input(const CommonOpts& opts) {
    std::ifstream in(opts.input, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + opts.input + "'");
    return load_csv(in, ingestion_config(opts));
}

json run_manifest(const std::string& command, const CommonOpts& opts, std::uint64_t seed,
                  const std::vector<std::string>& artifacts) {
    return {
        {"schema_version", kSchemaVersion},
        {"command", command},
        {"input", opts.input},
        {"response", opts.response},
        {"seed", seed},
        {"formats", opts.formats},
        {"relieff_params", {{"k_neighbors", opts.relieff_k}, {"pivot_count", "all"}}},
        {"ordeval_params",
         {{"context_size", opts.context_size ? json(*opts.context_size) : json(nullptr)},
          {"bootstrap_replicates", opts.bootstrap},
          {"alpha", opts.alpha},
          {"min_support", opts.min_support},
          {"exclude_evaluated_attribute", !opts.include_evaluated}}},
        {"artifacts", artifacts},
    };
}

std::string scores_csv(const std::vector<AttributeScore>& ranked) {
    std::ostringstream out;
    out << "attribute,score,rank\n";
    for (const auto& s : ranked) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9f", s.score);
        out << s.attribute << ',' << buf << ',' << s.rank << '\n';
    }
    return out.str();
}

std::string reinforcements_csv(const std::vector<ReinforcementProfile>& profiles) {
    std::ostringstream out;
    out << "attribute,direction,value,probability,success,events,anti_probability,significant\n";
    for (const auto& profile : profiles) {
        for (const auto& cell : profile.cells) {
            out << profile.attribute << ',' << direction_name(cell.direction) << ',' << cell.value
                << ',';
            if (cell.probability) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.9f", *cell.probability);
                out << buf;
            }
            out << ',' << cell.success << ',' << cell.events << ',';
            if (cell.anti_probability) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.9f", *cell.anti_probability);
                out << buf;
            }
            out << ',' << (cell.significant ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

int cmd_analyze(const CommonOpts& opts) {
    validate_formats(opts.formats);
    const std::uint64_t seed = resolve_seed(opts.seed);
    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);

    LoadResult loaded = load_input(opts);
    const OrdinalDataset& dataset = loaded.dataset;
    const int threads = resolve_threads(opts.threads);

    ReliefFParams rf_params;
    rf_params.k_neighbors = opts.relieff_k;
    rf_params.seed = seed;
    const ReliefFResult rf = relieff_scores(dataset, rf_params, threads);
    const std::vector<AttributeScore> ranked = rank_attributes(rf.scores);

    const OrdEvalParams oe_params = ordeval_params(opts, seed);
    const std::vector<ReinforcementProfile> profiles = evaluate_all(dataset, oe_params, threads);
    const std::vector<KanoClassification> classifications = classify_all(profiles, kano_rules(opts));

    std::vector<std::string> artifacts;
    const auto emit = [&](const std::string& name, const std::string& content) {
        write_file(out_dir / name, content);
        artifacts.push_back(name);
    };
    const auto emit_json = [&](const std::string& name, const json& j) {
        write_json(out_dir / name, j);
        artifacts.push_back(name);
    };

    emit_json("validation_report.json", validation_report_to_json(loaded.report));
    if (wants(opts.formats, "json")) {
        emit_json("scores.json", scores_to_json(ranked, rf_params, rf));
        emit_json("profiles.json", profiles_to_json(profiles));
        emit_json("classifications.json", classifications_to_json(classifications));
    }
    if (wants(opts.formats, "csv")) {
        emit("scores.csv", scores_csv(ranked));
        emit("reinforcements.csv", reinforcements_csv(profiles));
    }
    if (wants(opts.formats, "svg")) {
        emit("ranking.svg", render_ranking(ranked));
        for (const auto& profile : profiles) {
            emit("profile_" + sanitize_filename(profile.attribute) + ".svg", render_profile(profile));
        }
    }
    if (wants(opts.formats, "text")) {
        emit("report.txt", render_text_report(profiles, classifications, ranked));
    }
    write_json(out_dir / "manifest.json", run_manifest("analyze", opts, seed, artifacts));
    return kExitOk;
}

int cmd_rank(const CommonOpts& opts) {
    validate_formats(opts.formats);
    const std::uint64_t seed = resolve_seed(opts.seed);
    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);

    LoadResult loaded = load_input(opts);
    ReliefFParams rf_params;
    rf_params.k_neighbors = opts.relieff_k;
    rf_params.seed = seed;
    const ReliefFResult rf = relieff_scores(loaded.dataset, rf_params, resolve_threads(opts.threads));
    const std::vector<AttributeScore> ranked = rank_attributes(rf.scores);

    write_json(out_dir / "scores.json", scores_to_json(ranked, rf_params, rf));
    if (wants(opts.formats, "svg")) write_file(out_dir / "ranking.svg", render_ranking(ranked));
    if (wants(opts.formats, "csv")) write_file(out_dir / "scores.csv", scores_csv(ranked));
    return kExitOk;
}

json read_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + std::string(what) + " file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("invalid " + std::string(what) + " JSON in '" + path + "': " + e.what());
    }
    return j;
}

int cmd_classify(const std::string& profiles_path, const CommonOpts& opts) {
    const std::string& out_dir_str = opts.out_dir;
    const std::vector<ReinforcementProfile> profiles =
        profiles_from_json(read_json_file(profiles_path, "profiles"));
    const std::vector<KanoClassification> classifications = classify_all(profiles, kano_rules(opts));

    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);
    write_json(out_dir / "classifications.json", classifications_to_json(classifications));
    return kExitOk;
}

int cmd_render(const std::string& profiles_path, const std::string& out_dir_str) {
    const std::vector<ReinforcementProfile> profiles =
        profiles_from_json(read_json_file(profiles_path, "profiles"));

    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);
    for (const auto& profile : profiles) {
        write_file(out_dir / ("profile_" + sanitize_filename(profile.attribute) + ".svg"),
                   render_profile(profile));
    }
    return kExitOk;
}

SyntheticPopulationSpec load_spec(const std::string& path) {
    return synth_spec_from_json(read_json_file(path, "population spec"));
}

int cmd_simulate(const std::string& spec_path, const std::string& out_dir_str) {
    const SyntheticPopulationSpec spec = load_spec(spec_path);
    const OrdinalDataset dataset = generate_population(spec);
    const GroundTruth truth = ground_truth(spec);

    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);
    std::ostringstream csv;
    save_csv(dataset, csv);
    write_file(out_dir / "dataset.csv", csv.str());
    write_json(out_dir / "ground_truth.json", ground_truth_to_json(truth));
    return kExitOk;
}

int cmd_verify(const std::string& spec_path, const CommonOpts& opts) {
    const SyntheticPopulationSpec spec = load_spec(spec_path);
    const OrdinalDataset dataset = generate_population(spec);
    const GroundTruth truth = ground_truth(spec);

    const std::uint64_t seed = opts.seed ? *opts.seed : spec.seed;
    const OrdEvalParams oe_params = ordeval_params(opts, seed);
    const std::vector<ReinforcementProfile> profiles =
        evaluate_all(dataset, oe_params, resolve_threads(opts.threads));
    const std::vector<KanoClassification> classifications = classify_all(profiles, kano_rules(opts));

    json rows = json::array();
    bool all_match = true;
    for (std::size_t i = 0; i < truth.attributes.size(); ++i) {
        const bool match = truth.attributes[i].dominant == classifications[i].category;
        all_match = all_match && match;
        rows.push_back({
            {"attribute", truth.attributes[i].name},
            {"expected", truth.attributes[i].dominant.name()},
            {"got", classifications[i].category.name()},
            {"match", match},
        });
    }

    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);
    write_json(out_dir / "recovery_report.json",
               json{{"schema_version", kSchemaVersion}, {"all_match", all_match}, {"rows", rows}});
    if (!all_match) {
        std::cerr << "verification mismatch; see recovery_report.json\n";
        return kExitMismatch;
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ordinal survey attribute evaluation toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string spec_path;
    std::string profiles_path;

    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", opts.input, "input CSV with a header row")->required();
        cmd->add_option("--response", opts.response, "response column name");
        cmd->add_option("--scale", opts.scales,
                        "scale max code, global ('7') or per column ('testing=7'); repeatable");
    };
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--formats", opts.formats, "comma list of json,csv,svg,text");
        cmd->add_option("--seed", opts.seed, "RNG seed (fallback: ORDEVAL_SEED env, then 0)");
        cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
    };
    const auto add_ordeval = [&](CLI::App* cmd) {
        cmd->add_option("--k", opts.context_size, "context size (default min(n-1, 30))");
        cmd->add_option("--bootstrap", opts.bootstrap, "permutation replicates");
        cmd->add_option("--alpha", opts.alpha, "significance level");
        cmd->add_option("--min-support", opts.min_support, "events needed for a defined cell");
        cmd->add_flag("--include-evaluated", opts.include_evaluated,
                      "include the evaluated attribute in the similarity metric");
        cmd->add_option("--kano-margin", opts.kano_margin,
                        "null-box clearance (in half-box widths) a cell needs to count as "
                        "category evidence");
        cmd->add_option("--kano-coverage", opts.kano_coverage,
                        "fraction of defined cells needed for a one-dimensional reading");
        cmd->add_flag("--kano-no-corroboration", opts.kano_no_corroboration,
                      "let isolated significant cells count as evidence");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full pipeline: rank, evaluate, classify, render");
    add_io(analyze);
    add_common(analyze);
    add_ordeval(analyze);
    analyze->add_option("--relieff-k", opts.relieff_k, "ReliefF neighbor count");

    CLI::App* rank = app.add_subcommand("rank", "ReliefF relevance ranking only");
    add_io(rank);
    add_common(rank);
    rank->add_option("--relieff-k", opts.relieff_k, "ReliefF neighbor count");

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify existing profiles.json");
    classify_cmd->add_option("--profiles", profiles_path, "profiles.json from analyze")->required();
    classify_cmd->add_option("--out", opts.out_dir, "output directory");
    classify_cmd->add_option("--kano-margin", opts.kano_margin,
                             "null-box clearance (in half-box widths) a cell needs to count as "
                             "category evidence");
    classify_cmd->add_option("--kano-coverage", opts.kano_coverage,
                             "fraction of defined cells needed for a one-dimensional reading");
    classify_cmd->add_flag("--kano-no-corroboration", opts.kano_no_corroboration,
                           "let isolated significant cells count as evidence");

    CLI::App* render_cmd = app.add_subcommand("render", "render SVGs from existing profiles.json");
    render_cmd->add_option("--profiles", profiles_path, "profiles.json from analyze")->required();
    render_cmd->add_option("--out", opts.out_dir, "output directory");

    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic population");
    simulate->add_option("--spec", spec_path, "population spec JSON")->required();
    simulate->add_option("--out", opts.out_dir, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "generate, analyze, compare to ground truth");
    verify->add_option("--spec", spec_path, "population spec JSON")->required();
    add_common(verify);
    add_ordeval(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opts);
        if (rank->parsed()) return cmd_rank(opts);
        if (classify_cmd->parsed()) return cmd_classify(profiles_path, opts);
        if (render_cmd->parsed()) return cmd_render(profiles_path, opts.out_dir);
        if (simulate->parsed()) return cmd_simulate(spec_path, opts.out_dir);
        if (verify->parsed()) return cmd_verify(spec_path, opts);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace ordeval
