#include "ordeval/reinforcement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "ordeval/errors.hpp"
#include "ordeval/parallel.hpp"
#include "ordeval/rng.hpp"

namespace ordeval {

const char* direction_name(Direction d) {
    return d == Direction::up ? "UP" : "DOWN";
}

int OrdEvalParams::resolved_context_size(int n) const {
    int k = context_size.value_or(std::min(n - 1, 30));
    return std::clamp(k, 1, n - 1);
}

void OrdEvalParams::validate() const {
    if (context_size && *context_size < 1) {
        throw ValidationError("context_size must be at least 1");
    }
    if (bootstrap_replicates < 50) {
        throw ValidationError("bootstrap_replicates must be at least 50 when significance is requested");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha must lie strictly between 0 and 1");
    }
    if (min_support < 1) {
        throw ValidationError("min_support must be at least 1");
    }
}

ReinforcementCounts::ReinforcementCounts(int max_code_)
    : max_code(max_code_) {
    const std::size_t m = max_code_ >= 2 ? static_cast<std::size_t>(max_code_ - 1) : 0;
    up_events.assign(m, 0);
    up_success.assign(m, 0);
    up_anti.assign(m, 0);
    down_events.assign(m, 0);
    down_success.assign(m, 0);
    down_anti.assign(m, 0);
}

const ReinforcementCell& ReinforcementProfile::cell(Direction d, int value) const {
    return cells[static_cast<std::size_t>(value - 2) * 2 + (d == Direction::down ? 1 : 0)];
}

ReinforcementCell& ReinforcementProfile::cell(Direction d, int value) {
    return cells[static_cast<std::size_t>(value - 2) * 2 + (d == Direction::down ? 1 : 0)];
}

namespace {

// Per-attribute value-diff lookup so permuted columns can be rescored without
// touching the dataset. Indexing mirrors value_diff() exactly.
struct DiffTable {
    int s = 0;
    int response_max = 0;
    std::vector<double> present;    // [vi-1][vj-1]
    std::vector<double> one_miss;   // [c_missing-1][v_present-1]
    std::vector<double> both_miss;  // [ci-1][cj-1]

    DiffTable(const OrdinalDataset& ds, const ClassConditionalTable& table, int attr) {
        s = ds.attribute_scale(attr).max_code;
        response_max = ds.response_scale().max_code;
        present.resize(static_cast<std::size_t>(s) * s);
        for (int vi = 1; vi <= s; ++vi) {
            for (int vj = 1; vj <= s; ++vj) {
                present[static_cast<std::size_t>(vi - 1) * s + (vj - 1)] =
                    static_cast<double>(std::abs(vi - vj)) / (s - 1);
            }
        }
        one_miss.resize(static_cast<std::size_t>(response_max) * s);
        for (int c = 1; c <= response_max; ++c) {
            for (int v = 1; v <= s; ++v) {
                one_miss[static_cast<std::size_t>(c - 1) * s + (v - 1)] = 1.0 - table.prob(attr, c, v);
            }
        }
        both_miss.resize(static_cast<std::size_t>(response_max) * response_max);
        for (int ci = 1; ci <= response_max; ++ci) {
            for (int cj = 1; cj <= response_max; ++cj) {
                double agreement = 0.0;
                for (int v = 1; v <= s; ++v) {
                    agreement += table.prob(attr, ci, v) * table.prob(attr, cj, v);
                }
                both_miss[static_cast<std::size_t>(ci - 1) * response_max + (cj - 1)] = 1.0 - agreement;
            }
        }
    }

    double diff(int vi, int vj, int ci, int cj) const {
        if (vi != kMissingCode && vj != kMissingCode) {
            return present[static_cast<std::size_t>(vi - 1) * s + (vj - 1)];
        }
        if (vi == kMissingCode && vj == kMissingCode) {
            return both_miss[static_cast<std::size_t>(ci - 1) * response_max + (cj - 1)];
        }
        const int v = (vi == kMissingCode) ? vj : vi;
        const int c = (vi == kMissingCode) ? ci : cj;
        return one_miss[static_cast<std::size_t>(c - 1) * s + (v - 1)];
    }
};

// Pairwise distance over all attributes except `attr`, n x n, symmetric.
// Summation order matches instance_distance() so both paths produce
// bit-identical doubles.
std::vector<double> distance_matrix_excluding(const OrdinalDataset& ds,
                                              const ClassConditionalTable& table, int attr) {
    const int n = ds.row_count();
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = instance_distance(ds, table, i, j, attr);
            d[static_cast<std::size_t>(i) * n + j] = dist;
            d[static_cast<std::size_t>(j) * n + i] = dist;
        }
    }
    return d;
}

// Selects the context of one pivot from a full distance row: the k nearest
// plus everything tied at the k-th distance, in ascending row order.
std::vector<int> select_context(const std::vector<double>& dist_row, int pivot, int n, int k) {
    std::vector<int> candidates;
    candidates.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        if (j != pivot) candidates.push_back(j);
    }
    if (k >= static_cast<int>(candidates.size())) return candidates;

    std::nth_element(candidates.begin(), candidates.begin() + (k - 1), candidates.end(),
                     [&](int a, int b) { return dist_row[a] < dist_row[b]; });
    const double kth = dist_row[candidates[k - 1]];

    std::vector<int> context;
    context.reserve(k + 4);
    for (int j = 0; j < n; ++j) {
        if (j != pivot && dist_row[j] <= kth) context.push_back(j);
    }
    return context;
}

std::vector<std::vector<int>> contexts_from(const std::vector<double>& base,
                                            const DiffTable* add_diff,
                                            const std::vector<int>& column,
                                            const std::vector<int>& responses, int n, int k) {
    std::vector<std::vector<int>> contexts(static_cast<std::size_t>(n));
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        const double* base_row = base.data() + static_cast<std::size_t>(r) * n;
        if (add_diff) {
            for (int j = 0; j < n; ++j) {
                row[j] = base_row[j] + add_diff->diff(column[r], column[j], responses[r], responses[j]);
            }
        } else {
            std::copy(base_row, base_row + n, row.begin());
        }
        contexts[r] = select_context(row, r, n, k);
    }
    return contexts;
}

ReinforcementCounts count_events(const std::vector<int>& responses,
                                 const std::vector<std::vector<int>>& contexts,
                                 const std::vector<int>& column, int max_code) {
    ReinforcementCounts counts(max_code);
    const int n = static_cast<int>(responses.size());
    for (int r = 0; r < n; ++r) {
        const int va = column[r];
        const int resp_r = responses[r];
        for (const int m : contexts[r]) {
            ++counts.pair_count;
            const int dresp = responses[m] - resp_r;
            if (dresp > 0) ++counts.response_up_pairs;
            if (dresp < 0) ++counts.response_down_pairs;

            const int vm = column[m];
            if (va == kMissingCode || vm == kMissingCode || va == vm) continue;
            if (vm > va) {
                ++counts.up_events[vm - 2];
                if (dresp > 0) ++counts.up_success[vm - 2];
                if (dresp < 0) ++counts.up_anti[vm - 2];
            } else {
                ++counts.down_events[va - 2];
                if (dresp < 0) ++counts.down_success[va - 2];
                if (dresp > 0) ++counts.down_anti[va - 2];
            }
        }
    }
    return counts;
}

// Type-7 quantile (linear interpolation between order statistics).
double quantile(const std::vector<double>& sorted, double p) {
    const std::size_t m = sorted.size();
    if (m == 0) return 0.0;
    if (m == 1) return sorted[0];
    const double h = (static_cast<double>(m) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= m) return sorted[m - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

NullBox box_from_samples(std::vector<double>& samples) {
    if (samples.empty()) {
        // No replicate produced a defined probability: widest box, never significant.
        return NullBox{0.0, 0.0, 0.5, 1.0, 1.0};
    }
    std::sort(samples.begin(), samples.end());
    NullBox box;
    box.q025 = quantile(samples, 0.025);
    box.q25 = quantile(samples, 0.25);
    box.median = quantile(samples, 0.5);
    box.q75 = quantile(samples, 0.75);
    box.q975 = quantile(samples, 0.975);
    return box;
}

ReinforcementProfile evaluate_attribute_impl(const OrdinalDataset& dataset,
                                             const ClassConditionalTable& table, int attr,
                                             const OrdEvalParams& params, int threads) {
    params.validate();
    const int n = dataset.row_count();
    const int k = params.resolved_context_size(n);
    const int s = dataset.attribute_scale(attr).max_code;
    const int b = params.bootstrap_replicates;

    OrdEvalParams resolved = params;
    resolved.context_size = k;

    const std::vector<int> column = dataset.column(attr);
    const std::vector<int>& responses = dataset.responses();

    const std::vector<double> base_distance = distance_matrix_excluding(dataset, table, attr);
    const DiffTable diff_table(dataset, table, attr);
    const DiffTable* add_diff = params.exclude_evaluated_attribute ? nullptr : &diff_table;

    const std::vector<std::vector<int>> contexts =
        contexts_from(base_distance, add_diff, column, responses, n, k);
    const ReinforcementCounts counts = count_events(responses, contexts, column, s);

    ReinforcementProfile profile;
    profile.attribute = dataset.attribute_name(attr);
    profile.scale = dataset.attribute_scale(attr);
    profile.params = resolved;
    if (counts.pair_count > 0) {
        profile.base_rates.up = static_cast<double>(counts.response_up_pairs) / counts.pair_count;
        profile.base_rates.down = static_cast<double>(counts.response_down_pairs) / counts.pair_count;
    }

    const int cell_count = 2 * (s - 1);
    profile.cells.resize(static_cast<std::size_t>(cell_count));
    for (int v = 2; v <= s; ++v) {
        for (const Direction d : {Direction::up, Direction::down}) {
            ReinforcementCell& cell = profile.cell(d, v);
            cell.direction = d;
            cell.value = v;
            const bool up = d == Direction::up;
            cell.events = up ? counts.up_events[v - 2] : counts.down_events[v - 2];
            cell.success = up ? counts.up_success[v - 2] : counts.down_success[v - 2];
            cell.anti_success = up ? counts.up_anti[v - 2] : counts.down_anti[v - 2];
            if (cell.events >= params.min_support) {
                cell.probability = static_cast<double>(cell.success) / cell.events;
                cell.anti_probability = static_cast<double>(cell.anti_success) / cell.events;
            }
        }
    }

    // Permutation null: replicate r has its own derived stream, so the
    // schedule cannot change which permutations are drawn.
    const double undefined = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> replicate_probs(static_cast<std::size_t>(b) * cell_count, undefined);
    parallel_for(b, threads, [&](int r) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
        std::vector<int> permuted = column;
        rng.shuffle(permuted);
        const std::vector<std::vector<int>>* ctx = &contexts;
        std::vector<std::vector<int>> replicate_ctx;
        if (!params.exclude_evaluated_attribute) {
            replicate_ctx = contexts_from(base_distance, &diff_table, permuted, responses, n, k);
            ctx = &replicate_ctx;
        }
        const ReinforcementCounts rc = count_events(responses, *ctx, permuted, s);
        double* out = replicate_probs.data() + static_cast<std::size_t>(r) * cell_count;
        for (int v = 2; v <= s; ++v) {
            const auto slot = static_cast<std::size_t>(v - 2) * 2;
            const long up_e = rc.up_events[v - 2];
            if (up_e >= params.min_support) {
                out[slot] = static_cast<double>(rc.up_success[v - 2]) / up_e;
            }
            const long down_e = rc.down_events[v - 2];
            if (down_e >= params.min_support) {
                out[slot + 1] = static_cast<double>(rc.down_success[v - 2]) / down_e;
            }
        }
    });

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(b));
    for (int c = 0; c < cell_count; ++c) {
        samples.clear();
        for (int r = 0; r < b; ++r) {
            const double p = replicate_probs[static_cast<std::size_t>(r) * cell_count + c];
            if (!std::isnan(p)) samples.push_back(p);
        }
        ReinforcementCell& cell = profile.cells[static_cast<std::size_t>(c)];
        cell.null_box = box_from_samples(samples);
        cell.significant = cell.probability &&
                           (*cell.probability < cell.null_box.q025 ||
                            *cell.probability > cell.null_box.q975);
    }
    return profile;
}

}  // namespace

std::vector<int> nearest_context(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                                 int pivot, std::optional<int> exclude_attr, int k) {
    const int n = dataset.row_count();
    k = std::clamp(k, 1, n - 1);
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        if (j != pivot) row[j] = instance_distance(dataset, table, pivot, j, exclude_attr);
    }
    return select_context(row, pivot, n, k);
}

ReinforcementCounts compute_reinforcements(const OrdinalDataset& dataset, int attr,
                                           const OrdEvalParams& params) {
    const ClassConditionalTable table(dataset);
    const int n = dataset.row_count();
    const int k = params.resolved_context_size(n);

    const std::vector<int> column = dataset.column(attr);
    const std::vector<double> base_distance = distance_matrix_excluding(dataset, table, attr);
    const DiffTable diff_table(dataset, table, attr);
    const DiffTable* add_diff = params.exclude_evaluated_attribute ? nullptr : &diff_table;
    const std::vector<std::vector<int>> contexts =
        contexts_from(base_distance, add_diff, column, dataset.responses(), n, k);
    return count_events(dataset.responses(), contexts, column, dataset.attribute_scale(attr).max_code);
}

std::vector<NullBox> null_distribution(const OrdinalDataset& dataset, int attr,
                                       const OrdEvalParams& params, int threads) {
    const ReinforcementProfile profile = evaluate_attribute(dataset, attr, params, threads);
    std::vector<NullBox> boxes;
    boxes.reserve(profile.cells.size());
    for (const auto& cell : profile.cells) boxes.push_back(cell.null_box);
    return boxes;
}

ReinforcementProfile evaluate_attribute(const OrdinalDataset& dataset, int attr,
                                        const OrdEvalParams& params, int threads) {
    const ClassConditionalTable table(dataset);
    return evaluate_attribute_impl(dataset, table, attr, params, resolve_threads(threads));
}

std::vector<ReinforcementProfile> evaluate_all(const OrdinalDataset& dataset,
                                               const OrdEvalParams& params, int threads) {
    const ClassConditionalTable table(dataset);
    const int a = dataset.attribute_count();
    std::vector<ReinforcementProfile> profiles(static_cast<std::size_t>(a));
    parallel_for(a, resolve_threads(threads), [&](int j) {
        OrdEvalParams attr_params = params;
        attr_params.seed = derive_seed(params.seed, static_cast<std::uint64_t>(j));
        profiles[static_cast<std::size_t>(j)] = evaluate_attribute_impl(dataset, table, j, attr_params, 1);
    });
    return profiles;
}

}  // namespace ordeval
