#include "ordeval/relieff.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>

#include "ordeval/errors.hpp"
#include "ordeval/parallel.hpp"
#include "ordeval/rng.hpp"

namespace ordeval {

void ReliefFParams::validate() const {
    if (k_neighbors < 1) throw ValidationError("k_neighbors must be at least 1");
    if (pivot_count && *pivot_count < 1) throw ValidationError("pivot_count must be at least 1");
}

namespace {

// Sums a small set of addends in value order. The inputs form the same
// multiset whichever way the dataset rows are permuted, so the sorted sum is
// bit-identical across permutations and thread schedules.
double canonical_sum(std::vector<double>& addends) {
    std::sort(addends.begin(), addends.end());
    double sum = 0.0;
    for (const double x : addends) sum += x;
    return sum;
}

struct NeighborSet {
    std::vector<int> rows;
    std::vector<double> weights;  // per row; ties at the k-th distance share mass
    int k_used = 0;
};

// k nearest members of `group` by precomputed distance, ties at the k-th
// distance all included with fractional weight so total mass is exactly k.
NeighborSet select_neighbors(const std::vector<int>& group, const std::vector<double>& dist,
                             int k) {
    NeighborSet out;
    out.k_used = std::min<int>(k, static_cast<int>(group.size()));
    if (group.empty()) return out;

    std::vector<int> order = group;
    std::nth_element(order.begin(), order.begin() + (out.k_used - 1), order.end(),
                     [&](int a, int b) { return dist[a] < dist[b]; });
    const double kth = dist[order[out.k_used - 1]];

    int closer = 0;
    int tied = 0;
    for (const int row : group) {
        if (dist[row] < kth) ++closer;
        else if (dist[row] == kth) ++tied;
    }
    const double tie_weight = static_cast<double>(out.k_used - closer) / tied;
    for (const int row : group) {
        if (dist[row] < kth) {
            out.rows.push_back(row);
            out.weights.push_back(1.0);
        } else if (dist[row] == kth) {
            out.rows.push_back(row);
            out.weights.push_back(tie_weight);
        }
    }
    return out;
}

}  // namespace

ReliefFResult relieff_scores(const OrdinalDataset& dataset, const ReliefFParams& params,
                             int threads) {
    params.validate();
    const ClassConditionalTable table(dataset);
    const int n = dataset.row_count();
    const int a = dataset.attribute_count();

    const std::vector<int> classes = dataset.observed_response_codes();
    std::map<int, std::vector<int>> class_rows;
    for (int i = 0; i < n; ++i) class_rows[dataset.response(i)].push_back(i);
    std::map<int, double> prior;
    for (const int c : classes) {
        prior[c] = static_cast<double>(class_rows[c].size()) / n;
    }

    // Pivot selection: all rows by default, seeded sample without replacement
    // otherwise.
    std::vector<int> pivots(static_cast<std::size_t>(n));
    std::iota(pivots.begin(), pivots.end(), 0);
    if (params.pivot_count && *params.pivot_count < n) {
        Rng rng(derive_seed(params.seed, 0));
        rng.shuffle(pivots);
        pivots.resize(static_cast<std::size_t>(*params.pivot_count));
        std::sort(pivots.begin(), pivots.end());
    }
    const int m = static_cast<int>(pivots.size());

    // deltas[pivot_slot * a + attr]: this pivot's weight change per attribute.
    std::vector<double> deltas(static_cast<std::size_t>(m) * a, 0.0);
    std::atomic<int> skipped{0};

    parallel_for(m, resolve_threads(threads), [&](int slot) {
        const int r = pivots[static_cast<std::size_t>(slot)];
        const int own_class = dataset.response(r);

        std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j != r) dist[j] = instance_distance(dataset, table, r, j);
        }

        std::vector<double> addends;
        double* delta = deltas.data() + static_cast<std::size_t>(slot) * a;

        // Hits: same class, excluding the pivot itself.
        std::vector<int> hits;
        for (const int j : class_rows.at(own_class)) {
            if (j != r) hits.push_back(j);
        }
        if (hits.empty()) {
            skipped.fetch_add(1);
        } else {
            const NeighborSet nb = select_neighbors(hits, dist, params.k_neighbors);
            for (int attr = 0; attr < a; ++attr) {
                addends.clear();
                for (std::size_t idx = 0; idx < nb.rows.size(); ++idx) {
                    addends.push_back(nb.weights[idx] * value_diff(dataset, table, attr, r, nb.rows[idx]));
                }
                delta[attr] -= canonical_sum(addends) / nb.k_used;
            }
        }

        // Misses: k nearest per other class, weighted by its prior.
        for (const int c : classes) {
            if (c == own_class) continue;
            const NeighborSet nb = select_neighbors(class_rows.at(c), dist, params.k_neighbors);
            const double factor = prior.at(c) / (1.0 - prior.at(own_class));
            for (int attr = 0; attr < a; ++attr) {
                addends.clear();
                for (std::size_t idx = 0; idx < nb.rows.size(); ++idx) {
                    addends.push_back(nb.weights[idx] * value_diff(dataset, table, attr, r, nb.rows[idx]));
                }
                delta[attr] += factor * canonical_sum(addends) / nb.k_used;
            }
        }
    });

    ReliefFResult result;
    result.k_used = params.k_neighbors;
    result.pivots_used = m;
    result.single_class_pivots = skipped.load();
    result.scores.resize(static_cast<std::size_t>(a));

    std::vector<double> per_pivot(static_cast<std::size_t>(m));
    for (int attr = 0; attr < a; ++attr) {
        for (int slot = 0; slot < m; ++slot) {
            per_pivot[static_cast<std::size_t>(slot)] = deltas[static_cast<std::size_t>(slot) * a + attr];
        }
        const double score = canonical_sum(per_pivot) / m;
        result.scores[static_cast<std::size_t>(attr)] = {
            dataset.attribute_name(attr), std::clamp(score, -1.0, 1.0), 0};
    }

    // Ranks reported in declaration order as well.
    std::vector<int> order(static_cast<std::size_t>(a));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return result.scores[static_cast<std::size_t>(x)].score >
               result.scores[static_cast<std::size_t>(y)].score;
    });
    for (int pos = 0; pos < a; ++pos) {
        result.scores[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])].rank = pos + 1;
    }
    return result;
}

std::vector<AttributeScore> rank_attributes(std::vector<AttributeScore> scores) {
    if (scores.empty()) throw ValidationError("cannot rank an empty score list");
    std::stable_sort(scores.begin(), scores.end(),
                     [](const AttributeScore& x, const AttributeScore& y) { return x.score > y.score; });
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i].rank = static_cast<int>(i) + 1;
    return scores;
}

}  // namespace ordeval
