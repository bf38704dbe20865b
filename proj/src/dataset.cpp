#include "ordeval/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "ordeval/errors.hpp"

namespace ordeval {

void OrdinalScale::validate() const {
    if (max_code < 2) {
        throw ValidationError("scale max_code must be at least 2, got " + std::to_string(max_code));
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != max_code) {
        throw ValidationError("scale declares " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(max_code) + " codes");
    }
}

OrdinalDataset::OrdinalDataset(std::vector<std::string> attribute_names,
                               std::vector<OrdinalScale> attribute_scales,
                               OrdinalScale response_scale,
                               std::vector<int> cells,
                               std::vector<int> response,
                               std::string response_name)
    : attribute_names_(std::move(attribute_names)),
      attribute_scales_(std::move(attribute_scales)),
      response_scale_(std::move(response_scale)),
      cells_(std::move(cells)),
      response_(std::move(response)),
      response_name_(std::move(response_name)) {
    a_ = static_cast<int>(attribute_names_.size());
    n_ = static_cast<int>(response_.size());

    if (a_ < 1) {
        throw ValidationError("dataset needs at least one attribute column");
    }
    if (attribute_scales_.size() != attribute_names_.size()) {
        throw ValidationError("attribute scale count does not match attribute count");
    }
    if (cells_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(a_)) {
        throw ValidationError("cell matrix size does not match rows x attributes");
    }
    if (n_ < 2) {
        throw ValidationError("dataset needs at least 2 rows, got " + std::to_string(n_));
    }
    response_scale_.validate();
    for (const auto& scale : attribute_scales_) scale.validate();

    for (int i = 0; i < n_; ++i) {
        if (!response_scale_.contains(response_[i])) {
            throw ValidationError("response code " + std::to_string(response_[i]) + " in row " +
                                  std::to_string(i) + " outside scale 1.." +
                                  std::to_string(response_scale_.max_code));
        }
        for (int j = 0; j < a_; ++j) {
            const int v = cell(i, j);
            if (v != kMissingCode && !attribute_scales_[j].contains(v)) {
                throw ValidationError("cell value " + std::to_string(v) + " in row " +
                                      std::to_string(i) + ", column '" + attribute_names_[j] +
                                      "' outside scale 1.." +
                                      std::to_string(attribute_scales_[j].max_code));
            }
        }
    }

    if (observed_response_codes().size() < 2) {
        throw ValidationError("response must take at least 2 distinct values");
    }
}

std::optional<int> OrdinalDataset::attribute_index(const std::string& name) const {
    for (int j = 0; j < a_; ++j) {
        if (attribute_names_[j] == name) return j;
    }
    return std::nullopt;
}

std::vector<int> OrdinalDataset::observed_response_codes() const {
    std::set<int> codes(response_.begin(), response_.end());
    return {codes.begin(), codes.end()};
}

std::vector<int> OrdinalDataset::column(int attr) const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[i] = cell(i, attr);
    return out;
}

OrdinalDataset OrdinalDataset::permuted_rows(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) {
        throw ValidationError("row permutation length does not match row count");
    }
    std::vector<int> cells(cells_.size());
    std::vector<int> response(response_.size());
    for (int i = 0; i < n_; ++i) {
        const int src = perm[i];
        response[i] = response_[src];
        for (int j = 0; j < a_; ++j) {
            cells[static_cast<std::size_t>(i) * a_ + j] = cell(src, j);
        }
    }
    return {attribute_names_, attribute_scales_, response_scale_, std::move(cells), std::move(response),
            response_name_};
}

OrdinalDataset OrdinalDataset::with_column(int attr, const std::vector<int>& values) const {
    if (static_cast<int>(values.size()) != n_) {
        throw ValidationError("replacement column length does not match row count");
    }
    std::vector<int> cells = cells_;
    for (int i = 0; i < n_; ++i) cells[static_cast<std::size_t>(i) * a_ + attr] = values[i];
    return {attribute_names_, attribute_scales_, response_scale_, std::move(cells), response_,
            response_name_};
}

ClassConditionalTable::ClassConditionalTable(const OrdinalDataset& dataset) {
    a_ = dataset.attribute_count();
    response_max_ = dataset.response_scale().max_code;

    attr_max_.resize(a_);
    offsets_.resize(a_ + 1);
    offsets_[0] = 0;
    for (int j = 0; j < a_; ++j) {
        attr_max_[j] = dataset.attribute_scale(j).max_code;
        offsets_[j + 1] = offsets_[j] + response_max_ * attr_max_[j];
    }
    probs_.assign(static_cast<std::size_t>(offsets_[a_]), 0.0);

    for (int j = 0; j < a_; ++j) {
        const int s = attr_max_[j];
        std::vector<int> counts(static_cast<std::size_t>(response_max_) * s, 0);
        std::vector<int> totals(static_cast<std::size_t>(response_max_), 0);
        for (int i = 0; i < dataset.row_count(); ++i) {
            const int v = dataset.cell(i, j);
            if (v == kMissingCode) continue;
            const int c = dataset.response(i);
            ++counts[static_cast<std::size_t>(c - 1) * s + (v - 1)];
            ++totals[c - 1];
        }
        for (int c = 1; c <= response_max_; ++c) {
            const double denom = totals[c - 1] + s;  // add-one smoothing over s codes
            for (int v = 1; v <= s; ++v) {
                probs_[offsets_[j] + static_cast<std::size_t>(c - 1) * s + (v - 1)] =
                    (counts[static_cast<std::size_t>(c - 1) * s + (v - 1)] + 1) / denom;
            }
        }
    }
}

double ClassConditionalTable::prob(int attr, int response_code, int value) const {
    const int s = attr_max_[attr];
    return probs_[offsets_[attr] + static_cast<std::size_t>(response_code - 1) * s + (value - 1)];
}

double value_diff(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                  int attr, int row_i, int row_j) {
    const int vi = dataset.cell(row_i, attr);
    const int vj = dataset.cell(row_j, attr);
    const int s = dataset.attribute_scale(attr).max_code;

    if (vi != kMissingCode && vj != kMissingCode) {
        return static_cast<double>(std::abs(vi - vj)) / (s - 1);
    }
    if (vi == kMissingCode && vj == kMissingCode) {
        double agreement = 0.0;
        const int ci = dataset.response(row_i);
        const int cj = dataset.response(row_j);
        for (int v = 1; v <= s; ++v) {
            agreement += table.prob(attr, ci, v) * table.prob(attr, cj, v);
        }
        return 1.0 - agreement;
    }
    // Exactly one missing: agreement is the chance the missing side would
    // show the present value, conditioned on the missing row's response.
    const int present = (vi == kMissingCode) ? vj : vi;
    const int missing_row = (vi == kMissingCode) ? row_i : row_j;
    return 1.0 - table.prob(attr, dataset.response(missing_row), present);
}

double instance_distance(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                         int row_i, int row_j, std::optional<int> exclude_attr) {
    double sum = 0.0;
    for (int j = 0; j < dataset.attribute_count(); ++j) {
        if (exclude_attr && *exclude_attr == j) continue;
        sum += value_diff(dataset, table, j, row_i, row_j);
    }
    return sum;
}

}  // namespace ordeval
