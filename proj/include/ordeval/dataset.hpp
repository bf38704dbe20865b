#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ordeval {

// Missing cells are stored as code 0; valid codes start at 1.
inline constexpr int kMissingCode = 0;

// An ordered integer scale 1..max_code, optionally with one label per code.
struct OrdinalScale {
    int max_code = 7;
    std::vector<std::string> labels;

    bool contains(int code) const { return code >= 1 && code <= max_code; }
    int span() const { return max_code - 1; }
    void validate() const;
};

// Respondents (rows) by ordinal attributes (columns) plus one ordinal
// response per row. Attribute cells may be missing, responses may not.
// Immutable after construction; safe for concurrent reads.
class OrdinalDataset {
public:
    OrdinalDataset(std::vector<std::string> attribute_names,
                   std::vector<OrdinalScale> attribute_scales,
                   OrdinalScale response_scale,
                   std::vector<int> cells,  // row-major n x a
                   std::vector<int> response,
                   std::string response_name = "response");

    int row_count() const { return n_; }
    int attribute_count() const { return a_; }

    int cell(int row, int attr) const { return cells_[static_cast<std::size_t>(row) * a_ + attr]; }
    bool is_missing(int row, int attr) const { return cell(row, attr) == kMissingCode; }
    int response(int row) const { return response_[row]; }

    const std::vector<std::string>& attribute_names() const { return attribute_names_; }
    const std::string& attribute_name(int attr) const { return attribute_names_[attr]; }
    const OrdinalScale& attribute_scale(int attr) const { return attribute_scales_[attr]; }
    const OrdinalScale& response_scale() const { return response_scale_; }
    const std::vector<int>& responses() const { return response_; }
    const std::string& response_name() const { return response_name_; }

    // Index of a named attribute, or nullopt.
    std::optional<int> attribute_index(const std::string& name) const;

    // Distinct response codes present, ascending.
    std::vector<int> observed_response_codes() const;

    // Copy of one attribute column (missing entries as kMissingCode).
    std::vector<int> column(int attr) const;

    // New dataset with rows reordered as rows[perm[i]] = old rows[perm[i]]...
    // i.e. row i of the result is row perm[i] of this dataset.
    OrdinalDataset permuted_rows(const std::vector<int>& perm) const;

    // New dataset with one attribute column replaced (used by permutation tests).
    OrdinalDataset with_column(int attr, const std::vector<int>& values) const;

private:
    int n_ = 0;
    int a_ = 0;
    std::vector<std::string> attribute_names_;
    std::vector<OrdinalScale> attribute_scales_;
    OrdinalScale response_scale_;
    std::vector<int> cells_;
    std::vector<int> response_;
    std::string response_name_;
};

// Laplace-smoothed P(attribute value | response code), one table per attribute.
// Smoothing adds one pseudo-count to each of the attribute's codes, so every
// probability is strictly positive and each row sums to one.
class ClassConditionalTable {
public:
    explicit ClassConditionalTable(const OrdinalDataset& dataset);

    // P(value | response_code) for the given attribute.
    double prob(int attr, int response_code, int value) const;

    int attribute_count() const { return a_; }
    int response_codes() const { return response_max_; }

private:
    int a_ = 0;
    int response_max_ = 0;
    std::vector<int> attr_max_;       // scale max per attribute
    std::vector<int> offsets_;        // start of each attribute's block
    std::vector<double> probs_;       // [attr][response_code-1][value-1]
};

// Distance contribution of one attribute between two rows, in [0, 1].
// Both codes present: |v_i - v_j| / (s - 1). Missing codes fall back to the
// class-conditional estimate of agreement.
double value_diff(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                  int attr, int row_i, int row_j);

// Sum of value_diff over attributes, optionally skipping one. Symmetric.
double instance_distance(const OrdinalDataset& dataset, const ClassConditionalTable& table,
                         int row_i, int row_j, std::optional<int> exclude_attr = std::nullopt);

}  // namespace ordeval
