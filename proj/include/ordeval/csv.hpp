#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"

namespace ordeval {

struct IngestionConfig {
    std::string response_column;
    // Per-column scale overrides (column name -> max code). Columns without
    // an override fall back to default_scale, then to inference.
    std::map<std::string, int> scale_overrides;
    int default_scale = 0;  // 0 = infer as 1..max observed
    std::vector<std::string> missing_markers = {"", "NA"};
};

struct ValidationReport {
    long rows_read = 0;
    long rows_rejected = 0;
    std::map<std::string, int> inferred_scales;  // column -> inferred max code
    std::vector<std::string> errors;             // non-fatal notes (rejected rows)
};

struct LoadResult {
    OrdinalDataset dataset;
    ValidationReport report;
};

// Parses a header-first CSV stream into a validated dataset. Rows whose
// response cell is missing are dropped and counted in the report. Malformed
// cells and out-of-scale codes throw ParseError naming the line and column.
LoadResult load_csv(std::istream& in, const IngestionConfig& config);

// Canonical serialization: attributes in declaration order, response last,
// missing cells as empty fields. Re-ingesting yields an identical dataset.
void save_csv(const OrdinalDataset& dataset, std::ostream& out);

}  // namespace ordeval
