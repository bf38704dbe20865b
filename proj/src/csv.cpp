#include "ordeval/csv.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

#include "ordeval/errors.hpp"

namespace ordeval {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Splits one CSV record, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line, long line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field at line " + std::to_string(line_no), line_no);
    fields.push_back(field);
    return fields;
}

bool is_missing(const std::string& raw, const std::vector<std::string>& markers) {
    const std::string t = trim(raw);
    return std::find(markers.begin(), markers.end(), t) != markers.end();
}

int parse_code(const std::string& raw, long line_no, const std::string& column) {
    const std::string t = trim(raw);
    if (t.empty()) {
        throw ParseError("empty cell at line " + std::to_string(line_no) + ", column '" + column + "'",
                         line_no, column);
    }
    std::size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(t, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != t.size()) {
        throw ParseError("non-integer cell '" + t + "' at line " + std::to_string(line_no) +
                             ", column '" + column + "'",
                         line_no, column);
    }
    if (value < 1) {
        throw ParseError("code " + std::to_string(value) + " below 1 at line " + std::to_string(line_no) +
                             ", column '" + column + "'",
                         line_no, column);
    }
    return static_cast<int>(value);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

LoadResult load_csv(std::istream& in, const IngestionConfig& config) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty input: no header row", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_record(line, 1);
    std::vector<std::string> names;
    names.reserve(header.size());
    for (const auto& h : header) names.push_back(trim(h));

    int response_col = -1;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == config.response_column) response_col = static_cast<int>(j);
    }
    if (response_col < 0) {
        throw ParseError("response column '" + config.response_column + "' not found in header", 1,
                         config.response_column);
    }

    std::vector<std::string> attr_names;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (static_cast<int>(j) != response_col) attr_names.push_back(names[j]);
    }

    ValidationReport report;
    std::vector<int> cells;
    std::vector<int> response;
    std::vector<int> max_seen(names.size(), 0);

    // Declared upper bound per column (0 = infer from the data afterwards).
    std::vector<int> declared_max(names.size(), 0);
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (auto it = config.scale_overrides.find(names[j]); it != config.scale_overrides.end()) {
            declared_max[j] = it->second;
        } else if (config.default_scale >= 2) {
            declared_max[j] = config.default_scale;
        }
    }

    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_record(line, line_no);
        if (fields.size() != names.size()) {
            throw ParseError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(names.size()),
                             line_no);
        }
        ++report.rows_read;
        if (is_missing(fields[response_col], config.missing_markers)) {
            ++report.rows_rejected;
            report.errors.push_back("line " + std::to_string(line_no) +
                                    ": missing response, row dropped");
            continue;
        }
        const auto checked_code = [&](std::size_t j) {
            const int v = parse_code(fields[j], line_no, names[j]);
            if (declared_max[j] >= 2 && v > declared_max[j]) {
                throw ParseError("cell value " + std::to_string(v) + " outside declared scale 1.." +
                                     std::to_string(declared_max[j]) + " at line " +
                                     std::to_string(line_no) + ", column '" + names[j] + "'",
                                 line_no, names[j]);
            }
            max_seen[j] = std::max(max_seen[j], v);
            return v;
        };
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (static_cast<int>(j) == response_col) continue;
            if (is_missing(fields[j], config.missing_markers)) {
                cells.push_back(kMissingCode);
            } else {
                cells.push_back(checked_code(j));
            }
        }
        response.push_back(checked_code(static_cast<std::size_t>(response_col)));
    }

    if (response.size() < 2) {
        throw ValidationError("fewer than 2 usable rows after ingestion (" +
                              std::to_string(response.size()) + " kept, " +
                              std::to_string(report.rows_rejected) + " rejected)");
    }

    auto resolve_scale = [&](std::size_t j) {
        OrdinalScale scale;
        if (declared_max[j] >= 2) {
            scale.max_code = declared_max[j];
        } else {
            scale.max_code = std::max(max_seen[j], 2);
            report.inferred_scales[names[j]] = scale.max_code;
        }
        return scale;
    };

    std::vector<OrdinalScale> attr_scales;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (static_cast<int>(j) != response_col) attr_scales.push_back(resolve_scale(j));
    }
    const OrdinalScale response_scale = resolve_scale(static_cast<std::size_t>(response_col));

    OrdinalDataset dataset(std::move(attr_names), std::move(attr_scales), response_scale,
                           std::move(cells), std::move(response), config.response_column);
    return {std::move(dataset), std::move(report)};
}

void save_csv(const OrdinalDataset& dataset, std::ostream& out) {
    for (int j = 0; j < dataset.attribute_count(); ++j) {
        out << csv_escape(dataset.attribute_name(j)) << ',';
    }
    out << csv_escape(dataset.response_name()) << '\n';
    for (int i = 0; i < dataset.row_count(); ++i) {
        for (int j = 0; j < dataset.attribute_count(); ++j) {
            if (!dataset.is_missing(i, j)) out << dataset.cell(i, j);
            out << ',';
        }
        out << dataset.response(i) << '\n';
    }
}

}  // namespace ordeval
