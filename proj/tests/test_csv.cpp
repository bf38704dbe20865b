#include <doctest.h>

#include <sstream>

#include "ordeval/csv.hpp"
#include "ordeval/errors.hpp"
#include "ordeval/rng.hpp"
#include "test_util.hpp"

using namespace ordeval;
using namespace ordeval::testing;

namespace {

LoadResult load_string(const std::string& text, IngestionConfig config = {}) {
    if (config.response_column.empty()) config.response_column = "response";
    std::istringstream in(text);
    return load_csv(in, config);
}

bool same_dataset(const OrdinalDataset& x, const OrdinalDataset& y) {
    if (x.attribute_names() != y.attribute_names()) return false;
    if (x.row_count() != y.row_count() || x.attribute_count() != y.attribute_count()) return false;
    if (x.response_scale().max_code != y.response_scale().max_code) return false;
    if (x.response_name() != y.response_name()) return false;
    for (int j = 0; j < x.attribute_count(); ++j) {
        if (x.attribute_scale(j).max_code != y.attribute_scale(j).max_code) return false;
    }
    for (int i = 0; i < x.row_count(); ++i) {
        if (x.response(i) != y.response(i)) return false;
        for (int j = 0; j < x.attribute_count(); ++j) {
            if (x.cell(i, j) != y.cell(i, j)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("load_csv: direct ingestion") {
    IngestionConfig config;
    config.response_column = "response";
    config.default_scale = 7;
    const LoadResult result = load_string(
        "q1,q2,response\n"
        "1,7,4\n"
        "2,5,3\n"
        "7,1,7\n",
        config);
    CHECK(result.dataset.row_count() == 3);
    CHECK(result.dataset.attribute_count() == 2);
    CHECK(result.dataset.attribute_scale(0).max_code == 7);
    CHECK(result.dataset.attribute_scale(1).max_code == 7);
    CHECK(result.dataset.response_scale().max_code == 7);
    CHECK(result.report.rows_read == 3);
    CHECK(result.report.rows_rejected == 0);
    CHECK(result.dataset.cell(2, 0) == 7);
    CHECK(result.dataset.response(1) == 3);
}

TEST_CASE("load_csv: blank response drops the row and counts it") {
    const LoadResult result = load_string(
        "q1,response\n"
        "1,4\n"
        "2,\n"
        "3,6\n");
    CHECK(result.dataset.row_count() == 2);
    CHECK(result.report.rows_read == 3);
    CHECK(result.report.rows_rejected == 1);
    REQUIRE(result.report.errors.size() == 1);
    CHECK(result.report.errors[0].find("line 3") != std::string::npos);
}

TEST_CASE("load_csv: NA marks a missing attribute cell") {
    const LoadResult result = load_string(
        "q1,q2,response\n"
        "1,NA,4\n"
        ",3,6\n");
    CHECK(result.dataset.row_count() == 2);
    CHECK(result.dataset.is_missing(0, 1));
    CHECK(result.dataset.is_missing(1, 0));
}

TEST_CASE("load_csv: value outside declared scale names row and column") {
    IngestionConfig config;
    config.response_column = "response";
    config.scale_overrides["q1"] = 7;
    try {
        load_string(
            "q1,response\n"
            "3,4\n"
            "8,6\n",
            config);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("q1") != std::string::npos);
        CHECK(msg.find('8') != std::string::npos);
        CHECK(e.column() == "q1");
        CHECK(e.row() == 3);  // file line: header is line 1
    }
}

TEST_CASE("load_csv: non-integer cell is a parse error with location") {
    try {
        load_string(
            "q1,response\n"
            "3,4\n"
            "x,6\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("q1") != std::string::npos);
    }
}

TEST_CASE("load_csv: fewer than two usable rows is fatal") {
    CHECK_THROWS_AS(load_string("q1,response\n1,\n2,\n3,4\n"), ValidationError);
}

TEST_CASE("load_csv: missing response column is a parse error naming it") {
    IngestionConfig config;
    config.response_column = "net_benefit";
    try {
        load_string("q1,response\n1,2\n3,4\n", config);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("net_benefit") != std::string::npos);
    }
}

TEST_CASE("load_csv: inferred scales are recorded") {
    const LoadResult result = load_string(
        "q1,response\n"
        "1,4\n"
        "5,6\n");
    CHECK(result.report.inferred_scales.at("q1") == 5);
    CHECK(result.report.inferred_scales.at("response") == 6);
    CHECK(result.dataset.attribute_scale(0).max_code == 5);
}

TEST_CASE("csv round-trip yields an identical dataset") {
    Rng rng(71);
    for (int trial = 0; trial < 6; ++trial) {
        const OrdinalDataset original = random_dataset(rng, 25, 4, 7, 0.15);
        std::ostringstream out;
        save_csv(original, out);

        IngestionConfig config;
        config.response_column = "response";
        std::istringstream in(out.str());
        const LoadResult reloaded = load_csv(in, config);

        // Scales were inferred on the way back in; compare content rather
        // than declared bounds, then a declared round trip exactly.
        IngestionConfig declared = config;
        declared.default_scale = 7;
        std::istringstream in2(out.str());
        const LoadResult reloaded2 = load_csv(in2, declared);
        CHECK(same_dataset(original, reloaded2.dataset));

        std::ostringstream out2;
        save_csv(reloaded.dataset, out2);
        CHECK(out.str() == out2.str());
    }
}

TEST_CASE("csv quoting round-trips attribute names with commas") {
    std::vector<std::string> names = {"plain", "with, comma"};
    std::vector<OrdinalScale> scales = {{7, {}}, {7, {}}};
    const OrdinalDataset ds({names}, {scales}, {7, {}}, {1, 2, 3, 4}, {1, 2}, "resp");
    std::ostringstream out;
    save_csv(ds, out);

    IngestionConfig config;
    config.response_column = "resp";
    config.default_scale = 7;
    std::istringstream in(out.str());
    const LoadResult reloaded = load_csv(in, config);
    CHECK(same_dataset(ds, reloaded.dataset));
}
