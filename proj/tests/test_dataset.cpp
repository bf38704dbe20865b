#include <doctest.h>

#include <cmath>

#include "ordeval/dataset.hpp"
#include "ordeval/errors.hpp"
#include "ordeval/rng.hpp"
#include "test_util.hpp"

using namespace ordeval;
using namespace ordeval::testing;

namespace {

// Six respondents, two attributes on 1..3, response on 1..2, one missing
// cell. All expected numbers below were enumerated by hand from this table
// before the implementation existed.
//
//   row  a1  a2  resp
//   0    1   2   1
//   1    3   1   1
//   2    2   .   2
//   3    1   3   2
//   4    3   3   1
//   5    2   2   2
OrdinalDataset fixture6() {
    return make_dataset(
        {{1, 2}, {3, 1}, {2, kMissingCode}, {1, 3}, {3, 3}, {2, 2}},
        {1, 1, 2, 2, 1, 2}, /*attr_scale=*/3, /*response_scale=*/2);
}

}  // namespace

TEST_CASE("scale invariants") {
    OrdinalScale ok{7, {}};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.span() == 6);
    CHECK(ok.contains(1));
    CHECK(ok.contains(7));
    CHECK_FALSE(ok.contains(0));
    CHECK_FALSE(ok.contains(8));

    OrdinalScale too_small{1, {}};
    CHECK_THROWS_AS(too_small.validate(), ValidationError);

    OrdinalScale wrong_labels{3, {"lo", "hi"}};
    CHECK_THROWS_AS(wrong_labels.validate(), ValidationError);
}

TEST_CASE("dataset invariants") {
    // Fewer than 2 rows.
    CHECK_THROWS_AS(make_dataset({{1, 2}}, {1}), ValidationError);
    // Out-of-scale cell.
    CHECK_THROWS_AS(make_dataset({{8, 1}, {1, 1}}, {1, 2}), ValidationError);
    // Constant response.
    CHECK_THROWS_AS(make_dataset({{1, 2}, {2, 3}}, {4, 4}), ValidationError);
    // Missing cells are fine.
    CHECK_NOTHROW(make_dataset({{kMissingCode, 2}, {2, 3}}, {4, 5}));
}

TEST_CASE("class-conditional table: constant attribute, add-one arithmetic") {
    // 10 rows of class 3 with a constant attribute at 4, plus 5 rows of
    // class 5: P(4|3) = 11/17 and P(v != 4|3) = 1/17.
    std::vector<std::vector<int>> rows;
    std::vector<int> response;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({4});
        response.push_back(3);
    }
    for (int i = 0; i < 5; ++i) {
        rows.push_back({4});
        response.push_back(5);
    }
    const OrdinalDataset ds = make_dataset(rows, response);
    const ClassConditionalTable table(ds);

    CHECK(table.prob(0, 3, 4) == doctest::Approx(11.0 / 17.0).epsilon(1e-12));
    for (int v = 1; v <= 7; ++v) {
        if (v != 4) CHECK(table.prob(0, 3, v) == doctest::Approx(1.0 / 17.0).epsilon(1e-12));
    }
    CHECK(table.prob(0, 5, 4) == doctest::Approx(6.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("class-conditional table: attribute identical to response has maximal diagonal") {
    Rng rng(11);
    std::vector<std::vector<int>> rows;
    std::vector<int> response;
    for (int i = 0; i < 60; ++i) {
        const int r = rng.uniform_int(1, 7);
        rows.push_back({r});
        response.push_back(r);
    }
    const OrdinalDataset ds = make_dataset(rows, response);
    const ClassConditionalTable table(ds);
    for (int c = 1; c <= 7; ++c) {
        for (int v = 1; v <= 7; ++v) {
            CHECK(table.prob(0, c, c) >= table.prob(0, c, v));
        }
    }
}

TEST_CASE("class-conditional table: 6-row fixture matches hand-computed counts") {
    const OrdinalDataset ds = fixture6();
    const ClassConditionalTable table(ds);

    // a1, class 1: values {1,3,3}, denom 6.
    CHECK(table.prob(0, 1, 1) == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
    CHECK(table.prob(0, 1, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(table.prob(0, 1, 3) == doctest::Approx(3.0 / 6.0).epsilon(1e-12));
    // a1, class 2: values {2,1,2}.
    CHECK(table.prob(0, 2, 1) == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
    CHECK(table.prob(0, 2, 2) == doctest::Approx(3.0 / 6.0).epsilon(1e-12));
    CHECK(table.prob(0, 2, 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // a2, class 1: values {2,1,3}, uniform.
    for (int v = 1; v <= 3; ++v) {
        CHECK(table.prob(1, 1, v) == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
    }
    // a2, class 2: one missing cell, so N = 2 and denom = 5.
    CHECK(table.prob(1, 2, 1) == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    CHECK(table.prob(1, 2, 2) == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
    CHECK(table.prob(1, 2, 3) == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
}

TEST_CASE("class-conditional rows sum to one") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const OrdinalDataset ds = random_dataset(rng, 30, 3, 7, 0.15);
        const ClassConditionalTable table(ds);
        for (int attr = 0; attr < ds.attribute_count(); ++attr) {
            for (int c = 1; c <= 7; ++c) {
                double sum = 0.0;
                for (int v = 1; v <= 7; ++v) sum += table.prob(attr, c, v);
                CHECK(std::abs(sum - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("value_diff basic cases") {
    const OrdinalDataset ds = make_dataset({{3, 1}, {3, 7}}, {1, 2});
    const ClassConditionalTable table(ds);
    CHECK(value_diff(ds, table, 0, 0, 1) == 0.0);   // identical codes
    CHECK(value_diff(ds, table, 1, 0, 1) == 1.0);   // extremes of 1..7
}

TEST_CASE("value_diff with missing codes") {
    // Class 2 holds three rows with value 5 and one missing row, so
    // P(5|2) = (3+1)/(3+7) = 0.4 and the one-missing diff is 0.6.
    const OrdinalDataset ds = make_dataset(
        {{5}, {5}, {5}, {kMissingCode}, {1}, {kMissingCode}},
        {2, 2, 2, 2, 1, 1});
    const ClassConditionalTable table(ds);

    CHECK(value_diff(ds, table, 0, 3, 0) == doctest::Approx(0.6).epsilon(1e-12));
    // Symmetric in argument order.
    CHECK(value_diff(ds, table, 0, 0, 3) == value_diff(ds, table, 0, 3, 0));
    // Missing vs the class-1 row with value 1: P(1|2) = 1/10.
    CHECK(value_diff(ds, table, 0, 3, 4) == doctest::Approx(0.9).epsilon(1e-12));
    // Both missing, responses 2 and 1: hand-computed agreement 0.1375.
    CHECK(value_diff(ds, table, 0, 3, 5) == doctest::Approx(1.0 - 0.1375).epsilon(1e-12));
}

TEST_CASE("value_diff stays in [0,1] and distances are symmetric") {
    Rng rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        const OrdinalDataset ds = random_dataset(rng, 20, 3, 7, 0.2);
        const ClassConditionalTable table(ds);
        for (int i = 0; i < ds.row_count(); ++i) {
            for (int j = 0; j < ds.row_count(); ++j) {
                for (int attr = 0; attr < ds.attribute_count(); ++attr) {
                    const double d = value_diff(ds, table, attr, i, j);
                    CHECK(d >= 0.0);
                    CHECK(d <= 1.0);
                }
                const double dist = instance_distance(ds, table, i, j);
                CHECK(dist >= 0.0);
                CHECK(dist <= ds.attribute_count());
                CHECK(dist == instance_distance(ds, table, j, i));
            }
        }
    }
}

TEST_CASE("instance_distance basic cases and fixture values") {
    const OrdinalDataset identical = make_dataset({{2, 5}, {2, 5}, {1, 1}}, {1, 2, 1});
    const ClassConditionalTable t1(identical);
    CHECK(instance_distance(identical, t1, 0, 1) == 0.0);

    const OrdinalDataset one_full = make_dataset({{1, 4}, {7, 4}}, {1, 2});
    const ClassConditionalTable t2(one_full);
    CHECK(instance_distance(one_full, t2, 0, 1) == 1.0);

    const OrdinalDataset ds = fixture6();
    const ClassConditionalTable table(ds);
    // Hand-computed sums of per-attribute diffs (attribute scale 1..3).
    CHECK(instance_distance(ds, table, 0, 1) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(instance_distance(ds, table, 2, 3) == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(instance_distance(ds, table, 2, 5) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(instance_distance(ds, table, 0, 5) == doctest::Approx(0.5).epsilon(1e-12));
    // Excluding a2 leaves only the a1 difference.
    CHECK(instance_distance(ds, table, 0, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(instance_distance(ds, table, 0, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}
