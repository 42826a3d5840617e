#include <doctest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"
#include "ugrwo/dataset.hpp"

using namespace ugrwo;
using testsup::approx;
using testsup::TempDir;

TEST_CASE("load_csv assigns class roles and preserves row order") {
    TempDir tmp("load");
    const std::string path = tmp.file("breast_w.csv");
    testsup::write_fixture_csv(path, 699, 241, 9, "Malignant", "Benign", 1);

    const Dataset ds = load_csv(path, {"class", "Malignant", {}, "Breast_w"});
    CHECK(ds.n_rows == 699);
    CHECK(ds.n_cols == 9);
    CHECK(ds.count(Label::Positive) == 241);
    CHECK(ds.name == "Breast_w");
    // fixture writes positives first
    CHECK(ds.labels[0] == Label::Positive);
    CHECK(ds.labels[698] == Label::Negative);
}

TEST_CASE("load_csv accepts a single-row file") {
    TempDir tmp("load1");
    const std::string path = tmp.file("one.csv");
    testsup::write_file(path, "x,y,class\n1.5,2.5,yes\n");
    const Dataset ds = load_csv(path, {"class", "yes", {}, ""});
    CHECK(ds.n_rows == 1);
    CHECK(ds.n_cols == 2);
    CHECK(ds.at(0, 1) == 2.5);
    CHECK(ds.name == "one");
}

TEST_CASE("load_csv rejects bad input") {
    TempDir tmp("loadbad");
    SUBCASE("non-numeric token in a continuous column") {
        const std::string path = tmp.file("bad.csv");
        testsup::write_file(path, "x,class\nabc,yes\n");
        CHECK_THROWS_AS(load_csv(path, {"class", "yes", {}, ""}), Error);
    }
    SUBCASE("unknown label column") {
        const std::string path = tmp.file("nolabel.csv");
        testsup::write_file(path, "x,class\n1.0,yes\n");
        CHECK_THROWS_AS(load_csv(path, {"klass", "yes", {}, ""}), Error);
    }
    SUBCASE("zero data rows") {
        const std::string path = tmp.file("empty.csv");
        testsup::write_file(path, "x,class\n");
        CHECK_THROWS_AS(load_csv(path, {"class", "yes", {}, ""}), Error);
    }
    SUBCASE("unreadable file") {
        CHECK_THROWS_AS(load_csv(tmp.file("missing.csv"), {"class", "yes", {}, ""}),
                        Error);
    }
}

TEST_CASE("load_csv maps declared discrete columns to category codes") {
    TempDir tmp("loaddisc");
    const std::string path = tmp.file("disc.csv");
    testsup::write_file(path,
                        "color,x,class\nred,1.0,yes\nblue,2.0,no\nred,3.0,no\n");
    const Dataset ds = load_csv(path, {"class", "yes", {"color"}, ""});
    CHECK(ds.kinds[0] == AttrKind::Discrete);
    CHECK(ds.kinds[1] == AttrKind::Continuous);
    CHECK(ds.at(0, 0) == 0.0);  // red
    CHECK(ds.at(1, 0) == 1.0);  // blue
    CHECK(ds.at(2, 0) == 0.0);  // red again
    CHECK(ds.categories[0] == std::vector<std::string>{"red", "blue"});
}

TEST_CASE("impute_mean fills continuous gaps with the column mean") {
    TempDir tmp("impute");
    const std::string path = tmp.file("gap.csv");
    testsup::write_file(path, "x,class\n1.0,yes\n?,no\n3.0,no\n");
    const Dataset raw = load_csv(path, {"class", "yes", {}, ""});
    CHECK(raw.has_missing());
    const Dataset ds = impute_mean(raw);
    CHECK(!ds.has_missing());
    CHECK(ds.at(1, 0) == 2.0);  // mean of {1, 3}
    CHECK(ds.at(0, 0) == 1.0);
    CHECK(ds.at(2, 0) == 3.0);
}

TEST_CASE("impute_mean is the identity without missing cells") {
    const Dataset ds = testsup::make_dataset(
        2, {1, 2, 3, 4}, {Label::Positive, Label::Negative});
    const Dataset out = impute_mean(ds);
    CHECK(out.features == ds.features);
}

TEST_CASE("impute_mean rejects an all-missing column") {
    TempDir tmp("allmiss");
    const std::string path = tmp.file("allmiss.csv");
    testsup::write_file(path, "x,y,class\n?,1.0,yes\n,2.0,no\n");
    const Dataset raw = load_csv(path, {"class", "yes", {}, ""});
    CHECK_THROWS_AS(impute_mean(raw), Error);
}

TEST_CASE("impute_mean uses the mode for discrete columns") {
    TempDir tmp("modemiss");
    const std::string path = tmp.file("mode.csv");
    testsup::write_file(
        path, "color,class\nred,yes\nblue,no\nred,no\n?,no\nblue,no\nred,no\n");
    const Dataset ds = impute_mean(load_csv(path, {"class", "yes", {"color"}, ""}));
    CHECK(ds.at(3, 0) == 0.0);  // red is the mode (3 of 5 present)
}

TEST_CASE("summarize reproduces benchmark-style characteristics") {
    TempDir tmp("summ");
    SUBCASE("699 instances, 241 positive") {
        const std::string path = tmp.file("bw.csv");
        testsup::write_fixture_csv(path, 699, 241, 9, "Malignant", "Benign", 2);
        const auto s = summarize(load_csv(path, {"class", "Malignant", {}, "Breast_w"}));
        CHECK(s.n_instances == 699);
        CHECK(s.n_positive == 241);
        CHECK(s.n_attributes == 9);
        CHECK(approx(s.imbalance_ratio_2dp(), 1.90, 1e-12));
    }
    SUBCASE("214 instances, 17 positive") {
        const std::string path = tmp.file("glass.csv");
        testsup::write_fixture_csv(path, 214, 17, 9, "3", "other", 3);
        const auto s = summarize(load_csv(path, {"class", "3", {}, "Glass"}));
        CHECK(approx(s.imbalance_ratio, (214.0 - 17.0) / 17.0, 1e-12));
        CHECK(approx(s.imbalance_ratio_2dp(), 11.59, 1e-12));
        CHECK(std::fabs(s.imbalance_ratio - 11.58) < 0.01);
    }
    SUBCASE("balanced 10/5") {
        const Dataset ds = testsup::make_dataset(
            1, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
            {Label::Positive, Label::Positive, Label::Positive, Label::Positive,
             Label::Positive, Label::Negative, Label::Negative, Label::Negative,
             Label::Negative, Label::Negative});
        CHECK(approx(summarize(ds).imbalance_ratio, 1.0));
    }
    SUBCASE("zero positives is an error") {
        const Dataset ds =
            testsup::make_dataset(1, {0, 1}, {Label::Negative, Label::Negative});
        CHECK_THROWS_AS(summarize(ds), Error);
    }
}

TEST_CASE("summary csv row matches the documented column order") {
    DatasetSummary s;
    s.name = "Breast_w";
    s.n_instances = 699;
    s.n_positive = 241;
    s.n_attributes = 9;
    s.positive_label = "Malignant";
    s.imbalance_ratio = 458.0 / 241.0;
    CHECK(DatasetSummary::csv_header() ==
          "name,instances,positives,attributes,positive_label,IR");
    CHECK(s.csv_row() == "Breast_w,699,241,9,Malignant,1.90");
}

TEST_CASE("make_folds stratifies exactly on divisible counts") {
    const Dataset ds = testsup::gaussian_blobs(20, 80, 2, 0.0, 5.0, 7);
    const FoldPlan plan = make_folds(ds, 10, 99);
    REQUIRE(plan.fold_count == 10);
    for (std::size_t f = 0; f < 10; ++f) {
        const auto test = plan.test_indices(f);
        std::size_t pos = 0;
        for (std::size_t i : test) pos += ds.labels[i] == Label::Positive;
        CHECK(test.size() == 10);
        CHECK(pos == 2);
    }
}

TEST_CASE("make_folds leave-one-out degenerates to singleton test folds") {
    const Dataset ds = testsup::gaussian_blobs(3, 3, 1, 0.0, 5.0, 8);
    const FoldPlan plan = make_folds(ds, 3, 1);  // 3 = smallest class size
    for (std::size_t f = 0; f < plan.fold_count; ++f)
        CHECK(plan.test_indices(f).size() == 2);  // 1 of each class
}

TEST_CASE("make_folds is deterministic and seed-sensitive") {
    const Dataset ds = testsup::gaussian_blobs(30, 70, 3, 0.0, 4.0, 9);
    const FoldPlan a = make_folds(ds, 10, 1234);
    const FoldPlan b = make_folds(ds, 10, 1234);
    const FoldPlan c = make_folds(ds, 10, 4321);
    CHECK(a.assignments == b.assignments);
    CHECK(a.assignments != c.assignments);
}

TEST_CASE("make_folds rejects invalid arguments") {
    const Dataset ds = testsup::gaussian_blobs(5, 5, 1, 0.0, 5.0, 10);
    CHECK_THROWS_AS(make_folds(ds, 1, 0), Error);
    const Dataset oneclass =
        testsup::make_dataset(1, {0, 1}, {Label::Positive, Label::Positive});
    CHECK_THROWS_AS(make_folds(oneclass, 2, 0), Error);
}

TEST_CASE("make_folds reduces fold count to the smallest class") {
    const Dataset ds = testsup::gaussian_blobs(4, 50, 2, 0.0, 5.0, 11);
    const FoldPlan plan = make_folds(ds, 10, 5);
    CHECK(plan.fold_count == 4);
}

TEST_CASE("fold plans partition the index set") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Dataset ds = testsup::gaussian_blobs(17, 60, 2, 0.0, 5.0, seed);
        const FoldPlan plan = make_folds(ds, 5, seed * 101);
        std::set<std::size_t> seen;
        for (std::size_t f = 0; f < plan.fold_count; ++f)
            for (std::size_t i : plan.test_indices(f)) {
                CHECK(!seen.count(i));
                seen.insert(i);
            }
        CHECK(seen.size() == ds.n_rows);

        // stratification: each fold's positive share within 1 instance of
        // the global share
        const double global = 17.0 / 77.0;
        for (std::size_t f = 0; f < plan.fold_count; ++f) {
            const auto test = plan.test_indices(f);
            std::size_t pos = 0;
            for (std::size_t i : test) pos += ds.labels[i] == Label::Positive;
            CHECK(std::fabs(static_cast<double>(pos) -
                            global * static_cast<double>(test.size())) <= 1.0);
        }
    }
}

TEST_CASE("load, impute, summarize pipeline is deterministic") {
    TempDir tmp("pipe");
    const std::string path = tmp.file("p.csv");
    testsup::write_file(path, "x,y,class\n1.0,?,yes\n2.0,4.0,no\n?,6.0,no\n");
    const LoadSpec spec{"class", "yes", {}, ""};
    const Dataset a = impute_mean(load_csv(path, spec));
    const Dataset b = impute_mean(load_csv(path, spec));
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
    // order preserved: row 0 is still the positive one
    CHECK(a.labels[0] == Label::Positive);
    CHECK(a.at(0, 0) == 1.0);
    CHECK(a.at(0, 1) == 5.0);  // mean of {4, 6}
    CHECK(a.at(2, 0) == 1.5);  // mean of {1, 2}
}

TEST_CASE("IR times positives reconstructs the instance count") {
    TempDir tmp("ir");
    const struct {
        std::size_t n, pos;
    } rows[] = {{699, 241}, {214, 17}, {768, 268}, {846, 199}};
    for (const auto& row : rows) {
        const std::string path = tmp.file("d.csv");
        testsup::write_fixture_csv(path, row.n, row.pos, 3, "p", "n", row.n);
        const auto s = summarize(load_csv(path, {"class", "p", {}, ""}));
        const double reconstructed =
            s.imbalance_ratio_2dp() * static_cast<double>(s.n_positive) +
            static_cast<double>(s.n_positive);
        CHECK(std::fabs(reconstructed - static_cast<double>(s.n_instances)) <=
              0.005 * static_cast<double>(s.n_positive) + 1e-9);
    }
}
