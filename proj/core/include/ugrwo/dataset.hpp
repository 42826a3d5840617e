#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ugrwo/common.hpp"

namespace ugrwo {

enum class Label : std::uint8_t { Negative = 0, Positive = 1 };

enum class AttrKind : std::uint8_t { Continuous = 0, Discrete = 1 };

// Labeled feature matrix with binary class roles. Values are stored as
// doubles; discrete attributes hold category codes and keep the original
// token per code in `categories`. Missing cells are NaN until impute_mean()
// runs; every consumer past ingestion expects a fully imputed dataset.
struct Dataset {
    std::string name;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> features;  // row-major, n_rows * n_cols
    std::vector<Label> labels;
    std::vector<AttrKind> kinds;
    std::vector<std::string> column_names;
    // Per column: token for each category code. Empty for continuous columns.
    std::vector<std::vector<std::string>> categories;
    std::string positive_label;

    MatrixView view() const { return {features.data(), n_rows, n_cols}; }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * n_cols, n_cols};
    }
    double at(std::size_t i, std::size_t j) const {
        return features[i * n_cols + j];
    }

    std::size_t count(Label l) const;
    bool has_missing() const;
    std::vector<std::size_t> indices_of(Label l) const;
    // New dataset holding the given rows, in the given order.
    Dataset subset(std::span<const std::size_t> rows_wanted) const;
};

struct DatasetSummary {
    std::string name;
    std::size_t n_instances = 0;
    std::size_t n_positive = 0;
    std::size_t n_attributes = 0;
    std::string positive_label;
    double imbalance_ratio = 0.0;  // (n_instances - n_positive) / n_positive

    // 2-decimal IR, matching how summaries are reported.
    double imbalance_ratio_2dp() const;
    // CSV row: name,instances,positives,attributes,positive_label,IR
    std::string csv_row() const;
    static std::string csv_header();
};

struct FoldPlan {
    std::size_t fold_count = 0;
    std::vector<std::size_t> assignments;  // test-fold index per instance
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

struct LoadSpec {
    std::string label_column;
    std::string positive_label;
    std::vector<std::string> discrete_columns;
    std::string dataset_name;  // defaults to the file stem when empty
};

// CSV ingestion: comma-separated, first row is the header, "?" and empty
// cells denote missing values. Non-label columns must parse as numeric
// unless declared discrete in the spec. Missing cells come back as NaN.
Dataset load_csv(const std::string& path, const LoadSpec& spec);

// Replaces missing continuous values by the column mean over present values
// and missing discrete values by the column mode (ties to the lowest code).
// Errors on a column with no present value at all.
Dataset impute_mean(const Dataset& ds);

DatasetSummary summarize(const Dataset& ds);

// Stratified fold assignment, deterministic in `seed`. When a class has
// fewer members than fold_count the count is reduced to that class size and
// a warning is printed to stderr.
FoldPlan make_folds(const Dataset& ds, std::size_t fold_count, std::uint64_t seed);

}  // namespace ugrwo
