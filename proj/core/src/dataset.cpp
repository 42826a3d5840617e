#include "ugrwo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "ugrwo/rng.hpp"

namespace ugrwo {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing_token(const std::string& tok) {
    return tok.empty() || tok == "?";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

std::size_t Dataset::count(Label l) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

bool Dataset::has_missing() const {
    return std::any_of(features.begin(), features.end(),
                       [](double v) { return std::isnan(v); });
}

std::vector<std::size_t> Dataset::indices_of(Label l) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_rows; ++i)
        if (labels[i] == l) idx.push_back(i);
    return idx;
}

Dataset Dataset::subset(std::span<const std::size_t> rows_wanted) const {
    Dataset out;
    out.name = name;
    out.n_rows = rows_wanted.size();
    out.n_cols = n_cols;
    out.kinds = kinds;
    out.column_names = column_names;
    out.categories = categories;
    out.positive_label = positive_label;
    out.features.reserve(out.n_rows * n_cols);
    out.labels.reserve(out.n_rows);
    for (std::size_t r : rows_wanted) {
        const auto src = row(r);
        out.features.insert(out.features.end(), src.begin(), src.end());
        out.labels.push_back(labels[r]);
    }
    return out;
}

Dataset load_csv(const std::string& path, const LoadSpec& spec) {
    std::ifstream in(path);
    if (!in) throw Error("load_csv: cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw Error("load_csv: empty file: " + path);
    const auto header = split_csv_line(line);

    std::size_t label_col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == spec.label_column) label_col = c;
    if (label_col == header.size())
        throw Error("load_csv: label column not found: " + spec.label_column);

    std::vector<bool> discrete(header.size(), false);
    for (const auto& name : spec.discrete_columns) {
        bool found = false;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name && c != label_col) {
                discrete[c] = true;
                found = true;
            }
        }
        if (!found)
            throw Error("load_csv: declared discrete column not found: " + name);
    }

    Dataset ds;
    ds.name = spec.dataset_name.empty()
                  ? std::filesystem::path(path).stem().string()
                  : spec.dataset_name;
    ds.positive_label = spec.positive_label;
    ds.n_cols = header.size() - 1;
    ds.kinds.reserve(ds.n_cols);
    ds.column_names.reserve(ds.n_cols);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_col) continue;
        ds.kinds.push_back(discrete[c] ? AttrKind::Discrete : AttrKind::Continuous);
        ds.column_names.push_back(header[c]);
    }
    ds.categories.assign(ds.n_cols, {});

    // token -> category code, per discrete column
    std::vector<std::map<std::string, double>> codes(ds.n_cols);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw Error("load_csv: row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));

        const std::string& label_tok = cells[label_col];
        if (is_missing_token(label_tok))
            throw Error("load_csv: missing label at row " + std::to_string(line_no));
        ds.labels.push_back(label_tok == spec.positive_label ? Label::Positive
                                                             : Label::Negative);

        std::size_t out_c = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == label_col) continue;
            const std::string& tok = cells[c];
            double v;
            if (is_missing_token(tok)) {
                v = kMissing;
            } else if (discrete[c]) {
                auto [it, inserted] = codes[out_c].try_emplace(
                    tok, static_cast<double>(ds.categories[out_c].size()));
                if (inserted) ds.categories[out_c].push_back(tok);
                v = it->second;
            } else if (!parse_double(tok, v)) {
                throw Error("load_csv: non-numeric value '" + tok +
                            "' in continuous column '" + header[c] + "' at row " +
                            std::to_string(line_no));
            }
            ds.features.push_back(v);
            ++out_c;
        }
        ++ds.n_rows;
    }
    if (ds.n_rows == 0) throw Error("load_csv: no data rows in " + path);
    return ds;
}

Dataset impute_mean(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t c = 0; c < ds.n_cols; ++c) {
        double sum = 0.0;
        std::size_t present = 0;
        std::map<double, std::size_t> freq;
        for (std::size_t r = 0; r < ds.n_rows; ++r) {
            const double v = ds.at(r, c);
            if (std::isnan(v)) continue;
            ++present;
            if (ds.kinds[c] == AttrKind::Continuous) sum += v;
            else ++freq[v];
        }
        if (present == ds.n_rows) continue;
        if (present == 0)
            throw Error("impute_mean: column '" + ds.column_names[c] +
                        "' has no present values");
        double fill;
        if (ds.kinds[c] == AttrKind::Continuous) {
            fill = sum / static_cast<double>(present);
        } else {
            // Mode; ties resolve to the lowest code (map iterates in key order).
            std::size_t best_count = 0;
            fill = 0.0;
            for (const auto& [code, n] : freq) {
                if (n > best_count) {
                    best_count = n;
                    fill = code;
                }
            }
        }
        for (std::size_t r = 0; r < ds.n_rows; ++r)
            if (std::isnan(out.features[r * ds.n_cols + c]))
                out.features[r * ds.n_cols + c] = fill;
    }
    return out;
}

double DatasetSummary::imbalance_ratio_2dp() const {
    return std::round(imbalance_ratio * 100.0) / 100.0;
}

std::string DatasetSummary::csv_header() {
    return "name,instances,positives,attributes,positive_label,IR";
}

std::string DatasetSummary::csv_row() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", imbalance_ratio);
    return name + "," + std::to_string(n_instances) + "," +
           std::to_string(n_positive) + "," + std::to_string(n_attributes) +
           "," + positive_label + "," + buf;
}

DatasetSummary summarize(const Dataset& ds) {
    DatasetSummary s;
    s.name = ds.name;
    s.n_instances = ds.n_rows;
    s.n_positive = ds.count(Label::Positive);
    s.n_attributes = ds.n_cols;
    s.positive_label = ds.positive_label;
    if (s.n_positive == 0)
        throw Error("summarize: no positive instances, IR undefined");
    s.imbalance_ratio = static_cast<double>(s.n_instances - s.n_positive) /
                        static_cast<double>(s.n_positive);
    return s;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) idx.push_back(i);
    return idx;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) idx.push_back(i);
    return idx;
}

FoldPlan make_folds(const Dataset& ds, std::size_t fold_count, std::uint64_t seed) {
    if (fold_count < 2) throw Error("make_folds: fold_count must be >= 2");
    const auto pos = ds.indices_of(Label::Positive);
    const auto neg = ds.indices_of(Label::Negative);
    if (pos.empty() || neg.empty())
        throw Error("make_folds: a class has zero members");

    const std::size_t smallest = std::min(pos.size(), neg.size());
    if (fold_count > smallest) {
        std::cerr << "make_folds: reducing fold_count from " << fold_count
                  << " to " << smallest << " (smallest class size) for dataset "
                  << ds.name << "\n";
        fold_count = smallest;
        if (fold_count < 2)
            throw Error("make_folds: smallest class too small to form 2 folds");
    }

    FoldPlan plan;
    plan.fold_count = fold_count;
    plan.seed = seed;
    plan.assignments.assign(ds.n_rows, 0);

    // Shuffle each class, then deal round-robin; per-fold class counts differ
    // by at most one.
    Rng rng(seed);
    for (const auto* cls : {&pos, &neg}) {
        std::vector<std::size_t> idx = *cls;
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.bounded(i)]);
        for (std::size_t t = 0; t < idx.size(); ++t)
            plan.assignments[idx[t]] = t % fold_count;
    }
    return plan;
}

}  // namespace ugrwo
