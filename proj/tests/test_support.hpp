#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ugrwo/dataset.hpp"
#include "ugrwo/rng.hpp"

namespace testsup {

using ugrwo::AttrKind;
using ugrwo::Dataset;
using ugrwo::Label;

inline bool approx(double a, double b, double eps = 1e-9) {
    return std::fabs(a - b) <= eps;
}

// In-memory dataset from row-major values; all attributes continuous unless
// kinds are given.
inline Dataset make_dataset(std::size_t n_cols, const std::vector<double>& values,
                            const std::vector<Label>& labels,
                            std::vector<AttrKind> kinds = {}) {
    Dataset ds;
    ds.name = "test";
    ds.n_cols = n_cols;
    ds.n_rows = labels.size();
    ds.features = values;
    ds.labels = labels;
    ds.kinds = kinds.empty() ? std::vector<AttrKind>(n_cols, AttrKind::Continuous)
                             : std::move(kinds);
    ds.categories.assign(n_cols, {});
    for (std::size_t c = 0; c < n_cols; ++c)
        ds.column_names.push_back("a" + std::to_string(c));
    ds.positive_label = "positive";
    return ds;
}

// Two Gaussian blobs: n_pos positives around pos_center, n_neg negatives
// around neg_center, unit standard deviation per axis.
inline Dataset gaussian_blobs(std::size_t n_pos, std::size_t n_neg,
                              std::size_t dims, double pos_center,
                              double neg_center, std::uint64_t seed) {
    ugrwo::Rng rng(seed);
    std::vector<double> values;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n_pos; ++i) {
        for (std::size_t d = 0; d < dims; ++d)
            values.push_back(pos_center + rng.normal());
        labels.push_back(Label::Positive);
    }
    for (std::size_t i = 0; i < n_neg; ++i) {
        for (std::size_t d = 0; d < dims; ++d)
            values.push_back(neg_center + rng.normal());
        labels.push_back(Label::Negative);
    }
    return make_dataset(dims, values, labels);
}

// Minority cluster inside the unit ball plus one far outlier; pure minority
// dataset unless majority points are appended by the caller.
inline std::vector<double> clustered_points(std::size_t n_cluster, std::size_t dims,
                                            double outlier_distance,
                                            std::uint64_t seed) {
    ugrwo::Rng rng(seed);
    std::vector<double> pts;
    for (std::size_t i = 0; i < n_cluster; ++i) {
        // rejection-sample a point in the unit ball
        while (true) {
            std::vector<double> p(dims);
            double norm2 = 0;
            for (auto& v : p) {
                v = 2.0 * rng.uniform() - 1.0;
                norm2 += v * v;
            }
            if (norm2 <= 1.0) {
                pts.insert(pts.end(), p.begin(), p.end());
                break;
            }
        }
    }
    pts.push_back(outlier_distance);
    for (std::size_t d = 1; d < dims; ++d) pts.push_back(0.0);
    return pts;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("ugrwo_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }
    std::string dir() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    os << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// Fixture CSV with exact class counts: `m` numeric attribute columns filled
// with deterministic values, one label column.
inline void write_fixture_csv(const std::string& path, std::size_t n,
                              std::size_t n_pos, std::size_t m,
                              const std::string& positive_label,
                              const std::string& negative_label,
                              std::uint64_t seed) {
    ugrwo::Rng rng(seed);
    std::ofstream os(path, std::ios::binary);
    for (std::size_t c = 0; c < m; ++c) os << "a" << c << ",";
    os << "class\n";
    char buf[32];
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            std::snprintf(buf, sizeof(buf), "%.4f", rng.normal());
            os << buf << ",";
        }
        os << (r < n_pos ? positive_label : negative_label) << "\n";
    }
}

}  // namespace testsup
