#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ugrwo/dataset.hpp"

namespace ugrwo {

struct ConfusionCounts {
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;

    std::size_t total() const { return tp + fn + fp + tn; }
};

// Which ratio cells came out 0/0 and were reported as 0.
enum UndefinedFlag : std::uint8_t {
    kUndefPrecisionMin = 1u << 0,
    kUndefTpRate = 1u << 1,
    kUndefPrecisionMaj = 1u << 2,
    kUndefTnRate = 1u << 3,
    kUndefFMin = 1u << 4,
    kUndefFMaj = 1u << 5,
};

struct MetricsReport {
    double f_min = 0, f_maj = 0, accuracy = 0, g_mean = 0, tp_rate = 0, auc = 0;
    double precision_min = 0, precision_maj = 0, tn_rate = 0;
    std::uint8_t undefined_mask = 0;

    // Table-style column block: f_min,f_maj,acc,g_mean,tp_rate,auc
    static std::string csv_header();
    std::string csv_row() const;
};

ConfusionCounts confusion(const std::vector<Label>& truth,
                          const std::vector<Label>& predictions);

// Confusion-derived metrics; auc stays 0 until filled by the caller.
// 0/0 ratios report 0 and set the matching undefined flag.
MetricsReport derive_metrics(const ConfusionCounts& c, double beta = 1.0);

// Mann-Whitney AUC: fraction of (positive, negative) pairs where the positive
// scores higher, ties counted half. Computed from tie-averaged ranks, which
// is exact (all intermediate quantities are integer half-units).
double auc(const std::vector<double>& scores, const std::vector<Label>& labels);

// ratio_i = auc_i / max_j auc_j.
std::vector<double> auc_ratio(const std::vector<double>& aucs);

// One grid observation for win counting. `case_id` names the arena the
// methods compete in (in the experiment runner: dataset + rate).
struct WinRecord {
    std::string classifier;
    std::string method;
    std::string case_id;
    std::string metric;
    double value = 0;
};

struct WinKey {
    std::string classifier;
    std::string method;
    std::string metric;
    auto operator<=>(const WinKey&) const = default;
};

// For every (classifier, case, metric) the best method earns one win; exact
// ties credit every tied method. Requires every case to cover the full
// method set observed in the records.
std::map<WinKey, std::size_t> win_summary(const std::vector<WinRecord>& records);

}  // namespace ugrwo
