#include "ugrwo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "ugrwo/common.hpp"

namespace ugrwo {

std::string MetricsReport::csv_header() {
    return "f_min,f_maj,acc,g_mean,tp_rate,auc";
}

std::string MetricsReport::csv_row() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f", f_min, f_maj,
                  accuracy, g_mean, tp_rate, auc);
    return buf;
}

ConfusionCounts confusion(const std::vector<Label>& truth,
                          const std::vector<Label>& predictions) {
    if (truth.size() != predictions.size())
        throw Error("confusion: length mismatch");
    if (truth.empty()) throw Error("confusion: empty input");
    ConfusionCounts c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = truth[i] == Label::Positive;
        const bool p = predictions[i] == Label::Positive;
        if (t && p) ++c.tp;
        else if (t && !p) ++c.fn;
        else if (!t && p) ++c.fp;
        else ++c.tn;
    }
    return c;
}

namespace {

double ratio_or_zero(std::size_t num, std::size_t den, std::uint8_t flag,
                     std::uint8_t& mask) {
    if (den == 0) {
        mask |= flag;
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

double f_measure(double precision, double recall, double beta,
                 std::uint8_t flag, std::uint8_t& mask) {
    const double b2 = beta * beta;
    const double den = b2 * precision + recall;
    if (den == 0.0) {
        mask |= flag;
        return 0.0;
    }
    return (1.0 + b2) * precision * recall / den;
}

}  // namespace

MetricsReport derive_metrics(const ConfusionCounts& c, double beta) {
    if (c.total() == 0) throw Error("derive_metrics: all counts zero");
    MetricsReport r;
    r.precision_min = ratio_or_zero(c.tp, c.tp + c.fp, kUndefPrecisionMin, r.undefined_mask);
    r.tp_rate = ratio_or_zero(c.tp, c.tp + c.fn, kUndefTpRate, r.undefined_mask);
    r.precision_maj = ratio_or_zero(c.tn, c.tn + c.fn, kUndefPrecisionMaj, r.undefined_mask);
    r.tn_rate = ratio_or_zero(c.tn, c.tn + c.fp, kUndefTnRate, r.undefined_mask);
    r.f_min = f_measure(r.precision_min, r.tp_rate, beta, kUndefFMin, r.undefined_mask);
    r.f_maj = f_measure(r.precision_maj, r.tn_rate, beta, kUndefFMaj, r.undefined_mask);
    r.g_mean = std::sqrt(r.tp_rate * r.tn_rate);
    r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    return r;
}

double auc(const std::vector<double>& scores, const std::vector<Label>& labels) {
    if (scores.size() != labels.size()) throw Error("auc: length mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (Label l : labels) n_pos += l == Label::Positive ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw Error("auc: needs both classes");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return scores[a] < scores[b];
    });

    // Doubled tie-averaged ranks stay integral: block at sorted positions
    // [b, e) gets rank2 = b + e + 1 (1-based ranks doubled).
    std::uint64_t pos_rank2_sum = 0;
    std::size_t b = 0;
    while (b < n) {
        std::size_t e = b + 1;
        while (e < n && scores[order[e]] == scores[order[b]]) ++e;
        const std::uint64_t rank2 = b + e + 1;
        for (std::size_t t = b; t < e; ++t)
            if (labels[order[t]] == Label::Positive) pos_rank2_sum += rank2;
        b = e;
    }
    const std::uint64_t u2 =
        pos_rank2_sum - static_cast<std::uint64_t>(n_pos) * (n_pos + 1);
    return static_cast<double>(u2) /
           (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<double> auc_ratio(const std::vector<double>& aucs) {
    if (aucs.empty()) throw Error("auc_ratio: empty input");
    const double best = *std::max_element(aucs.begin(), aucs.end());
    if (best <= 0.0) throw Error("auc_ratio: all AUCs zero");
    std::vector<double> out(aucs.size());
    for (std::size_t i = 0; i < aucs.size(); ++i) out[i] = aucs[i] / best;
    return out;
}

std::map<WinKey, std::size_t> win_summary(const std::vector<WinRecord>& records) {
    if (records.empty()) throw Error("win_summary: no records");

    std::set<std::string> methods;
    for (const auto& r : records) methods.insert(r.method);

    // (classifier, case, metric) -> method -> value
    std::map<std::tuple<std::string, std::string, std::string>,
             std::map<std::string, double>>
        cells;
    for (const auto& r : records) {
        auto& cell = cells[{r.classifier, r.case_id, r.metric}];
        if (!cell.emplace(r.method, r.value).second)
            throw Error("win_summary: duplicate record for method " + r.method +
                        " in case " + r.case_id);
    }

    std::map<WinKey, std::size_t> wins;
    // Every (classifier, method, metric) combination starts at zero so
    // methods that never win still appear in the table.
    std::set<std::string> classifiers, metric_names;
    for (const auto& r : records) {
        classifiers.insert(r.classifier);
        metric_names.insert(r.metric);
    }
    for (const auto& c : classifiers)
        for (const auto& m : methods)
            for (const auto& mt : metric_names) wins[{c, m, mt}] = 0;

    for (const auto& [key, cell] : cells) {
        if (cell.size() != methods.size())
            throw Error("win_summary: case " + std::get<1>(key) +
                        " is missing methods for metric " + std::get<2>(key));
        double best = cell.begin()->second;
        for (const auto& [method, value] : cell) best = std::max(best, value);
        for (const auto& [method, value] : cell)
            if (value == best)
                ++wins[{std::get<0>(key), method, std::get<2>(key)}];
    }
    return wins;
}

}  // namespace ugrwo
