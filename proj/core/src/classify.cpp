#include "ugrwo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ugrwo {

namespace {

constexpr double kVarianceFloor = 1e-9;

double logistic(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void require_two_classes(const Dataset& train, const char* who) {
    if (train.count(Label::Positive) == 0 || train.count(Label::Negative) == 0)
        throw Error(std::string(who) + ": one-class training set");
}

double entropy_bits(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    double h = 0.0;
    if (p > 0) h -= p * std::log2(p);
    if (p < 1) h -= (1 - p) * std::log2(1 - p);
    return h;
}

}  // namespace

const char* classifier_name(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::NB: return "NB";
        case ClassifierKind::KNN: return "KNN";
        case ClassifierKind::DT: return "DT";
        case ClassifierKind::AdaBoostM1: return "AdaBoostM1";
    }
    return "?";
}

ClassifierKind parse_classifier(const std::string& s) {
    for (ClassifierKind k : {ClassifierKind::NB, ClassifierKind::KNN,
                             ClassifierKind::DT, ClassifierKind::AdaBoostM1})
        if (s == classifier_name(k)) return k;
    throw ConfigError("unknown classifier: " + s);
}

TrainedModel train_nb(const Dataset& train) {
    require_two_classes(train, "train_nb");
    const std::size_t m = train.n_cols;
    NbModel nb;
    nb.mu_pos.assign(m, 0.0);
    nb.var_pos.assign(m, 0.0);
    nb.mu_neg.assign(m, 0.0);
    nb.var_neg.assign(m, 0.0);

    const auto fit_class = [&](Label l, std::vector<double>& mu,
                               std::vector<double>& var) -> std::size_t {
        const auto idx = train.indices_of(l);
        for (std::size_t r : idx)
            for (std::size_t c = 0; c < m; ++c) mu[c] += train.at(r, c);
        for (std::size_t c = 0; c < m; ++c) mu[c] /= static_cast<double>(idx.size());
        for (std::size_t r : idx)
            for (std::size_t c = 0; c < m; ++c) {
                const double d = train.at(r, c) - mu[c];
                var[c] += d * d;
            }
        for (std::size_t c = 0; c < m; ++c)
            var[c] = std::max(var[c] / static_cast<double>(idx.size()), kVarianceFloor);
        return idx.size();
    };
    const std::size_t n_pos = fit_class(Label::Positive, nb.mu_pos, nb.var_pos);
    const std::size_t n_neg = fit_class(Label::Negative, nb.mu_neg, nb.var_neg);
    const double n = static_cast<double>(n_pos + n_neg);
    nb.log_prior_pos = std::log(static_cast<double>(n_pos) / n);
    nb.log_prior_neg = std::log(static_cast<double>(n_neg) / n);

    return {ClassifierKind::NB, m, std::move(nb)};
}

TrainedModel train_knn(const Dataset& train, std::size_t k) {
    require_two_classes(train, "train_knn");
    if (k == 0 || k > train.n_rows)
        throw Error("train_knn: k out of range, k=" + std::to_string(k) +
                    " n=" + std::to_string(train.n_rows));
    KnnModel knn;
    knn.k = k;
    knn.n = train.n_rows;
    knn.m = train.n_cols;
    knn.features = train.features;
    knn.labels = train.labels;
    return {ClassifierKind::KNN, train.n_cols, std::move(knn)};
}

namespace {

struct SubsetSplit {
    bool valid = false;
    std::size_t attribute = 0;
    double threshold = 0;
    double gain = 0;
};

// Exhaustive threshold search over one node's rows. Candidates are midpoints
// between consecutive distinct sorted values; both children must hold at
// least min_leaf rows. Ties keep the first candidate in (attribute,
// threshold) scan order.
SubsetSplit best_split_on(MatrixView features, const std::vector<Label>& labels,
                          const std::vector<std::uint32_t>& rows,
                          std::size_t min_leaf) {
    const std::size_t n = rows.size();
    SubsetSplit best;
    if (n < 2 * min_leaf) return best;

    std::size_t node_pos = 0;
    for (std::uint32_t r : rows) node_pos += labels[r] == Label::Positive;
    if (node_pos == 0 || node_pos == n) return best;
    const double h_node = entropy_bits(node_pos, n);

    std::vector<std::pair<double, std::uint8_t>> vals(n);
    for (std::size_t a = 0; a < features.cols; ++a) {
        for (std::size_t t = 0; t < n; ++t)
            vals[t] = {features.at(rows[t], a),
                       labels[rows[t]] == Label::Positive ? std::uint8_t{1}
                                                          : std::uint8_t{0}};
        std::sort(vals.begin(), vals.end());

        std::size_t left_n = 0, left_pos = 0;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            ++left_n;
            left_pos += vals[t].second;
            if (vals[t].first == vals[t + 1].first) continue;
            if (left_n < min_leaf || n - left_n < min_leaf) continue;
            const double thr = std::midpoint(vals[t].first, vals[t + 1].first);
            if (!(thr > vals[t].first)) continue;  // midpoint collapsed
            const double gain =
                h_node -
                (static_cast<double>(left_n) / n) * entropy_bits(left_pos, left_n) -
                (static_cast<double>(n - left_n) / n) *
                    entropy_bits(node_pos - left_pos, n - left_n);
            if (!best.valid || gain > best.gain + 1e-12) {
                best = {true, a, thr, gain};
            }
        }
    }
    if (best.valid && best.gain <= 1e-12) best.valid = false;
    return best;
}

std::int32_t grow_tree(DtModel& model, MatrixView features,
                       const std::vector<Label>& labels,
                       std::vector<std::uint32_t> rows, std::size_t depth,
                       std::size_t max_depth, std::size_t min_leaf) {
    std::size_t pos = 0;
    for (std::uint32_t r : rows) pos += labels[r] == Label::Positive;

    const auto node_id = static_cast<std::int32_t>(model.nodes.size());
    model.nodes.emplace_back();
    model.nodes[node_id].score =
        static_cast<double>(pos) / static_cast<double>(rows.size());

    if (depth >= max_depth || pos == 0 || pos == rows.size()) return node_id;
    const SubsetSplit split = best_split_on(features, labels, rows, min_leaf);
    if (!split.valid) return node_id;

    std::vector<std::uint32_t> left, right;
    for (std::uint32_t r : rows)
        (features.at(r, split.attribute) < split.threshold ? left : right)
            .push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    model.nodes[node_id].attribute = static_cast<std::int32_t>(split.attribute);
    model.nodes[node_id].threshold = split.threshold;
    const std::int32_t l =
        grow_tree(model, features, labels, std::move(left), depth + 1, max_depth, min_leaf);
    const std::int32_t r =
        grow_tree(model, features, labels, std::move(right), depth + 1, max_depth, min_leaf);
    model.nodes[node_id].left = l;
    model.nodes[node_id].right = r;
    return node_id;
}

}  // namespace

SplitChoice dt_best_split(MatrixView features, const std::vector<Label>& labels,
                          std::size_t min_leaf) {
    std::vector<std::uint32_t> rows(features.rows);
    std::iota(rows.begin(), rows.end(), 0u);
    const SubsetSplit s = best_split_on(features, labels, rows, min_leaf);
    return {s.valid, s.attribute, s.threshold, s.gain};
}

TrainedModel train_dt(const Dataset& train, std::size_t max_depth, std::size_t min_leaf) {
    require_two_classes(train, "train_dt");
    DtModel model;
    std::vector<std::uint32_t> rows(train.n_rows);
    std::iota(rows.begin(), rows.end(), 0u);
    grow_tree(model, train.view(), train.labels, std::move(rows), 0, max_depth, min_leaf);
    return {ClassifierKind::DT, train.n_cols, std::move(model)};
}

void adaboost_reweight(std::vector<double>& weights,
                       const std::vector<bool>& correct, double eps) {
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] *= std::exp(correct[i] ? -alpha : alpha);
        total += weights[i];
    }
    for (double& w : weights) w /= total;
}

namespace {

int stump_vote(const Stump& s, std::span<const double> x) {
    const bool left = x[s.attribute] < s.threshold;
    return (left == (s.polarity > 0)) ? +1 : -1;
}

// Weighted stump search: every midpoint of consecutive distinct values, both
// polarities. Returns the identity stump-less marker (found=false) only when
// no attribute has two distinct values.
struct StumpFit {
    bool found = false;
    Stump stump;
    double error = 0;
};

StumpFit fit_stump(MatrixView features, const std::vector<Label>& labels,
                   const std::vector<double>& weights,
                   const std::vector<std::vector<std::uint32_t>>& order_by_attr) {
    StumpFit best;
    const std::size_t n = features.rows;
    double total_pos_w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (labels[i] == Label::Positive) total_pos_w += weights[i];

    for (std::size_t a = 0; a < features.cols; ++a) {
        const auto& order = order_by_attr[a];
        double left_pos_w = 0.0, left_neg_w = 0.0;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            const std::uint32_t r = order[t];
            if (labels[r] == Label::Positive) left_pos_w += weights[r];
            else left_neg_w += weights[r];

            const double lo = features.at(r, a);
            const double hi = features.at(order[t + 1], a);
            if (lo == hi) continue;
            const double thr = std::midpoint(lo, hi);
            if (!(thr > lo)) continue;

            // polarity +1: positive iff x < thr
            const double err_plus = left_neg_w + (total_pos_w - left_pos_w);
            const double err_minus = 1.0 - err_plus;
            if (!best.found || err_plus < best.error - 1e-15) {
                best = {true, {a, thr, +1, 0.0}, err_plus};
            }
            if (err_minus < best.error - 1e-15) {
                best = {true, {a, thr, -1, 0.0}, err_minus};
            }
        }
    }
    return best;
}

}  // namespace

TrainedModel train_adaboost(const Dataset& train, std::size_t rounds) {
    require_two_classes(train, "train_adaboost");
    const std::size_t n = train.n_rows;
    const MatrixView x = train.view();

    // Presorted row order per attribute, shared across rounds.
    std::vector<std::vector<std::uint32_t>> order_by_attr(train.n_cols);
    for (std::size_t a = 0; a < train.n_cols; ++a) {
        auto& order = order_by_attr[a];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t p, std::uint32_t q) {
                             return x.at(p, a) < x.at(q, a);
                         });
    }

    AdaModel model;
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<bool> correct(n);
    for (std::size_t t = 0; t < rounds; ++t) {
        StumpFit fit = fit_stump(x, train.labels, weights, order_by_attr);
        if (!fit.found || fit.error >= 0.5) break;

        const double eps = std::max(fit.error, 1e-12);
        fit.stump.alpha = 0.5 * std::log((1.0 - eps) / eps);
        model.stumps.push_back(fit.stump);
        if (fit.error <= 1e-12) break;

        for (std::size_t i = 0; i < n; ++i) {
            const int vote = stump_vote(fit.stump, x.row(i));
            correct[i] = (vote > 0) == (train.labels[i] == Label::Positive);
        }
        adaboost_reweight(weights, correct, eps);
    }
    return {ClassifierKind::AdaBoostM1, train.n_cols, std::move(model)};
}

double predict_score(const TrainedModel& model, std::span<const double> x) {
    if (x.size() != model.n_attributes)
        throw Error("predict_score: feature count mismatch, expected " +
                    std::to_string(model.n_attributes) + " got " +
                    std::to_string(x.size()));

    switch (model.kind) {
        case ClassifierKind::NB: {
            const auto& nb = std::get<NbModel>(model.state);
            double lp = nb.log_prior_pos, ln = nb.log_prior_neg;
            for (std::size_t c = 0; c < x.size(); ++c) {
                const double dp = x[c] - nb.mu_pos[c];
                const double dn = x[c] - nb.mu_neg[c];
                lp += -0.5 * std::log(2.0 * std::numbers::pi * nb.var_pos[c]) -
                      dp * dp / (2.0 * nb.var_pos[c]);
                ln += -0.5 * std::log(2.0 * std::numbers::pi * nb.var_neg[c]) -
                      dn * dn / (2.0 * nb.var_neg[c]);
            }
            return logistic(lp - ln);
        }
        case ClassifierKind::KNN: {
            const auto& knn = std::get<KnnModel>(model.state);
            const MatrixView tv{knn.features.data(), knn.n, knn.m};
            std::vector<std::pair<double, std::uint32_t>> cand(knn.n);
            for (std::size_t i = 0; i < knn.n; ++i)
                cand[i] = {squared_distance(x, tv.row(i)),
                           static_cast<std::uint32_t>(i)};
            std::partial_sort(cand.begin(), cand.begin() + knn.k, cand.end());
            std::size_t pos = 0;
            for (std::size_t t = 0; t < knn.k; ++t)
                pos += knn.labels[cand[t].second] == Label::Positive;
            return static_cast<double>(pos) / static_cast<double>(knn.k);
        }
        case ClassifierKind::DT: {
            const auto& dt = std::get<DtModel>(model.state);
            std::int32_t node = 0;
            while (dt.nodes[node].attribute >= 0) {
                const auto& nd = dt.nodes[node];
                node = x[static_cast<std::size_t>(nd.attribute)] < nd.threshold
                           ? nd.left
                           : nd.right;
            }
            return dt.nodes[node].score;
        }
        case ClassifierKind::AdaBoostM1: {
            const auto& ada = std::get<AdaModel>(model.state);
            double margin = 0.0;
            for (const Stump& s : ada.stumps) margin += s.alpha * stump_vote(s, x);
            return logistic(margin);
        }
    }
    throw Error("predict_score: unknown model kind");
}

Label predict_label(const TrainedModel& model, std::span<const double> x) {
    return predict_score(model, x) >= 0.5 ? Label::Positive : Label::Negative;
}

}  // namespace ugrwo
