#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ugrwo/dataset.hpp"

namespace ugrwo {

enum class ClassifierKind : std::uint8_t { NB = 0, KNN, DT, AdaBoostM1 };

const char* classifier_name(ClassifierKind k);
ClassifierKind parse_classifier(const std::string& s);

struct NbModel {
    double log_prior_pos = 0, log_prior_neg = 0;
    std::vector<double> mu_pos, var_pos, mu_neg, var_neg;  // variance floored
};

struct KnnModel {
    std::size_t k = 5;
    std::size_t n = 0, m = 0;
    std::vector<double> features;  // row-major training copy
    std::vector<Label> labels;
};

struct DtNode {
    std::int32_t attribute = -1;  // -1 marks a leaf
    double threshold = 0;
    double score = 0;  // leaf positive fraction
    std::int32_t left = -1, right = -1;
};

struct DtModel {
    std::vector<DtNode> nodes;  // nodes[0] is the root
};

struct Stump {
    std::size_t attribute = 0;
    double threshold = 0;
    // +1: predict positive when x[attribute] < threshold; -1: the reverse.
    int polarity = +1;
    double alpha = 0;
};

struct AdaModel {
    std::vector<Stump> stumps;
};

// predict_score is a probability-like positive-class confidence in [0,1];
// predict_label thresholds it at 0.5 with ties going to positive.
struct TrainedModel {
    ClassifierKind kind = ClassifierKind::NB;
    std::size_t n_attributes = 0;
    std::variant<NbModel, KnnModel, DtModel, AdaModel> state;
};

// Gaussian Naive Bayes with per-class, per-attribute (mean, variance) and a
// variance floor of 1e-9; the score is the positive posterior computed in
// log space.
TrainedModel train_nb(const Dataset& train);

// k-NN vote fraction over Euclidean neighbors, same tie rule as the graph
// module (squared distance, then lower training index).
TrainedModel train_knn(const Dataset& train, std::size_t k = 5);

// Binary tree on information gain (entropy, base 2), thresholds at midpoints
// of consecutive distinct sorted values, leaf score = positive fraction.
TrainedModel train_dt(const Dataset& train, std::size_t max_depth = 10,
                      std::size_t min_leaf = 2);

// AdaBoost.M1 over depth-1 stumps, alpha_t = 0.5*ln((1-eps)/eps), halting
// when eps >= 0.5 or eps == 0; score = logistic of the weighted vote margin.
TrainedModel train_adaboost(const Dataset& train, std::size_t rounds = 50);

double predict_score(const TrainedModel& model, std::span<const double> x);
Label predict_label(const TrainedModel& model, std::span<const double> x);

// Internals exposed for direct verification.
struct SplitChoice {
    bool valid = false;
    std::size_t attribute = 0;
    double threshold = 0;
    double gain = 0;
};
SplitChoice dt_best_split(MatrixView features, const std::vector<Label>& labels,
                          std::size_t min_leaf);

// One AdaBoost.M1 reweighting step: misclassified mass scales to 1/(2*eps)
// of itself, correct mass to 1/(2*(1-eps)); the result sums to 1.
void adaboost_reweight(std::vector<double>& weights,
                       const std::vector<bool>& correct, double eps);

}  // namespace ugrwo
