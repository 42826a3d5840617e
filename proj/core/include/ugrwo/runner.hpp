#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ugrwo/config.hpp"
#include "ugrwo/metrics.hpp"

namespace ugrwo {

// One grid cell result: (dataset, method, rate, k, classifier, fold).
// rate is 0 for methods without an over-sampling rate and k is 0 for methods
// without a neighbor parameter; both render as "-" in records.csv.
struct RunRecord {
    std::string dataset;
    Method method = Method::None;
    unsigned rate = 0;
    std::size_t k = 0;
    ClassifierKind classifier = ClassifierKind::NB;
    std::size_t fold = 0;
    MetricsReport metrics;
    double wall_ms = 0;  // in-memory only; kept out of records.csv so that
                         // equal seeds give byte-equal output files
    std::size_t n_synthetic = 0;
    std::size_t n_dropped_majority = 0;
    std::size_t n_selected_minority = 0;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct GridResult {
    std::vector<RunRecord> records;
    bool any_failure = false;
};

// Runs every cell: stratified folds per dataset, resampling on the training
// partition only, one shared resample per (dataset, method, rate, k, fold)
// reused across classifiers, per-fold metrics. Deterministic in
// (config, dataset files, master_seed); cells run in parallel on worker
// threads, each on its own RNG substream. Per-cell failures are recorded and
// the run continues.
GridResult run_grid(const ExperimentGrid& grid);

// records.csv (long format, one row per cell and fold).
void write_records_csv(const std::vector<RunRecord>& records, std::ostream& os);
std::vector<RunRecord> read_records_csv(std::istream& is);

// wins.csv: Table-style win counts per classifier x method x metric. Methods
// compete within (classifier, dataset, rate) cases on fold-mean metrics; a
// method with a k grid enters each case with its best value over k. Ties
// credit every tied method. Cases not covered by every method are dropped
// with a warning on stderr.
void write_wins_csv(const std::vector<RunRecord>& records, std::ostream& os);

// aucratio.csv: per (dataset, classifier, rate), each method's fold-mean AUC
// (best over k) divided by the best method AUC in that case.
void write_aucratio_csv(const std::vector<RunRecord>& records, std::ostream& os);

// Writes records.csv, wins.csv and aucratio.csv into dir (created if needed).
void write_outputs(const std::vector<RunRecord>& records, const std::string& dir);

}  // namespace ugrwo
