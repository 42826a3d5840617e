#include "ugrwo/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "ugrwo/rng.hpp"

namespace ugrwo {

namespace {

std::uint64_t fold_stream(std::uint64_t master, const std::string& dataset) {
    return StreamId(master).absorb("folds").absorb(dataset).seed();
}

// Sampler substream: pure function of the cell identity. The classifier is
// deliberately not absorbed, so every classifier trains on the same
// resampled fold.
std::uint64_t sampler_stream(std::uint64_t master, const std::string& dataset,
                             Method method, unsigned rate, std::size_t k,
                             std::size_t fold) {
    return StreamId(master)
        .absorb("sampler")
        .absorb(dataset)
        .absorb(method_name(method))
        .absorb(rate)
        .absorb(k)
        .absorb(fold)
        .seed();
}

struct WorkUnit {
    std::size_t dataset_idx = 0;
    Method method = Method::None;
    unsigned rate = 0;  // 0 when unused by the method
    std::size_t k = 0;  // 0 when unused by the method
    std::size_t fold = 0;
};

void check_fold_partition(const FoldPlan& plan, std::size_t fold, std::size_t n) {
    const auto test = plan.test_indices(fold);
    const auto train = plan.train_indices(fold);
    if (test.size() + train.size() != n)
        throw Error("fold audit: partition sizes inconsistent");
    std::vector<std::size_t> both;
    std::set_intersection(test.begin(), test.end(), train.begin(), train.end(),
                          std::back_inserter(both));
    if (!both.empty()) throw Error("fold audit: train/test overlap");
}

// Row-identity audit: every retained original row must trace to a training
// row; synthetic rows must trace to minority training rows.
void check_no_leakage(const ResampleResult& res, const Dataset& train) {
    for (std::size_t r = 0; r < res.dataset.n_rows; ++r) {
        const std::size_t src = res.source_rows[r];
        if (src >= train.n_rows)
            throw Error("leakage audit: row traces outside the training set");
        if (res.provenance[r] == Provenance::Synthetic &&
            train.labels[src] != Label::Positive)
            throw Error("leakage audit: synthetic row from a majority source");
    }
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::string rate_tag(unsigned rate) {
    return rate == 0 ? "-" : std::to_string(rate);
}

std::string k_tag(std::size_t k) { return k == 0 ? "-" : std::to_string(k); }

}  // namespace

GridResult run_grid(const ExperimentGrid& grid) {
    grid.validate();

    // Load everything up front; folds are shared by all methods of a dataset.
    struct LoadedDataset {
        Dataset data;
        FoldPlan plan;
        std::string error;
    };
    std::vector<LoadedDataset> loaded(grid.datasets.size());
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        const auto& spec = grid.datasets[d];
        try {
            LoadSpec ls{spec.label_column, spec.positive_label,
                        spec.discrete_columns, spec.name};
            Dataset ds = impute_mean(load_csv(spec.path, ls));
            FoldPlan plan =
                make_folds(ds, grid.folds, fold_stream(grid.master_seed, ds.name));
            loaded[d] = {std::move(ds), std::move(plan), ""};
        } catch (const std::exception& e) {
            loaded[d].data.name = spec.name.empty()
                                      ? std::filesystem::path(spec.path).stem().string()
                                      : spec.name;
            loaded[d].error = e.what();
        }
    }

    // Enumerate work units in deterministic grid order.
    std::vector<WorkUnit> units;
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        const std::size_t fold_count =
            loaded[d].error.empty() ? loaded[d].plan.fold_count : 1;
        for (Method m : grid.methods) {
            const std::vector<unsigned> rates =
                method_uses_rate(m) ? grid.rates : std::vector<unsigned>{0};
            const std::vector<std::size_t> ks =
                method_uses_k(m) ? grid.ks : std::vector<std::size_t>{0};
            for (unsigned r : rates)
                for (std::size_t k : ks)
                    for (std::size_t f = 0; f < fold_count; ++f)
                        units.push_back({d, m, r, k, f});
        }
    }

    const std::size_t n_clf = grid.classifiers.size();
    GridResult result;
    result.records.resize(units.size() * n_clf);

    const auto run_unit = [&](std::size_t u) {
        const WorkUnit& unit = units[u];
        const LoadedDataset& ld = loaded[unit.dataset_idx];
        RunRecord base;
        base.dataset = ld.data.name;
        base.method = unit.method;
        base.rate = unit.rate;
        base.k = unit.k;
        base.fold = unit.fold;

        const auto started = std::chrono::steady_clock::now();
        ResampleResult res;
        Dataset test;
        std::string unit_error = ld.error;
        if (unit_error.empty()) {
            try {
                check_fold_partition(ld.plan, unit.fold, ld.data.n_rows);
                const auto train_idx = ld.plan.train_indices(unit.fold);
                const auto test_idx = ld.plan.test_indices(unit.fold);
                const Dataset train = ld.data.subset(train_idx);
                test = ld.data.subset(test_idx);

                const std::uint64_t seed =
                    sampler_stream(grid.master_seed, ld.data.name, unit.method,
                                   unit.rate, unit.k, unit.fold);
                if (unit.method == Method::RU) {
                    res = ru_sample(train, grid.ru_target_ratio, seed);
                } else {
                    SamplerConfig cfg{unit.method, unit.rate == 0 ? 100 : unit.rate,
                                      unit.k, seed};
                    res = resample(train, cfg);
                }
                check_no_leakage(res, train);
            } catch (const std::exception& e) {
                unit_error = e.what();
            }
        }
        const double resample_ms =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - started)
                .count();

        for (std::size_t c = 0; c < n_clf; ++c) {
            RunRecord rec = base;
            rec.classifier = grid.classifiers[c];
            if (unit_error.empty()) {
                rec.n_synthetic = res.synthetic_count();
                rec.n_dropped_majority = res.dropped_majority.size();
                rec.n_selected_minority = res.selected_minority.size();
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    TrainedModel model;
                    switch (rec.classifier) {
                        case ClassifierKind::NB: model = train_nb(res.dataset); break;
                        case ClassifierKind::KNN: model = train_knn(res.dataset); break;
                        case ClassifierKind::DT: model = train_dt(res.dataset); break;
                        case ClassifierKind::AdaBoostM1:
                            model = train_adaboost(res.dataset);
                            break;
                    }
                    std::vector<double> scores(test.n_rows);
                    std::vector<Label> predicted(test.n_rows);
                    for (std::size_t r = 0; r < test.n_rows; ++r) {
                        scores[r] = predict_score(model, test.row(r));
                        predicted[r] =
                            scores[r] >= 0.5 ? Label::Positive : Label::Negative;
                    }
                    rec.metrics = derive_metrics(confusion(test.labels, predicted));
                    rec.metrics.auc = auc(scores, test.labels);
                } catch (const std::exception& e) {
                    rec.error = e.what();
                }
                rec.wall_ms = resample_ms +
                              std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            } else {
                rec.error = unit_error;
            }
            result.records[u * n_clf + c] = std::move(rec);
        }
    };

    std::size_t workers = grid.workers == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : grid.workers;
    workers = std::min(workers, units.size());
    if (workers <= 1) {
        for (std::size_t u = 0; u < units.size(); ++u) run_unit(u);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t u = next.fetch_add(1); u < units.size();
                     u = next.fetch_add(1))
                    run_unit(u);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Reorder records so classifier varies before fold, matching the cell
    // identity order (dataset, method, rate, k, classifier, fold).
    std::vector<RunRecord> ordered;
    ordered.reserve(result.records.size());
    std::size_t u = 0;
    while (u < units.size()) {
        std::size_t group_end = u + 1;
        while (group_end < units.size() &&
               units[group_end].dataset_idx == units[u].dataset_idx &&
               units[group_end].method == units[u].method &&
               units[group_end].rate == units[u].rate &&
               units[group_end].k == units[u].k)
            ++group_end;
        for (std::size_t c = 0; c < n_clf; ++c)
            for (std::size_t f = u; f < group_end; ++f)
                ordered.push_back(std::move(result.records[f * n_clf + c]));
        u = group_end;
    }
    result.records = std::move(ordered);
    result.any_failure = std::any_of(result.records.begin(), result.records.end(),
                                     [](const RunRecord& r) { return !r.ok(); });
    return result;
}

void write_records_csv(const std::vector<RunRecord>& records, std::ostream& os) {
    os << "dataset,method,rate,k,classifier,fold," << MetricsReport::csv_header()
       << ",n_synthetic,n_dropped_majority,n_selected_minority,error\n";
    for (const auto& r : records) {
        os << r.dataset << ',' << method_name(r.method) << ',' << rate_tag(r.rate)
           << ',' << k_tag(r.k) << ',' << classifier_name(r.classifier) << ','
           << r.fold << ',';
        if (r.ok()) {
            os << r.metrics.csv_row() << ',' << r.n_synthetic << ','
               << r.n_dropped_majority << ',' << r.n_selected_minority << ',';
        } else {
            os << ",,,,,,,,," << sanitize(r.error);
        }
        os << '\n';
    }
}

std::vector<RunRecord> read_records_csv(std::istream& is) {
    std::vector<RunRecord> records;
    std::string line;
    if (!std::getline(is, line)) throw Error("records csv: empty input");

    const auto parse_size = [](const std::string& s) -> std::size_t {
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw Error("records csv: bad count '" + s + "'");
        return v;
    };
    const auto parse_double = [](const std::string& s) -> double {
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw Error("records csv: bad metric '" + s + "'");
        return v;
    };

    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cur;
        std::stringstream ss(line);
        while (std::getline(ss, cur, ',')) cells.push_back(cur);
        while (cells.size() < 16) cells.push_back("");
        if (cells.size() != 16)
            throw Error("records csv: row " + std::to_string(line_no) +
                        " has unexpected cell count");

        RunRecord r;
        r.dataset = cells[0];
        r.method = parse_method(cells[1]);
        r.rate = cells[2] == "-" ? 0 : static_cast<unsigned>(parse_size(cells[2]));
        r.k = cells[3] == "-" ? 0 : parse_size(cells[3]);
        r.classifier = parse_classifier(cells[4]);
        r.fold = parse_size(cells[5]);
        r.error = cells[15];
        if (r.ok()) {
            r.metrics.f_min = parse_double(cells[6]);
            r.metrics.f_maj = parse_double(cells[7]);
            r.metrics.accuracy = parse_double(cells[8]);
            r.metrics.g_mean = parse_double(cells[9]);
            r.metrics.tp_rate = parse_double(cells[10]);
            r.metrics.auc = parse_double(cells[11]);
            r.n_synthetic = parse_size(cells[12]);
            r.n_dropped_majority = parse_size(cells[13]);
            r.n_selected_minority = parse_size(cells[14]);
        }
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

template <typename T>
std::vector<T> first_appearance_order(const std::vector<RunRecord>& records,
                                      T RunRecord::* field) {
    std::vector<T> order;
    for (const auto& r : records)
        if (std::find(order.begin(), order.end(), r.*field) == order.end())
            order.push_back(r.*field);
    return order;
}

// Fold-mean metrics per (dataset, method, rate, k, classifier); groups with
// any failed fold are dropped.
struct GroupKey {
    std::string dataset;
    Method method;
    unsigned rate;
    std::size_t k;
    ClassifierKind classifier;
    auto operator<=>(const GroupKey&) const = default;
};

std::map<GroupKey, MetricsReport> fold_means(const std::vector<RunRecord>& records) {
    struct Acc {
        MetricsReport sum;
        std::size_t n = 0;
        bool failed = false;
    };
    std::map<GroupKey, Acc> accs;
    for (const auto& r : records) {
        auto& a = accs[{r.dataset, r.method, r.rate, r.k, r.classifier}];
        if (!r.ok()) {
            a.failed = true;
            continue;
        }
        a.sum.f_min += r.metrics.f_min;
        a.sum.f_maj += r.metrics.f_maj;
        a.sum.accuracy += r.metrics.accuracy;
        a.sum.g_mean += r.metrics.g_mean;
        a.sum.tp_rate += r.metrics.tp_rate;
        a.sum.auc += r.metrics.auc;
        a.n += 1;
    }
    std::map<GroupKey, MetricsReport> means;
    for (auto& [key, a] : accs) {
        if (a.failed || a.n == 0) continue;
        MetricsReport m = a.sum;
        const double n = static_cast<double>(a.n);
        m.f_min /= n;
        m.f_maj /= n;
        m.accuracy /= n;
        m.g_mean /= n;
        m.tp_rate /= n;
        m.auc /= n;
        means.emplace(key, m);
    }
    return means;
}

double metric_value(const MetricsReport& m, const std::string& name) {
    if (name == "f_min") return m.f_min;
    if (name == "f_maj") return m.f_maj;
    if (name == "acc") return m.accuracy;
    if (name == "g_mean") return m.g_mean;
    if (name == "tp_rate") return m.tp_rate;
    return m.auc;
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"f_min", "f_maj",  "acc",
                                                   "g_mean", "tp_rate", "auc"};
    return names;
}

// Case rates: the configured rate set when any present method is rated,
// otherwise the single "no rate" case.
std::vector<unsigned> case_rates(const std::vector<RunRecord>& records) {
    std::set<unsigned> rates;
    for (const auto& r : records)
        if (method_uses_rate(r.method)) rates.insert(r.rate);
    if (rates.empty()) return {0};
    return {rates.begin(), rates.end()};
}

// Best value over the method's k grid for one (dataset, classifier, rate,
// metric) case; methods without a k (or rate) enter with their single group.
bool best_over_k(const std::map<GroupKey, MetricsReport>& means,
                 const std::string& dataset, Method method, unsigned rate,
                 ClassifierKind clf, const std::string& metric, double& out) {
    const unsigned method_rate = method_uses_rate(method) ? rate : 0;
    bool found = false;
    for (const auto& [key, m] : means) {
        if (key.dataset != dataset || key.method != method ||
            key.rate != method_rate || key.classifier != clf)
            continue;
        const double v = metric_value(m, metric);
        if (!found || v > out) out = v;
        found = true;
    }
    return found;
}

}  // namespace

void write_wins_csv(const std::vector<RunRecord>& records, std::ostream& os) {
    const auto means = fold_means(records);
    const auto datasets = first_appearance_order(records, &RunRecord::dataset);
    const auto methods = first_appearance_order(records, &RunRecord::method);
    const auto classifiers = first_appearance_order(records, &RunRecord::classifier);
    const auto rates = case_rates(records);

    std::vector<WinRecord> win_records;
    std::set<std::string> dropped_cases;
    for (ClassifierKind clf : classifiers) {
        for (const auto& dataset : datasets) {
            for (unsigned rate : rates) {
                const std::string case_id = dataset + "@" + rate_tag(rate);
                for (const auto& metric : metric_names()) {
                    std::vector<WinRecord> cell;
                    bool complete = true;
                    for (Method m : methods) {
                        double v = 0;
                        if (!best_over_k(means, dataset, m, rate, clf, metric, v)) {
                            complete = false;
                            break;
                        }
                        cell.push_back({classifier_name(clf), method_name(m),
                                        case_id, metric, v});
                    }
                    if (complete)
                        win_records.insert(win_records.end(), cell.begin(), cell.end());
                    else
                        dropped_cases.insert(case_id + " (" + classifier_name(clf) + ")");
                }
            }
        }
    }
    for (const auto& c : dropped_cases)
        std::cerr << "wins: dropping incomplete case " << c << "\n";

    os << "classifier,method,f_min,f_maj,acc,g_mean,tp_rate,auc\n";
    if (win_records.empty()) return;
    const auto wins = win_summary(win_records);
    for (ClassifierKind clf : classifiers) {
        for (Method m : methods) {
            os << classifier_name(clf) << ',' << method_name(m);
            for (const auto& metric : metric_names()) {
                const auto it = wins.find(
                    {classifier_name(clf), method_name(m), metric});
                os << ',' << (it == wins.end() ? 0 : it->second);
            }
            os << '\n';
        }
    }
}

void write_aucratio_csv(const std::vector<RunRecord>& records, std::ostream& os) {
    const auto means = fold_means(records);
    const auto datasets = first_appearance_order(records, &RunRecord::dataset);
    const auto methods = first_appearance_order(records, &RunRecord::method);
    const auto classifiers = first_appearance_order(records, &RunRecord::classifier);
    const auto rates = case_rates(records);

    os << "dataset,method,classifier,rate,auc,auc_ratio\n";
    char buf[64];
    for (const auto& dataset : datasets) {
        for (ClassifierKind clf : classifiers) {
            for (unsigned rate : rates) {
                std::vector<std::pair<Method, double>> cell;
                for (Method m : methods) {
                    double v = 0;
                    if (best_over_k(means, dataset, m, rate, clf, "auc", v))
                        cell.push_back({m, v});
                }
                if (cell.empty()) continue;
                std::vector<double> aucs;
                for (const auto& [m, v] : cell) aucs.push_back(v);
                if (*std::max_element(aucs.begin(), aucs.end()) <= 0.0) {
                    std::cerr << "aucratio: skipping all-zero case " << dataset
                              << "@" << rate_tag(rate) << "\n";
                    continue;
                }
                const auto ratios = auc_ratio(aucs);
                for (std::size_t i = 0; i < cell.size(); ++i) {
                    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", cell[i].second,
                                  ratios[i]);
                    os << dataset << ',' << method_name(cell[i].first) << ','
                       << classifier_name(clf) << ',' << rate_tag(rate) << ','
                       << buf << '\n';
                }
            }
        }
    }
}

void write_outputs(const std::vector<RunRecord>& records, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& file, auto&& writer) {
        std::ofstream os(dir + "/" + file, std::ios::binary);
        if (!os) throw Error("cannot write " + dir + "/" + file);
        writer(os);
    };
    write("records.csv",
          [&](std::ostream& os) { write_records_csv(records, os); });
    write("wins.csv", [&](std::ostream& os) { write_wins_csv(records, os); });
    write("aucratio.csv",
          [&](std::ostream& os) { write_aucratio_csv(records, os); });
}

}  // namespace ugrwo
