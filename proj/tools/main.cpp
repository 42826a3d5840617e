// Experiment CLI: resampling benchmark runs, result summaries and dataset
// inspection. Exit codes: 0 success, 1 at least one grid cell failed,
// 2 bad configuration or arguments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ugrwo/runner.hpp"

namespace {

using namespace ugrwo;

struct RunFlags {
    std::string config_path;
    std::vector<std::string> datasets;
    std::vector<std::string> methods;
    std::vector<unsigned> rates;
    std::vector<std::size_t> ks;
    std::vector<std::string> classifiers;
    std::size_t folds = 0;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string out;
    std::size_t workers = 0;
    bool has_workers = false;
    double ru_ratio = 0;
    bool has_ru_ratio = false;
};

ExperimentGrid build_grid(const RunFlags& f) {
    ExperimentGrid grid = parse_config_file(f.config_path);
    if (!f.datasets.empty()) {
        grid.datasets.clear();
        for (const auto& item : f.datasets)
            grid.datasets.push_back(parse_dataset_spec(item));
    }
    if (!f.methods.empty()) {
        grid.methods.clear();
        for (const auto& m : f.methods) grid.methods.push_back(parse_method(m));
    }
    if (!f.rates.empty()) grid.rates = f.rates;
    if (!f.ks.empty()) grid.ks = f.ks;
    if (!f.classifiers.empty()) {
        grid.classifiers.clear();
        for (const auto& c : f.classifiers)
            grid.classifiers.push_back(parse_classifier(c));
    }
    if (f.folds != 0) grid.folds = f.folds;
    if (f.has_seed) grid.master_seed = f.seed;
    if (!f.out.empty()) grid.out_dir = f.out;
    if (f.has_workers) grid.workers = f.workers;
    if (f.has_ru_ratio) grid.ru_target_ratio = f.ru_ratio;
    grid.validate();
    return grid;
}

int cmd_run(const RunFlags& flags) {
    const ExperimentGrid grid = build_grid(flags);
    const GridResult result = run_grid(grid);
    write_outputs(result.records, grid.out_dir);

    std::size_t failed = 0;
    for (const auto& r : result.records) failed += r.ok() ? 0 : 1;
    std::cout << "wrote " << result.records.size() << " records to "
              << grid.out_dir << "/records.csv";
    if (failed > 0) std::cout << " (" << failed << " failed cells)";
    std::cout << "\n";
    return result.any_failure ? 1 : 0;
}

int cmd_summarize(const std::string& in_dir) {
    const std::string records_path = in_dir + "/records.csv";
    std::ifstream is(records_path, std::ios::binary);
    if (!is) throw ConfigError("cannot open " + records_path);
    const auto records = read_records_csv(is);

    std::ofstream wins(in_dir + "/wins.csv", std::ios::binary);
    if (!wins) throw ConfigError("cannot write " + in_dir + "/wins.csv");
    write_wins_csv(records, wins);

    std::ofstream ratio(in_dir + "/aucratio.csv", std::ios::binary);
    if (!ratio) throw ConfigError("cannot write " + in_dir + "/aucratio.csv");
    write_aucratio_csv(records, ratio);

    std::cout << "summarized " << records.size() << " records from "
              << records_path << "\n";
    return 0;
}

int cmd_dataset_info(const std::string& path, const std::string& label_col,
                     const std::string& positive,
                     const std::vector<std::string>& discrete,
                     const std::string& name) {
    LoadSpec spec{label_col, positive, discrete, name};
    const Dataset ds = impute_mean(load_csv(path, spec));
    const DatasetSummary s = summarize(ds);
    std::cout << DatasetSummary::csv_header() << "\n" << s.csv_row() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-filtered random-walk resampling experiments"};
    app.require_subcommand(1);

    RunFlags flags;
    auto* run = app.add_subcommand("run", "execute an experiment grid");
    run->add_option("--config", flags.config_path, "config file")->required();
    run->add_option("--seed", flags.seed, "master RNG seed")
        ->each([&](const std::string&) { flags.has_seed = true; });
    run->add_option("--out", flags.out, "output directory");
    run->add_option("--workers", flags.workers, "worker threads (0 = all cores)")
        ->each([&](const std::string&) { flags.has_workers = true; });
    run->add_option("--datasets", flags.datasets,
                    "dataset specs (path;label=...;positive=...)");
    run->add_option("--methods", flags.methods, "methods to run")->delimiter(',');
    run->add_option("--rates", flags.rates, "over-sampling rates (%)")
        ->delimiter(',');
    run->add_option("--ks", flags.ks, "neighbor parameters")->delimiter(',');
    run->add_option("--classifiers", flags.classifiers, "classifiers")
        ->delimiter(',');
    run->add_option("--folds", flags.folds, "cross-validation folds");
    run->add_option("--ru-ratio", flags.ru_ratio,
                    "RU target majority/minority ratio")
        ->each([&](const std::string&) { flags.has_ru_ratio = true; });

    std::string in_dir;
    auto* summ = app.add_subcommand("summarize",
                                    "recompute wins.csv and aucratio.csv");
    summ->add_option("--in", in_dir, "directory holding records.csv")->required();

    std::string data_path, label_col, positive, ds_name;
    std::vector<std::string> discrete;
    auto* info = app.add_subcommand("dataset-info", "print a dataset summary row");
    info->add_option("--data", data_path, "CSV file")->required();
    info->add_option("--label-col", label_col, "label column name")->required();
    info->add_option("--positive", positive, "positive class label")->required();
    info->add_option("--discrete", discrete, "discrete column names")
        ->delimiter(',');
    info->add_option("--name", ds_name, "dataset display name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(flags);
        if (summ->parsed()) return cmd_summarize(in_dir);
        return cmd_dataset_info(data_path, label_col, positive, discrete, ds_name);
    } catch (const ugrwo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
