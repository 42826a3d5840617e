#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ugrwo/classify.hpp"
#include "ugrwo/sampling.hpp"

namespace ugrwo {

struct DatasetSpec {
    std::string path;
    std::string label_column;
    std::string positive_label;
    std::vector<std::string> discrete_columns;
    std::string name;  // file stem when empty
};

// The experiment grid: datasets x methods x rates x ks x classifiers x folds.
// Rates apply to RO/SMOTE/RWO/GRWO/UGRWO; ks to SMOTE/GRWO/UGRWO; other
// methods collapse those axes.
struct ExperimentGrid {
    std::vector<DatasetSpec> datasets;
    std::vector<Method> methods;
    std::vector<unsigned> rates = {100, 200, 300, 400, 500};
    std::vector<std::size_t> ks = {3, 5, 10, 15};
    std::vector<ClassifierKind> classifiers;
    std::size_t folds = 10;
    std::uint64_t master_seed = 0;
    std::string out_dir = "results";
    std::size_t workers = 0;  // 0 = hardware concurrency
    double ru_target_ratio = 1.0;

    void validate() const;  // throws ConfigError
};

// Flat key = value file, '#' starts a comment, lists are comma separated.
//
//   datasets    = data/a.csv;label=class;positive=Malignant[;name=X][;discrete=c1|c2]
//   methods     = none,RO,RU,SMOTE,RWO,GRWO,UGRWO
//   rates       = 100,200,300,400,500
//   ks          = 3,5,10,15
//   classifiers = NB,KNN,DT,AdaBoostM1
//   folds       = 10
//   seed        = 42
//   out         = results
//   workers     = 4
//   ru_ratio    = 1.0
ExperimentGrid parse_config_file(const std::string& path);

// Parsers shared with the CLI flag overrides.
DatasetSpec parse_dataset_spec(const std::string& item);
std::vector<std::string> split_list(const std::string& csv);

}  // namespace ugrwo
