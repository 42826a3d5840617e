#include "ugrwo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace ugrwo {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

}  // namespace

std::vector<std::string> split_list(const std::string& csv) {
    return split_on(csv, ',');
}

DatasetSpec parse_dataset_spec(const std::string& item) {
    const auto fields = split_on(item, ';');
    if (fields.empty()) throw ConfigError("empty dataset spec");
    DatasetSpec spec;
    spec.path = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string::npos)
            throw ConfigError("dataset spec field needs key=value: " + fields[i]);
        const std::string key = trim(fields[i].substr(0, eq));
        const std::string value = trim(fields[i].substr(eq + 1));
        if (key == "label") spec.label_column = value;
        else if (key == "positive") spec.positive_label = value;
        else if (key == "name") spec.name = value;
        else if (key == "discrete") spec.discrete_columns = split_on(value, '|');
        else throw ConfigError("unknown dataset spec key: " + key);
    }
    if (spec.label_column.empty())
        throw ConfigError("dataset spec missing label=...: " + item);
    if (spec.positive_label.empty())
        throw ConfigError("dataset spec missing positive=...: " + item);
    return spec;
}

void ExperimentGrid::validate() const {
    if (datasets.empty()) throw ConfigError("config: no datasets");
    if (methods.empty()) throw ConfigError("config: no methods");
    if (classifiers.empty()) throw ConfigError("config: no classifiers");
    if (folds < 2) throw ConfigError("config: folds must be >= 2");
    const bool any_rated =
        std::any_of(methods.begin(), methods.end(), method_uses_rate);
    if (any_rated && rates.empty())
        throw ConfigError("config: rates required for the selected methods");
    const bool any_k = std::any_of(methods.begin(), methods.end(), method_uses_k);
    if (any_k && ks.empty())
        throw ConfigError("config: ks required for the selected methods");
    for (unsigned r : rates)
        if (r == 0 || r % 100 != 0)
            throw ConfigError("config: rates must be positive multiples of 100");
    for (std::size_t k : ks)
        if (k == 0) throw ConfigError("config: ks must be >= 1");
    if (ru_target_ratio <= 0) throw ConfigError("config: ru_ratio must be > 0");
}

ExperimentGrid parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    ExperimentGrid grid;
    grid.rates.clear();
    grid.ks.clear();

    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kv.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }

    for (const auto& [key, value] : kv) {
        if (key == "datasets") {
            for (const auto& item : split_list(value))
                grid.datasets.push_back(parse_dataset_spec(item));
        } else if (key == "methods") {
            for (const auto& item : split_list(value))
                grid.methods.push_back(parse_method(item));
        } else if (key == "rates") {
            for (const auto& item : split_list(value))
                grid.rates.push_back(parse_number<unsigned>(item, "rate"));
        } else if (key == "ks") {
            for (const auto& item : split_list(value))
                grid.ks.push_back(parse_number<std::size_t>(item, "k"));
        } else if (key == "classifiers") {
            for (const auto& item : split_list(value))
                grid.classifiers.push_back(parse_classifier(item));
        } else if (key == "folds") {
            grid.folds = parse_number<std::size_t>(value, "folds");
        } else if (key == "seed") {
            grid.master_seed = parse_number<std::uint64_t>(value, "seed");
        } else if (key == "out") {
            grid.out_dir = value;
        } else if (key == "workers") {
            grid.workers = parse_number<std::size_t>(value, "workers");
        } else if (key == "ru_ratio") {
            grid.ru_target_ratio = parse_number<double>(value, "ru_ratio");
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (grid.rates.empty()) grid.rates = {100, 200, 300, 400, 500};
    if (grid.ks.empty()) grid.ks = {3, 5, 10, 15};
    grid.validate();
    return grid;
}

}  // namespace ugrwo
