#include "ugrwo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ugrwo/graph.hpp"

namespace ugrwo {

const char* method_name(Method m) {
    switch (m) {
        case Method::None: return "none";
        case Method::RO: return "RO";
        case Method::RU: return "RU";
        case Method::SMOTE: return "SMOTE";
        case Method::RWO: return "RWO";
        case Method::GRWO: return "GRWO";
        case Method::UGRWO: return "UGRWO";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    for (Method m : {Method::None, Method::RO, Method::RU, Method::SMOTE,
                     Method::RWO, Method::GRWO, Method::UGRWO})
        if (s == method_name(m)) return m;
    throw ConfigError("unknown method: " + s);
}

bool method_uses_rate(Method m) {
    return m == Method::RO || m == Method::SMOTE || m == Method::RWO ||
           m == Method::GRWO || m == Method::UGRWO;
}

bool method_uses_k(Method m) {
    return m == Method::SMOTE || m == Method::GRWO || m == Method::UGRWO;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::OrigMinority: return "orig-min";
        case Provenance::OrigMajority: return "orig-maj";
        case Provenance::Synthetic: return "synthetic";
    }
    return "?";
}

std::size_t ResampleResult::synthetic_count() const {
    return static_cast<std::size_t>(
        std::count(provenance.begin(), provenance.end(), Provenance::Synthetic));
}

std::string ResampleResult::provenance_csv() const {
    std::string out;
    for (std::size_t c = 0; c < dataset.n_cols; ++c)
        out += dataset.column_names.empty() ? ("a" + std::to_string(c) + ",")
                                            : (dataset.column_names[c] + ",");
    out += "label,provenance\n";
    char buf[40];
    for (std::size_t r = 0; r < dataset.n_rows; ++r) {
        for (std::size_t c = 0; c < dataset.n_cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%.6g,", dataset.at(r, c));
            out += buf;
        }
        out += dataset.labels[r] == Label::Positive ? "positive" : "negative";
        out += ",";
        out += provenance_name(provenance[r]);
        out += "\n";
    }
    return out;
}

MomentStats moments(MatrixView minority) {
    if (minority.rows == 0) throw Error("moments: empty minority set");
    const std::size_t n = minority.rows;
    const std::size_t m = minority.cols;
    MomentStats s;
    s.n = n;
    s.mu.assign(m, 0.0);
    s.sigma.assign(m, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) s.mu[c] += minority.at(r, c);
    for (std::size_t c = 0; c < m; ++c) s.mu[c] /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            const double d = minority.at(r, c) - s.mu[c];
            s.sigma[c] += d * d;
        }
    for (std::size_t c = 0; c < m; ++c)
        s.sigma[c] = std::sqrt(s.sigma[c] / static_cast<double>(n));
    return s;
}

namespace {

// Roulette wheel over the distinct values of one column, slots in
// first-appearance order.
struct Wheel {
    std::vector<double> values;
    std::vector<double> cumulative;  // cumulative empirical frequency

    explicit Wheel(const std::vector<double>& observed) {
        std::vector<std::size_t> counts;
        for (double v : observed) {
            auto it = std::find(values.begin(), values.end(), v);
            if (it == values.end()) {
                values.push_back(v);
                counts.push_back(1);
            } else {
                ++counts[static_cast<std::size_t>(it - values.begin())];
            }
        }
        cumulative.resize(values.size());
        double acc = 0.0;
        const double total = static_cast<double>(observed.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            acc += static_cast<double>(counts[i]) / total;
            cumulative[i] = acc;
        }
        cumulative.back() = 1.0;
    }

    double draw(Rng& rng) const {
        const double u = rng.uniform();
        for (std::size_t i = 0; i < cumulative.size(); ++i)
            if (u < cumulative[i]) return values[i];
        return values.back();
    }
};

std::vector<double> column_values(MatrixView m, std::size_t c) {
    std::vector<double> v(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) v[r] = m.at(r, c);
    return v;
}

// Shared skeleton: copy the kept input rows (original order), then let the
// caller append synthetics.
ResampleResult keep_rows(const Dataset& train, const std::vector<bool>& kept) {
    ResampleResult res;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < train.n_rows; ++i)
        if (kept[i]) rows.push_back(i);
    res.dataset = train.subset(rows);
    res.source_rows = rows;
    res.provenance.reserve(rows.size());
    for (std::size_t i : rows)
        res.provenance.push_back(train.labels[i] == Label::Positive
                                     ? Provenance::OrigMinority
                                     : Provenance::OrigMajority);
    return res;
}

void append_synthetic(ResampleResult& res, std::span<const double> row,
                      std::size_t source_row) {
    res.dataset.features.insert(res.dataset.features.end(), row.begin(), row.end());
    res.dataset.labels.push_back(Label::Positive);
    res.dataset.n_rows += 1;
    res.provenance.push_back(Provenance::Synthetic);
    res.source_rows.push_back(source_row);
}

std::vector<bool> all_kept(std::size_t n) { return std::vector<bool>(n, true); }

}  // namespace

double roulette_draw(const std::vector<double>& values, Rng& rng) {
    if (values.empty()) throw Error("roulette_draw: empty value list");
    return Wheel(values).draw(rng);
}

double roulette_draw(const std::vector<double>& values, std::uint64_t seed) {
    Rng rng(seed);
    return roulette_draw(values, rng);
}

std::vector<double> rwo_generate(MatrixView minority,
                                 const std::vector<AttrKind>& kinds,
                                 std::size_t passes, Rng& rng) {
    if (minority.rows == 0) throw Error("rwo_generate: empty minority set");
    const std::size_t n = minority.rows;
    const std::size_t m = minority.cols;

    const MomentStats stats = moments(minority);
    std::vector<double> step(m);  // sigma_i / sqrt(n)
    for (std::size_t c = 0; c < m; ++c)
        step[c] = stats.sigma[c] / std::sqrt(static_cast<double>(n));

    std::vector<Wheel> wheels;
    wheels.reserve(m);
    for (std::size_t c = 0; c < m; ++c) {
        if (kinds[c] == AttrKind::Discrete)
            wheels.emplace_back(column_values(minority, c));
        else
            wheels.emplace_back(std::vector<double>{0.0});  // placeholder
    }

    std::vector<double> out;
    out.reserve(passes * n * m);
    for (std::size_t pass = 0; pass < passes; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t c = 0; c < m; ++c) {
                if (kinds[c] == AttrKind::Discrete)
                    out.push_back(wheels[c].draw(rng));
                else
                    out.push_back(minority.at(j, c) - step[c] * rng.normal());
            }
        }
    }
    return out;
}

std::vector<double> rwo_generate(MatrixView minority,
                                 const std::vector<AttrKind>& kinds,
                                 std::size_t passes, std::uint64_t seed) {
    Rng rng(seed);
    return rwo_generate(minority, kinds, passes, rng);
}

ResampleResult ro_sample(const Dataset& train, std::size_t passes, std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    if (minority.empty()) throw Error("ro_sample: empty minority class");

    ResampleResult res = keep_rows(train, all_kept(train.n_rows));
    Rng rng(seed);
    const std::size_t total = passes * minority.size();
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t pick = minority[rng.bounded(minority.size())];
        append_synthetic(res, train.row(pick), pick);
    }
    return res;
}

ResampleResult ru_sample(const Dataset& train, double target_ratio, std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    auto majority = train.indices_of(Label::Negative);
    if (minority.empty()) throw Error("ru_sample: empty minority class");

    const auto target_maj = static_cast<long long>(
        std::llround(target_ratio * static_cast<double>(minority.size())));
    if (target_maj < 1)
        throw Error("ru_sample: target majority count below 1");
    if (static_cast<std::size_t>(target_maj) > majority.size())
        throw Error("ru_sample: target ratio above current imbalance, nothing to remove");

    std::vector<bool> kept(train.n_rows, true);
    if (static_cast<std::size_t>(target_maj) < majority.size()) {
        // Partial Fisher-Yates: the first target_maj entries are the survivors.
        Rng rng(seed);
        for (std::size_t t = 0; t < static_cast<std::size_t>(target_maj); ++t) {
            const std::size_t pick = t + rng.bounded(majority.size() - t);
            std::swap(majority[t], majority[pick]);
        }
        for (std::size_t t = static_cast<std::size_t>(target_maj); t < majority.size(); ++t)
            kept[majority[t]] = false;
    }

    ResampleResult res = keep_rows(train, kept);
    for (std::size_t i = 0; i < train.n_rows; ++i)
        if (!kept[i]) res.dropped_majority.push_back(i);
    return res;
}

ResampleResult smote_sample(const Dataset& train, std::size_t passes, std::size_t k,
                            std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    if (minority.size() < 2) throw Error("smote_sample: minority singleton");

    const Dataset min_ds = train.subset(minority);
    const std::size_t kk = std::min(k, minority.size() - 1);
    const auto lists = knn_lists(min_ds.view(), kk);

    ResampleResult res = keep_rows(train, all_kept(train.n_rows));
    Rng rng(seed);
    const std::size_t m = train.n_cols;
    std::vector<double> synth(m);
    for (std::size_t pass = 0; pass < passes; ++pass) {
        for (std::size_t j = 0; j < minority.size(); ++j) {
            const auto x = min_ds.row(j);
            const auto nbr = min_ds.row(lists[j][rng.bounded(kk)]);
            const double gap = rng.uniform();
            for (std::size_t c = 0; c < m; ++c)
                synth[c] = x[c] + gap * (nbr[c] - x[c]);
            append_synthetic(res, synth, minority[j]);
        }
    }
    return res;
}

namespace {

// RWO synthesis over the minority rows listed in `sources` (input-dataset
// indices). Moments and roulette wheels are taken over that subset.
void rwo_append(ResampleResult& res, const Dataset& train,
                const std::vector<std::size_t>& sources, std::size_t passes,
                Rng& rng) {
    const Dataset sub = train.subset(sources);
    const auto rows = rwo_generate(sub.view(), train.kinds, passes, rng);
    const std::size_t m = train.n_cols;
    for (std::size_t t = 0; t < passes * sources.size(); ++t)
        append_synthetic(res,
                         std::span<const double>(rows.data() + t * m, m),
                         sources[t % sources.size()]);
}

}  // namespace

ResampleResult rwo_sample(const Dataset& train, std::size_t passes, std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    if (minority.empty()) throw Error("rwo_sample: empty minority class");

    ResampleResult res = keep_rows(train, all_kept(train.n_rows));
    Rng rng(seed);
    rwo_append(res, train, minority, passes, rng);
    return res;
}

ResampleResult grwo_sample(const Dataset& train, std::size_t passes, std::size_t k,
                           std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    if (minority.empty()) throw Error("grwo_sample: empty minority class");

    const Dataset min_ds = train.subset(minority);
    const auto graph = mutual_adjacency(min_ds.view(), k);
    const auto kept = keep_coefficients(graph).kept_indices();
    if (kept.empty())
        throw Error("grwo_sample: graph selected zero minority vertices (k=" +
                    std::to_string(k) + " too strict for this data)");

    std::vector<std::size_t> selected;
    for (std::size_t i : kept) selected.push_back(minority[i]);

    ResampleResult res = keep_rows(train, all_kept(train.n_rows));
    res.selected_minority = selected;
    Rng rng(seed);
    rwo_append(res, train, selected, passes, rng);
    return res;
}

ResampleResult ugrwo_sample(const Dataset& train, std::size_t passes, std::size_t k,
                            std::uint64_t seed) {
    const auto minority = train.indices_of(Label::Positive);
    const auto majority = train.indices_of(Label::Negative);
    if (minority.empty()) throw Error("ugrwo_sample: empty minority class");
    if (majority.empty()) throw Error("ugrwo_sample: empty majority class");

    // Step 1: prune low-density majority vertices.
    const Dataset maj_ds = train.subset(majority);
    const auto maj_graph = mutual_adjacency(maj_ds.view(), k);
    const auto maj_keep = keep_coefficients(maj_graph);
    std::vector<bool> kept(train.n_rows, true);
    std::vector<std::size_t> dropped;
    for (std::size_t i = 0; i < majority.size(); ++i) {
        if (!maj_keep.u[i]) {
            kept[majority[i]] = false;
            dropped.push_back(majority[i]);
        }
    }
    if (dropped.size() == majority.size())
        throw Error("ugrwo_sample: majority graph retained zero vertices (k=" +
                    std::to_string(k) + " too strict for this data)");

    // Step 2: graph-filtered RWO on the minority.
    const Dataset min_ds = train.subset(minority);
    const auto min_graph = mutual_adjacency(min_ds.view(), k);
    const auto min_keep = keep_coefficients(min_graph).kept_indices();
    if (min_keep.empty())
        throw Error("ugrwo_sample: minority graph selected zero vertices (k=" +
                    std::to_string(k) + " too strict for this data)");
    std::vector<std::size_t> selected;
    for (std::size_t i : min_keep) selected.push_back(minority[i]);

    ResampleResult res = keep_rows(train, kept);
    res.dropped_majority = dropped;
    res.selected_minority = selected;
    Rng rng(seed);
    rwo_append(res, train, selected, passes, rng);
    return res;
}

ResampleResult resample(const Dataset& train, const SamplerConfig& config) {
    if (method_uses_rate(config.method)) {
        if (config.rate_percent == 0 || config.rate_percent % 100 != 0)
            throw Error("resample: rate_percent must be a positive multiple of 100");
    }
    const std::size_t passes = config.rate_percent / 100;
    switch (config.method) {
        case Method::None: {
            ResampleResult res = keep_rows(train, all_kept(train.n_rows));
            return res;
        }
        case Method::RO: return ro_sample(train, passes, config.seed);
        case Method::RU: return ru_sample(train, 1.0, config.seed);
        case Method::SMOTE: return smote_sample(train, passes, config.k, config.seed);
        case Method::RWO: return rwo_sample(train, passes, config.seed);
        case Method::GRWO: return grwo_sample(train, passes, config.k, config.seed);
        case Method::UGRWO: return ugrwo_sample(train, passes, config.k, config.seed);
    }
    throw Error("resample: unknown method");
}

}  // namespace ugrwo
