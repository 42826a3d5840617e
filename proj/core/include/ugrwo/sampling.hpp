#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ugrwo/dataset.hpp"
#include "ugrwo/rng.hpp"

namespace ugrwo {

enum class Method : std::uint8_t { None = 0, RO, RU, SMOTE, RWO, GRWO, UGRWO };

const char* method_name(Method m);
Method parse_method(const std::string& s);
bool method_uses_rate(Method m);  // RO, SMOTE, RWO, GRWO, UGRWO
bool method_uses_k(Method m);     // SMOTE, GRWO, UGRWO

struct SamplerConfig {
    Method method = Method::None;
    unsigned rate_percent = 100;  // positive multiple of 100; M = rate/100
    std::size_t k = 5;            // neighbor parameter (SMOTE, GRWO, UGRWO)
    std::uint64_t seed = 0;
};

// Per-attribute mean and standard deviation with population divisor n.
struct MomentStats {
    std::vector<double> mu;
    std::vector<double> sigma;
    std::size_t n = 0;
};

enum class Provenance : std::uint8_t { OrigMinority, OrigMajority, Synthetic };

const char* provenance_name(Provenance p);

// Resampled training data. Retained original rows keep their input order;
// synthetic rows are appended after them and always carry positive labels.
// source_rows maps every output row to the input row it came from (original
// rows map to themselves, synthetics to the row they were derived from).
struct ResampleResult {
    Dataset dataset;
    std::vector<Provenance> provenance;
    std::vector<std::size_t> source_rows;
    std::vector<std::size_t> dropped_majority;    // input indices (RU, UGRWO)
    std::vector<std::size_t> selected_minority;   // input indices (GRWO, UGRWO)

    std::size_t synthetic_count() const;
    // Debug dump: original columns plus label and provenance columns.
    std::string provenance_csv() const;
};

MomentStats moments(MatrixView minority);

// One roulette-wheel draw: a value with probability equal to its empirical
// frequency in `values`. Wheel slots are laid out in first-appearance order.
double roulette_draw(const std::vector<double>& values, Rng& rng);
double roulette_draw(const std::vector<double>& values, std::uint64_t seed);

// Random-walk synthesis: exactly M*n rows, where row (pass p, source j) has
//   continuous attribute i:  a_i(j) - (sigma_i / sqrt(n)) * r,  r ~ N(0,1)
//   discrete attribute i:    one roulette draw over the column's values
// Draws are consumed pass-major, then row, then attribute, one fresh variate
// per (synthetic, attribute).
std::vector<double> rwo_generate(MatrixView minority,
                                 const std::vector<AttrKind>& kinds,
                                 std::size_t passes, Rng& rng);
std::vector<double> rwo_generate(MatrixView minority,
                                 const std::vector<AttrKind>& kinds,
                                 std::size_t passes, std::uint64_t seed);

// Baselines and the graph-filtered samplers. All are pure in (input, seed):
// replaying a seed reproduces the result bit for bit.
ResampleResult ro_sample(const Dataset& train, std::size_t passes, std::uint64_t seed);
ResampleResult ru_sample(const Dataset& train, double target_ratio, std::uint64_t seed);
ResampleResult smote_sample(const Dataset& train, std::size_t passes, std::size_t k,
                            std::uint64_t seed);
ResampleResult rwo_sample(const Dataset& train, std::size_t passes, std::uint64_t seed);
ResampleResult grwo_sample(const Dataset& train, std::size_t passes, std::size_t k,
                           std::uint64_t seed);
ResampleResult ugrwo_sample(const Dataset& train, std::size_t passes, std::size_t k,
                            std::uint64_t seed);

// Dispatch on config.method; Method::None returns the input unchanged.
ResampleResult resample(const Dataset& train, const SamplerConfig& config);

}  // namespace ugrwo
