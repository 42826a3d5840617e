#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace ugrwo {

// Library-wide error. Messages are stable and specific; callers match on
// category via the what() prefix when they need to tell failure modes apart.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration file or bad CLI arguments (maps to exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Non-owning view over a row-major matrix of doubles.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::span<const double> row(std::size_t i) const {
        return {data + i * cols, cols};
    }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace ugrwo
