#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ugrwo/common.hpp"

namespace ugrwo {

// Symmetric mutual-kNN adjacency over one class's samples. An edge (i,j)
// exists iff i is among the k nearest neighbors of j AND j is among the k
// nearest neighbors of i, so degree(i) <= k. No self loops.
struct AdjacencyGraph {
    std::size_t n_vertices = 0;
    std::size_t k = 0;
    std::vector<std::vector<std::uint32_t>> adjacency;  // sorted per vertex
    std::vector<std::uint32_t> degrees;

    bool has_edge(std::size_t i, std::size_t j) const;
    // Edge list as CSV lines "i,j" with i < j (debug dump).
    std::string edges_csv() const;
};

// Keep/drop indicator per vertex: u[i] = 1 iff degree(i) >= k. With unit
// edge weights and mutual-kNN degrees capped at k this keeps exactly the
// vertices whose neighborhood is fully reciprocated.
struct KeepCoefficients {
    std::vector<std::uint8_t> u;

    std::vector<std::size_t> kept_indices() const;
};

// For each point, the k nearest OTHER points by Euclidean distance, nearest
// first. Distances compared as squared Euclidean; ties break to the lower
// point index. Requires n >= 2 and 1 <= k <= n-1.
std::vector<std::vector<std::uint32_t>> knn_lists(MatrixView points, std::size_t k);

AdjacencyGraph mutual_adjacency(MatrixView points, std::size_t k);

KeepCoefficients keep_coefficients(const AdjacencyGraph& g);

}  // namespace ugrwo
