#include "ugrwo/graph.hpp"

#include <algorithm>
#include <cstdio>

namespace ugrwo {

bool AdjacencyGraph::has_edge(std::size_t i, std::size_t j) const {
    const auto& adj = adjacency[i];
    return std::binary_search(adj.begin(), adj.end(), static_cast<std::uint32_t>(j));
}

std::string AdjacencyGraph::edges_csv() const {
    std::string out = "i,j\n";
    char buf[48];
    for (std::size_t i = 0; i < n_vertices; ++i) {
        for (std::uint32_t j : adjacency[i]) {
            if (j <= i) continue;
            std::snprintf(buf, sizeof(buf), "%zu,%u\n", i, j);
            out += buf;
        }
    }
    return out;
}

std::vector<std::size_t> KeepCoefficients::kept_indices() const {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i]) kept.push_back(i);
    return kept;
}

std::vector<std::vector<std::uint32_t>> knn_lists(MatrixView points, std::size_t k) {
    const std::size_t n = points.rows;
    if (n < 2) throw Error("knn_lists: need at least 2 points");
    if (k < 1 || k > n - 1)
        throw Error("knn_lists: k out of range [1, n-1], got k=" + std::to_string(k) +
                    " with n=" + std::to_string(n));

    std::vector<std::vector<std::uint32_t>> lists(n);
    std::vector<std::pair<double, std::uint32_t>> cand(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        const auto pi = points.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cand[c++] = {squared_distance(pi, points.row(j)),
                         static_cast<std::uint32_t>(j)};
        }
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        lists[i].resize(k);
        for (std::size_t t = 0; t < k; ++t) lists[i][t] = cand[t].second;
    }
    return lists;
}

AdjacencyGraph mutual_adjacency(MatrixView points, std::size_t k) {
    const auto lists = knn_lists(points, k);
    const std::size_t n = points.rows;

    // Membership lookups against sorted copies of the neighbor lists.
    std::vector<std::vector<std::uint32_t>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        sorted[i] = lists[i];
        std::sort(sorted[i].begin(), sorted[i].end());
    }

    AdjacencyGraph g;
    g.n_vertices = n;
    g.k = k;
    g.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t j : sorted[i]) {
            if (std::binary_search(sorted[j].begin(), sorted[j].end(),
                                   static_cast<std::uint32_t>(i)))
                g.adjacency[i].push_back(j);
        }
    }
    g.degrees.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.degrees[i] = static_cast<std::uint32_t>(g.adjacency[i].size());
    return g;
}

KeepCoefficients keep_coefficients(const AdjacencyGraph& g) {
    KeepCoefficients kc;
    kc.u.resize(g.n_vertices);
    for (std::size_t i = 0; i < g.n_vertices; ++i)
        kc.u[i] = g.degrees[i] >= g.k ? 1 : 0;
    return kc;
}

}  // namespace ugrwo
