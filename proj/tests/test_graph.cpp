#include <doctest.h>

#include <algorithm>
#include <vector>

#include "test_support.hpp"
#include "ugrwo/graph.hpp"
#include "ugrwo/rng.hpp"

using namespace ugrwo;

namespace {

MatrixView view_of(const std::vector<double>& pts, std::size_t cols) {
    return {pts.data(), pts.size() / cols, cols};
}

// Independent oracle: j is among the k nearest of i iff fewer than k other
// points rank strictly before j under (squared distance, index). No sorted
// list construction, so this route shares nothing with the implementation.
bool oracle_in_knn(MatrixView p, std::size_t i, std::size_t j, std::size_t k) {
    const double dij = squared_distance(p.row(i), p.row(j));
    std::size_t closer = 0;
    for (std::size_t l = 0; l < p.rows; ++l) {
        if (l == i || l == j) continue;
        const double dil = squared_distance(p.row(i), p.row(l));
        if (dil < dij || (dil == dij && l < j)) ++closer;
    }
    return closer < k;
}

bool oracle_mutual_edge(MatrixView p, std::size_t i, std::size_t j, std::size_t k) {
    return i != j && oracle_in_knn(p, i, j, k) && oracle_in_knn(p, j, i, k);
}

std::vector<double> random_points(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<double> pts(n * m);
    for (auto& v : pts) v = rng.uniform() * 10.0;
    return pts;
}

}  // namespace

TEST_CASE("knn_lists on the three-point line") {
    const std::vector<double> pts = {0, 0, 0, 1, 10, 10};
    const auto lists = knn_lists(view_of(pts, 2), 1);
    CHECK(lists[0] == std::vector<std::uint32_t>{1});
    CHECK(lists[1] == std::vector<std::uint32_t>{0});
    CHECK(lists[2] == std::vector<std::uint32_t>{1});
}

TEST_CASE("knn_lists of coincident points lists the other point") {
    const std::vector<double> pts = {3, 3, 3, 3};
    const auto lists = knn_lists(view_of(pts, 2), 1);
    CHECK(lists[0] == std::vector<std::uint32_t>{1});
    CHECK(lists[1] == std::vector<std::uint32_t>{0});
}

TEST_CASE("knn_lists with k = n-1 ranks all other points by distance") {
    const std::vector<double> pts = {0, 2, 5, 9};  // 1-D
    const auto lists = knn_lists(view_of(pts, 1), 3);
    CHECK(lists[0] == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(lists[3] == std::vector<std::uint32_t>{2, 1, 0});
}

TEST_CASE("knn_lists rejects bad arguments") {
    const std::vector<double> pts = {0, 1, 2};
    CHECK_THROWS_AS(knn_lists(view_of(pts, 1), 3), Error);
    CHECK_THROWS_AS(knn_lists(view_of(pts, 1), 0), Error);
    const std::vector<double> one = {0};
    CHECK_THROWS_AS(knn_lists(view_of(one, 1), 1), Error);
}

TEST_CASE("mutual_adjacency on the three-point line") {
    const std::vector<double> pts = {0, 0, 0, 1, 10, 10};
    const auto g = mutual_adjacency(view_of(pts, 2), 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK(!g.has_edge(1, 2));
    CHECK(g.degrees == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("mutual_adjacency of coincident points is complete") {
    const std::vector<double> pts(8, 1.0);  // 4 identical 2-D points
    const auto g = mutual_adjacency(view_of(pts, 2), 3);
    for (std::size_t i = 0; i < 4; ++i) CHECK(g.degrees[i] == 3);
}

TEST_CASE("mutual_adjacency matches the brute-force oracle") {
    Rng rng(0x9a7e);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 20 + rng.bounded(181);  // up to 200
        const std::size_t m = 1 + rng.bounded(10);
        const std::size_t kchoices[] = {3, 5, 10, 15};
        const std::size_t k = std::min(kchoices[rng.bounded(4)], n - 1);
        const auto pts = random_points(n, m, rng);
        const MatrixView v = view_of(pts, m);
        const auto g = mutual_adjacency(v, k);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(g.degrees[i] <= k);
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    CHECK(!g.has_edge(i, j));
                    continue;
                }
                CHECK(g.has_edge(i, j) == oracle_mutual_edge(v, i, j, k));
            }
        }
    }
}

TEST_CASE("adjacency is symmetric on random point sets") {
    Rng rng(0x51ab);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 10 + rng.bounded(90);
        const std::size_t m = 1 + rng.bounded(5);
        const std::size_t k = 1 + rng.bounded(std::min<std::size_t>(n - 1, 12));
        const auto pts = random_points(n, m, rng);
        const auto g = mutual_adjacency(view_of(pts, m), k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t j : g.adjacency[i]) CHECK(g.has_edge(j, i));
    }
}

TEST_CASE("permuting the points permutes the graph consistently") {
    Rng rng(0xfeed);
    const std::size_t n = 40, m = 3, k = 4;
    const auto pts = random_points(n, m, rng);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.bounded(i)]);

    std::vector<double> permuted(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < m; ++c)
            permuted[perm[i] * m + c] = pts[i * m + c];

    // Distinct pairwise distances make the permuted graph unambiguous.
    const auto g = mutual_adjacency(view_of(pts, m), k);
    const auto gp = mutual_adjacency(view_of(permuted, m), k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(g.has_edge(i, j) == gp.has_edge(perm[i], perm[j]));
}

TEST_CASE("keep_coefficients thresholds degrees at k") {
    const std::vector<double> pts = {0, 0, 0, 1, 10, 10};
    const auto g = mutual_adjacency(view_of(pts, 2), 1);
    const auto kc = keep_coefficients(g);
    CHECK(kc.u == std::vector<std::uint8_t>{1, 1, 0});
    CHECK(kc.kept_indices() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("keep_coefficients on a complete mutual graph keeps everything") {
    const std::vector<double> pts(10, 2.0);  // 5 coincident 2-D points
    const auto g = mutual_adjacency(view_of(pts, 2), 4);
    const auto kc = keep_coefficients(g);
    CHECK(std::count(kc.u.begin(), kc.u.end(), 1) == 5);
}

TEST_CASE("planted outlier is always dropped") {
    for (std::uint64_t seed : {11ULL, 22ULL, 33ULL, 44ULL}) {
        const auto pts = testsup::clustered_points(25, 3, 100.0, seed);
        const MatrixView v = view_of(pts, 3);
        for (std::size_t k : {1, 3, 5}) {
            const auto g = mutual_adjacency(v, k);
            const auto kc = keep_coefficients(g);
            CHECK(kc.u.back() == 0);  // the far outlier is the last point
        }
    }
}

TEST_CASE("edge dump lists each edge once with i < j") {
    const std::vector<double> pts = {0, 0, 0, 1, 10, 10};
    const auto g = mutual_adjacency(view_of(pts, 2), 1);
    CHECK(g.edges_csv() == "i,j\n0,1\n");
}
