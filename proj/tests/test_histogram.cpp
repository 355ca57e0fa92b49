#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "natnet/errors.hpp"
#include "natnet/histogram.hpp"

using namespace natnet;

TEST_CASE("build_histogram basics") {
    SUBCASE("one point at the origin") {
        Eigen::MatrixXd pos(1, 2);
        pos << 0.0, 0.0;
        const CellHistogram cells = build_histogram(pos, 0.01);
        REQUIRE(cells.size() == 1);
        CHECK(cells.at({0, 0}) == 1);
    }
    SUBCASE("coincident points accumulate in one cell") {
        Eigen::MatrixXd pos(6, 2);
        for (int i = 0; i < 6; ++i) pos.row(i) << 0.123, 0.456;
        const CellHistogram cells = build_histogram(pos, 0.01);
        REQUIRE(cells.size() == 1);
        CHECK(cells.begin()->second == 6);
    }
    SUBCASE("cell index is the per-coordinate floor") {
        Eigen::MatrixXd pos(1, 2);
        pos << 0.0151, 0.001;
        const CellHistogram cells = build_histogram(pos, 0.015625);
        REQUIRE(cells.size() == 1);
        CHECK(cells.count({0, 0}) == 1);
    }
    SUBCASE("counts sum to the point count") {
        Rng rng(3);
        Eigen::MatrixXd pos(57, 2);
        for (int i = 0; i < 57; ++i) pos.row(i) << rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
        const CellHistogram cells = build_histogram(pos, 0.01);
        int total = 0;
        for (const auto& [cell, count] : cells) total += count;
        CHECK(total == 57);
    }
}

namespace {

// A cluster collapsed into a single far-away cell, plus optional strays.
Eigen::MatrixXd collapsed_clusters(const std::vector<std::pair<double, double>>& cell_centers,
                                   const std::vector<int>& counts) {
    int total = 0;
    for (int c : counts) total += c;
    Eigen::MatrixXd pos(total, 2);
    int row = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (int j = 0; j < counts[i]; ++j) {
            pos.row(row++) << cell_centers[i].first, cell_centers[i].second;
        }
    }
    return pos;
}

}  // namespace

TEST_CASE("clusters_formed ring semantics") {
    HistogramConfig config;  // h=0.01, H1=1, H2=8
    std::vector<int> labels(12, 0);
    labels.resize(18, 1);  // two clusters: sizes 12 and 6 -> S_min = 6

    SUBCASE("collapsed cluster with an empty ring forms") {
        const Eigen::MatrixXd pos =
            collapsed_clusters({{0.005, 0.005}, {0.505, 0.505}}, {12, 6});
        CHECK(clusters_formed(pos, labels, 2, config) == 2);
    }
    SUBCASE("a stray point inside the ring blocks formation") {
        // 6-point cell at origin cell, one stray 3 cells away (in (1,8]).
        std::vector<int> two_labels(6, 0);
        two_labels.resize(12, 1);
        Eigen::MatrixXd pos = collapsed_clusters({{0.005, 0.005}, {0.905, 0.905}}, {6, 5});
        Eigen::MatrixXd with_stray(pos.rows() + 1, 2);
        with_stray.topRows(pos.rows()) = pos;
        with_stray.row(pos.rows()) << 0.035, 0.005;  // cell (3,0)
        std::vector<int> stray_labels(6, 0);
        stray_labels.resize(11, 1);
        stray_labels.push_back(1);
        // S_min = 6; origin cell is marked but blocked by the stray.
        CHECK(clusters_formed(with_stray, stray_labels, 2, config) == 0);
    }
    SUBCASE("a neighbor at Chebyshev distance 1 does not block") {
        // Points in two adjacent cells: distance 1 <= H1 is not examined.
        Eigen::MatrixXd pos = collapsed_clusters({{0.005, 0.005}, {0.015, 0.005}}, {6, 3});
        std::vector<int> mixed_labels(6, 0);
        mixed_labels.resize(9, 1);
        // S_min = 3; both cells marked? cell (1,0) holds 3 >= 3: marked too.
        // Each sees the other at distance 1, inside H1 -> both form.
        CHECK(clusters_formed(pos, mixed_labels, 2, config) == 2);
    }
    SUBCASE("a point just beyond H2 does not block") {
        Eigen::MatrixXd pos = collapsed_clusters({{0.005, 0.005}, {0.095, 0.005}}, {6, 6});
        // Cells (0,0) and (9,0): distance 9 > H2 = 8 -> both form.
        std::vector<int> two_labels(6, 0);
        two_labels.resize(12, 1);
        CHECK(clusters_formed(pos, two_labels, 2, config) == 2);
    }
}

TEST_CASE("should_stop compares formed clusters against the target") {
    HistogramConfig config;
    SUBCASE("four collapsed well-separated clusters stop a 4-cluster run") {
        const Eigen::MatrixXd pos = collapsed_clusters(
            {{0.105, 0.105}, {0.805, 0.105}, {0.105, 0.805}, {0.805, 0.805}}, {7, 6, 8, 6});
        std::vector<int> labels;
        for (int c = 0; c < 4; ++c) {
            const int counts[] = {7, 6, 8, 6};
            for (int i = 0; i < counts[c]; ++i) labels.push_back(c);
        }
        CHECK(should_stop(pos, labels, 4, config));
    }
    SUBCASE("the spread-out initial dataset does not stop") {
        const LabeledDataset dataset = testutil::corner_blobs_125(42);
        CHECK_FALSE(should_stop(dataset.points, dataset.labels, 4, config));
        CHECK(clusters_formed(dataset.points, dataset.labels, 4, config) == 0);
    }
    SUBCASE("single cluster in one cell stops an N_C=1 run") {
        const Eigen::MatrixXd pos = collapsed_clusters({{0.205, 0.205}}, {5});
        const std::vector<int> labels(5, 0);
        CHECK(should_stop(pos, labels, 1, config));
    }
}

TEST_CASE("newcomer participates in counts but not in S_min") {
    HistogramConfig config;
    // Two clusters of sizes 3 and 4 -> S_min = 3. The newcomer (label -1)
    // coalesced into the first cell makes its count 4.
    Eigen::MatrixXd pos = collapsed_clusters({{0.005, 0.005}, {0.505, 0.505}}, {4, 4});
    std::vector<int> labels(3, 0);
    labels.push_back(-1);
    labels.resize(8, 1);
    CHECK(clusters_formed(pos, labels, 2, config) == 2);
}

TEST_CASE("translation by a multiple of h shifts cells without changing structure") {
    // Lattice-valued coordinates keep the shifted arithmetic exact.
    Rng rng(9);
    const double h = 0.015625;  // 2^-6
    Eigen::MatrixXd pos(40, 2);
    for (int i = 0; i < 40; ++i) {
        pos(i, 0) = static_cast<double>(rng.below(1 << 16)) * 0x1.0p-16;
        pos(i, 1) = static_cast<double>(rng.below(1 << 16)) * 0x1.0p-16;
    }
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i % 3);

    for (int trial = 0; trial < 10; ++trial) {
        const auto mx = static_cast<std::int64_t>(rng.below(41)) - 20;
        const auto my = static_cast<std::int64_t>(rng.below(41)) - 20;
        Eigen::MatrixXd shifted = pos;
        shifted.col(0).array() += static_cast<double>(mx) * h;
        shifted.col(1).array() += static_cast<double>(my) * h;

        const CellHistogram base = build_histogram(pos, h);
        const CellHistogram moved = build_histogram(shifted, h);
        REQUIRE(base.size() == moved.size());
        for (const auto& [cell, count] : base) {
            CHECK(moved.at({cell[0] + mx, cell[1] + my}) == count);
        }

        HistogramConfig config;
        config.h = h;
        CHECK(clusters_formed(pos, labels, 3, config) ==
              clusters_formed(shifted, labels, 3, config));
    }
}

TEST_CASE("merging a cluster into an empty-ring cell never decreases the count") {
    HistogramConfig config;
    const LabeledDataset dataset = testutil::corner_blobs_125(13, 0.02);
    const int before = clusters_formed(dataset.points, dataset.labels, 4, config);

    Eigen::MatrixXd merged = dataset.points;
    for (Eigen::Index v = 0; v < merged.rows(); ++v) {
        if (dataset.labels[static_cast<std::size_t>(v)] == 2) {
            merged.row(v) << 5.005, 5.005;  // far cell, ring certainly empty
        }
    }
    const int after = clusters_formed(merged, dataset.labels, 4, config);
    CHECK(after >= before);
    CHECK(after >= 1);
}

TEST_CASE("histogram evaluation is deterministic") {
    const LabeledDataset dataset = testutil::corner_blobs_125(4242);
    HistogramConfig config;
    const auto a = build_histogram(dataset.points, config.h);
    const auto b = build_histogram(dataset.points, config.h);
    CHECK(a == b);
    CHECK(clusters_formed(dataset.points, dataset.labels, 4, config) ==
          clusters_formed(dataset.points, dataset.labels, 4, config));
}

TEST_CASE("invalid configs are rejected") {
    Eigen::MatrixXd pos(1, 2);
    pos << 0.0, 0.0;
    CHECK_THROWS_AS(build_histogram(pos, 0.0), Error);
    HistogramConfig config;
    config.inner_radius = 8;
    config.outer_radius = 8;
    CHECK_THROWS_AS(clusters_formed(pos, {0}, 1, config), Error);
}
