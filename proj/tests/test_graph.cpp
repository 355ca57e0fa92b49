#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "natnet/errors.hpp"
#include "natnet/graph.hpp"

using namespace natnet;

TEST_CASE("build_network copies labeled points without a newcomer") {
    LabeledDataset dataset;
    dataset.points.resize(4, 2);
    dataset.points << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8;
    dataset.labels = {0, 0, 1, 1};
    dataset.ids = {"a", "b", "c", "d"};
    dataset.n_clusters = 2;

    const NetworkState state = build_network(dataset);
    CHECK(state.size() == 4);
    CHECK(state.step == 0);
    CHECK(!state.newcomer.has_value());
    CHECK(state.positions == dataset.points);  // bit-for-bit copy
}

TEST_CASE("build_network appends the newcomer last") {
    const LabeledDataset dataset = testutil::corner_blobs_125(7);
    REQUIRE(dataset.size() == 124 + 1);

    LabeledDataset head = dataset;
    head.points = dataset.points.topRows(124);
    head.labels.assign(dataset.labels.begin(), dataset.labels.begin() + 124);
    head.ids.assign(dataset.ids.begin(), dataset.ids.begin() + 124);

    const FeaturePoint w = dataset.points.row(124).transpose();
    const NetworkState state = build_network(head, w);
    CHECK(state.size() == 125);
    CHECK(state.newcomer.has_value());
    CHECK(*state.newcomer == 124);
    CHECK(state.labels[124] == -1);
    CHECK(state.positions.row(124) == w.transpose());
}

TEST_CASE("build_network rejects bad input") {
    LabeledDataset dataset;
    dataset.points.resize(2, 2);
    dataset.points << 0.0, 0.0, 1.0, 1.0;
    dataset.labels = {0, 1};
    dataset.ids = {"a", "b"};
    dataset.n_clusters = 2;

    SUBCASE("wrong newcomer dimension") {
        FeaturePoint w(3);
        w << 0.0, 0.0, 0.0;
        CHECK_THROWS_AS(build_network(dataset, w), Error);
    }
    SUBCASE("empty dataset") {
        LabeledDataset empty;
        empty.n_clusters = 1;
        CHECK_THROWS_AS(build_network(empty), Error);
    }
    SUBCASE("missing cluster") {
        dataset.labels = {0, 0};  // cluster 2 empty
        CHECK_THROWS_AS(build_network(dataset), Error);
    }
    SUBCASE("label out of range") {
        dataset.labels = {0, 2};
        CHECK_THROWS_AS(build_network(dataset), Error);
    }
}

TEST_CASE("cluster sizes partition the labeled vertices") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_clusters = 2 + static_cast<int>(rng.below(4));
        const int n_points = n_clusters + static_cast<int>(rng.below(60));
        const NetworkState state = testutil::random_state(rng, n_points, n_clusters);
        const auto sizes = cluster_sizes(state.labels, state.n_clusters);
        int total = 0;
        for (int s : sizes) total += s;
        CHECK(total == n_points);
    }
}

TEST_CASE("cluster sizes exclude the newcomer") {
    LabeledDataset dataset;
    dataset.points.resize(3, 1);
    dataset.points << 0.0, 0.5, 1.0;
    dataset.labels = {0, 0, 1};
    dataset.ids = {"a", "b", "c"};
    dataset.n_clusters = 2;

    FeaturePoint w(1);
    w << 0.25;
    const NetworkState state = build_network(dataset, w);
    const auto sizes = cluster_sizes(state.labels, state.n_clusters);
    CHECK(sizes[0] + sizes[1] == static_cast<int>(state.size()) - 1);
    CHECK(smallest_cluster_size(state.labels, state.n_clusters) == 1);
}

TEST_CASE("diffusion params are validated") {
    DiffusionParams params = testutil::default_params_2d();
    CHECK_NOTHROW(params.validate(2));

    DiffusionParams bad = params;
    bad.delta = 0.0;
    CHECK_THROWS_AS(bad.validate(2), Error);
    bad = params;
    bad.eps_backward = 0.1;
    CHECK_THROWS_AS(bad.validate(2), Error);
    bad = params;
    bad.weights = Eigen::Vector2d(-1.0, 0.0);
    CHECK_THROWS_AS(bad.validate(2), Error);
    bad = params;
    CHECK_THROWS_AS(bad.validate(3), Error);
}
