#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "natnet/errors.hpp"
#include "natnet/training.hpp"

using namespace natnet;

TEST_CASE("parameter ranges enumerate inclusively") {
    CHECK(ParamRange{100.0, 5000.0, 100.0}.values().size() == 50);
    CHECK(ParamRange{0.001, 0.1, 0.001}.values().size() == 100);
    const auto single = ParamRange{7.0, 7.0, 1.0}.values();
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 7.0);
    const auto five = ParamRange{100.0, 5000.0, 1225.0}.values();
    REQUIRE(five.size() == 5);
    CHECK(five.back() == 5000.0);
    CHECK_THROWS_AS((ParamRange{1.0, 0.0, 1.0}.values()), Error);
    CHECK_THROWS_AS((ParamRange{0.0, 1.0, 0.0}.values()), Error);
}

TEST_CASE("loo counts partition the dataset") {
    const LabeledDataset dataset = synth_clusters(3, 2, 24, {{0.25, 0.3}, {0.75, 0.7}}, 0.03);
    DiffusionParams params = testutil::default_params_2d();
    params.weights = Eigen::Vector2d(2000.0, 2000.0);
    HistogramConfig hist;
    const LooReport report = loo_evaluate(dataset, params, hist);
    CHECK(report.correct + report.incorrect + report.outliers == 24);
    CHECK(report.per_point.size() == 24);
    CHECK(report.success_rate == doctest::Approx(report.correct / 24.0));
    for (const auto& rec : report.per_point) {
        if (rec.assigned) {
            CHECK(rec.relevancy >= 0.0);
            CHECK(rec.relevancy <= 1.0);
        } else {
            CHECK(rec.relevancy == 0.0);
        }
    }
}

TEST_CASE("loo on far-separated blobs is perfect") {
    const LabeledDataset dataset = testutil::corner_blobs_125(42, 0.03);
    DiffusionParams params = testutil::default_params_2d();
    params.weights = Eigen::Vector2d(2000.0, 2000.0);
    params.delta = 0.004;
    const LooReport report = loo_evaluate(dataset, params, HistogramConfig{});
    CHECK(report.success_rate == 1.0);
}

TEST_CASE("loo rejects singleton clusters and is thread-count invariant") {
    LabeledDataset dataset = synth_clusters(5, 2, 21, {{0.3, 0.3}, {0.7, 0.7}}, 0.02);
    DiffusionParams params = testutil::default_params_2d();
    params.weights = Eigen::Vector2d(1000.0, 1000.0);

    SUBCASE("singleton cluster") {
        LabeledDataset bad = dataset;
        bad.labels.assign(bad.labels.size(), 0);
        bad.labels.back() = 1;  // cluster 2 has one member
        bad.n_clusters = 2;
        CHECK_THROWS_AS(loo_evaluate(bad, params, HistogramConfig{}), Error);
    }
    SUBCASE("identical reports at any thread count") {
        const LooReport serial = loo_evaluate(dataset, params, HistogramConfig{}, 12.0, 1);
        const LooReport parallel = loo_evaluate(dataset, params, HistogramConfig{}, 12.0, 4);
        CHECK(serial.correct == parallel.correct);
        CHECK(serial.outliers == parallel.outliers);
        for (std::size_t i = 0; i < serial.per_point.size(); ++i) {
            CHECK(serial.per_point[i].relevancy == parallel.per_point[i].relevancy);
            CHECK(serial.per_point[i].assigned == parallel.per_point[i].assigned);
        }
    }
}

TEST_CASE("grid_search picks the enumerated maximum with lexicographic ties") {
    const LabeledDataset dataset = synth_clusters(11, 2, 30, {{0.25, 0.5}, {0.75, 0.5}}, 0.03);
    HistogramConfig hist;
    const DiffusionParams base = testutil::default_params_2d();

    TuningGrid grid;
    grid.k1 = {500.0, 2500.0, 1000.0};   // 500, 1500, 2500
    grid.k2 = {500.0, 2500.0, 1000.0};
    grid.delta = {0.004, 0.054, 0.05};   // 0.004, 0.054

    const GridSearchResult result = grid_search(dataset, grid, hist, base);

    // Exhaustiveness oracle: independently evaluate every tuple.
    int best_correct = -1;
    std::array<double, 3> best_tuple{};
    for (const auto& tuple : grid.enumerate()) {
        DiffusionParams params = base;
        params.weights = Eigen::Vector2d(tuple[0], tuple[1]);
        params.delta = tuple[2];
        const LooReport report = loo_evaluate(dataset, params, hist);
        if (report.correct > best_correct) {
            best_correct = report.correct;
            best_tuple = tuple;
        }
    }
    CHECK(result.report.correct == best_correct);
    CHECK(result.params.weights(0) == best_tuple[0]);
    CHECK(result.params.weights(1) == best_tuple[1]);
    CHECK(result.params.delta == best_tuple[2]);
}

TEST_CASE("grid_search honors precomputed tuples and reports progress") {
    const LabeledDataset dataset = synth_clusters(19, 2, 20, {{0.3, 0.5}, {0.7, 0.5}}, 0.02);
    HistogramConfig hist;
    const DiffusionParams base = testutil::default_params_2d();

    TuningGrid grid;
    grid.k1 = {1000.0, 2000.0, 1000.0};
    grid.k2 = {1000.0, 1000.0, 1.0};
    grid.delta = {0.004, 0.004, 1.0};  // 2 tuples total

    int callbacks = 0;
    GridProgress progress;
    progress.on_result = [&](double, double, double, const LooReport&) { ++callbacks; };
    const GridSearchResult full = grid_search(dataset, grid, hist, base, 12.0, 1, &progress);
    CHECK(callbacks == 2);

    // Poison one tuple with an absurd precomputed count: it must be trusted
    // and win without re-evaluation.
    GridProgress resume;
    resume.precomputed[{2000.0, 1000.0, 0.004}] = dataset.size() + 100;
    resume.on_result = [&](double, double, double, const LooReport&) { ++callbacks; };
    callbacks = 0;
    const GridSearchResult res = grid_search(dataset, grid, hist, base, 12.0, 1, &resume);
    CHECK(callbacks == 1);  // only the non-precomputed tuple ran
    CHECK(res.params.weights(0) == 2000.0);
    (void)full;
}

TEST_CASE("single-cell grid returns that tuple") {
    const LabeledDataset dataset = synth_clusters(23, 2, 16, {{0.3, 0.4}, {0.7, 0.6}}, 0.02);
    TuningGrid grid;
    grid.k1 = {700.0, 700.0, 1.0};
    grid.k2 = {900.0, 900.0, 1.0};
    grid.delta = {0.01, 0.01, 1.0};
    const GridSearchResult result =
        grid_search(dataset, grid, HistogramConfig{}, testutil::default_params_2d());
    CHECK(result.params.weights(0) == 700.0);
    CHECK(result.params.weights(1) == 900.0);
    CHECK(result.params.delta == 0.01);
    CHECK(result.report.correct + result.report.incorrect + result.report.outliers == 16);
}

namespace {

// Two clusters, three areas; maps where area `zero_area` has identically
// zero own-cluster relevancy.
struct PlantedMaps {
    AreaSet areas;
    std::vector<MapSet> maps;
};

PlantedMaps planted_maps(bool zero_out_area2) {
    PlantedMaps p;
    p.areas.width = 12;
    p.areas.height = 6;
    p.areas.pixel_area.assign(12 * 6, -1);
    p.areas.areas = {{"a0", 0, {2, 2, 1}}, {"a1", 1, {2, 6, 1}}, {"a2", 1, {2, 10, 1}}};
    auto fill = [&](int area, int col0) {
        for (int r = 1; r < 5; ++r) {
            for (int c = col0; c < col0 + 3; ++c) p.areas.pixel_area[r * 12 + c] = area;
        }
    };
    fill(0, 1);
    fill(1, 5);
    fill(2, 9);

    for (int radius : {3, 4, 5}) {
        MapSet set;
        for (int cluster = 0; cluster < 2; ++cluster) {
            RelevancyMap map;
            map.width = 12;
            map.height = 6;
            map.cluster = cluster;
            map.radius = radius;
            map.values.assign(12 * 6, 0.0f);
            set.maps.push_back(map);
        }
        // Area 0 bright in cluster 0; area 1 bright in cluster 1.
        for (const auto& [r, c] : p.areas.pixels_of(0)) set.maps[0].at(r, c) = 0.9f;
        for (const auto& [r, c] : p.areas.pixels_of(1)) set.maps[1].at(r, c) = 0.8f;
        if (!zero_out_area2) {
            for (const auto& [r, c] : p.areas.pixels_of(2)) set.maps[1].at(r, c) = 0.7f;
        }
        p.maps.push_back(std::move(set));
    }
    return p;
}

}  // namespace

TEST_CASE("prune removes exactly the all-zero areas and is idempotent") {
    const PlantedMaps planted = planted_maps(true);
    const PruneResult pruned = prune_unclassifiable(planted.areas, planted.maps);
    REQUIRE(pruned.removed_ids.size() == 1);
    CHECK(pruned.removed_ids[0] == "a2");
    CHECK(pruned.areas.areas.size() == 2);
    CHECK(pruned.kept == std::vector<std::size_t>{0, 1});
    // Mask pixels of the removed area are cleared.
    for (std::int32_t a : pruned.areas.pixel_area) CHECK(a <= 1);

    // Second pass removes nothing: maps restricted to the kept areas.
    const PruneResult again = prune_unclassifiable(pruned.areas, planted.maps);
    CHECK(again.removed_ids.empty());
    CHECK(again.areas.areas.size() == 2);
}

TEST_CASE("prune keeps areas with any positive pixel") {
    const PlantedMaps planted = planted_maps(false);
    const PruneResult pruned = prune_unclassifiable(planted.areas, planted.maps);
    CHECK(pruned.removed_ids.empty());
    CHECK(pruned.areas.areas.size() == 3);
}

TEST_CASE("prune refuses to empty a cluster") {
    PlantedMaps planted = planted_maps(true);
    // Zero the second cluster everywhere: areas a1 and a2 both vanish.
    for (auto& set : planted.maps) {
        std::fill(set.maps[1].values.begin(), set.maps[1].values.end(), 0.0f);
    }
    CHECK_THROWS_AS(prune_unclassifiable(planted.areas, planted.maps), Error);
}

TEST_CASE("adjust recenters squares to higher own-relevancy pixels") {
    const SyntheticRaster synth = synth_raster(404, 48, 48, 3, 2, 3, 0.02);
    TrainedModel model = testutil::texture_model(synth);

    // Sabotage one square: park it at the area's top-left corner, where the
    // window straddles the area boundary.
    AreaSet areas = synth.areas;
    const auto corner = areas.pixels_of(0).front();
    areas.areas[0].square = SquareSpec{corner.first, corner.second, 5};

    const AdjustResult result = adjust_squares(synth.raster, areas, model, {3, 4, 5});
    CHECK(result.raw_dataset.size() == static_cast<Eigen::Index>(areas.areas.size()));

    // Argmax property: each area's final square center attains at least its
    // previous own-cluster relevancy.
    MapOptions opts;
    std::map<int, MapSet> maps;
    PixelMask all;
    all.width = areas.width;
    all.height = areas.height;
    all.inside.assign(areas.pixel_area.size(), 0);
    for (std::size_t p = 0; p < areas.pixel_area.size(); ++p) {
        if (areas.pixel_area[p] >= 0) all.inside[p] = 1;
    }
    for (int r : {3, 4, 5}) {
        maps.emplace(r, compute_maps_masked(synth.raster, model, r, all, opts));
    }
    for (std::size_t i = 0; i < areas.areas.size(); ++i) {
        const auto& before = areas.areas[i].square;
        const auto& after = result.areas.areas[i].square;
        const std::size_t label = static_cast<std::size_t>(areas.areas[i].label);
        const float v_before = maps.at(before.radius).maps[label].at(before.row, before.col);
        const float v_after = maps.at(after.radius).maps[label].at(after.row, after.col);
        CHECK(v_after >= v_before);
    }

    // Idempotence: adjusting the adjusted set changes nothing.
    const AdjustResult second =
        adjust_squares(synth.raster, result.areas, model, {3, 4, 5});
    for (std::size_t i = 0; i < second.areas.areas.size(); ++i) {
        CHECK_FALSE(second.adjusted[i]);
    }
}

TEST_CASE("area dataset construction matches direct feature extraction") {
    const SyntheticRaster synth = synth_raster(17, 48, 48, 3, 2, 2, 0.02);
    ChannelConfig channels;
    channels.channels = synth.raster.band_names;
    const LabeledDataset dataset = build_area_dataset(synth.raster, synth.areas, channels);
    REQUIRE(dataset.size() == 4);
    CHECK(dataset.dim() == 12);
    for (std::size_t i = 0; i < synth.areas.areas.size(); ++i) {
        const FeaturePoint direct =
            square_features(synth.raster, synth.areas.areas[i].square, channels);
        CHECK(dataset.points.row(static_cast<Eigen::Index>(i)) == direct.transpose());
        CHECK(dataset.labels[i] == synth.areas.areas[i].label);
    }
}
