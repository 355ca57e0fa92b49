#include "natnet/training.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "natnet/errors.hpp"
#include "natnet/parallel.hpp"

namespace natnet {

std::vector<double> ParamRange::values() const {
    if (!(step > 0.0)) throw Error("parameter range step must be positive");
    if (stop < start) throw Error("parameter range is empty");
    // Tolerate rounding at the far end so stop itself is always included.
    const auto count = static_cast<std::size_t>(
        std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

std::vector<std::array<double, 3>> TuningGrid::enumerate() const {
    const auto k1v = k1.values();
    const auto k2v = k2.values();
    const auto dv = delta.values();
    std::vector<std::array<double, 3>> tuples;
    tuples.reserve(k1v.size() * k2v.size() * dv.size());
    for (double a : k1v) {
        for (double b : k2v) {
            for (double d : dv) tuples.push_back({a, b, d});
        }
    }
    return tuples;
}

LooReport loo_evaluate(const LabeledDataset& dataset, const DiffusionParams& params,
                       const HistogramConfig& hist, double lambda, int threads,
                       const SorOptions& sor) {
    dataset.validate();
    const auto sizes = cluster_sizes(dataset.labels, dataset.n_clusters);
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] < 2) {
            throw Error("cluster " + std::to_string(c + 1) +
                        " would be empty with its only member held out");
        }
    }

    const Eigen::Index n = dataset.size();
    const Eigen::Index k = dataset.dim();
    LooReport report;
    report.per_point.resize(static_cast<std::size_t>(n));

    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        LabeledDataset rest;
        rest.points.resize(n - 1, k);
        rest.labels.reserve(static_cast<std::size_t>(n) - 1);
        rest.ids.reserve(static_cast<std::size_t>(n) - 1);
        rest.n_clusters = dataset.n_clusters;
        Eigen::Index row = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == static_cast<Eigen::Index>(i)) continue;
            rest.points.row(row++) = dataset.points.row(j);
            rest.labels.push_back(dataset.labels[static_cast<std::size_t>(j)]);
            rest.ids.push_back(dataset.ids[static_cast<std::size_t>(j)]);
        }

        LooRecord& record = report.per_point[i];
        record.id = dataset.ids[i];
        record.true_label = dataset.labels[i];
        try {
            const ClassificationResult result = classify(
                rest, dataset.points.row(static_cast<Eigen::Index>(i)).transpose(),
                params, hist, lambda, sor);
            record.assigned = result.assigned;
            record.relevancy = result.relevancy;
        } catch (const DivergenceError&) {
            record.failed = true;
        } catch (const SolverError&) {
            record.failed = true;
        }
    });

    for (const auto& record : report.per_point) {
        if (!record.assigned) {
            ++report.outliers;  // includes failures
        } else if (*record.assigned == record.true_label) {
            ++report.correct;
        } else {
            ++report.incorrect;
        }
    }
    report.success_rate = static_cast<double>(report.correct) / static_cast<double>(n);
    return report;
}

GridSearchResult grid_search(const LabeledDataset& dataset, const TuningGrid& grid,
                             const HistogramConfig& hist, const DiffusionParams& base,
                             double lambda, int threads, GridProgress* progress,
                             const SorOptions& sor) {
    if (dataset.dim() != 2) {
        throw Error("the tuning grid sweeps two coordinate weights; dataset must be 2-D");
    }
    const auto tuples = grid.enumerate();
    if (tuples.empty()) throw Error("tuning grid is empty");

    auto params_for = [&](const std::array<double, 3>& t) {
        DiffusionParams p = base;
        p.weights = Eigen::Vector2d(t[0], t[1]);
        p.delta = t[2];
        return p;
    };

    std::vector<int> correct(tuples.size(), -1);
    std::mutex progress_mutex;
    parallel_for(tuples.size(), threads, [&](std::size_t i) {
        if (progress) {
            auto it = progress->precomputed.find(tuples[i]);
            if (it != progress->precomputed.end()) {
                correct[i] = it->second;
                return;
            }
        }
        const LooReport report = loo_evaluate(dataset, params_for(tuples[i]), hist,
                                              lambda, /*threads=*/1, sor);
        correct[i] = report.correct;
        if (progress && progress->on_result) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress->on_result(tuples[i][0], tuples[i][1], tuples[i][2], report);
        }
    });

    // First maximum in enumeration order = lexicographically smallest winner.
    std::size_t best = 0;
    for (std::size_t i = 1; i < tuples.size(); ++i) {
        if (correct[i] > correct[best]) best = i;
    }

    GridSearchResult result;
    result.params = params_for(tuples[best]);
    result.report = loo_evaluate(dataset, result.params, hist, lambda, threads, sor);
    return result;
}

LabeledDataset build_area_dataset(const Raster& raster, const AreaSet& areas,
                                  const ChannelConfig& channels) {
    areas.validate();
    LabeledDataset dataset;
    dataset.n_clusters = areas.n_clusters();
    const Eigen::Index dim = 4 * channels.count();
    dataset.points.resize(static_cast<Eigen::Index>(areas.areas.size()), dim);
    for (std::size_t i = 0; i < areas.areas.size(); ++i) {
        const AreaSpec& area = areas.areas[i];
        if (area.square.radius <= 0) {
            throw Error("area '" + area.id + "' has no representative square");
        }
        dataset.points.row(static_cast<Eigen::Index>(i)) =
            square_features(raster, area.square, channels).transpose();
        dataset.labels.push_back(area.label);
        dataset.ids.push_back(area.id);
    }
    dataset.validate();
    return dataset;
}

AdjustResult adjust_squares(const Raster& raster, const AreaSet& areas,
                            const TrainedModel& model, const std::vector<int>& radii,
                            const MapOptions& opts) {
    areas.validate();
    if (radii.empty()) throw Error("no adjustment radii given");
    for (const auto& area : areas.areas) {
        if (area.square.radius <= 0) {
            throw Error("area '" + area.id + "' has no representative square to adjust");
        }
    }

    // One masked map computation covers every area pixel. Radii of current
    // squares are included so their center relevancies can be read off.
    std::vector<int> all_radii = radii;
    for (const auto& area : areas.areas) all_radii.push_back(area.square.radius);
    std::sort(all_radii.begin(), all_radii.end());
    all_radii.erase(std::unique(all_radii.begin(), all_radii.end()), all_radii.end());

    PixelMask area_pixels;
    area_pixels.width = areas.width;
    area_pixels.height = areas.height;
    area_pixels.inside.assign(areas.pixel_area.size(), 0);
    for (std::size_t p = 0; p < areas.pixel_area.size(); ++p) {
        if (areas.pixel_area[p] >= 0) area_pixels.inside[p] = 1;
    }

    std::map<int, MapSet> maps_by_radius;
    for (int r : all_radii) {
        maps_by_radius.emplace(r, compute_maps_masked(raster, model, r, area_pixels, opts));
    }

    AdjustResult result;
    result.areas = areas;
    result.adjusted.assign(areas.areas.size(), 0);

    for (std::size_t i = 0; i < areas.areas.size(); ++i) {
        AreaSpec& area = result.areas.areas[i];
        const std::size_t label = static_cast<std::size_t>(area.label);
        const double current =
            maps_by_radius.at(area.square.radius).maps[label].at(area.square.row,
                                                                 area.square.col);
        // Deterministic argmax: radii in the given order, pixels row-major,
        // strictly-greater wins.
        double best = 0.0;
        SquareSpec best_square{};
        const auto pixels = areas.pixels_of(i);
        for (int r : radii) {
            const RelevancyMap& own_map = maps_by_radius.at(r).maps[label];
            for (const auto& [row, col] : pixels) {
                const double value = own_map.at(row, col);
                if (value > best) {
                    best = value;
                    best_square = SquareSpec{row, col, r};
                }
            }
        }
        if (best == 0.0) {
            result.zero_relevancy_ids.push_back(area.id);
            continue;
        }
        if (best > current) {
            area.square = best_square;
            result.adjusted[i] = 1;
        }
    }

    result.raw_dataset = build_area_dataset(raster, result.areas, model.channels);
    return result;
}

PruneResult prune_unclassifiable(const AreaSet& areas,
                                 const std::vector<MapSet>& maps_per_radius) {
    areas.validate();
    if (maps_per_radius.empty()) throw Error("no relevancy maps given");

    PruneResult result;
    std::vector<bool> keep(areas.areas.size(), true);
    for (std::size_t i = 0; i < areas.areas.size(); ++i) {
        const int label = areas.areas[i].label;
        bool any_positive = false;
        for (const auto& [r, c] : areas.pixels_of(i)) {
            for (const MapSet& maps : maps_per_radius) {
                if (maps.maps[static_cast<std::size_t>(label)].at(r, c) > 0.0f) {
                    any_positive = true;
                    break;
                }
            }
            if (any_positive) break;
        }
        keep[i] = any_positive;
    }

    // A cluster must not lose its last area.
    std::vector<int> remaining(static_cast<std::size_t>(areas.n_clusters()), 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) ++remaining[static_cast<std::size_t>(areas.areas[i].label)];
    }
    for (std::size_t c = 0; c < remaining.size(); ++c) {
        if (remaining[c] == 0) {
            throw Error("pruning would remove every area of cluster " + std::to_string(c + 1));
        }
    }

    result.areas.width = areas.width;
    result.areas.height = areas.height;
    std::vector<std::int32_t> remap(areas.areas.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) {
            remap[i] = static_cast<std::int32_t>(result.areas.areas.size());
            result.areas.areas.push_back(areas.areas[i]);
            result.kept.push_back(i);
        } else {
            result.removed_ids.push_back(areas.areas[i].id);
        }
    }
    result.areas.pixel_area.resize(areas.pixel_area.size());
    for (std::size_t p = 0; p < areas.pixel_area.size(); ++p) {
        const std::int32_t a = areas.pixel_area[p];
        result.areas.pixel_area[p] = a < 0 ? -1 : remap[static_cast<std::size_t>(a)];
    }
    return result;
}

}  // namespace natnet
