#include "natnet/relevancy_map.hpp"

#include <atomic>
#include <limits>

#include "natnet/errors.hpp"
#include "natnet/parallel.hpp"

namespace natnet {

std::size_t PixelMask::count() const {
    std::size_t n = 0;
    for (auto v : inside) {
        if (v) ++n;
    }
    return n;
}

PixelMask erode(const PixelMask& mask, int radius) {
    if (radius < 0) throw Error("erosion radius must be nonnegative");
    if (radius == 0) return mask;
    PixelMask out;
    out.width = mask.width;
    out.height = mask.height;
    out.inside.assign(mask.inside.size(), 0);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.contains(r, c)) continue;
            bool keep = true;
            for (int dr = -radius; dr <= radius && keep; ++dr) {
                for (int dc = -radius; dc <= radius; ++dc) {
                    if (!mask.contains(r + dr, c + dc)) {
                        keep = false;
                        break;
                    }
                }
            }
            if (keep) {
                out.inside[static_cast<std::size_t>(r) * static_cast<std::size_t>(out.width) +
                           static_cast<std::size_t>(c)] = 1;
            }
        }
    }
    return out;
}

BaseTrajectory compute_base_trajectory(const LabeledDataset& dataset,
                                       const DiffusionParams& params,
                                       const HistogramConfig& hist, const SorOptions& sor) {
    NetworkState state = build_network(dataset);
    BaseTrajectory base;
    base.labels = state.labels;
    base.n_clusters = state.n_clusters;
    base.positions.push_back(state.positions);
    while (true) {
        if (should_stop(state.positions, state.labels, state.n_clusters, hist)) {
            base.criterion_met = true;
            break;
        }
        if (state.step >= params.max_steps) break;
        state = step(state, params, sor);
        base.positions.push_back(state.positions);
    }
    return base;
}

ClassificationResult classify_frozen(const BaseTrajectory& base, const FeaturePoint& w,
                                     const DiffusionParams& params,
                                     const HistogramConfig& hist, double lambda) {
    if (base.positions.empty()) throw Error("base trajectory is empty");
    const Eigen::Index n = base.positions.front().rows();
    const Eigen::Index k = base.positions.front().cols();
    if (w.size() != k) throw Error("newcomer dimension mismatch");
    params.validate(k);

    // Semi-implicit update of the newcomer alone: coefficients from the
    // previous step, background positions already at the new step. After the
    // recorded trajectory ends the clusters have formed, so the newcomer
    // keeps relaxing against the static final frame until it settles or the
    // step budget runs out.
    FeaturePoint current = w;
    int steps_used = 0;
    auto advance = [&](const Eigen::MatrixXd& prev, const Eigen::MatrixXd& next) {
        double coeff_sum = 0.0;
        FeaturePoint weighted = FeaturePoint::Zero(k);
        for (Eigen::Index u = 0; u < n; ++u) {
            const double g = newcomer_coefficient(current, prev.row(u).transpose(), params);
            if (g == 0.0) continue;
            coeff_sum += g;
            weighted += g * next.row(u).transpose();
        }
        const FeaturePoint updated =
            (current + params.tau * weighted) / (1.0 + params.tau * coeff_sum);
        const double moved = (updated - current).norm();
        current = updated;
        ++steps_used;
        if (!current.allFinite()) {
            throw DivergenceError("frozen-base newcomer diverged at step " +
                                  std::to_string(steps_used));
        }
        return moved;
    };

    for (std::size_t n_step = 1;
         n_step < base.positions.size() && steps_used < params.max_steps; ++n_step) {
        advance(base.positions[n_step - 1], base.positions[n_step]);
    }
    const double settle_tol = 0.1 * hist.h;
    const Eigen::MatrixXd& final_frame = base.positions.back();
    while (steps_used < params.max_steps) {
        if (advance(final_frame, final_frame) < settle_tol) break;
    }

    ClassificationResult result;
    result.criterion_met = base.criterion_met;
    result.steps_used = steps_used;

    NetworkState final_state;
    final_state.positions.resize(n + 1, k);
    final_state.positions.topRows(n) = base.positions.back();
    final_state.positions.row(n) = current.transpose();
    final_state.labels = base.labels;
    final_state.labels.push_back(-1);
    final_state.newcomer = n;
    final_state.n_clusters = base.n_clusters;
    final_state.step = result.steps_used;
    result.final_state = final_state;
    result.centroids = centroids(final_state);

    const Assignment assignment = assign_cluster(final_state, hist);
    result.tie = assignment.tie;
    if (assignment.cluster) {
        result.assigned = assignment.cluster;
        const RelevancyValue rel = relevancy(w, result.centroids, *assignment.cluster, lambda);
        result.relevancy = rel.value;
        result.degenerate = rel.degenerate;
    }
    return result;
}

namespace {

MapSet compute_maps_impl(const Raster& raster, const TrainedModel& model, int radius,
                         const PixelMask* mask, const MapOptions& opts) {
    model.validate();
    if (radius < 0) throw Error("window radius must be nonnegative");
    if (mask && (mask->width != raster.width || mask->height != raster.height)) {
        throw Error("mask dimensions do not match the raster");
    }

    MapSet out;
    out.maps.reserve(static_cast<std::size_t>(model.dataset.n_clusters));
    const std::size_t plane =
        static_cast<std::size_t>(raster.width) * static_cast<std::size_t>(raster.height);
    for (int c = 0; c < model.dataset.n_clusters; ++c) {
        RelevancyMap map;
        map.width = raster.width;
        map.height = raster.height;
        map.cluster = c;
        map.radius = radius;
        map.values.assign(plane, 0.0f);
        out.maps.push_back(std::move(map));
    }

    // Work list: all pixels, or just the mask's.
    std::vector<std::size_t> pixels;
    if (mask) {
        for (std::size_t p = 0; p < plane; ++p) {
            if (mask->inside[p]) pixels.push_back(p);
        }
    } else {
        pixels.resize(plane);
        for (std::size_t p = 0; p < plane; ++p) pixels[p] = p;
    }

    BaseTrajectory base;
    if (opts.frozen_base) {
        base = compute_base_trajectory(model.dataset, model.params, model.hist);
    }

    std::atomic<long> failures{0};
    parallel_for(pixels.size(), opts.threads, [&](std::size_t i) {
        const std::size_t p = pixels[i];
        const int row = static_cast<int>(p / static_cast<std::size_t>(raster.width));
        const int col = static_cast<int>(p % static_cast<std::size_t>(raster.width));
        const SquareSpec spec{row, col, radius};
        try {
            const FeaturePoint raw = square_features(raster, spec, model.channels);
            const FeaturePoint reduced = transform(model.pca, raw);
            const ClassificationResult result =
                opts.frozen_base
                    ? classify_frozen(base, reduced, model.params, model.hist, model.lambda)
                    : classify(model.dataset, reduced, model.params, model.hist, model.lambda);
            if (result.assigned) {
                out.maps[static_cast<std::size_t>(*result.assigned)].values[p] =
                    static_cast<float>(result.relevancy);
            }
        } catch (const DivergenceError&) {
            failures.fetch_add(1);
        } catch (const SolverError&) {
            failures.fetch_add(1);
        }
    });
    out.failed_pixels = failures.load();
    return out;
}

}  // namespace

MapSet compute_maps(const Raster& raster, const TrainedModel& model, int radius,
                    const MapOptions& opts) {
    return compute_maps_impl(raster, model, radius, nullptr, opts);
}

MapSet compute_maps_masked(const Raster& raster, const TrainedModel& model, int radius,
                           const PixelMask& mask, const MapOptions& opts) {
    return compute_maps_impl(raster, model, radius, &mask, opts);
}

RelevancyMap final_map(const std::vector<RelevancyMap>& per_radius) {
    if (per_radius.empty()) throw Error("final map needs at least one input map");
    RelevancyMap out = per_radius.front();
    out.radius = -1;
    for (std::size_t i = 1; i < per_radius.size(); ++i) {
        const RelevancyMap& m = per_radius[i];
        if (m.width != out.width || m.height != out.height) {
            throw Error("final map inputs have mismatched dimensions");
        }
        if (m.cluster != out.cluster) throw Error("final map inputs mix clusters");
        for (std::size_t p = 0; p < out.values.size(); ++p) {
            out.values[p] = std::max(out.values[p], m.values[p]);
        }
    }
    return out;
}

double mean_relevancy(const RelevancyMap& map, const PixelMask& mask, int shrink) {
    if (mask.width != map.width || mask.height != map.height) {
        throw Error("mask dimensions do not match the map");
    }
    const PixelMask eroded = erode(mask, shrink);
    double sum = 0.0;
    std::size_t n = 0;
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            if (!eroded.contains(r, c)) continue;
            sum += map.at(r, c);
            ++n;
        }
    }
    if (n == 0) throw Error("mask is empty after erosion");
    return sum / static_cast<double>(n);
}

}  // namespace natnet
