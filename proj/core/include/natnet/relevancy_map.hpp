#pragma once

#include <cstdint>
#include <vector>

#include "natnet/model.hpp"
#include "natnet/raster.hpp"

namespace natnet {

// Per-pixel relevancy of one cluster at one window radius. radius -1 marks a
// combined (pixel-wise max over radii) map. Values live in [0, 1]; for a
// fixed radius at most one cluster map is nonzero at any pixel.
struct RelevancyMap {
    int width = 0;
    int height = 0;
    int cluster = 0;  // 0-based
    int radius = 0;   // window Chebyshev radius, -1 for the combined map
    std::vector<float> values;  // row-major

    float at(int row, int col) const {
        return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)];
    }
    float& at(int row, int col) {
        return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)];
    }
};

// Binary pixel set over a raster's grid.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> inside;  // row-major, nonzero = member

    bool contains(int row, int col) const {
        if (row < 0 || row >= height || col < 0 || col >= width) return false;
        return inside[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)] != 0;
    }
    std::size_t count() const;
};

// Morphological erosion by a square (Chebyshev) structuring element; pixels
// whose neighborhood leaves the image are eroded away. radius 0 is identity.
PixelMask erode(const PixelMask& mask, int radius);

// The labeled network evolved once without any newcomer, positions recorded
// at every step. Serves the frozen-base approximation, where per-pixel
// newcomers ride against this precomputed background instead of perturbing it.
struct BaseTrajectory {
    std::vector<Eigen::MatrixXd> positions;  // steps 0..T
    std::vector<int> labels;
    int n_clusters = 0;
    bool criterion_met = false;
};

BaseTrajectory compute_base_trajectory(const LabeledDataset& dataset,
                                       const DiffusionParams& params,
                                       const HistogramConfig& hist,
                                       const SorOptions& sor = {});

// Classifies one observation against the frozen base: the newcomer is
// advected through the recorded background with cutoff coefficients, the
// background itself does not react. Once the recorded steps are exhausted it
// keeps relaxing against the final frame until its per-step motion drops
// below h/10 or max_steps is reached. A documented approximation of
// classify().
ClassificationResult classify_frozen(const BaseTrajectory& base, const FeaturePoint& w,
                                     const DiffusionParams& params,
                                     const HistogramConfig& hist,
                                     double lambda = kDefaultLambda);

struct MapOptions {
    bool frozen_base = false;
    int threads = 0;  // 0 = hardware concurrency
};

struct MapSet {
    std::vector<RelevancyMap> maps;  // one per cluster, same radius
    long failed_pixels = 0;          // dynamics failures recorded as zeros
};

// Classifies the window of every pixel and writes its relevancy into the
// assigned cluster's map; outliers and failures contribute zero everywhere.
MapSet compute_maps(const Raster& raster, const TrainedModel& model, int radius,
                    const MapOptions& opts = {});

// Same classification restricted to the mask's pixels; everything else stays
// zero. Serves square adjustment and pruning, which only read area pixels.
MapSet compute_maps_masked(const Raster& raster, const TrainedModel& model, int radius,
                           const PixelMask& mask, const MapOptions& opts = {});

// Pixel-wise maximum over per-radius maps of one cluster.
RelevancyMap final_map(const std::vector<RelevancyMap>& per_radius);

// Mean map value over the mask eroded by `shrink`; throws when the eroded
// mask is empty.
double mean_relevancy(const RelevancyMap& map, const PixelMask& mask, int shrink = 3);

}  // namespace natnet
