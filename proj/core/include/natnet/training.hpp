#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natnet/areas.hpp"
#include "natnet/classify.hpp"
#include "natnet/model.hpp"
#include "natnet/relevancy_map.hpp"

namespace natnet {

// Inclusive [start, stop] swept with the given step.
struct ParamRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
};

// Brute-force search space over the two coordinate weights and the newcomer
// cutoff.
struct TuningGrid {
    ParamRange k1{100.0, 5000.0, 100.0};
    ParamRange k2{100.0, 5000.0, 100.0};
    ParamRange delta{0.001, 0.1, 0.001};

    // Lexicographic (k1, k2, delta) enumeration; also the tie-break order.
    std::vector<std::array<double, 3>> enumerate() const;
};

struct LooRecord {
    std::string id;
    int true_label = 0;               // 0-based
    std::optional<int> assigned;      // empty = outlier
    double relevancy = 0.0;
    bool failed = false;              // dynamics error, counted as outlier
};

struct LooReport {
    int correct = 0;
    int incorrect = 0;
    int outliers = 0;
    double success_rate = 0.0;
    std::vector<LooRecord> per_point;
};

// Classifies every point as a newcomer against the remaining N_V - 1. The
// smallest-cluster size of the stopping criterion is recomputed per held-out
// point. Requires every cluster to keep at least one member after removal.
LooReport loo_evaluate(const LabeledDataset& dataset, const DiffusionParams& params,
                       const HistogramConfig& hist, double lambda = kDefaultLambda,
                       int threads = 0, const SorOptions& sor = {});

struct GridSearchResult {
    DiffusionParams params;
    LooReport report;
};

// Resumability hooks: previously evaluated tuples are skipped (their correct
// counts trusted), and every newly evaluated tuple is reported.
struct GridProgress {
    std::map<std::array<double, 3>, int> precomputed;  // tuple -> correct count
    std::function<void(double k1, double k2, double delta, const LooReport&)> on_result;
};

// Exhaustive sweep maximizing the correct count; ties resolved toward the
// lexicographically smallest tuple. Tuples run in parallel, the reduction
// order is fixed by the enumeration.
GridSearchResult grid_search(const LabeledDataset& dataset, const TuningGrid& grid,
                             const HistogramConfig& hist, const DiffusionParams& base,
                             double lambda = kDefaultLambda, int threads = 0,
                             GridProgress* progress = nullptr, const SorOptions& sor = {});

// Feature extraction over every area's representative square; labels and ids
// come from the areas. Points are raw (unreduced) feature vectors.
LabeledDataset build_area_dataset(const Raster& raster, const AreaSet& areas,
                                  const ChannelConfig& channels);

struct AdjustResult {
    AreaSet areas;                        // squares recentered where improved
    LabeledDataset raw_dataset;           // rebuilt from the updated squares
    std::vector<std::uint8_t> adjusted;   // per area
    std::vector<std::string> zero_relevancy_ids;  // own-map all zero, untouched
};

// Moves each area's square to the (pixel, radius) of highest own-cluster
// relevancy when that beats the current center's value. Maps are computed
// with the given model over the areas' pixels.
AdjustResult adjust_squares(const Raster& raster, const AreaSet& areas,
                            const TrainedModel& model, const std::vector<int>& radii,
                            const MapOptions& opts = {});

struct PruneResult {
    AreaSet areas;
    std::vector<std::size_t> kept;        // indices into the input area list
    std::vector<std::string> removed_ids;
};

// Removes areas whose own-cluster relevancy is identically zero at every
// area pixel for every supplied radius. Throws if a cluster would lose its
// last area.
PruneResult prune_unclassifiable(const AreaSet& areas,
                                 const std::vector<MapSet>& maps_per_radius);

}  // namespace natnet
