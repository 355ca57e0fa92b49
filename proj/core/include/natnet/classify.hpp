#pragma once

#include <Eigen/Core>
#include <optional>

#include "natnet/diffusion.hpp"
#include "natnet/graph.hpp"
#include "natnet/histogram.hpp"

namespace natnet {

constexpr double kDefaultLambda = 12.0;

struct DynamicsResult {
    NetworkState state;
    bool criterion_met = false;
};

struct Assignment {
    std::optional<int> cluster;  // empty means outlier
    double distance = 0.0;       // to the nearest labeled point
    bool tie = false;            // equal-distance tie broken by lower index
};

struct RelevancyValue {
    double value = 0.0;
    bool degenerate = false;  // all centroids coincided with the query point
};

struct ClassificationResult {
    std::optional<int> assigned;      // empty means outlier; relevancy is then 0
    double relevancy = 0.0;
    int steps_used = 0;
    bool criterion_met = false;
    bool tie = false;
    bool degenerate = false;
    NetworkState final_state;
    Eigen::MatrixXd centroids;        // N_C x k at the final step
};

// Applies time steps until the histogram criterion fires or max_steps is
// reached. The criterion is checked before the first step, so an
// already-collapsed state returns immediately with zero steps used.
DynamicsResult run_dynamics(const NetworkState& state, const DiffusionParams& params,
                            const HistogramConfig& hist, const SorOptions& sor = {});

// Nearest labeled point decides the cluster; distances of 10h or more make
// the newcomer an outlier.
Assignment assign_cluster(const NetworkState& final_state, const HistogramConfig& hist);

// Arithmetic mean of the final positions per cluster, one row per cluster.
Eigen::MatrixXd centroids(const NetworkState& final_state);

// Relevancy of assigning initial position w0 to cluster `assigned`, given the
// final cluster centroids: logistic rescaling of 1 - l1/(l1+l2).
RelevancyValue relevancy(const FeaturePoint& w0, const Eigen::MatrixXd& cents,
                         int assigned, double lambda = kDefaultLambda);

// Full pipeline for one new observation: attach, evolve, assign, score.
ClassificationResult classify(const LabeledDataset& dataset, const FeaturePoint& w,
                              const DiffusionParams& params, const HistogramConfig& hist,
                              double lambda = kDefaultLambda, const SorOptions& sor = {});

}  // namespace natnet
