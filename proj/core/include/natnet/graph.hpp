#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace natnet {

// A point in the k-dimensional feature space.
using FeaturePoint = Eigen::VectorXd;

// Labeled observations. Labels are 0-based internally; the IO layer converts
// from the 1-based external convention. Every label in {0..n_clusters-1}
// occurs at least once in a valid dataset.
struct LabeledDataset {
    Eigen::MatrixXd points;           // N_V x k, one row per observation
    std::vector<int> labels;          // size N_V
    std::vector<std::string> ids;     // size N_V
    int n_clusters = 0;

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }

    // Throws Error if sizes disagree, labels fall outside range, a cluster
    // is empty or any coordinate is non-finite.
    void validate() const;
};

// The evolving network: current vertex positions plus the static cluster
// structure. A value type; copies evolve independently.
struct NetworkState {
    Eigen::MatrixXd positions;            // N_V x k at the current step
    std::vector<int> labels;              // -1 marks the unlabeled newcomer
    std::optional<Eigen::Index> newcomer; // index of the newcomer vertex, if any
    int n_clusters = 0;
    int step = 0;

    Eigen::Index size() const { return positions.rows(); }
    Eigen::Index dim() const { return positions.cols(); }
};

// Model parameters of the network dynamics. The coordinate weights scale the
// squared edge-length per feature axis; delta is the diffusion-neighborhood
// cutoff applied to newcomer edges.
struct DiffusionParams {
    Eigen::VectorXd weights;      // k entries, each >= 0
    double delta = 0.004;
    double eps_forward = 1.0;     // > 0, same-cluster edges
    double eps_backward = -0.001; // < 0, cross-cluster edges
    double tau = 1.0;             // time step
    int max_steps = 200;

    void validate(Eigen::Index dim) const;
};

// Copies the dataset (newcomer appended last, label -1) into a step-0 state.
NetworkState build_network(const LabeledDataset& dataset,
                           const std::optional<FeaturePoint>& newcomer = std::nullopt);

// Number of members per cluster; ignores the -1 newcomer label.
std::vector<int> cluster_sizes(const std::vector<int>& labels, int n_clusters);

// Size of the smallest labeled cluster.
int smallest_cluster_size(const std::vector<int>& labels, int n_clusters);

}  // namespace natnet
