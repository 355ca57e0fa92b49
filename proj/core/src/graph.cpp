#include "natnet/graph.hpp"

#include <cmath>
#include <limits>

#include "natnet/errors.hpp"

namespace natnet {

void LabeledDataset::validate() const {
    const auto n = points.rows();
    if (n == 0) throw Error("dataset is empty");
    if (static_cast<Eigen::Index>(labels.size()) != n ||
        static_cast<Eigen::Index>(ids.size()) != n) {
        throw Error("dataset points, labels and ids must have equal length");
    }
    if (n_clusters < 1) throw Error("dataset needs at least one cluster");
    if (!points.allFinite()) throw Error("dataset contains non-finite coordinates");
    std::vector<bool> seen(static_cast<std::size_t>(n_clusters), false);
    for (int l : labels) {
        if (l < 0 || l >= n_clusters) throw Error("cluster label out of range");
        seen[static_cast<std::size_t>(l)] = true;
    }
    for (std::size_t c = 0; c < seen.size(); ++c) {
        if (!seen[c]) throw Error("cluster " + std::to_string(c + 1) + " has no members");
    }
}

void DiffusionParams::validate(Eigen::Index dim) const {
    if (weights.size() != dim) throw Error("weight vector dimension mismatch");
    if ((weights.array() < 0.0).any()) throw Error("coordinate weights must be >= 0");
    if (!(delta > 0.0)) throw Error("delta must be positive");
    if (!(eps_forward > 0.0)) throw Error("eps_forward must be positive");
    if (!(eps_backward < 0.0)) throw Error("eps_backward must be negative");
    if (!(tau > 0.0)) throw Error("tau must be positive");
    if (max_steps < 0) throw Error("max_steps must be nonnegative");
}

NetworkState build_network(const LabeledDataset& dataset,
                           const std::optional<FeaturePoint>& newcomer) {
    dataset.validate();
    const Eigen::Index n = dataset.size();
    const Eigen::Index k = dataset.dim();

    NetworkState state;
    state.n_clusters = dataset.n_clusters;
    state.step = 0;
    if (newcomer) {
        if (newcomer->size() != k) {
            throw Error("newcomer dimension " + std::to_string(newcomer->size()) +
                        " does not match dataset dimension " + std::to_string(k));
        }
        if (!newcomer->allFinite()) throw Error("newcomer has non-finite coordinates");
        state.positions.resize(n + 1, k);
        state.positions.topRows(n) = dataset.points;
        state.positions.row(n) = newcomer->transpose();
        state.labels = dataset.labels;
        state.labels.push_back(-1);
        state.newcomer = n;
    } else {
        state.positions = dataset.points;
        state.labels = dataset.labels;
    }
    return state;
}

std::vector<int> cluster_sizes(const std::vector<int>& labels, int n_clusters) {
    std::vector<int> sizes(static_cast<std::size_t>(n_clusters), 0);
    for (int l : labels) {
        if (l >= 0 && l < n_clusters) ++sizes[static_cast<std::size_t>(l)];
    }
    return sizes;
}

int smallest_cluster_size(const std::vector<int>& labels, int n_clusters) {
    const auto sizes = cluster_sizes(labels, n_clusters);
    int min_size = std::numeric_limits<int>::max();
    for (int s : sizes) min_size = std::min(min_size, s);
    return min_size;
}

}  // namespace natnet
