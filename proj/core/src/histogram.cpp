#include "natnet/histogram.hpp"

#include <cmath>
#include <cstdlib>

#include "natnet/errors.hpp"
#include "natnet/graph.hpp"

namespace natnet {

void HistogramConfig::validate() const {
    if (!(h > 0.0)) throw Error("histogram spacing must be positive");
    if (inner_radius < 0 || inner_radius >= outer_radius) {
        throw Error("histogram radii must satisfy 0 <= H1 < H2");
    }
}

CellHistogram build_histogram(const Eigen::MatrixXd& positions, double h) {
    if (!(h > 0.0)) throw Error("histogram spacing must be positive");
    if (!positions.allFinite()) throw Error("histogram input has non-finite positions");

    CellHistogram cells;
    const Eigen::Index k = positions.cols();
    CellIndex idx(static_cast<std::size_t>(k));
    for (Eigen::Index v = 0; v < positions.rows(); ++v) {
        for (Eigen::Index i = 0; i < k; ++i) {
            idx[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(std::floor(positions(v, i) / h));
        }
        ++cells[idx];
    }
    return cells;
}

namespace {

std::int64_t chebyshev_distance(const CellIndex& a, const CellIndex& b) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t diff = a[i] >= b[i] ? a[i] - b[i] : b[i] - a[i];
        d = std::max(d, diff);
    }
    return d;
}

}  // namespace

int clusters_formed(const Eigen::MatrixXd& positions, const std::vector<int>& labels,
                    int n_clusters, const HistogramConfig& config) {
    config.validate();
    const int s_min = smallest_cluster_size(labels, n_clusters);
    const CellHistogram cells = build_histogram(positions, config.h);

    int formed = 0;
    for (const auto& [cell, count] : cells) {
        if (count < s_min) continue;  // not marked
        bool ring_empty = true;
        for (const auto& [other, other_count] : cells) {
            if (other_count == 0) continue;
            const std::int64_t d = chebyshev_distance(cell, other);
            if (d > config.inner_radius && d <= config.outer_radius) {
                ring_empty = false;
                break;
            }
        }
        if (ring_empty) ++formed;
    }
    return formed;
}

bool should_stop(const Eigen::MatrixXd& positions, const std::vector<int>& labels,
                 int n_clusters, const HistogramConfig& config) {
    return clusters_formed(positions, labels, n_clusters, config) >= n_clusters;
}

}  // namespace natnet
