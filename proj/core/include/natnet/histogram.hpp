#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <vector>

namespace natnet {

// Grid settings of the histogram stopping criterion. The smallest labeled
// cluster size S_min is computed from the labels at evaluation time, not
// configured here.
struct HistogramConfig {
    double h = 0.01;       // cell spacing
    int inner_radius = 1;  // Chebyshev radius H1: own blob, not examined
    int outer_radius = 8;  // Chebyshev radius H2: ring (H1, H2] must be empty

    void validate() const;
};

// Cell index per coordinate: floor(x_i / h). Ordered map keeps iteration
// deterministic.
using CellIndex = std::vector<std::int64_t>;
using CellHistogram = std::map<CellIndex, int>;

// Occurrence counts of points in grid cells of spacing h.
CellHistogram build_histogram(const Eigen::MatrixXd& positions, double h);

// Number of formed clusters: cells whose count reaches the smallest labeled
// cluster size and whose surrounding ring of cells at Chebyshev distance in
// (H1, H2] is empty. The newcomer (label -1) contributes to cell counts but
// not to S_min.
int clusters_formed(const Eigen::MatrixXd& positions, const std::vector<int>& labels,
                    int n_clusters, const HistogramConfig& config);

// True once at least n_clusters clusters have formed.
bool should_stop(const Eigen::MatrixXd& positions, const std::vector<int>& labels,
                 int n_clusters, const HistogramConfig& config);

}  // namespace natnet
