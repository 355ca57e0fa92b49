#pragma once

#include <Eigen/Core>

#include "natnet/graph.hpp"

namespace natnet {

// PCA basis plus the min-max scaling that maps training projections into the
// unit hypercube. Immutable after fit; transform is pure.
struct PcaModel {
    Eigen::VectorXd mean;                // D
    Eigen::MatrixXd basis;               // k x D, orthonormal rows
    Eigen::VectorXd explained_variance;  // k, non-increasing
    double total_variance = 0.0;         // trace of the covariance
    Eigen::VectorXd scale_min;           // k, training projection minima
    Eigen::VectorXd scale_max;           // k, training projection maxima

    Eigen::Index input_dim() const { return mean.size(); }
    Eigen::Index output_dim() const { return basis.rows(); }

    void validate() const;
};

// Covariance eigendecomposition (1/(N-1) convention) keeping the top-k
// directions; each basis row is oriented so its largest-magnitude entry is
// positive. Scaling bounds come from the training projections. Throws on
// N < 2, k > min(N-1, D), or a degenerate (max == min) scaling axis.
PcaModel pca_fit(const Eigen::MatrixXd& data, int k);

// Project and scale one point: ((x - mean) . basis_i - min_i) / (max_i - min_i).
// Training points land in [0,1]^k; new points may fall outside.
FeaturePoint transform(const PcaModel& model, const Eigen::VectorXd& x);

// Row-wise transform of many points.
Eigen::MatrixXd transform_all(const PcaModel& model, const Eigen::MatrixXd& data);

// Undo scaling and projection. Lossless only when output_dim == input_dim.
Eigen::VectorXd inverse_transform(const PcaModel& model, const FeaturePoint& y);

}  // namespace natnet
