#include "natnet/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "natnet/errors.hpp"

namespace natnet {

void PcaModel::validate() const {
    const Eigen::Index k = basis.rows();
    const Eigen::Index d = basis.cols();
    if (mean.size() != d) throw Error("pca mean dimension mismatch");
    if (explained_variance.size() != k || scale_min.size() != k || scale_max.size() != k) {
        throw Error("pca component count mismatch");
    }
    const Eigen::MatrixXd gram = basis * basis.transpose();
    if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10) {
        throw Error("pca basis rows are not orthonormal");
    }
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
        if (explained_variance(i) < explained_variance(i + 1)) {
            throw Error("pca explained variance is not sorted");
        }
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        if (explained_variance(i) < 0) throw Error("pca explained variance is negative");
        if (!(scale_min(i) < scale_max(i))) throw Error("pca scaling axis is degenerate");
    }
}

PcaModel pca_fit(const Eigen::MatrixXd& data, int k) {
    const Eigen::Index n = data.rows();
    const Eigen::Index d = data.cols();
    if (n < 2) throw Error("pca needs at least two samples");
    if (k < 1 || k > std::min<Eigen::Index>(n - 1, d)) {
        throw Error("pca component count must lie in [1, min(N-1, D)]");
    }
    if (!data.allFinite()) throw Error("pca input has non-finite values");

    PcaModel model;
    model.mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd covariance =
        centered.transpose() * centered / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    if (solver.info() != Eigen::Success) throw Error("pca eigendecomposition failed");

    // Eigen sorts eigenvalues ascending; take the top k in descending order.
    model.basis.resize(k, d);
    model.explained_variance.resize(k);
    model.total_variance = std::max(solver.eigenvalues().sum(), 0.0);
    for (int i = 0; i < k; ++i) {
        const Eigen::Index src = d - 1 - i;
        Eigen::VectorXd direction = solver.eigenvectors().col(src);
        // Fix the arbitrary eigenvector sign: largest-magnitude entry positive.
        Eigen::Index arg_max = 0;
        direction.cwiseAbs().maxCoeff(&arg_max);
        if (direction(arg_max) < 0) direction = -direction;
        model.basis.row(i) = direction.transpose();
        model.explained_variance(i) = std::max(solver.eigenvalues()(src), 0.0);
    }

    // Bounds use the exact per-point expression transform evaluates, so the
    // attaining points scale to 0 and 1 without rounding slack.
    Eigen::MatrixXd projections(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        projections.row(i) =
            (model.basis * (data.row(i).transpose() - model.mean)).transpose();
    }
    model.scale_min = projections.colwise().minCoeff();
    model.scale_max = projections.colwise().maxCoeff();
    for (int i = 0; i < k; ++i) {
        if (!(model.scale_min(i) < model.scale_max(i))) {
            throw Error("pca axis " + std::to_string(i + 1) +
                        " is degenerate: all training projections coincide");
        }
    }
    return model;
}

FeaturePoint transform(const PcaModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.input_dim()) throw Error("transform input dimension mismatch");
    const Eigen::VectorXd projected = model.basis * (x - model.mean);
    return (projected - model.scale_min).array() /
           (model.scale_max - model.scale_min).array();
}

Eigen::MatrixXd transform_all(const PcaModel& model, const Eigen::MatrixXd& data) {
    Eigen::MatrixXd out(data.rows(), model.output_dim());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        out.row(i) = transform(model, data.row(i).transpose()).transpose();
    }
    return out;
}

Eigen::VectorXd inverse_transform(const PcaModel& model, const FeaturePoint& y) {
    if (y.size() != model.output_dim()) throw Error("inverse transform dimension mismatch");
    const Eigen::VectorXd projected =
        model.scale_min.array() + y.array() * (model.scale_max - model.scale_min).array();
    return model.mean + model.basis.transpose() * projected;
}

}  // namespace natnet
