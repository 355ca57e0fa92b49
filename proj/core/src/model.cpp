#include "natnet/model.hpp"

#include "natnet/errors.hpp"

namespace natnet {

void TrainedModel::validate() const {
    pca.validate();
    dataset.validate();
    if (dataset.dim() != pca.output_dim()) {
        throw Error("model dataset dimension does not match pca output");
    }
    params.validate(dataset.dim());
    hist.validate();
    if (dataset.n_clusters < 2) throw Error("model needs at least two clusters");
    if (!(lambda > 0.0)) throw Error("lambda must be positive");
}

ClassificationResult classify_features(const TrainedModel& model, const Eigen::VectorXd& raw,
                                       const SorOptions& sor) {
    const FeaturePoint reduced = transform(model.pca, raw);
    return classify(model.dataset, reduced, model.params, model.hist, model.lambda, sor);
}

}  // namespace natnet
