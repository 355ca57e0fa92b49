#pragma once

#include "natnet/classify.hpp"
#include "natnet/features.hpp"
#include "natnet/graph.hpp"
#include "natnet/histogram.hpp"
#include "natnet/pca.hpp"

namespace natnet {

// Everything needed to classify a new observation: channel selection, the
// fitted reduction, tuned dynamics parameters and the labeled training points
// in reduced coordinates. Self-contained; persisted by the IO layer.
struct TrainedModel {
    ChannelConfig channels;
    PcaModel pca;
    DiffusionParams params;
    HistogramConfig hist;
    double lambda = kDefaultLambda;
    LabeledDataset dataset;  // reduced k-dim coordinates

    void validate() const;
};

// Reduces a raw feature vector through the model's PCA and classifies it
// against the training network.
ClassificationResult classify_features(const TrainedModel& model, const Eigen::VectorXd& raw,
                                       const SorOptions& sor = {});

}  // namespace natnet
