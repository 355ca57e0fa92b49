#pragma once

#include <Eigen/Dense>
#include <vector>

#include "natnet/diffusion.hpp"
#include "natnet/graph.hpp"
#include "natnet/model.hpp"
#include "natnet/pca.hpp"
#include "natnet/rng.hpp"
#include "natnet/synth.hpp"
#include "natnet/training.hpp"

namespace testutil {

// The canonical well-separated 4-cluster instance used across suites:
// 125 points (32+31+31+31) around the four corner centers.
inline natnet::LabeledDataset corner_blobs_125(std::uint64_t seed = 42,
                                               double spread = 0.05) {
    return natnet::synth_clusters(seed, 4, 125, natnet::default_centers(4), spread);
}

inline natnet::DiffusionParams default_params_2d() {
    natnet::DiffusionParams params;
    params.weights = Eigen::Vector2d::Zero();
    return params;
}

// Dense direct solve of the assembled step system, the oracle for SOR.
inline Eigen::VectorXd dense_solve(const natnet::StepSystem& system,
                                   Eigen::Index coordinate) {
    Eigen::MatrixXd a = -system.coeffs;
    a.diagonal() = system.diag;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(system.rhs.col(coordinate));
}

// Random forward-diffusion state: unit-square points, random labels.
inline natnet::NetworkState random_state(natnet::Rng& rng, int n_points, int n_clusters,
                                         int dim = 2) {
    natnet::LabeledDataset dataset;
    dataset.n_clusters = n_clusters;
    dataset.points.resize(n_points, dim);
    for (int i = 0; i < n_points; ++i) {
        for (int j = 0; j < dim; ++j) dataset.points(i, j) = rng.uniform01();
        dataset.labels.push_back(i < n_clusters
                                     ? i  // every cluster gets a member
                                     : static_cast<int>(rng.below(
                                           static_cast<std::uint64_t>(n_clusters))));
        dataset.ids.push_back("v" + std::to_string(i));
    }
    return natnet::build_network(dataset);
}

// Fits the reduction and wires up a model over a synthetic textured raster's
// training areas. Parameters come from a small leave-one-out grid search,
// mirroring the real training flow.
inline natnet::TrainedModel texture_model(const natnet::SyntheticRaster& synth) {
    natnet::TrainedModel model;
    model.channels.channels = synth.raster.band_names;
    const natnet::LabeledDataset raw =
        natnet::build_area_dataset(synth.raster, synth.areas, model.channels);
    model.pca = natnet::pca_fit(raw.points, 2);
    model.dataset = raw;
    model.dataset.points = natnet::transform_all(model.pca, raw.points);

    natnet::TuningGrid grid;
    grid.k1 = {100.0, 4100.0, 2000.0};
    grid.k2 = {100.0, 4100.0, 2000.0};
    grid.delta = {0.004, 0.084, 0.04};
    const natnet::GridSearchResult best =
        natnet::grid_search(model.dataset, grid, model.hist, model.params);
    model.params = best.params;
    return model;
}

}  // namespace testutil
