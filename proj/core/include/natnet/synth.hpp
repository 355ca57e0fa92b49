#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "natnet/areas.hpp"
#include "natnet/graph.hpp"
#include "natnet/raster.hpp"

namespace natnet {

// Evenly spread cluster centers inside the unit square (circle layout for
// arbitrary counts, corner layout for the common four-cluster case).
std::vector<Eigen::Vector2d> default_centers(int n_clusters);

// Seeded 2-D Gaussian blobs clipped to [0,1]^2. Points are split as evenly
// as possible across clusters, earlier clusters taking the remainder.
LabeledDataset synth_clusters(std::uint64_t seed, int n_clusters, int n_points,
                              const std::vector<Eigen::Vector2d>& centers, double spread);

// Embeds a 2-D dataset into target_dim dimensions through a seeded linear map
// with orthonormal rows, plus isotropic Gaussian noise. Plants an (almost)
// two-dimensional latent structure for dimensionality-reduction pipelines.
LabeledDataset embed_dataset(const LabeledDataset& base, int target_dim, double noise,
                             std::uint64_t seed);

struct SyntheticRaster {
    Raster raster;
    AreaSet areas;
    std::vector<int> texture;  // per pixel, 0-based texture id
};

// A raster of vertical texture stripes: every texture gets its own seeded
// per-band mean, pixels add Gaussian noise. Training areas are square blocks
// stacked inside each stripe, each holding one representative square.
SyntheticRaster synth_raster(std::uint64_t seed, int width, int height, int n_bands,
                             int n_textures, int areas_per_texture, double noise);

}  // namespace natnet
