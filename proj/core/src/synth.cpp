#include "natnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "natnet/errors.hpp"
#include "natnet/rng.hpp"

namespace natnet {

std::vector<Eigen::Vector2d> default_centers(int n_clusters) {
    if (n_clusters < 1) throw Error("need at least one cluster center");
    if (n_clusters == 4) {
        return {{0.2, 0.2}, {0.8, 0.2}, {0.2, 0.8}, {0.8, 0.8}};
    }
    std::vector<Eigen::Vector2d> centers;
    centers.reserve(static_cast<std::size_t>(n_clusters));
    for (int i = 0; i < n_clusters; ++i) {
        const double angle = 2.0 * M_PI * i / n_clusters;
        centers.emplace_back(0.5 + 0.35 * std::cos(angle), 0.5 + 0.35 * std::sin(angle));
    }
    return centers;
}

LabeledDataset synth_clusters(std::uint64_t seed, int n_clusters, int n_points,
                              const std::vector<Eigen::Vector2d>& centers, double spread) {
    if (n_clusters < 1) throw Error("need at least one cluster");
    if (n_points < n_clusters) throw Error("need at least one point per cluster");
    if (static_cast<int>(centers.size()) != n_clusters) {
        throw Error("center count does not match cluster count");
    }
    if (!(spread >= 0.0)) throw Error("spread must be nonnegative");
    for (const auto& c : centers) {
        if (c.x() < 0.0 || c.x() > 1.0 || c.y() < 0.0 || c.y() > 1.0) {
            throw Error("cluster centers must lie in the unit square");
        }
    }

    Rng rng(seed);
    LabeledDataset dataset;
    dataset.n_clusters = n_clusters;
    dataset.points.resize(n_points, 2);

    const int base_count = n_points / n_clusters;
    const int remainder = n_points % n_clusters;
    Eigen::Index row = 0;
    for (int c = 0; c < n_clusters; ++c) {
        const int count = base_count + (c < remainder ? 1 : 0);
        for (int i = 0; i < count; ++i) {
            const double x = std::clamp(centers[static_cast<std::size_t>(c)].x() +
                                            spread * rng.gauss(), 0.0, 1.0);
            const double y = std::clamp(centers[static_cast<std::size_t>(c)].y() +
                                            spread * rng.gauss(), 0.0, 1.0);
            dataset.points.row(row++) = Eigen::RowVector2d(x, y);
            dataset.labels.push_back(c);
            dataset.ids.push_back("c" + std::to_string(c + 1) + "_" + std::to_string(i));
        }
    }
    dataset.validate();
    return dataset;
}

LabeledDataset embed_dataset(const LabeledDataset& base, int target_dim, double noise,
                             std::uint64_t seed) {
    base.validate();
    const Eigen::Index k = base.dim();
    if (target_dim < k) throw Error("embedding target dimension is smaller than the source");

    Rng rng(seed);
    // Seeded directions, orthonormalized by Gram-Schmidt.
    Eigen::MatrixXd directions(k, target_dim);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (int j = 0; j < target_dim; ++j) directions(i, j) = rng.gauss();
        for (Eigen::Index prev = 0; prev < i; ++prev) {
            directions.row(i) -=
                directions.row(i).dot(directions.row(prev)) * directions.row(prev);
        }
        directions.row(i).normalize();
    }
    Eigen::RowVectorXd offset(target_dim);
    for (int j = 0; j < target_dim; ++j) offset(j) = rng.uniform(-1.0, 1.0);

    LabeledDataset out;
    out.labels = base.labels;
    out.ids = base.ids;
    out.n_clusters = base.n_clusters;
    out.points.resize(base.size(), target_dim);
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        out.points.row(i) = base.points.row(i) * directions + offset;
        for (int j = 0; j < target_dim; ++j) out.points(i, j) += noise * rng.gauss();
    }
    return out;
}

SyntheticRaster synth_raster(std::uint64_t seed, int width, int height, int n_bands,
                             int n_textures, int areas_per_texture, double noise) {
    if (width <= 0 || height <= 0) throw Error("raster dimensions must be positive");
    if (n_bands < 1) throw Error("need at least one band");
    if (n_textures < 2) throw Error("need at least two textures");
    if (areas_per_texture < 1) throw Error("need at least one area per texture");
    if (width / n_textures < 12) throw Error("texture stripes too narrow for training areas");

    Rng rng(seed);
    SyntheticRaster out;

    std::vector<std::string> band_names;
    for (int b = 0; b < n_bands; ++b) band_names.push_back("b" + std::to_string(b + 1));
    out.raster = make_raster(width, height, band_names);

    // Per-texture band means, drawn far enough apart to separate in feature
    // space yet inside the reflectance-like [0.05, 0.95] range.
    Eigen::MatrixXd means(n_textures, n_bands);
    for (int t = 0; t < n_textures; ++t) {
        for (int b = 0; b < n_bands; ++b) means(t, b) = rng.uniform(0.1, 0.9);
    }

    out.texture.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    const int stripe = width / n_textures;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const int t = std::min(c / stripe, n_textures - 1);
            out.texture[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                        static_cast<std::size_t>(c)] = t;
            for (int b = 0; b < n_bands; ++b) {
                out.raster.at(b, r, c) =
                    static_cast<float>(means(t, b) + noise * rng.gauss());
            }
        }
    }

    // Square training blocks stacked vertically inside each stripe.
    const int block = std::min({stripe - 4, height / areas_per_texture - 2, 14});
    if (block < 7) throw Error("raster too small for the requested area count");
    out.areas.width = width;
    out.areas.height = height;
    out.areas.pixel_area.assign(out.texture.size(), -1);
    const int v_gap = (height - areas_per_texture * block) / (areas_per_texture + 1);
    if (v_gap < 0) throw Error("raster too small for the requested area count");
    for (int t = 0; t < n_textures; ++t) {
        const int col0 = t * stripe + (stripe - block) / 2;
        for (int a = 0; a < areas_per_texture; ++a) {
            const int row0 = v_gap + a * (block + v_gap);
            const auto index = static_cast<std::int32_t>(out.areas.areas.size());
            AreaSpec spec;
            spec.id = "t" + std::to_string(t + 1) + "_a" + std::to_string(a + 1);
            spec.label = t;
            out.areas.areas.push_back(spec);
            for (int r = row0; r < row0 + block; ++r) {
                for (int c = col0; c < col0 + block; ++c) {
                    out.areas.pixel_area[static_cast<std::size_t>(r) *
                                             static_cast<std::size_t>(width) +
                                         static_cast<std::size_t>(c)] = index;
                }
            }
        }
    }
    assign_random_squares(out.areas, rng, {5, 4, 3});
    out.areas.validate();
    return out;
}

}  // namespace natnet
