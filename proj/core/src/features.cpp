#include "natnet/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "natnet/errors.hpp"

namespace natnet {

double ndvi(double red, double nir) {
    const double denom = nir + red;
    if (denom == 0.0) return 0.0;
    return (nir - red) / denom;
}

namespace {

int reflect_index(int i, int n, const char* axis) {
    if (i < 0) i = -1 - i;
    else if (i >= n) i = 2 * n - 1 - i;
    if (i < 0 || i >= n) {
        throw Error(std::string("index beyond one full reflection on ") + axis + " axis");
    }
    return i;
}

}  // namespace

float reflect_sample(const Raster& raster, int band, int row, int col) {
    const int r = reflect_index(row, raster.height, "row");
    const int c = reflect_index(col, raster.width, "col");
    return raster.at(band, r, c);
}

FeaturePoint square_features(const Raster& raster, const SquareSpec& spec,
                             const ChannelConfig& config) {
    if (spec.radius < 0) throw Error("square radius must be nonnegative");
    if (config.channels.empty()) throw Error("channel configuration is empty");

    // Resolve channels up front; -1 marks the derived NDVI channel.
    struct Source {
        int band = -1;
        int red = -1;
        int nir = -1;
    };
    std::vector<Source> sources;
    sources.reserve(config.channels.size());
    for (const auto& name : config.channels) {
        Source s;
        s.band = raster.band_index(name);
        if (s.band < 0) {
            if (name == "ndvi") {
                s.red = raster.band_index(config.ndvi_red);
                s.nir = raster.band_index(config.ndvi_nir);
                if (s.red < 0 || s.nir < 0) {
                    throw Error("ndvi channel needs bands '" + config.ndvi_red + "' and '" +
                                config.ndvi_nir + "'");
                }
            } else {
                throw Error("raster is missing configured band '" + name + "'");
            }
        }
        sources.push_back(s);
    }

    const int side = 2 * spec.radius + 1;
    const int count = side * side;
    FeaturePoint features(4 * config.count());
    std::vector<double> window(static_cast<std::size_t>(count));

    for (std::size_t ch = 0; ch < sources.size(); ++ch) {
        const Source& src = sources[ch];
        std::size_t i = 0;
        for (int dr = -spec.radius; dr <= spec.radius; ++dr) {
            for (int dc = -spec.radius; dc <= spec.radius; ++dc) {
                if (src.band >= 0) {
                    window[i] = reflect_sample(raster, src.band, spec.row + dr, spec.col + dc);
                } else {
                    window[i] =
                        ndvi(reflect_sample(raster, src.red, spec.row + dr, spec.col + dc),
                             reflect_sample(raster, src.nir, spec.row + dr, spec.col + dc));
                }
                ++i;
            }
        }
        double sum = 0.0;
        double min_v = window[0];
        double max_v = window[0];
        for (double v : window) {
            sum += v;
            min_v = std::min(min_v, v);
            max_v = std::max(max_v, v);
        }
        // Clamp against summation rounding so min <= mean <= max always holds.
        const double mean = std::clamp(sum / count, min_v, max_v);
        double std_dev = 0.0;
        if (min_v < max_v) {  // constant windows get an exact zero
            double sq = 0.0;
            for (double v : window) sq += (v - mean) * (v - mean);
            std_dev = std::sqrt(sq / count);  // population convention
        }
        features(4 * static_cast<Eigen::Index>(ch) + 0) = mean;
        features(4 * static_cast<Eigen::Index>(ch) + 1) = std_dev;
        features(4 * static_cast<Eigen::Index>(ch) + 2) = min_v;
        features(4 * static_cast<Eigen::Index>(ch) + 3) = max_v;
    }
    return features;
}

std::vector<std::string> feature_names(const ChannelConfig& config) {
    static const char* kStats[] = {"mean", "std", "min", "max"};
    std::vector<std::string> names;
    names.reserve(config.channels.size() * 4);
    for (const auto& ch : config.channels) {
        for (const char* stat : kStats) {
            names.push_back(ch + "_" + stat);
        }
    }
    return names;
}

}  // namespace natnet
