#pragma once

#include <string>
#include <vector>

#include "natnet/graph.hpp"
#include "natnet/raster.hpp"

namespace natnet {

// A square pixel window A(p, r): center plus Chebyshev radius, covering
// (2r+1)^2 pixels after boundary reflection.
struct SquareSpec {
    int row = 0;
    int col = 0;
    int radius = 0;
};

// Which channels enter the feature vector, in order. A channel name either
// matches a raster band or is the literal "ndvi", derived per pixel from the
// bands named ndvi_red / ndvi_nir.
struct ChannelConfig {
    std::vector<std::string> channels;
    std::string ndvi_red = "red";
    std::string ndvi_nir = "nir";

    int count() const { return static_cast<int>(channels.size()); }
};

// Normalized difference vegetation index; zero when both inputs are zero.
double ndvi(double red, double nir);

// Reads a pixel with mirror reflection at the image boundary (-1 -> 0,
// n -> n-1, ...). Throws Error beyond one full reflection.
float reflect_sample(const Raster& raster, int band, int row, int col);

// Per-channel (mean, population standard deviation, min, max) over the
// window, channel-major: dimension 4 * channels.
FeaturePoint square_features(const Raster& raster, const SquareSpec& spec,
                             const ChannelConfig& config);

// Names of the feature coordinates produced by square_features, for CSV
// headers and diagnostics.
std::vector<std::string> feature_names(const ChannelConfig& config);

}  // namespace natnet
