#include "natnet/raster.hpp"

#include <cmath>

#include "natnet/errors.hpp"

namespace natnet {

int Raster::band_index(const std::string& name) const {
    for (std::size_t i = 0; i < band_names.size(); ++i) {
        if (band_names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

void Raster::validate() const {
    if (width <= 0 || height <= 0) throw Error("raster dimensions must be positive");
    if (band_names.size() != bands.size()) throw Error("raster band name/plane count mismatch");
    const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    for (std::size_t b = 0; b < bands.size(); ++b) {
        if (bands[b].size() != plane) {
            throw Error("raster band '" + band_names[b] + "' has wrong size");
        }
        for (float v : bands[b]) {
            if (!std::isfinite(v)) {
                throw Error("raster band '" + band_names[b] + "' has non-finite values");
            }
        }
    }
}

Raster make_raster(int width, int height, std::vector<std::string> band_names) {
    if (width <= 0 || height <= 0) throw Error("raster dimensions must be positive");
    Raster r;
    r.width = width;
    r.height = height;
    r.band_names = std::move(band_names);
    const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    r.bands.assign(r.band_names.size(), std::vector<float>(plane, 0.0f));
    return r;
}

}  // namespace natnet
