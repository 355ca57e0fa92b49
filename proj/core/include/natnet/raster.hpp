#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace natnet {

// Multiband float raster. Bands share dimensions and are stored row-major,
// matching the on-disk layout exactly so IO round-trips are bit-identical.
// Immutable after load in all pipelines; reads are freely parallel.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::string> band_names;
    std::vector<std::vector<float>> bands;  // one row-major plane per band

    int band_count() const { return static_cast<int>(bands.size()); }

    float at(int band, int row, int col) const {
        return bands[static_cast<std::size_t>(band)]
                    [static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(col)];
    }
    float& at(int band, int row, int col) {
        return bands[static_cast<std::size_t>(band)]
                    [static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(col)];
    }

    // Index of the named band, -1 if absent.
    int band_index(const std::string& name) const;

    // Throws Error on inconsistent dimensions or non-finite values.
    void validate() const;
};

Raster make_raster(int width, int height, std::vector<std::string> band_names);

}  // namespace natnet
