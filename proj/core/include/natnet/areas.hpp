#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "natnet/features.hpp"
#include "natnet/relevancy_map.hpp"
#include "natnet/rng.hpp"

namespace natnet {

// One segmented area: its cluster label (0-based internal) and the
// representative square currently standing in for it. radius 0 means the
// square has not been placed yet.
struct AreaSpec {
    std::string id;
    int label = 0;
    SquareSpec square{};
};

// A set of segmented areas over one raster grid. Pixel membership is stored
// as an area-index image (-1 = background), which ties each pixel to at most
// one area.
struct AreaSet {
    int width = 0;
    int height = 0;
    std::vector<AreaSpec> areas;
    std::vector<std::int32_t> pixel_area;  // row-major, -1 or area index

    std::int32_t area_at(int row, int col) const {
        return pixel_area[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                          static_cast<std::size_t>(col)];
    }
    std::vector<std::pair<int, int>> pixels_of(std::size_t area) const;
    PixelMask mask_of(std::size_t area) const;
    PixelMask mask_of_cluster(int label) const;
    int n_clusters() const;

    void validate() const;
};

// Places a random representative square in every area whose radius is still
// 0. The largest radius from `radii` admitting a center whose square stays
// inside the area is used; when none fits, the smallest radius is placed at
// a random area pixel.
void assign_random_squares(AreaSet& areas, Rng& rng, const std::vector<int>& radii);

}  // namespace natnet
