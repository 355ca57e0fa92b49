#include "natnet/areas.hpp"

#include <algorithm>

#include "natnet/errors.hpp"

namespace natnet {

std::vector<std::pair<int, int>> AreaSet::pixels_of(std::size_t area) const {
    std::vector<std::pair<int, int>> pixels;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (area_at(r, c) == static_cast<std::int32_t>(area)) pixels.emplace_back(r, c);
        }
    }
    return pixels;
}

PixelMask AreaSet::mask_of(std::size_t area) const {
    PixelMask mask;
    mask.width = width;
    mask.height = height;
    mask.inside.assign(pixel_area.size(), 0);
    for (std::size_t p = 0; p < pixel_area.size(); ++p) {
        if (pixel_area[p] == static_cast<std::int32_t>(area)) mask.inside[p] = 1;
    }
    return mask;
}

PixelMask AreaSet::mask_of_cluster(int label) const {
    PixelMask mask;
    mask.width = width;
    mask.height = height;
    mask.inside.assign(pixel_area.size(), 0);
    for (std::size_t p = 0; p < pixel_area.size(); ++p) {
        const std::int32_t a = pixel_area[p];
        if (a >= 0 && areas[static_cast<std::size_t>(a)].label == label) mask.inside[p] = 1;
    }
    return mask;
}

int AreaSet::n_clusters() const {
    int max_label = -1;
    for (const auto& a : areas) max_label = std::max(max_label, a.label);
    return max_label + 1;
}

void AreaSet::validate() const {
    if (width <= 0 || height <= 0) throw Error("area set dimensions must be positive");
    if (pixel_area.size() !=
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error("area index image has the wrong size");
    }
    if (areas.empty()) throw Error("area set is empty");
    std::vector<bool> seen(areas.size(), false);
    for (std::int32_t a : pixel_area) {
        if (a < -1 || a >= static_cast<std::int32_t>(areas.size())) {
            throw Error("pixel references an unknown area");
        }
        if (a >= 0) seen[static_cast<std::size_t>(a)] = true;
    }
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (!seen[i]) throw Error("area '" + areas[i].id + "' has no pixels");
        if (areas[i].label < 0) throw Error("area '" + areas[i].id + "' has no cluster label");
    }
}

namespace {

// True when the square of this radius centered at (row, col) lies entirely
// inside the area's pixel set.
bool square_fits(const AreaSet& areas, std::size_t area, int row, int col, int radius) {
    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            const int r = row + dr;
            const int c = col + dc;
            if (r < 0 || r >= areas.height || c < 0 || c >= areas.width) return false;
            if (areas.area_at(r, c) != static_cast<std::int32_t>(area)) return false;
        }
    }
    return true;
}

}  // namespace

void assign_random_squares(AreaSet& areas, Rng& rng, const std::vector<int>& radii) {
    if (radii.empty()) throw Error("no candidate radii given");
    std::vector<int> sorted = radii;
    std::sort(sorted.begin(), sorted.end(), std::greater<int>());

    for (std::size_t i = 0; i < areas.areas.size(); ++i) {
        AreaSpec& area = areas.areas[i];
        if (area.square.radius > 0) continue;
        const auto pixels = areas.pixels_of(i);
        if (pixels.empty()) throw Error("area '" + area.id + "' has no pixels");

        bool placed = false;
        for (int radius : sorted) {
            std::vector<std::pair<int, int>> candidates;
            for (const auto& [r, c] : pixels) {
                if (square_fits(areas, i, r, c, radius)) candidates.emplace_back(r, c);
            }
            if (!candidates.empty()) {
                const auto& [r, c] = candidates[rng.below(candidates.size())];
                area.square = SquareSpec{r, c, radius};
                placed = true;
                break;
            }
        }
        if (!placed) {
            // Nothing fits: smallest radius at a random area pixel.
            const auto& [r, c] = pixels[rng.below(pixels.size())];
            area.square = SquareSpec{r, c, sorted.back()};
        }
    }
}

}  // namespace natnet
