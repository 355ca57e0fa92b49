#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "natnet/areas.hpp"
#include "natnet/graph.hpp"
#include "natnet/model.hpp"
#include "natnet/raster.hpp"
#include "natnet/relevancy_map.hpp"

namespace natnet {

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

// ---- raster: text header + band-sequential float32 LE data at <path>.data

Raster load_raster(const std::string& header_path);
void save_raster(const Raster& raster, const std::string& header_path);

// ---- dataset CSV: header "id,label,f1,...,fD", labels 1-based in the file

LabeledDataset load_dataset(const std::string& path);
void save_dataset(const LabeledDataset& dataset, const std::string& path,
                  const std::vector<std::string>& feature_names = {});

// ---- versioned text model file

TrainedModel load_model(const std::string& path);
void save_model(const TrainedModel& model, const std::string& path);

// ---- areas: CSV "id,label,row,col,radius" + mask raster with band "area"
//      holding the 1-based area ordinal (0 = background)

AreaSet load_areas(const std::string& areas_csv, const std::string& mask_raster_header);
void save_areas(const AreaSet& areas, const std::string& areas_csv,
                const std::string& mask_raster_header);

// ---- relevancy map rendering: 16-bit binary PGM plus float32 LE sidecar at
//      <pgm_path>.f32; pixel = round-half-up(value * 65535)

void render_map(const RelevancyMap& map, const std::string& pgm_path);
std::vector<float> load_map_sidecar(const std::string& path, int width, int height);

// ---- tuning progress log: one "k1 k2 delta correct incorrect outliers"
//      record per line

std::string format_progress_line(double k1, double k2, double delta, int correct,
                                 int incorrect, int outliers);
std::map<std::array<double, 3>, int> load_progress(const std::string& path);

}  // namespace natnet
