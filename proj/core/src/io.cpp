#include "natnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "natnet/errors.hpp"

namespace natnet {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw IoError("cannot parse " + what + " from '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') {
        throw IoError("cannot parse " + what + " from '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void encode_f32_le(float v, unsigned char out[4]) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    out[0] = static_cast<unsigned char>(bits & 0xff);
    out[1] = static_cast<unsigned char>((bits >> 8) & 0xff);
    out[2] = static_cast<unsigned char>((bits >> 16) & 0xff);
    out[3] = static_cast<unsigned char>((bits >> 24) & 0xff);
}

float decode_f32_le(const unsigned char in[4]) {
    const std::uint32_t bits = static_cast<std::uint32_t>(in[0]) |
                               (static_cast<std::uint32_t>(in[1]) << 8) |
                               (static_cast<std::uint32_t>(in[2]) << 16) |
                               (static_cast<std::uint32_t>(in[3]) << 24);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void write_f32_file(const std::string& path, const std::vector<float>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    std::vector<unsigned char> bytes(values.size() * 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
        encode_f32_le(values[i], &bytes[i * 4]);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<float> read_f32_file(const std::string& path, std::size_t expected_count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<unsigned char> bytes(expected_count * 4);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
        throw IoError("'" + path + "' is shorter than expected");
    }
    char extra;
    if (in.read(&extra, 1)) throw IoError("'" + path + "' is longer than expected");
    std::vector<float> values(expected_count);
    for (std::size_t i = 0; i < expected_count; ++i) {
        values[i] = decode_f32_le(&bytes[i * 4]);
    }
    return values;
}

}  // namespace

Raster load_raster(const std::string& header_path) {
    std::ifstream in(header_path);
    if (!in) throw IoError("cannot open '" + header_path + "'");

    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "nnraster 1") {
        throw IoError("'" + header_path + "' is not an nnraster version 1 header");
    }

    Raster raster;
    int n_bands = -1;
    auto expect = [&](const std::string& key) {
        if (!std::getline(in, line)) throw IoError("truncated header in '" + header_path + "'");
        line = strip_cr(line);
        if (line.rfind(key + " ", 0) != 0) {
            throw IoError("expected '" + key + "' line in '" + header_path + "'");
        }
        return line.substr(key.size() + 1);
    };
    raster.width = static_cast<int>(parse_long(expect("width"), "width"));
    raster.height = static_cast<int>(parse_long(expect("height"), "height"));
    n_bands = static_cast<int>(parse_long(expect("bands"), "band count"));
    if (raster.width <= 0 || raster.height <= 0 || n_bands <= 0) {
        throw IoError("'" + header_path + "' has non-positive dimensions");
    }
    for (int b = 0; b < n_bands; ++b) {
        raster.band_names.push_back(expect("band"));
    }

    const std::string data_path = header_path + ".data";
    const std::size_t plane =
        static_cast<std::size_t>(raster.width) * static_cast<std::size_t>(raster.height);
    const auto all = read_f32_file(data_path, plane * static_cast<std::size_t>(n_bands));
    raster.bands.resize(static_cast<std::size_t>(n_bands));
    for (int b = 0; b < n_bands; ++b) {
        raster.bands[static_cast<std::size_t>(b)]
            .assign(all.begin() + static_cast<std::ptrdiff_t>(plane) * b,
                    all.begin() + static_cast<std::ptrdiff_t>(plane) * (b + 1));
    }
    return raster;
}

void save_raster(const Raster& raster, const std::string& header_path) {
    raster.validate();
    std::ofstream out(header_path);
    if (!out) throw IoError("cannot open '" + header_path + "' for writing");
    out << "nnraster 1\n";
    out << "width " << raster.width << "\n";
    out << "height " << raster.height << "\n";
    out << "bands " << raster.band_count() << "\n";
    for (const auto& name : raster.band_names) out << "band " << name << "\n";
    if (!out) throw IoError("failed writing '" + header_path + "'");
    out.close();

    std::vector<float> all;
    all.reserve(raster.bands.size() * raster.bands.front().size());
    for (const auto& band : raster.bands) all.insert(all.end(), band.begin(), band.end());
    write_f32_file(header_path + ".data", all);
}

LabeledDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    const auto header = split(strip_cr(line), ',');
    if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
        throw IoError("'" + path + "' must start with header 'id,label,f1,...'");
    }
    const std::size_t dim = header.size() - 2;

    std::vector<std::string> ids;
    std::vector<int> labels;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw IoError(path + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
        }
        ids.push_back(fields[0]);
        const long label = parse_long(fields[1], "label");
        if (label < 1) throw IoError(path + ":" + std::to_string(line_no) +
                                     ": labels are positive integers");
        labels.push_back(static_cast<int>(label - 1));  // to 0-based
        std::vector<double> row(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            row[j] = parse_double(fields[j + 2], "feature");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("'" + path + "' has no data rows");

    LabeledDataset dataset;
    dataset.ids = std::move(ids);
    dataset.labels = std::move(labels);
    dataset.n_clusters = *std::max_element(dataset.labels.begin(), dataset.labels.end()) + 1;
    dataset.points.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            dataset.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
        }
    }
    if (dataset.n_clusters < 2) {
        throw IoError("'" + path + "' holds a single cluster; at least two are required");
    }
    dataset.validate();
    return dataset;
}

void save_dataset(const LabeledDataset& dataset, const std::string& path,
                  const std::vector<std::string>& feature_names) {
    dataset.validate();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "id,label";
    for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
        if (static_cast<std::size_t>(j) < feature_names.size()) {
            out << ',' << feature_names[static_cast<std::size_t>(j)];
        } else {
            out << ",f" << (j + 1);
        }
    }
    out << '\n';
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        out << dataset.ids[static_cast<std::size_t>(i)] << ','
            << (dataset.labels[static_cast<std::size_t>(i)] + 1);
        for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
            out << ',' << format_double(dataset.points(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

constexpr const char* kModelMagic = "nnmodel 1";

class LineReader {
public:
    LineReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

    std::string expect(const std::string& key) {
        std::string line;
        if (!std::getline(in_, line)) {
            throw IoError("'" + path_ + "': missing '" + key + "' line");
        }
        line = strip_cr(line);
        if (line == key) return "";
        if (line.rfind(key + " ", 0) != 0) {
            throw IoError("'" + path_ + "': expected '" + key + "', found '" + line + "'");
        }
        return line.substr(key.size() + 1);
    }

private:
    std::istream& in_;
    std::string path_;
};

Eigen::VectorXd parse_vector(const std::string& text, Eigen::Index expected,
                             const std::string& what) {
    std::istringstream stream(text);
    Eigen::VectorXd v(expected);
    std::string token;
    for (Eigen::Index i = 0; i < expected; ++i) {
        if (!(stream >> token)) throw IoError(what + " has too few entries");
        v(i) = parse_double(token, what);
    }
    if (stream >> token) throw IoError(what + " has too many entries");
    return v;
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out << ' ';
        out << format_double(v(i));
    }
}

}  // namespace

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string magic;
    if (!std::getline(in, magic) || strip_cr(magic) != kModelMagic) {
        throw IoError("'" + path + "' is not an nnmodel version 1 file");
    }
    LineReader reader(in, path);
    TrainedModel model;

    const long n_channels = parse_long(reader.expect("channels"), "channel count");
    for (long i = 0; i < n_channels; ++i) {
        model.channels.channels.push_back(reader.expect("channel"));
    }
    {
        std::istringstream stream(reader.expect("ndvi_from"));
        if (!(stream >> model.channels.ndvi_red >> model.channels.ndvi_nir)) {
            throw IoError("'" + path + "': bad ndvi_from line");
        }
    }

    const auto d = static_cast<Eigen::Index>(
        parse_long(reader.expect("pca_input_dim"), "pca input dim"));
    const auto k = static_cast<Eigen::Index>(
        parse_long(reader.expect("pca_output_dim"), "pca output dim"));
    model.pca.mean = parse_vector(reader.expect("pca_mean"), d, "pca mean");
    model.pca.basis.resize(k, d);
    for (Eigen::Index i = 0; i < k; ++i) {
        model.pca.basis.row(i) =
            parse_vector(reader.expect("pca_basis_row"), d, "pca basis row").transpose();
    }
    model.pca.explained_variance =
        parse_vector(reader.expect("pca_explained_variance"), k, "explained variance");
    model.pca.total_variance =
        parse_double(reader.expect("pca_total_variance"), "total variance");
    model.pca.scale_min = parse_vector(reader.expect("pca_scale_min"), k, "scale min");
    model.pca.scale_max = parse_vector(reader.expect("pca_scale_max"), k, "scale max");

    model.params.weights = parse_vector(reader.expect("weights"), k, "weights");
    model.params.delta = parse_double(reader.expect("delta"), "delta");
    model.params.eps_forward = parse_double(reader.expect("eps_forward"), "eps_forward");
    model.params.eps_backward = parse_double(reader.expect("eps_backward"), "eps_backward");
    model.params.tau = parse_double(reader.expect("tau"), "tau");
    model.params.max_steps = static_cast<int>(parse_long(reader.expect("max_steps"), "max_steps"));
    model.hist.h = parse_double(reader.expect("hist_h"), "hist_h");
    model.hist.inner_radius = static_cast<int>(parse_long(reader.expect("hist_h1"), "hist_h1"));
    model.hist.outer_radius = static_cast<int>(parse_long(reader.expect("hist_h2"), "hist_h2"));
    model.lambda = parse_double(reader.expect("lambda"), "lambda");

    long n_points = 0;
    {
        std::istringstream stream(reader.expect("dataset"));
        long dims = 0;
        if (!(stream >> n_points >> dims) || dims != k || n_points < 1) {
            throw IoError("'" + path + "': bad dataset line");
        }
    }
    model.dataset.points.resize(n_points, k);
    for (long i = 0; i < n_points; ++i) {
        std::istringstream stream(reader.expect("point"));
        std::string id;
        long label;
        if (!(stream >> id >> label) || label < 1) {
            throw IoError("'" + path + "': bad point line");
        }
        model.dataset.ids.push_back(id);
        model.dataset.labels.push_back(static_cast<int>(label - 1));
        std::string token;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (!(stream >> token)) throw IoError("'" + path + "': point has too few coordinates");
            model.dataset.points(i, j) = parse_double(token, "point coordinate");
        }
    }
    model.dataset.n_clusters =
        *std::max_element(model.dataset.labels.begin(), model.dataset.labels.end()) + 1;
    model.validate();
    return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
    model.validate();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << kModelMagic << "\n";
    out << "channels " << model.channels.channels.size() << "\n";
    for (const auto& name : model.channels.channels) out << "channel " << name << "\n";
    out << "ndvi_from " << model.channels.ndvi_red << ' ' << model.channels.ndvi_nir << "\n";

    out << "pca_input_dim " << model.pca.input_dim() << "\n";
    out << "pca_output_dim " << model.pca.output_dim() << "\n";
    out << "pca_mean ";
    write_vector(out, model.pca.mean);
    out << "\n";
    for (Eigen::Index i = 0; i < model.pca.output_dim(); ++i) {
        out << "pca_basis_row ";
        write_vector(out, model.pca.basis.row(i).transpose());
        out << "\n";
    }
    out << "pca_explained_variance ";
    write_vector(out, model.pca.explained_variance);
    out << "\n";
    out << "pca_total_variance " << format_double(model.pca.total_variance) << "\n";
    out << "pca_scale_min ";
    write_vector(out, model.pca.scale_min);
    out << "\n";
    out << "pca_scale_max ";
    write_vector(out, model.pca.scale_max);
    out << "\n";

    out << "weights ";
    write_vector(out, model.params.weights);
    out << "\n";
    out << "delta " << format_double(model.params.delta) << "\n";
    out << "eps_forward " << format_double(model.params.eps_forward) << "\n";
    out << "eps_backward " << format_double(model.params.eps_backward) << "\n";
    out << "tau " << format_double(model.params.tau) << "\n";
    out << "max_steps " << model.params.max_steps << "\n";
    out << "hist_h " << format_double(model.hist.h) << "\n";
    out << "hist_h1 " << model.hist.inner_radius << "\n";
    out << "hist_h2 " << model.hist.outer_radius << "\n";
    out << "lambda " << format_double(model.lambda) << "\n";

    out << "dataset " << model.dataset.size() << ' ' << model.dataset.dim() << "\n";
    for (Eigen::Index i = 0; i < model.dataset.size(); ++i) {
        out << "point " << model.dataset.ids[static_cast<std::size_t>(i)] << ' '
            << (model.dataset.labels[static_cast<std::size_t>(i)] + 1);
        for (Eigen::Index j = 0; j < model.dataset.dim(); ++j) {
            out << ' ' << format_double(model.dataset.points(i, j));
        }
        out << "\n";
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

AreaSet load_areas(const std::string& areas_csv, const std::string& mask_raster_header) {
    std::ifstream in(areas_csv);
    if (!in) throw IoError("cannot open '" + areas_csv + "'");
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "id,label,row,col,radius") {
        throw IoError("'" + areas_csv + "' must start with header 'id,label,row,col,radius'");
    }

    AreaSet areas;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw IoError(areas_csv + ":" + std::to_string(line_no) + ": expected 5 fields");
        }
        AreaSpec spec;
        spec.id = fields[0];
        const long label = parse_long(fields[1], "label");
        if (label < 1) throw IoError(areas_csv + ":" + std::to_string(line_no) +
                                     ": labels are positive integers");
        spec.label = static_cast<int>(label - 1);
        spec.square.row = static_cast<int>(parse_long(fields[2], "row"));
        spec.square.col = static_cast<int>(parse_long(fields[3], "col"));
        spec.square.radius = static_cast<int>(parse_long(fields[4], "radius"));
        areas.areas.push_back(std::move(spec));
    }
    if (areas.areas.empty()) throw IoError("'" + areas_csv + "' has no areas");

    const Raster mask = load_raster(mask_raster_header);
    const int band = mask.band_index("area");
    if (band < 0) throw IoError("mask raster has no 'area' band");
    areas.width = mask.width;
    areas.height = mask.height;
    areas.pixel_area.resize(static_cast<std::size_t>(mask.width) *
                            static_cast<std::size_t>(mask.height));
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            const float v = mask.at(band, r, c);
            const auto ordinal = static_cast<long>(std::lround(v));
            if (ordinal < 0 || ordinal > static_cast<long>(areas.areas.size())) {
                throw IoError("mask pixel references area ordinal " + std::to_string(ordinal) +
                              " outside the CSV");
            }
            areas.pixel_area[static_cast<std::size_t>(r) *
                                 static_cast<std::size_t>(mask.width) +
                             static_cast<std::size_t>(c)] =
                static_cast<std::int32_t>(ordinal - 1);
        }
    }
    areas.validate();
    return areas;
}

void save_areas(const AreaSet& areas, const std::string& areas_csv,
                const std::string& mask_raster_header) {
    areas.validate();
    std::ofstream out(areas_csv);
    if (!out) throw IoError("cannot open '" + areas_csv + "' for writing");
    out << "id,label,row,col,radius\n";
    for (const auto& area : areas.areas) {
        out << area.id << ',' << (area.label + 1) << ',' << area.square.row << ','
            << area.square.col << ',' << area.square.radius << '\n';
    }
    if (!out) throw IoError("failed writing '" + areas_csv + "'");
    out.close();

    Raster mask = make_raster(areas.width, areas.height, {"area"});
    for (int r = 0; r < areas.height; ++r) {
        for (int c = 0; c < areas.width; ++c) {
            mask.at(0, r, c) = static_cast<float>(areas.area_at(r, c) + 1);
        }
    }
    save_raster(mask, mask_raster_header);
}

void render_map(const RelevancyMap& map, const std::string& pgm_path) {
    if (map.width <= 0 || map.height <= 0 ||
        map.values.size() != static_cast<std::size_t>(map.width) *
                                 static_cast<std::size_t>(map.height)) {
        throw IoError("relevancy map has inconsistent dimensions");
    }
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + pgm_path + "' for writing");
    out << "P5\n" << map.width << ' ' << map.height << "\n65535\n";
    std::vector<unsigned char> bytes(map.values.size() * 2);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const double v = std::clamp(static_cast<double>(map.values[i]), 0.0, 1.0);
        const auto gray = static_cast<std::uint16_t>(std::floor(v * 65535.0 + 0.5));
        bytes[i * 2] = static_cast<unsigned char>(gray >> 8);  // PGM is big-endian
        bytes[i * 2 + 1] = static_cast<unsigned char>(gray & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + pgm_path + "'");
    out.close();

    write_f32_file(pgm_path + ".f32", map.values);
}

std::vector<float> load_map_sidecar(const std::string& path, int width, int height) {
    if (width <= 0 || height <= 0) throw IoError("sidecar dimensions must be positive");
    return read_f32_file(path, static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(height));
}

std::string format_progress_line(double k1, double k2, double delta, int correct,
                                 int incorrect, int outliers) {
    std::ostringstream line;
    line << format_double(k1) << ' ' << format_double(k2) << ' ' << format_double(delta)
         << ' ' << correct << ' ' << incorrect << ' ' << outliers;
    return line.str();
}

std::map<std::array<double, 3>, int> load_progress(const std::string& path) {
    std::map<std::array<double, 3>, int> progress;
    std::ifstream in(path);
    if (!in) return progress;  // absent file = nothing evaluated yet
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::istringstream stream(line);
        double k1, k2, delta;
        int correct, incorrect, outliers;
        if (!(stream >> k1 >> k2 >> delta >> correct >> incorrect >> outliers)) {
            throw IoError(path + ":" + std::to_string(line_no) + ": bad progress record");
        }
        progress[{k1, k2, delta}] = correct;
    }
    return progress;
}

}  // namespace natnet
