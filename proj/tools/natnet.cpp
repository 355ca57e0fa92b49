// Command-line front end: synthetic data generation, training, leave-one-out
// reports, square adjustment, pruning, classification, relevancy maps and
// grayscale rendering.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "natnet/errors.hpp"
#include "natnet/io.hpp"
#include "natnet/model.hpp"
#include "natnet/relevancy_map.hpp"
#include "natnet/synth.hpp"
#include "natnet/training.hpp"

using namespace natnet;

namespace {

std::vector<double> parse_number_list(const std::string& text, char sep) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, sep)) {
        if (token.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0') {
            throw Error("cannot parse number from '" + token + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<Eigen::Vector2d> parse_centers(const std::string& text) {
    std::vector<Eigen::Vector2d> centers;
    std::stringstream stream(text);
    std::string pair;
    while (std::getline(stream, pair, ';')) {
        const auto xy = parse_number_list(pair, ',');
        if (xy.size() != 2) throw Error("centers must be 'x,y' pairs separated by ';'");
        centers.emplace_back(xy[0], xy[1]);
    }
    return centers;
}

// "lo:hi:step" or a single value (degenerate range).
ParamRange parse_range(const std::string& text) {
    const auto parts = parse_number_list(text, ':');
    if (parts.size() == 1) return {parts[0], parts[0], 1.0};
    if (parts.size() == 3) return {parts[0], parts[1], parts[2]};
    throw Error("expected 'value' or 'lo:hi:step', got '" + text + "'");
}

std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> radii;
    for (double v : parse_number_list(text, ',')) {
        const int r = static_cast<int>(v);
        if (r < 1 || static_cast<double>(r) != v) throw Error("radii must be positive integers");
        radii.push_back(r);
    }
    if (radii.empty()) throw Error("empty radius list");
    return radii;
}

// Channel names can be reconstructed from feature headers of the
// "<channel>_mean,<channel>_std,<channel>_min,<channel>_max" form.
std::vector<std::string> channels_from_headers(const std::vector<std::string>& headers) {
    static const char* kStats[] = {"_mean", "_std", "_min", "_max"};
    if (headers.empty() || headers.size() % 4 != 0) return {};
    std::vector<std::string> channels;
    for (std::size_t i = 0; i < headers.size(); i += 4) {
        std::string base;
        for (int s = 0; s < 4; ++s) {
            const std::string& h = headers[i + s];
            const std::string suffix = kStats[s];
            if (h.size() <= suffix.size() ||
                h.compare(h.size() - suffix.size(), suffix.size(), suffix) != 0) {
                return {};
            }
            const std::string name = h.substr(0, h.size() - suffix.size());
            if (s == 0) base = name;
            else if (name != base) return {};
        }
        channels.push_back(base);
    }
    return channels;
}

std::vector<std::string> csv_headers(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::string line;
    if (!std::getline(in, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() > 2) return {fields.begin() + 2, fields.end()};
    return {};
}

struct CommonParams {
    double eps_forward = 1.0;
    double eps_backward = -0.001;
    double tau = 1.0;
    int max_steps = 200;
    double h = 0.01;
    int h1 = 1;
    int h2 = 8;
    double lambda = kDefaultLambda;
    int threads = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--eps-forward", eps_forward, "Forward diffusion strength");
        cmd->add_option("--eps-backward", eps_backward, "Backward diffusion strength (negative)");
        cmd->add_option("--tau", tau, "Time step");
        cmd->add_option("--max-steps", max_steps, "Step cap per classification");
        cmd->add_option("--h", h, "Histogram cell spacing");
        cmd->add_option("--h1", h1, "Inner Chebyshev radius of the examined ring");
        cmd->add_option("--h2", h2, "Outer Chebyshev radius of the examined ring");
        cmd->add_option("--lambda", lambda, "Relevancy logistic steepness");
        cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    }

    DiffusionParams diffusion(Eigen::Index dim) const {
        DiffusionParams params;
        params.weights = Eigen::VectorXd::Zero(dim);
        params.eps_forward = eps_forward;
        params.eps_backward = eps_backward;
        params.tau = tau;
        params.max_steps = max_steps;
        return params;
    }
    HistogramConfig histogram() const { return {h, h1, h2}; }
};

void print_report(const LooReport& report, Eigen::Index n) {
    std::printf("correct %d incorrect %d outliers %d success_rate %.4f (%d/%lld)\n",
                report.correct, report.incorrect, report.outliers, report.success_rate,
                report.correct, static_cast<long long>(n));
}

void write_report_csv(const LooReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "id,true_label,assigned,relevancy,failed\n";
    for (const auto& rec : report.per_point) {
        out << rec.id << ',' << (rec.true_label + 1) << ',';
        if (rec.assigned) out << (*rec.assigned + 1);
        else out << "outlier";
        out << ',' << format_double(rec.relevancy) << ',' << (rec.failed ? 1 : 0) << '\n';
    }
}

std::string map_path(const std::string& prefix, int cluster, int radius) {
    std::string name = prefix + "_c" + std::to_string(cluster + 1);
    name += radius < 0 ? "_final" : "_r" + std::to_string(radius);
    return name + ".pgm";
}

int run(int argc, char** argv) {
    CLI::App app{"Forward-backward diffusion network classifier"};
    // -h is not a help alias here: --h is the histogram spacing flag.
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    auto add_subcommand = [](CLI::App* parent, const std::string& name,
                             const std::string& desc) {
        CLI::App* cmd = parent->add_subcommand(name, desc);
        cmd->set_help_flag("--help", "Print help");
        return cmd;
    };

    // ---- synth ----------------------------------------------------------
    auto* synth = add_subcommand(&app, "synth", "Generate synthetic datasets and rasters");
    synth->require_subcommand(1);

    auto* synth_ds = add_subcommand(synth, "dataset", "Seeded Gaussian blobs in the unit square");
    std::uint64_t ds_seed = 42;
    int ds_clusters = 4;
    int ds_points = 125;
    double ds_spread = 0.05;
    std::string ds_centers;
    int ds_embed_dim = 0;
    double ds_embed_noise = 1e-4;
    std::string ds_out;
    synth_ds->add_option("--seed", ds_seed, "RNG seed");
    synth_ds->add_option("--clusters", ds_clusters, "Cluster count");
    synth_ds->add_option("--points", ds_points, "Total points, split evenly");
    synth_ds->add_option("--spread", ds_spread, "Gaussian spread around each center");
    synth_ds->add_option("--centers", ds_centers, "Centers 'x,y;x,y;...' (default layout)");
    synth_ds->add_option("--embed-dim", ds_embed_dim,
                         "Embed into this many dimensions via a seeded linear map");
    synth_ds->add_option("--embed-noise", ds_embed_noise, "Embedding noise");
    synth_ds->add_option("-o,--out", ds_out, "Output CSV")->required();

    auto* synth_ra = add_subcommand(synth, "raster", "Textured raster with training areas");
    std::uint64_t ra_seed = 42;
    int ra_width = 64, ra_height = 64, ra_bands = 3, ra_textures = 2, ra_areas = 4;
    double ra_noise = 0.02;
    std::string ra_out;
    synth_ra->add_option("--seed", ra_seed, "RNG seed");
    synth_ra->add_option("--width", ra_width, "Raster width");
    synth_ra->add_option("--height", ra_height, "Raster height");
    synth_ra->add_option("--bands", ra_bands, "Band count");
    synth_ra->add_option("--textures", ra_textures, "Texture stripe count (= clusters)");
    synth_ra->add_option("--areas-per-texture", ra_areas, "Training areas per texture");
    synth_ra->add_option("--noise", ra_noise, "Per-pixel Gaussian noise");
    synth_ra->add_option("-o,--out", ra_out,
                         "Output basename (writes .nnr, .areas.csv, .mask.nnr)")
        ->required();

    // ---- train ----------------------------------------------------------
    auto* train = add_subcommand(&app, "train", "Fit the reduction and tune parameters");
    std::string tr_dataset, tr_raster, tr_areas, tr_mask, tr_out, tr_progress;
    std::string tr_k1 = "100:5000:100", tr_k2 = "100:5000:100", tr_delta = "0.001:0.1:0.001";
    int tr_components = 2;
    std::uint64_t tr_seed = 42;
    CommonParams tr_common;
    train->add_option("--dataset", tr_dataset, "Training CSV (id,label,f1,...)");
    train->add_option("--raster", tr_raster, "Raster header (with --areas/--mask)");
    train->add_option("--areas", tr_areas, "Areas CSV");
    train->add_option("--mask", tr_mask, "Area mask raster header");
    train->add_option("--k", tr_components, "Principal components to keep");
    train->add_option("--k1", tr_k1, "Weight 1 grid: value or lo:hi:step");
    train->add_option("--k2", tr_k2, "Weight 2 grid: value or lo:hi:step");
    train->add_option("--delta", tr_delta, "Cutoff grid: value or lo:hi:step");
    train->add_option("--seed", tr_seed, "Seed for placing missing squares");
    train->add_option("--progress", tr_progress, "Tuning progress log (resumable)");
    train->add_option("-o,--out", tr_out, "Output model file")->required();
    tr_common.add_flags(train);

    // ---- loo ------------------------------------------------------------
    auto* loo = add_subcommand(&app, "loo", "Leave-one-out report for fixed parameters");
    std::string loo_model, loo_out;
    double loo_k1 = -1.0, loo_k2 = -1.0, loo_delta = -1.0;
    int loo_threads = 0;
    loo->add_option("--model", loo_model, "Model file")->required();
    loo->add_option("--k1", loo_k1, "Override weight 1");
    loo->add_option("--k2", loo_k2, "Override weight 2");
    loo->add_option("--delta", loo_delta, "Override cutoff");
    loo->add_option("--threads", loo_threads, "Worker threads (0 = all cores)");
    loo->add_option("-o,--out", loo_out, "Per-point report CSV");

    // ---- classify -------------------------------------------------------
    auto* classify_cmd = add_subcommand(&app, "classify", "Classify one observation");
    std::string cl_model, cl_features, cl_raster, cl_pixel;
    int cl_radius = 3;
    classify_cmd->add_option("--model", cl_model, "Model file")->required();
    classify_cmd->add_option("--features", cl_features, "Comma-separated raw feature vector");
    classify_cmd->add_option("--raster", cl_raster, "Raster header (with --pixel)");
    classify_cmd->add_option("--pixel", cl_pixel, "Pixel 'row,col'");
    classify_cmd->add_option("--radius", cl_radius, "Window radius for --pixel");

    // ---- relmap ---------------------------------------------------------
    auto* relmap = add_subcommand(&app, "relmap", "Per-pixel relevancy maps");
    std::string rm_model, rm_raster, rm_radii = "3,4,5", rm_out;
    bool rm_frozen = false;
    int rm_threads = 0;
    relmap->add_option("--model", rm_model, "Model file")->required();
    relmap->add_option("--raster", rm_raster, "Raster header")->required();
    relmap->add_option("--radii", rm_radii, "Window radii, comma-separated");
    relmap->add_flag("--frozen-base", rm_frozen,
                     "Advect newcomers against a precomputed base trajectory");
    relmap->add_option("--threads", rm_threads, "Worker threads (0 = all cores)");
    relmap->add_option("-o,--out", rm_out, "Output prefix")->required();

    // ---- adjust ---------------------------------------------------------
    auto* adjust = add_subcommand(&app, "adjust", "Recenter representative squares");
    std::string ad_model, ad_raster, ad_areas, ad_mask, ad_radii = "3,4,5";
    std::string ad_areas_out, ad_mask_out, ad_dataset_out;
    bool ad_frozen = false;
    int ad_threads = 0;
    adjust->add_option("--model", ad_model, "Model file")->required();
    adjust->add_option("--raster", ad_raster, "Raster header")->required();
    adjust->add_option("--areas", ad_areas, "Areas CSV")->required();
    adjust->add_option("--mask", ad_mask, "Area mask raster header")->required();
    adjust->add_option("--radii", ad_radii, "Candidate radii");
    adjust->add_flag("--frozen-base", ad_frozen, "Frozen-base map computation");
    adjust->add_option("--threads", ad_threads, "Worker threads (0 = all cores)");
    adjust->add_option("--areas-out", ad_areas_out, "Adjusted areas CSV")->required();
    adjust->add_option("--mask-out", ad_mask_out, "Adjusted mask raster header")->required();
    adjust->add_option("--dataset-out", ad_dataset_out, "Rebuilt raw feature CSV")->required();

    // ---- prune ----------------------------------------------------------
    auto* prune = add_subcommand(&app, "prune", "Drop unclassifiable areas");
    std::string pr_model, pr_raster, pr_areas, pr_mask, pr_radii = "3,4,5";
    std::string pr_areas_out, pr_mask_out, pr_dataset_out;
    bool pr_frozen = false;
    int pr_threads = 0;
    prune->add_option("--model", pr_model, "Model file")->required();
    prune->add_option("--raster", pr_raster, "Raster header")->required();
    prune->add_option("--areas", pr_areas, "Areas CSV")->required();
    prune->add_option("--mask", pr_mask, "Area mask raster header")->required();
    prune->add_option("--radii", pr_radii, "Map radii");
    prune->add_flag("--frozen-base", pr_frozen, "Frozen-base map computation");
    prune->add_option("--threads", pr_threads, "Worker threads (0 = all cores)");
    prune->add_option("--areas-out", pr_areas_out, "Pruned areas CSV")->required();
    prune->add_option("--mask-out", pr_mask_out, "Pruned mask raster header")->required();
    prune->add_option("--dataset-out", pr_dataset_out, "Pruned raw feature CSV");

    // ---- render ---------------------------------------------------------
    auto* render = add_subcommand(&app, "render", "Render a float sidecar as 16-bit PGM");
    std::string re_input, re_out;
    int re_width = 0, re_height = 0;
    render->add_option("--input", re_input, "Float32 sidecar file")->required();
    render->add_option("--width", re_width, "Map width")->required();
    render->add_option("--height", re_height, "Map height")->required();
    render->add_option("-o,--out", re_out, "Output PGM")->required();

    CLI11_PARSE(app, argc, argv);

    if (synth_ds->parsed()) {
        const auto centers =
            ds_centers.empty() ? default_centers(ds_clusters) : parse_centers(ds_centers);
        LabeledDataset dataset =
            synth_clusters(ds_seed, ds_clusters, ds_points, centers, ds_spread);
        if (ds_embed_dim > 0) {
            dataset = embed_dataset(dataset, ds_embed_dim, ds_embed_noise, ds_seed + 1);
        }
        save_dataset(dataset, ds_out);
        std::printf("wrote %lld points, %d clusters, %lld dims to %s\n",
                    static_cast<long long>(dataset.size()), dataset.n_clusters,
                    static_cast<long long>(dataset.dim()), ds_out.c_str());
        return 0;
    }

    if (synth_ra->parsed()) {
        const SyntheticRaster out =
            synth_raster(ra_seed, ra_width, ra_height, ra_bands, ra_textures, ra_areas, ra_noise);
        save_raster(out.raster, ra_out + ".nnr");
        save_areas(out.areas, ra_out + ".areas.csv", ra_out + ".mask.nnr");
        std::printf("wrote %dx%d raster (%d bands), %zu areas to %s.*\n", ra_width, ra_height,
                    ra_bands, out.areas.areas.size(), ra_out.c_str());
        return 0;
    }

    if (train->parsed()) {
        TrainedModel model;
        model.hist = tr_common.histogram();
        model.lambda = tr_common.lambda;

        LabeledDataset raw;
        if (!tr_dataset.empty()) {
            raw = load_dataset(tr_dataset);
            model.channels.channels = channels_from_headers(csv_headers(tr_dataset));
        } else {
            if (tr_raster.empty() || tr_areas.empty() || tr_mask.empty()) {
                throw Error("train needs --dataset or all of --raster/--areas/--mask");
            }
            const Raster raster = load_raster(tr_raster);
            AreaSet areas = load_areas(tr_areas, tr_mask);
            Rng rng(tr_seed);
            assign_random_squares(areas, rng, {5, 4, 3});
            model.channels.channels = raster.band_names;
            raw = build_area_dataset(raster, areas, model.channels);
        }

        model.pca = pca_fit(raw.points, tr_components);
        model.dataset = raw;
        model.dataset.points = transform_all(model.pca, raw.points);

        TuningGrid grid;
        grid.k1 = parse_range(tr_k1);
        grid.k2 = parse_range(tr_k2);
        grid.delta = parse_range(tr_delta);

        GridProgress progress;
        std::ofstream progress_out;
        std::mutex progress_mutex;
        if (!tr_progress.empty()) {
            progress.precomputed = load_progress(tr_progress);
            if (!progress.precomputed.empty()) {
                std::printf("resuming: %zu tuples already evaluated\n",
                            progress.precomputed.size());
            }
            progress_out.open(tr_progress, std::ios::app);
            if (!progress_out) throw IoError("cannot open '" + tr_progress + "'");
            progress.on_result = [&](double k1, double k2, double delta,
                                     const LooReport& report) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress_out << format_progress_line(k1, k2, delta, report.correct,
                                                     report.incorrect, report.outliers)
                             << '\n';
                progress_out.flush();
            };
        }

        const DiffusionParams base = tr_common.diffusion(tr_components);
        const GridSearchResult best =
            grid_search(model.dataset, grid, model.hist, base, model.lambda,
                        tr_common.threads, tr_progress.empty() ? nullptr : &progress);
        model.params = best.params;
        save_model(model, tr_out);
        std::printf("best k1 %s k2 %s delta %s\n", format_double(best.params.weights(0)).c_str(),
                    format_double(best.params.weights(1)).c_str(),
                    format_double(best.params.delta).c_str());
        print_report(best.report, model.dataset.size());
        std::printf("model written to %s\n", tr_out.c_str());
        return 0;
    }

    if (loo->parsed()) {
        const TrainedModel model = load_model(loo_model);
        DiffusionParams params = model.params;
        if (loo_k1 >= 0.0) params.weights(0) = loo_k1;
        if (loo_k2 >= 0.0) params.weights(1) = loo_k2;
        if (loo_delta >= 0.0) params.delta = loo_delta;
        const LooReport report =
            loo_evaluate(model.dataset, params, model.hist, model.lambda, loo_threads);
        print_report(report, model.dataset.size());
        if (!loo_out.empty()) write_report_csv(report, loo_out);
        return 0;
    }

    if (classify_cmd->parsed()) {
        const TrainedModel model = load_model(cl_model);
        Eigen::VectorXd raw;
        if (!cl_features.empty()) {
            const auto values = parse_number_list(cl_features, ',');
            raw = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                    static_cast<Eigen::Index>(values.size()));
        } else if (!cl_raster.empty() && !cl_pixel.empty()) {
            const Raster raster = load_raster(cl_raster);
            const auto rc = parse_number_list(cl_pixel, ',');
            if (rc.size() != 2) throw Error("--pixel expects 'row,col'");
            const SquareSpec spec{static_cast<int>(rc[0]), static_cast<int>(rc[1]), cl_radius};
            raw = square_features(raster, spec, model.channels);
        } else {
            throw Error("classify needs --features or --raster with --pixel");
        }
        const ClassificationResult result = classify_features(model, raw);
        if (result.assigned) {
            std::printf("assigned %d\n", *result.assigned + 1);
        } else {
            std::printf("assigned outlier\n");
        }
        std::printf("relevancy %s\nsteps %d\ncriterion %s\n",
                    format_double(result.relevancy).c_str(), result.steps_used,
                    result.criterion_met ? "met" : "not-met");
        if (result.tie) std::printf("tie true\n");
        if (result.degenerate) std::printf("degenerate true\n");
        return 0;
    }

    if (relmap->parsed()) {
        const TrainedModel model = load_model(rm_model);
        const Raster raster = load_raster(rm_raster);
        const auto radii = parse_radii(rm_radii);
        MapOptions opts;
        opts.frozen_base = rm_frozen;
        opts.threads = rm_threads;

        std::vector<std::vector<RelevancyMap>> per_cluster(
            static_cast<std::size_t>(model.dataset.n_clusters));
        long failed = 0;
        for (int r : radii) {
            MapSet set = compute_maps(raster, model, r, opts);
            failed += set.failed_pixels;
            for (std::size_t c = 0; c < set.maps.size(); ++c) {
                render_map(set.maps[c], map_path(rm_out, static_cast<int>(c), r));
                per_cluster[c].push_back(std::move(set.maps[c]));
            }
        }
        for (std::size_t c = 0; c < per_cluster.size(); ++c) {
            const RelevancyMap combined = final_map(per_cluster[c]);
            render_map(combined, map_path(rm_out, static_cast<int>(c), -1));
        }
        if (failed > 0) std::fprintf(stderr, "warning: %ld pixels failed, written as 0\n", failed);
        std::printf("wrote %zu maps to %s_*.pgm (+.f32)\n",
                    per_cluster.size() * (radii.size() + 1), rm_out.c_str());
        return 0;
    }

    if (adjust->parsed()) {
        const TrainedModel model = load_model(ad_model);
        const Raster raster = load_raster(ad_raster);
        const AreaSet areas = load_areas(ad_areas, ad_mask);
        MapOptions opts;
        opts.frozen_base = ad_frozen;
        opts.threads = ad_threads;
        const AdjustResult result =
            adjust_squares(raster, areas, model, parse_radii(ad_radii), opts);
        save_areas(result.areas, ad_areas_out, ad_mask_out);
        save_dataset(result.raw_dataset, ad_dataset_out, feature_names(model.channels));
        int moved = 0;
        for (auto flag : result.adjusted) moved += flag ? 1 : 0;
        std::printf("adjusted %d of %zu squares\n", moved, result.areas.areas.size());
        for (const auto& id : result.zero_relevancy_ids) {
            std::printf("zero-relevancy area: %s\n", id.c_str());
        }
        return 0;
    }

    if (prune->parsed()) {
        const TrainedModel model = load_model(pr_model);
        const Raster raster = load_raster(pr_raster);
        const AreaSet areas = load_areas(pr_areas, pr_mask);
        MapOptions opts;
        opts.frozen_base = pr_frozen;
        opts.threads = pr_threads;

        PixelMask all;
        all.width = areas.width;
        all.height = areas.height;
        all.inside.assign(areas.pixel_area.size(), 0);
        for (std::size_t p = 0; p < areas.pixel_area.size(); ++p) {
            if (areas.pixel_area[p] >= 0) all.inside[p] = 1;
        }
        std::vector<MapSet> maps;
        for (int r : parse_radii(pr_radii)) {
            maps.push_back(compute_maps_masked(raster, model, r, all, opts));
        }
        const PruneResult result = prune_unclassifiable(areas, maps);
        save_areas(result.areas, pr_areas_out, pr_mask_out);
        if (!pr_dataset_out.empty()) {
            save_dataset(build_area_dataset(raster, result.areas, model.channels),
                         pr_dataset_out, feature_names(model.channels));
        }
        std::printf("kept %zu areas, removed %zu\n", result.areas.areas.size(),
                    result.removed_ids.size());
        for (const auto& id : result.removed_ids) std::printf("removed: %s\n", id.c_str());
        return 0;
    }

    if (render->parsed()) {
        RelevancyMap map;
        map.width = re_width;
        map.height = re_height;
        map.cluster = 0;
        map.radius = -1;
        map.values = load_map_sidecar(re_input, re_width, re_height);
        render_map(map, re_out);
        std::printf("wrote %s\n", re_out.c_str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
