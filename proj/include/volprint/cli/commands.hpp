// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "volprint/cli/manifest.hpp"
#include "volprint/crosstalk.hpp"
#include "volprint/design.hpp"
#include "volprint/film_stack.hpp"
#include "volprint/optics.hpp"
#include "volprint/png_io.hpp"
#include "volprint/point_cloud.hpp"
#include "volprint/projection.hpp"
#include "volprint/slicer.hpp"
#include "volprint/synthetic.hpp"

namespace volprint::cli {

namespace fs = std::filesystem;

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitValidation = 2,
};

struct RunOptions {
    std::optional<fs::path> manifest;
    std::optional<fs::path> out_dir;
    unsigned threads = 0;
    std::optional<int> bit_depth;
    std::optional<NormalizeMode> normalize;
    std::ostream* out = &std::cout;
    std::ostream* err = &std::cerr;
};

struct ProjectOptions {
    std::vector<std::string> views; ///< empty: every pattern
    std::optional<fs::path> layers_dir;
};

enum class SweepSelection { uv, visible, both };

struct SimulateOptions {
    std::vector<double> thetas;
    std::optional<SweepSelection> sweep;
    std::vector<std::size_t> sweep_counts = default_sweep_counts();
    std::optional<fs::path> layers_dir;
    std::optional<fs::path> pattern;
};

namespace detail {

inline int exit_code_for(const Error& e) noexcept
{
    return e.code() == Errc::invalid_argument ? kExitValidation : kExitIo;
}

/// Runs `body`, converting library errors into exit codes and messages.
inline int guarded(const RunOptions& opts, const char* command, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        *opts.err << "volprint " << command << ": error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        *opts.err << "volprint " << command << ": error: " << e.what() << '\n';
        return kExitIo;
    }
}

class Stopwatch {
public:
    double lap()
    {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Context {
    Manifest manifest;
    fs::path out_dir;
    int bit_depth = 8;
    NormalizeMode normalize = NormalizeMode::theoretical_max;
};

inline Context make_context(const RunOptions& opts)
{
    Context ctx;
    if (opts.manifest) {
        ctx.manifest = load_manifest(*opts.manifest);
    } else {
        ctx.manifest = parse_manifest(Json::object(), fs::current_path());
    }
    ctx.out_dir = opts.out_dir ? *opts.out_dir : ctx.manifest.resolve(ctx.manifest.output.directory);
    ctx.bit_depth = opts.bit_depth.value_or(ctx.manifest.output.bit_depth);
    require(ctx.bit_depth == 8 || ctx.bit_depth == 16, "--bit-depth must be 8 or 16");
    ctx.normalize = opts.normalize.value_or(ctx.manifest.output.normalization);
    ctx.manifest.output.bit_depth = ctx.bit_depth;
    ctx.manifest.output.normalization = ctx.normalize;
    return ctx;
}

inline void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail(Errc::io_failure, "cannot create output directory " + dir.string() + ": " + ec.message());
    }
}

inline void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        fail(Errc::io_failure, "cannot write " + path.string());
    }
}

inline void write_json(const fs::path& path, const Json& doc)
{
    write_text(path, doc.dump(2) + "\n");
}

/// Loads every manifest pattern; fills in default pixel pitches so the
/// embedded manifest is fully resolved.
inline std::vector<PatternView> load_pattern_views(Manifest& m)
{
    const GridSpec g = m.grid_spec();
    std::vector<PatternView> views;
    for (auto& entry : m.patterns) {
        PatternImage probe = load_pattern(m.resolve(entry.path), 1.0);
        const double pitch =
            entry.pixel_pitch_mm.value_or(static_cast<double>(g.nx) * g.pitch_x / static_cast<double>(probe.width()));
        entry.pixel_pitch_mm = pitch;
        PatternImage img(probe.width(), probe.height(), pitch);
        img.pixels() = std::move(probe.pixels());
        views.push_back({std::move(img), axis_from_rotations(entry.rotation_x_deg, entry.rotation_y_deg,
                                                             entry.rotation_order, entry.label)});
    }
    return views;
}

inline Json metrics_json(const FilmStackSpec& spec)
{
    const auto sm = stack_metrics(spec);
    return {{"layer_pitch_mm", sm.layer_pitch}, {"depth_dpi", sm.depth_dpi}, {"total_depth_mm", sm.total_depth}};
}

inline Json histogram_json(const Volume& vol, std::size_t bins = 16)
{
    std::vector<std::vector<std::size_t>> hist(3, std::vector<std::size_t>(bins, 0));
    for (const auto& v : vol.values()) {
        for (std::size_t c = 0; c < 3; ++c) {
            const auto b = std::min(bins - 1, static_cast<std::size_t>(v[c] * static_cast<double>(bins)));
            ++hist[c][b];
        }
    }
    return {{"bins", bins}, {"range", {0.0, 1.0}}, {"r", hist[0]}, {"g", hist[1]}, {"b", hist[2]}};
}

inline std::string format_angle(double deg)
{
    std::ostringstream s;
    s << std::showpos << deg;
    return s.str();
}

inline PatternImage hconcat(const std::vector<PatternImage>& images)
{
    std::size_t w = 0;
    std::size_t h = 0;
    for (const auto& img : images) {
        w += img.width();
        h = std::max(h, img.height());
    }
    PatternImage out(w, h, images.front().pixel_pitch());
    std::size_t x0 = 0;
    for (const auto& img : images) {
        for (std::size_t j = 0; j < img.height(); ++j) {
            for (std::size_t i = 0; i < img.width(); ++i) {
                out.at(x0 + i, j) = img.at(i, j);
            }
        }
        x0 += img.width();
    }
    return out;
}

inline std::string crosstalk_table(const CrosstalkReport& r)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(4);
    s << "normalized cross-correlation (rows: views, columns: originals)\n";
    s << std::setw(10) << "view";
    for (const auto& l : r.original_labels) {
        s << std::setw(10) << l;
    }
    s << std::setw(10) << "verdict" << '\n';
    for (std::size_t v = 0; v < r.view_labels.size(); ++v) {
        s << std::setw(10) << r.view_labels[v];
        for (double c : r.correlations[v]) {
            s << std::setw(10) << c;
        }
        s << std::setw(10) << r.original_labels[r.verdicts[v]] << '\n';
    }
    s << "\nmean squared error\n";
    for (std::size_t v = 0; v < r.view_labels.size(); ++v) {
        s << std::setw(10) << r.view_labels[v];
        for (double e : r.mse[v]) {
            s << std::setw(10) << e;
        }
        s << '\n';
    }
    return s.str();
}

} // namespace detail

inline Json crosstalk_json(const CrosstalkReport& r)
{
    Json verdicts = Json::array();
    Json identified = Json::array();
    for (std::size_t v = 0; v < r.verdicts.size(); ++v) {
        verdicts.push_back(r.original_labels[r.verdicts[v]]);
        const auto own = r.own_original(v);
        identified.push_back(own.has_value() && *own == r.verdicts[v]);
    }
    return {{"views", r.view_labels}, {"originals", r.original_labels}, {"correlations", r.correlations},
            {"mse", r.mse},           {"verdicts", verdicts},           {"verdict_indices", r.verdicts},
            {"identified", identified}};
}

/// Designs the volume and writes one image per film plus a run report.
inline int cmd_design(const RunOptions& opts)
{
    return detail::guarded(opts, "design", [&] {
        detail::Stopwatch clock;
        auto ctx = detail::make_context(opts);
        if (ctx.manifest.patterns.empty()) {
            throw ManifestError("patterns: at least one pattern is required");
        }
        DesignInput input{detail::load_pattern_views(ctx.manifest), ctx.manifest.grid_spec()};
        const double t_load = clock.lap();
        const auto warnings = design_warnings(input);
        for (const auto& w : warnings) {
            *opts.err << "volprint design: warning: " << w << '\n';
        }
        const Volume vol = design_volume(input, opts.threads);
        const double t_design = clock.lap();
        const auto layers = emit_layers(vol, ctx.bit_depth);
        write_layers(layers, ctx.out_dir);

        Json names = Json::array();
        for (const auto& l : layers) {
            names.push_back(l.file_name);
        }
        const GridSpec& g = vol.grid();
        Json report{{"command", "design"},
                    {"manifest_hash", manifest_hash(ctx.manifest)},
                    {"manifest", resolved_json(ctx.manifest)},
                    {"warnings", warnings},
                    {"volume",
                     {{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz}, {"pitch_x", g.pitch_x}, {"pitch_y", g.pitch_y},
                      {"layer_pitch", g.layer_pitch}}},
                    {"bit_depth", ctx.bit_depth},
                    {"layers", names},
                    {"histograms", detail::histogram_json(vol)},
                    {"stack_metrics", detail::metrics_json(ctx.manifest.stack)}};
        detail::write_json(ctx.out_dir / "design_report.json", report);
        const double t_write = clock.lap();
        detail::write_json(ctx.out_dir / "timings.json",
                           {{"command", "design"},
                            {"threads", resolve_threads(opts.threads)},
                            {"seconds", {{"load", t_load}, {"design", t_design}, {"write", t_write}}}});
        *opts.out << "wrote " << layers.size() << " layers to " << ctx.out_dir.string() << '\n';
        return int{kExitOk};
    });
}

/// Simulates the view along each selected pattern axis and scores crosstalk.
inline int cmd_project(const RunOptions& opts, const ProjectOptions& popts = {})
{
    return detail::guarded(opts, "project", [&] {
        detail::Stopwatch clock;
        auto ctx = detail::make_context(opts);
        if (ctx.manifest.patterns.empty()) {
            throw ManifestError("patterns: at least one pattern is required");
        }
        std::vector<std::size_t> selected;
        if (popts.views.empty()) {
            for (std::size_t i = 0; i < ctx.manifest.patterns.size(); ++i) {
                selected.push_back(i);
            }
        } else {
            for (const auto& label : popts.views) {
                std::optional<std::size_t> found;
                for (std::size_t i = 0; i < ctx.manifest.patterns.size(); ++i) {
                    if (ctx.manifest.patterns[i].label == label) {
                        found = i;
                    }
                }
                if (!found) {
                    throw ManifestError("unknown view label \"" + label + "\"");
                }
                selected.push_back(*found);
            }
        }

        const auto patterns = detail::load_pattern_views(ctx.manifest);
        const GridSpec grid = ctx.manifest.grid_spec();
        const Volume vol = popts.layers_dir
                               ? load_layers(*popts.layers_dir, grid.pitch_x, grid.pitch_y, grid.layer_pitch)
                               : design_volume(DesignInput{patterns, grid}, opts.threads);
        const double t_volume = clock.lap();

        detail::ensure_dir(ctx.out_dir);
        std::vector<ProjectedPattern> views;
        std::vector<PatternImage> originals;
        std::vector<std::string> original_labels;
        for (const auto& p : patterns) {
            originals.push_back(p.pattern);
            original_labels.push_back(p.axis.label());
        }
        Json outputs = Json::array();
        Json scales = Json::object();
        for (auto idx : selected) {
            const auto& pv = patterns[idx];
            auto projected = project_volume(vol, pv.axis, ViewRaster::like(pv.pattern),
                                            ProjectionOptions{SliceMode::automatic, opts.threads});
            const auto normalized = normalize_projection(projected, ctx.normalize);
            const std::string name = "view_" + pv.axis.label() + ".png";
            save_image(normalized.image, ctx.out_dir / name, ctx.bit_depth);
            outputs.push_back(name);
            scales[pv.axis.label()] = normalized.normalization.scale;
            views.push_back(std::move(projected));
        }
        const double t_project = clock.lap();

        const auto report = crosstalk_report(views, originals, ctx.normalize, original_labels);
        Json doc = crosstalk_json(report);
        doc["command"] = "project";
        doc["manifest_hash"] = manifest_hash(ctx.manifest);
        doc["manifest"] = resolved_json(ctx.manifest);
        doc["normalization"] = {{"mode", to_string(ctx.normalize)}, {"scales", scales}};
        doc["images"] = outputs;
        doc["volume_source"] = popts.layers_dir ? "layers" : "design";
        detail::write_json(ctx.out_dir / "crosstalk_report.json", doc);
        detail::write_text(ctx.out_dir / "crosstalk_report.txt", detail::crosstalk_table(report));
        detail::write_json(ctx.out_dir / "timings.json",
                           {{"command", "project"},
                            {"threads", resolve_threads(opts.threads)},
                            {"seconds", {{"volume", t_volume}, {"project", t_project}, {"report", clock.lap()}}}});
        *opts.out << detail::crosstalk_table(report);
        return int{kExitOk};
    });
}

/// Slices a coloured point cloud into film images.
inline int cmd_slice(const RunOptions& opts, const fs::path& cloud_path)
{
    return detail::guarded(opts, "slice", [&] {
        auto ctx = detail::make_context(opts);
        const PointCloud cloud = load_point_cloud(cloud_path);
        const auto result = slice_point_cloud(cloud, ctx.manifest.stack, ctx.manifest.slice.res_x,
                                              ctx.manifest.slice.res_y, ctx.manifest.slice.combine);
        detail::ensure_dir(ctx.out_dir);
        Json names = Json::array();
        for (std::size_t k = 0; k < result.layers.size(); ++k) {
            const auto name = layer_file_name(k);
            save_image(result.layers[k], ctx.out_dir / name, ctx.bit_depth);
            names.push_back(name);
        }
        const auto& r = result.report;
        Json report{{"command", "slice"},
                    {"manifest_hash", manifest_hash(ctx.manifest)},
                    {"manifest", resolved_json(ctx.manifest)},
                    {"input_count", r.input_count},
                    {"assigned_per_film", r.assigned_per_film},
                    {"assigned_total", r.assigned_total()},
                    {"discarded_z", r.discarded_z},
                    {"discarded_xy", r.discarded_xy},
                    {"conserved", r.assigned_total() + r.discarded_z + r.discarded_xy == r.input_count},
                    {"layers", names},
                    {"stack_metrics", detail::metrics_json(ctx.manifest.stack)}};
        detail::write_json(ctx.out_dir / "slice_report.json", report);
        *opts.out << "sliced " << r.input_count << " points: " << r.assigned_total() << " assigned, "
                  << r.discarded_z << " outside the stack depth, " << r.discarded_xy << " outside the film area\n";
        return int{kExitOk};
    });
}

/// Renders the optical stack from oblique viewpoints and/or runs the
/// film-sandwich sweeps.
inline int cmd_simulate(const RunOptions& opts, SimulateOptions sopts = {})
{
    return detail::guarded(opts, "simulate", [&] {
        auto ctx = detail::make_context(opts);
        for (double t : sopts.thetas) {
            require(std::isfinite(t) && std::abs(t) < kMaxViewAngleDeg,
                    "theta " + std::to_string(t) + " outside (-60, 60) degrees");
        }
        if (sopts.thetas.empty() && !sopts.sweep) {
            sopts.thetas = {-30.0, 0.0, 30.0};
        }
        detail::ensure_dir(ctx.out_dir);
        const auto& stack = ctx.manifest.stack;
        const auto& optics = ctx.manifest.optics;
        Json report{{"command", "simulate"},
                    {"manifest_hash", manifest_hash(ctx.manifest)},
                    {"manifest", resolved_json(ctx.manifest)}};

        if (!sopts.thetas.empty()) {
            std::vector<PatternImage> layers;
            if (sopts.layers_dir) {
                for (std::size_t k = 0; k < stack.n_films; ++k) {
                    const auto raw = read_png(*sopts.layers_dir / layer_file_name(k), true);
                    layers.push_back(from_raw(raw, stack.width / static_cast<double>(raw.width)));
                }
            } else {
                if (ctx.manifest.patterns.empty()) {
                    throw ManifestError("simulate: give --layers or at least one manifest pattern");
                }
                auto input = DesignInput{detail::load_pattern_views(ctx.manifest), ctx.manifest.grid_spec()};
                const Volume vol = design_volume(input, opts.threads);
                for (std::size_t k = 0; k < vol.grid().nz; ++k) {
                    layers.push_back(vol.layer(k));
                }
            }
            Json views = Json::array();
            for (double theta : sopts.thetas) {
                const auto view = render_stack_view(layers, stack, optics, theta, opts.threads);
                const std::string name = "stack_view_theta" + detail::format_angle(theta) + ".png";
                save_image(view.display, ctx.out_dir / name, ctx.bit_depth);
                views.push_back({{"theta_deg", theta},
                                 {"image", name},
                                 {"theoretical_max", view.theoretical_max},
                                 {"mean_display", view.display.mean_value()}});
            }
            report["stack_views"] = views;
        }

        if (sopts.sweep) {
            PatternImage pattern = sopts.pattern
                                       ? load_pattern(*sopts.pattern, 1.0)
                                       : synthetic::rgb_discs_pattern(300, 300, 1.0);
            {
                PatternImage scaled(pattern.width(), pattern.height(), stack.width / static_cast<double>(pattern.width()));
                scaled.pixels() = std::move(pattern.pixels());
                pattern = std::move(scaled);
            }
            Json sweeps = Json::object();
            auto run = [&](SweepPath path, const char* tag) {
                const auto entries = sandwich_sweep(pattern, path, optics, sopts.sweep_counts);
                Json rows = Json::array();
                std::vector<PatternImage> images;
                bool decreasing = true;
                for (std::size_t i = 0; i < entries.size(); ++i) {
                    const auto& e = entries[i];
                    char name[64];
                    std::snprintf(name, sizeof name, "sandwich_%s_%02zu.png", tag, path == SweepPath::uv ? e.n_uv : e.n_vis);
                    save_image(e.image, ctx.out_dir / name, ctx.bit_depth);
                    images.push_back(e.image);
                    rows.push_back({{"n_uv", e.n_uv},
                                    {"n_vis", e.n_vis},
                                    {"mean_brightness", e.mean_brightness},
                                    {"image", name}});
                    if (i > 0 && !(e.mean_brightness < entries[i - 1].mean_brightness)) {
                        decreasing = false;
                    }
                }
                save_image(detail::hconcat(images), ctx.out_dir / (std::string("sandwich_") + tag + "_grid.png"),
                           ctx.bit_depth);
                sweeps[tag] = {{"entries", rows}, {"strictly_decreasing", decreasing}};
            };
            if (*sopts.sweep != SweepSelection::visible) {
                run(SweepPath::uv, "uv");
            }
            if (*sopts.sweep != SweepSelection::uv) {
                run(SweepPath::visible, "vis");
            }
            detail::write_json(ctx.out_dir / "sandwich_sweep.json", sweeps);
            report["sweeps"] = sweeps;
        }
        detail::write_json(ctx.out_dir / "simulate_report.json", report);
        *opts.out << "wrote simulation outputs to " << ctx.out_dir.string() << '\n';
        return int{kExitOk};
    });
}

/// Prints the resolved configuration and derived stack quantities.
inline int cmd_info(const RunOptions& opts)
{
    return detail::guarded(opts, "info", [&] {
        auto ctx = detail::make_context(opts);
        const auto sm = stack_metrics(ctx.manifest.stack);
        const GridSpec g = ctx.manifest.grid_spec();
        auto& out = *opts.out;
        out << std::fixed << std::setprecision(4);
        out << "film stack:      " << ctx.manifest.stack.n_films << " films, " << ctx.manifest.stack.film_thickness
            << " mm thick, " << ctx.manifest.stack.gap << " mm gaps\n";
        out << "layer pitch:     " << sm.layer_pitch << " mm\n";
        out << "depth resolution " << sm.depth_dpi << " dpi\n";
        out << "total depth:     " << sm.total_depth << " mm\n";
        out << "grid:            " << g.nx << " x " << g.ny << " x " << g.nz << " voxels, " << g.pitch_x << " x "
            << g.pitch_y << " mm in-plane\n";
        out << "patterns:        " << ctx.manifest.patterns.size() << '\n';
        for (const auto& p : ctx.manifest.patterns) {
            const auto axis = axis_from_rotations(p.rotation_x_deg, p.rotation_y_deg, p.rotation_order, p.label);
            const auto& d = axis.direction();
            out << "  " << p.label << ": " << p.path << "  direction (" << d.x << ", " << d.y << ", " << d.z << ")\n";
        }
        const auto profile = layer_excitation_profile(ctx.manifest.stack, ctx.manifest.optics);
        out << "uv excitation:   front " << profile.front() << ", back " << profile.back() << '\n';
        out << "manifest hash:   " << manifest_hash(ctx.manifest) << '\n';
        out << resolved_json(ctx.manifest).dump(2) << '\n';
        return int{kExitOk};
    });
}

} // namespace volprint::cli
