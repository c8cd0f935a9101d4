// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Usage: acceptance <path-to-volprint-cli>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "volprint/synthetic.hpp"
#include "volprint/volprint.hpp"

namespace {

using namespace volprint;
namespace fs = std::filesystem;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

Outcome attenuation()
{
    const OpticalModel m;
    const double f20 = uv_excitation_factor(20, m);
    const double f25 = uv_excitation_factor(25, m);
    return {f20 >= 0.0185 && f20 <= 0.0195 && f20 <= 0.02 && f25 < 0.01,
            fmt("t_uv^20 = %.5f, t_uv^25 = %.5f", f20, f25)};
}

Outcome depth_resolution()
{
    const auto sm = stack_metrics(FilmStackSpec{});
    return {std::abs(sm.depth_dpi - 42.0) <= 0.5, fmt("%.2f dpi at %.2f mm pitch", sm.depth_dpi, sm.layer_pitch)};
}

Outcome axis_aligned_factorization()
{
    const auto start = std::chrono::steady_clock::now();
    const std::size_t w = 64;
    const std::size_t d = 16;
    const auto a = synthetic::noise_pattern(w, w, 1.0, 301);
    const auto b = synthetic::noise_pattern(w, w, 1.0, 302);
    const auto c = synthetic::noise_pattern(w, w, 1.0, 303);
    const ProjectionAxis ax({1, 0, 0});
    const ProjectionAxis ay({0, 1, 0});
    const ProjectionAxis az({0, 0, 1});
    const Volume vol = design_volume({{{a, ax}, {b, ay}, {c, az}}, GridSpec{w, w, d, 1.0, 1.0, 1.0}});
    const auto expected = oracle::axis_aligned_views(a, b, c, d);
    const ViewRaster raster{w, w, 1.0};
    double worst = 0.0;
    auto compare = [&](const FloatImage& got, const FloatImage& want) {
        for (std::size_t n = 0; n < want.pixels().size(); ++n) {
            for (std::size_t ch = 0; ch < 3; ++ch) {
                worst = std::max(worst, std::abs(got.pixels()[n][ch] - want.pixels()[n][ch]));
            }
        }
    };
    compare(project_volume(vol, ax, raster).raw, expected.along_x);
    compare(project_volume(vol, ay, raster).raw, expected.along_y);
    compare(project_volume(vol, az, raster).raw, expected.along_z);
    const double t = seconds_since(start);
    return {worst < 1e-6 && t < 5.0, fmt("max abs error %.3g, %.2f s", worst, t)};
}

Outcome brute_force_equivalence()
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<ProjectionAxis> axes{axis_from_rotations(0, -30), axis_from_rotations(0, 30),
                                           axis_from_rotations(20, 20), axis_from_rotations(-20, -20)};
    std::size_t mismatches = 0;
    for (std::size_t count = 2; count <= 4; ++count) {
        DesignInput input;
        input.grid = {8, 8, 4, 1.0, 1.0, 0.6};
        std::vector<PatternImage> pats;
        std::vector<ProjectionAxis> used;
        for (std::size_t p = 0; p < count; ++p) {
            pats.push_back(synthetic::noise_pattern(10, 10, 0.9, 400 + 10 * count + p));
            used.push_back(axes[p]);
            input.patterns.push_back({pats.back(), axes[p]});
        }
        const auto expected = oracle::naive_design(pats, used, input.grid);
        const Volume vol = design_volume(input);
        for (std::size_t n = 0; n < expected.size(); ++n) {
            mismatches += vol.values()[n] == expected[n] ? 0 : 1;
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 1.0, fmt("%.0f differing voxels over 2-4 patterns, %.3f s", double(mismatches), t)};
}

struct Identification {
    bool all_identified = false;
    double mean_diagonal = 0.0;
    double seconds = 0.0;
    std::string table;
};

Identification identify(const std::vector<std::pair<double, double>>& rotations, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    const GridSpec grid; // 512 x 512 x 20 at 35 mm
    DesignInput input;
    input.grid = grid;
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        const std::string label(1, static_cast<char>('A' + i));
        input.patterns.push_back({synthetic::scene_pattern(512, 512, grid.pitch_x, seed * 100 + i),
                                  axis_from_rotations(rotations[i].first, rotations[i].second,
                                                      RotationOrder::y_after_x, label)});
    }
    const Volume vol = design_volume(input, 0);
    std::vector<ProjectedPattern> views;
    std::vector<PatternImage> originals;
    for (const auto& p : input.patterns) {
        views.push_back(project_volume(vol, p.axis, ViewRaster::like(p.pattern), {SliceMode::automatic, 0}));
        originals.push_back(p.pattern);
    }
    const auto report = crosstalk_report(views, originals);
    Identification out{report.all_identified(), report.mean_own_correlation(), seconds_since(start), {}};
    std::ostringstream table;
    for (std::size_t v = 0; v < report.correlations.size(); ++v) {
        table << (v ? "; " : "") << report.view_labels[v] << ":";
        for (double c : report.correlations[v]) {
            table << ' ' << fmt("%.3f", c);
        }
    }
    out.table = table.str();
    return out;
}

Identification three_view;

Outcome identification_three()
{
    three_view = identify({{0, -30}, {0, 0}, {0, 30}}, 1);
    return {three_view.all_identified && three_view.seconds < 60.0,
            fmt("mean own correlation %.3f, %.1f s", three_view.mean_diagonal, three_view.seconds) + " [" +
                three_view.table + "]"};
}

Outcome identification_four()
{
    const auto four = identify({{20, 20}, {20, -20}, {-20, 20}, {-20, -20}}, 1);
    return {four.all_identified && four.mean_diagonal < three_view.mean_diagonal && four.seconds < 60.0,
            fmt("mean own correlation %.3f (3-view %.3f), %.1f s", four.mean_diagonal, three_view.mean_diagonal,
                four.seconds) +
                " [" + four.table + "]"};
}

Outcome slicer_conservation()
{
    const FilmStackSpec spec;
    const auto cloud = synthetic::scattered_cloud(51767, spec, 7);
    const auto result = slice_point_cloud(cloud, spec, 300, 300);
    const auto& r = result.report;
    const auto expected = oracle::histogram_bins(cloud, spec);
    const bool conserved = r.assigned_total() + r.discarded_z + r.discarded_xy == 51767;
    const bool matches = r.assigned_per_film == expected.per_film && r.discarded_z == expected.out_z &&
                         r.discarded_xy == expected.out_xy;
    return {conserved && matches && result.layers.size() == 20,
            fmt("%.0f assigned + %.0f outside depth + %.0f outside area", double(r.assigned_total()),
                double(r.discarded_z), double(r.discarded_xy)) +
                (matches ? ", per-film counts match oracle" : ", per-film counts DIFFER from oracle")};
}

Outcome sandwich_sweep_trend()
{
    const auto pattern = synthetic::rgb_discs_pattern(300, 300, 35.0 / 300.0);
    const OpticalModel m;
    const auto uv = sandwich_sweep(pattern, SweepPath::uv, m);
    const auto vis = sandwich_sweep(pattern, SweepPath::visible, m);
    bool decreasing = true;
    bool vis_slower = true;
    for (std::size_t i = 1; i < uv.size(); ++i) {
        decreasing = decreasing && uv[i].mean_brightness < uv[i - 1].mean_brightness;
        vis_slower = vis_slower && vis[i].mean_brightness > uv[i].mean_brightness;
    }
    const double ratio = uv[4].mean_brightness / uv[0].mean_brightness;
    const double vis_ratio = vis[4].mean_brightness / vis[0].mean_brightness;
    return {decreasing && vis_slower && ratio >= 0.017 && ratio <= 0.021,
            fmt("uv 20/0 = %.4f, visible 20/0 = %.4f", ratio, vis_ratio) +
                (decreasing ? ", strictly decreasing" : ", NOT decreasing")};
}

Outcome property_suites()
{
    std::mt19937_64 rng(9001);
    std::uniform_real_distribution<double> angle(-45.0, 45.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::map<std::string, bool> ok{{"permutation", true}, {"column", true}, {"scaling", true},
                                   {"linearity", true},  {"bound", true},  {"quantization", true}};
    for (int trial = 0; trial < 10; ++trial) {
        DesignInput input;
        input.grid = {9, 7, 4, 1.0, 1.0, 0.8};
        for (std::size_t p = 0; p < 3; ++p) {
            input.patterns.push_back({synthetic::noise_pattern(12, 12, 1.0, rng()),
                                      axis_from_rotations(angle(rng), angle(rng))});
        }
        const Volume base = design_volume(input);

        auto shuffled = input;
        std::shuffle(shuffled.patterns.begin(), shuffled.patterns.end(), rng);
        ok["permutation"] = ok["permutation"] && design_volume(shuffled).values() == base.values();

        DesignInput single{{{input.patterns[0].pattern, ProjectionAxis({0, 0, 1})}}, input.grid};
        const Volume col = design_volume(single);
        for (std::size_t k = 1; k < input.grid.nz; ++k) {
            ok["column"] = ok["column"] && col.layer(k).pixels() == col.layer(0).pixels();
        }

        const double s = unit(rng);
        auto scaled = input;
        for (auto& p : scaled.patterns[1].pattern.pixels()) {
            p = p * s;
        }
        const Volume sv = design_volume(scaled);
        for (std::size_t n = 0; n < base.values().size(); ++n) {
            for (std::size_t c = 0; c < 3; ++c) {
                ok["scaling"] = ok["scaling"] && std::abs(sv.values()[n][c] - s * base.values()[n][c]) <= 1e-15;
            }
        }

        const auto axis = axis_from_rotations(angle(rng), angle(rng));
        const ViewRaster raster{14, 14, 0.8};
        const double alpha = 2.0 * unit(rng) - 1.0;
        const double beta = 2.0 * unit(rng) - 1.0;
        Volume mix(input.grid);
        for (std::size_t n = 0; n < mix.values().size(); ++n) {
            mix.values()[n] = base.values()[n] * alpha + col.values()[n] * beta;
        }
        const auto p1 = project_volume(base, axis, raster);
        const auto p2 = project_volume(col, axis, raster);
        const auto pm = project_volume(mix, axis, raster);
        for (std::size_t n = 0; n < pm.raw.pixels().size(); ++n) {
            for (std::size_t c = 0; c < 3; ++c) {
                const double want = alpha * p1.raw.pixels()[n][c] + beta * p2.raw.pixels()[n][c];
                ok["linearity"] = ok["linearity"] && std::abs(pm.raw.pixels()[n][c] - want) <= 1e-9;
                const double raw = p1.raw.pixels()[n][c];
                ok["bound"] = ok["bound"] && raw >= 0.0 && raw <= static_cast<double>(input.grid.nz);
            }
        }
    }
    for (int n = 0; n < 100000; ++n) {
        const double c = unit(rng);
        ok["quantization"] = ok["quantization"] && std::abs(dequantize(quantize(c, 8), 8) - c) <= 1.0 / 510.0;
    }
    bool all = true;
    std::string failed;
    for (const auto& [name, pass] : ok) {
        all = all && pass;
        if (!pass) {
            failed += " " + name;
        }
    }
    return {all, all ? "permutation, column, scaling, linearity, bound, quantization hold"
                     : "failed:" + failed};
}

std::string file_bytes(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Every output file except the wall-clock sidecar, keyed by name.
std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name != "timings.json") {
            files[name] = file_bytes(e.path());
        }
    }
    return files;
}

Outcome determinism(const std::string& cli)
{
    if (cli.empty() || !fs::exists(cli)) {
        return {false, "CLI binary not given or missing: '" + cli + "'"};
    }
    volprint::testing::TempDir dir;
    nlohmann::json pats = nlohmann::json::array();
    const double rot[3][2] = {{0, -30}, {0, 0}, {20, 30}};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string name = "pattern_" + std::to_string(i) + ".png";
        save_image(synthetic::scene_pattern(128, 128, 1.0, 900 + i), dir / name);
        pats.push_back({{"path", name}, {"rotation_x_deg", rot[i][0]}, {"rotation_y_deg", rot[i][1]}});
    }
    const nlohmann::json manifest{{"patterns", pats}, {"grid", {{"nx", 128}, {"ny", 128}}},
                                  {"output", {{"directory", "out"}}}};
    std::ofstream(dir / "manifest.json") << manifest.dump(2);

    std::vector<std::map<std::string, std::string>> runs;
    for (const char* threads : {"1", "8"}) {
        std::map<std::string, std::string> combined;
        for (const char* command : {"design", "project"}) {
            const std::string cmd = "\"" + cli + "\" " + command + " --manifest \"" + (dir / "manifest.json").string() +
                                    "\" --threads " + threads + " > \"" + (dir / "log.txt").string() + "\" 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                return {false, std::string(command) + " failed: " + file_bytes(dir / "log.txt")};
            }
        }
        combined = snapshot(dir / "out");
        runs.push_back(std::move(combined));
        fs::remove_all(dir / "out");
    }
    std::size_t differing = 0;
    for (const auto& [name, bytes] : runs[0]) {
        const auto it = runs[1].find(name);
        differing += it == runs[1].end() || it->second != bytes ? 1 : 0;
    }
    differing += runs[1].size() > runs[0].size() ? runs[1].size() - runs[0].size() : 0;
    return {differing == 0 && runs[0].size() >= 20,
            fmt("%.0f output files compared, %.0f differ between 1 and 8 threads", double(runs[0].size()),
                double(differing))};
}

} // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"attenuation regression", attenuation},
        {"depth resolution", depth_resolution},
        {"axis-aligned factorization oracle", axis_aligned_factorization},
        {"brute-force design equivalence", brute_force_equivalence},
        {"three-view identification at 512 px", identification_three},
        {"four-view identification at 512 px", identification_four},
        {"slicer conservation", slicer_conservation},
        {"sandwich sweep trend", sandwich_sweep_trend},
        {"property suites", property_suites},
        {"thread-count determinism", [&] { return determinism(cli); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
