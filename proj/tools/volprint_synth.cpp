// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0

// Writes procedural demo inputs: pattern PNGs, an ASCII point cloud and
// manifests for the 3-view and 4-view configurations.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "volprint/png_io.hpp"
#include "volprint/point_cloud.hpp"
#include "volprint/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_manifest(const fs::path& path, const json& doc)
{
    std::ofstream out(path);
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

json pattern_entry(const std::string& file, const std::string& label, double rx, double ry)
{
    return {{"path", file}, {"label", label}, {"rotation_x_deg", rx}, {"rotation_y_deg", ry}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"volprint-synth: generate demo patterns, a point cloud and manifests"};
    std::string out = "demo";
    std::size_t size = 512;
    std::size_t points = 51767;
    std::uint64_t seed = 7;
    app.add_option("--out,-o", out, "Output directory")->capture_default_str();
    app.add_option("--size", size, "Pattern width and height in pixels")->capture_default_str();
    app.add_option("--points", points, "Point-cloud size")->capture_default_str();
    app.add_option("--seed", seed, "Base random seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path dir(out);
        fs::create_directories(dir);
        const double pitch = 35.0 / static_cast<double>(size);
        const char* labels[] = {"A", "B", "C", "D"};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto img = volprint::synthetic::scene_pattern(size, size, pitch, seed * 100 + i);
            volprint::save_image(img, dir / (std::string("pattern_") + labels[i] + ".png"));
        }

        json three{{"patterns",
                    {pattern_entry("pattern_A.png", "A", 0, -30), pattern_entry("pattern_B.png", "B", 0, 0),
                     pattern_entry("pattern_C.png", "C", 0, 30)}},
                   {"grid", {{"nx", size}, {"ny", size}}},
                   {"output", {{"directory", "out_three"}}}};
        write_manifest(dir / "three_views.json", three);

        json four{{"patterns",
                   {pattern_entry("pattern_A.png", "A", 20, 20), pattern_entry("pattern_B.png", "B", 20, -20),
                    pattern_entry("pattern_C.png", "C", -20, 20), pattern_entry("pattern_D.png", "D", -20, -20)}},
                  {"grid", {{"nx", size}, {"ny", size}}},
                  {"output", {{"directory", "out_four"}}}};
        write_manifest(dir / "four_views.json", four);

        volprint::FilmStackSpec stack;
        const auto cloud = volprint::synthetic::scattered_cloud(points, stack, seed);
        volprint::save_point_cloud(cloud, dir / "cloud.xyz");
        json slice{{"slice", {{"res_x", 300}, {"res_y", 300}}}, {"output", {{"directory", "out_slice"}}}};
        write_manifest(dir / "slice.json", slice);

        std::cout << "wrote demo inputs to " << dir.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "volprint-synth: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
