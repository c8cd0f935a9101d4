// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/geometry.hpp"
#include "volprint/image.hpp"
#include "volprint/parallel.hpp"
#include "volprint/png_io.hpp"
#include "volprint/volume.hpp"

namespace volprint {

struct PatternView {
    PatternImage pattern;
    ProjectionAxis axis;
};

struct DesignInput {
    std::vector<PatternView> patterns;
    GridSpec grid;
};

/// Pattern counts above this still work but views lose contrast quickly.
inline constexpr std::size_t kPatternCountWarning = 6;

/// Non-fatal problems with a design input (near-duplicate axes, many patterns).
inline std::vector<std::string> design_warnings(const DesignInput& input)
{
    std::vector<std::string> warnings;
    const auto& pats = input.patterns;
    for (std::size_t a = 0; a < pats.size(); ++a) {
        for (std::size_t b = a + 1; b < pats.size(); ++b) {
            const double angle = pats[a].axis.angle_to(pats[b].axis);
            if (angle < 1.0) {
                warnings.push_back("axes of patterns " + std::to_string(a) + " and " + std::to_string(b) +
                                   " are within 1 degree of each other");
            }
        }
    }
    if (pats.size() > kPatternCountWarning) {
        warnings.push_back(std::to_string(pats.size()) + " patterns requested; contrast degrades above " +
                           std::to_string(kPatternCountWarning));
    }
    return warnings;
}

/// Voxel colour = per-channel product of every pattern sampled where the
/// voxel centre projects onto that pattern's plane.
///
/// Per channel the samples are multiplied in ascending order, so the result
/// is bit-identical for any ordering of `input.patterns` and any thread count.
inline Volume design_volume(const DesignInput& input, unsigned threads = 1)
{
    require(!input.patterns.empty(), "design_volume: at least one pattern is required");
    input.grid.validate();
    for (const auto& p : input.patterns) {
        p.pattern.validate();
    }

    Volume vol(input.grid);
    const GridSpec& g = input.grid;
    const std::size_t n_pat = input.patterns.size();
    const std::size_t columns = g.ny * g.nz; // one (j, k) row of voxels per task item

    parallel_for_blocks(columns, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<Rgb> samples(n_pat);
        std::vector<double> channel(n_pat);
        for (std::size_t row = begin; row < end; ++row) {
            const std::size_t j = row % g.ny;
            const std::size_t k = row / g.ny;
            for (std::size_t i = 0; i < g.nx; ++i) {
                const Vec3 centre = vol.voxel_centre(i, j, k);
                for (std::size_t p = 0; p < n_pat; ++p) {
                    const auto uv = project_point_to_plane(centre, input.patterns[p].axis);
                    samples[p] = bilinear_sample(input.patterns[p].pattern, uv.u, uv.v);
                }
                Rgb value;
                for (std::size_t c = 0; c < 3; ++c) {
                    for (std::size_t p = 0; p < n_pat; ++p) {
                        channel[p] = samples[p][c];
                    }
                    std::sort(channel.begin(), channel.end());
                    double prod = 1.0;
                    for (double s : channel) {
                        prod *= s;
                    }
                    value[c] = prod;
                }
                vol.at(i, j, k) = value;
            }
        }
    });
    return vol;
}

/// One quantized film image ready to be written.
struct EncodedLayer {
    std::string file_name;
    RawRgbImage image;
};

inline std::string layer_file_name(std::size_t k)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "layer_%03zu.png", k);
    return buf;
}

/// Slices the volume into nz film images, index increasing with z.
inline std::vector<EncodedLayer> emit_layers(const Volume& vol, int bit_depth = 8)
{
    require(bit_depth == 8 || bit_depth == 16, "emit_layers: bit depth must be 8 or 16");
    std::vector<EncodedLayer> layers;
    layers.reserve(vol.grid().nz);
    for (std::size_t k = 0; k < vol.grid().nz; ++k) {
        layers.push_back({layer_file_name(k), to_raw(vol.layer(k), bit_depth)});
    }
    return layers;
}

inline void write_layers(const std::vector<EncodedLayer>& layers, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        fail(Errc::io_failure, "cannot create output directory " + dir.string() + ": " + ec.message());
    }
    for (const auto& layer : layers) {
        write_png(dir / layer.file_name, layer.image);
    }
}

/// Rebuilds a volume from film images; all layers must share one size.
inline Volume restack_layers(const std::vector<RawRgbImage>& layers, double pitch_x, double pitch_y,
                             double layer_pitch)
{
    require(!layers.empty(), "restack_layers: no layers");
    GridSpec grid{layers.front().width, layers.front().height, layers.size(), pitch_x, pitch_y, layer_pitch};
    Volume vol(grid);
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& raw = layers[k];
        require(raw.width == grid.nx && raw.height == grid.ny, "restack_layers: layer size mismatch");
        for (std::size_t n = 0; n < grid.nx * grid.ny; ++n) {
            vol.values()[k * grid.nx * grid.ny + n] = {dequantize(raw.samples[3 * n], raw.bit_depth),
                                                       dequantize(raw.samples[3 * n + 1], raw.bit_depth),
                                                       dequantize(raw.samples[3 * n + 2], raw.bit_depth)};
        }
    }
    return vol;
}

/// Reads layer_000.png, layer_001.png, ... from `dir` until the sequence ends.
inline Volume load_layers(const std::filesystem::path& dir, double pitch_x, double pitch_y, double layer_pitch)
{
    std::vector<RawRgbImage> layers;
    for (std::size_t k = 0;; ++k) {
        const auto path = dir / layer_file_name(k);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) {
            break;
        }
        layers.push_back(read_png(path, true));
    }
    if (layers.empty()) {
        fail(Errc::file_not_found, "no layer_000.png in " + dir.string());
    }
    return restack_layers(layers, pitch_x, pitch_y, layer_pitch);
}

} // namespace volprint
