// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/image.hpp"
#include "volprint/vec3.hpp"

namespace volprint {

/// Voxel grid dimensions and physical spacing (mm). The grid is centred on
/// the origin; layer_pitch is the film-to-film distance along z.
struct GridSpec {
    std::size_t nx = 512;
    std::size_t ny = 512;
    std::size_t nz = 20;
    double pitch_x = 35.0 / 512.0;
    double pitch_y = 35.0 / 512.0;
    double layer_pitch = 0.6;

    void validate() const
    {
        require(nx >= 1 && ny >= 1 && nz >= 1, "GridSpec: dimensions must be >= 1");
        require(std::isfinite(pitch_x) && pitch_x > 0.0 && std::isfinite(pitch_y) && pitch_y > 0.0 &&
                    std::isfinite(layer_pitch) && layer_pitch > 0.0,
                "GridSpec: pitches must be > 0");
    }

    [[nodiscard]] std::size_t count(int axis) const noexcept { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
    [[nodiscard]] double pitch(int axis) const noexcept
    {
        return axis == 0 ? pitch_x : (axis == 1 ? pitch_y : layer_pitch);
    }

    /// Centre coordinate of index `i` along `axis`.
    [[nodiscard]] double centre(int axis, std::size_t i) const noexcept
    {
        return (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(count(axis))) * pitch(axis);
    }

    [[nodiscard]] std::size_t voxel_count() const noexcept { return nx * ny * nz; }
};

/// RGB voxel volume, x fastest, then y, then z (layer).
class Volume {
public:
    explicit Volume(const GridSpec& grid, Rgb fill = {}) : grid_(grid)
    {
        grid_.validate();
        values_.assign(grid_.voxel_count(), fill);
    }

    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }

    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept
    {
        return (k * grid_.ny + j) * grid_.nx + i;
    }

    Rgb& at(std::size_t i, std::size_t j, std::size_t k) { return values_[index(i, j, k)]; }
    [[nodiscard]] const Rgb& at(std::size_t i, std::size_t j, std::size_t k) const { return values_[index(i, j, k)]; }

    [[nodiscard]] Vec3 voxel_centre(std::size_t i, std::size_t j, std::size_t k) const noexcept
    {
        return {grid_.centre(0, i), grid_.centre(1, j), grid_.centre(2, k)};
    }

    [[nodiscard]] std::vector<Rgb>& values() noexcept { return values_; }
    [[nodiscard]] const std::vector<Rgb>& values() const noexcept { return values_; }

    /// The z = k slab as an image with the in-plane pitch of the grid (pitch_x).
    [[nodiscard]] PatternImage layer(std::size_t k) const
    {
        PatternImage img(grid_.nx, grid_.ny, grid_.pitch_x);
        const auto offset = index(0, 0, k);
        std::copy(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                  values_.begin() + static_cast<std::ptrdiff_t>(offset + grid_.nx * grid_.ny), img.pixels().begin());
        return img;
    }

private:
    GridSpec grid_;
    std::vector<Rgb> values_;
};

} // namespace volprint
