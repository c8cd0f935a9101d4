// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/film_stack.hpp"
#include "volprint/image.hpp"
#include "volprint/point_cloud.hpp"

namespace volprint {

/// Film (0-based) that a point at height `o_z` is printed on: the k with
/// Z_k <= o_z < Z_{k+1}, the last film covering [Z_n, Z_n + pitch).
inline std::optional<std::size_t> assign_film(double o_z, const FilmStackSpec& spec)
{
    const auto z = spec.layer_z();
    const double top = z.back() + spec.pitch();
    if (!(o_z >= z.front() && o_z < top)) {
        return std::nullopt;
    }
    auto k = static_cast<std::size_t>(std::floor((o_z - spec.z_first) / spec.pitch()));
    k = std::min(k, spec.n_films - 1);
    // The layer list is authoritative at the boundaries.
    while (k + 1 < spec.n_films && o_z >= z[k + 1]) {
        ++k;
    }
    while (k > 0 && o_z < z[k]) {
        --k;
    }
    return k;
}

enum class CellCombine {
    max,  ///< per-channel maximum, brightest ink wins
    mean, ///< per-channel average of the points in the cell
};

struct SliceReport {
    std::vector<std::size_t> assigned_per_film;
    std::size_t discarded_z = 0;  ///< below Z_1 or at/above the top of the stack
    std::size_t discarded_xy = 0; ///< outside the film rectangle
    std::size_t input_count = 0;

    [[nodiscard]] std::size_t assigned_total() const noexcept
    {
        std::size_t s = 0;
        for (auto c : assigned_per_film) {
            s += c;
        }
        return s;
    }
};

struct SliceResult {
    std::vector<PatternImage> layers; ///< one per film, index increasing with z
    SliceReport report;
};

/// Rasterizes every point into the pixel containing (O_x, O_y) on its film.
inline SliceResult slice_point_cloud(const PointCloud& cloud, const FilmStackSpec& spec, std::size_t res_x,
                                     std::size_t res_y, CellCombine combine = CellCombine::max)
{
    spec.validate();
    require(res_x >= 1 && res_y >= 1, "slice_point_cloud: resolution must be >= 1");

    SliceResult result;
    const double pitch_x = spec.width / static_cast<double>(res_x);
    result.layers.assign(spec.n_films, PatternImage(res_x, res_y, pitch_x));
    result.report.assigned_per_film.assign(spec.n_films, 0);
    result.report.input_count = cloud.size();

    std::vector<std::vector<std::size_t>> hits;
    if (combine == CellCombine::mean) {
        hits.assign(spec.n_films, std::vector<std::size_t>(res_x * res_y, 0));
    }

    for (const auto& pt : cloud.points) {
        const auto film = assign_film(pt.position.z, spec);
        if (!film) {
            ++result.report.discarded_z;
            continue;
        }
        const double fx = (pt.position.x + 0.5 * spec.width) / spec.width * static_cast<double>(res_x);
        const double fy = (pt.position.y + 0.5 * spec.height) / spec.height * static_cast<double>(res_y);
        if (!(fx >= 0.0 && fx < static_cast<double>(res_x) && fy >= 0.0 && fy < static_cast<double>(res_y))) {
            ++result.report.discarded_xy;
            continue;
        }
        const auto ix = static_cast<std::size_t>(fx);
        const auto iy = static_cast<std::size_t>(fy);
        ++result.report.assigned_per_film[*film];
        Rgb& cell = result.layers[*film].at(ix, iy);
        if (combine == CellCombine::max) {
            cell = {std::max(cell.r, pt.color.r), std::max(cell.g, pt.color.g), std::max(cell.b, pt.color.b)};
        } else {
            cell += pt.color;
            ++hits[*film][iy * res_x + ix];
        }
    }

    if (combine == CellCombine::mean) {
        for (std::size_t k = 0; k < spec.n_films; ++k) {
            auto& px = result.layers[k].pixels();
            for (std::size_t n = 0; n < px.size(); ++n) {
                if (hits[k][n] > 1) {
                    px[n] = px[n] * (1.0 / static_cast<double>(hits[k][n]));
                }
            }
        }
    }
    return result;
}

} // namespace volprint
