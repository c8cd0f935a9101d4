// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "volprint/error.hpp"
#include "volprint/geometry.hpp"
#include "volprint/image.hpp"
#include "volprint/parallel.hpp"
#include "volprint/volume.hpp"

namespace volprint {

/// Output raster of a simulated view, centred on the view axis.
struct ViewRaster {
    std::size_t width = 512;
    std::size_t height = 512;
    double pitch = 35.0 / 512.0;

    template <typename Range>
    static ViewRaster like(const BasicImage<Range>& img)
    {
        return {img.width(), img.height(), img.pixel_pitch()};
    }
};

enum class SliceMode {
    /// Film planes when the axis crosses them (|d.z| > 0.05), otherwise
    /// voxel slabs along the dominant in-plane grid axis.
    automatic,
    /// Film planes only; grazing axes are rejected.
    films,
};

/// Minimum |d.z| for summing over film planes.
inline constexpr double kGrazingLimit = 0.05;

enum class NormalizeMode {
    theoretical_max, ///< divide by the number of summed slices
    automatic,       ///< divide by the observed maximum over all channels
};

inline const char* to_string(NormalizeMode mode) noexcept
{
    return mode == NormalizeMode::theoretical_max ? "max" : "auto";
}

struct ProjectedPattern {
    FloatImage raw;             ///< unnormalized per-pixel sums
    std::size_t slab_count = 0; ///< number of slices summed (nz in film mode)
    int slab_axis = 2;          ///< 0 = x, 1 = y, 2 = z (films)
    std::string label;
};

struct Normalization {
    NormalizeMode mode = NormalizeMode::theoretical_max;
    double scale = 1.0;
};

struct NormalizedView {
    PatternImage image;
    Normalization normalization;
};

struct ProjectionOptions {
    SliceMode mode = SliceMode::automatic;
    unsigned threads = 1;
};

/// Grid axis the sum runs over for `direction`.
inline int slab_axis_for(const Vec3& direction, SliceMode mode)
{
    if (std::abs(direction.z) > kGrazingLimit) {
        return 2;
    }
    require(mode != SliceMode::films, "project_volume: grazing axis (|d.z| <= 0.05) cannot cross the films");
    return std::abs(direction.x) >= std::abs(direction.y) ? 0 : 1;
}

/// Simulated view along `axis`: each output pixel sums, over every slice of
/// the volume in ascending order, the bilinear in-slice sample where the
/// pixel's ray crosses that slice. Samples outside the volume contribute 0.
inline ProjectedPattern project_volume(const Volume& vol, const ProjectionAxis& axis, const ViewRaster& raster,
                                       const ProjectionOptions& options = {})
{
    require(raster.width >= 1 && raster.height >= 1 && raster.pitch > 0.0,
            "project_volume: invalid output raster");
    const Vec3& d = axis.direction();
    const int s = slab_axis_for(d, options.mode);
    // In-slice axes (a, b) in ascending order.
    const int a = s == 0 ? 1 : 0;
    const int b = s == 2 ? 1 : 2;

    const GridSpec& g = vol.grid();
    const std::array<double, 3> dir{d.x, d.y, d.z};
    const std::size_t n_slabs = g.count(s);
    const std::size_t na = g.count(a);
    const std::size_t nb = g.count(b);
    const double pa = g.pitch(a);
    const double pb = g.pitch(b);

    auto fetch = [&](std::size_t ia, std::size_t ib, std::size_t is) -> const Rgb& {
        std::array<std::size_t, 3> idx{};
        idx[static_cast<std::size_t>(a)] = ia;
        idx[static_cast<std::size_t>(b)] = ib;
        idx[static_cast<std::size_t>(s)] = is;
        return vol.at(idx[0], idx[1], idx[2]);
    };

    ProjectedPattern out{FloatImage(raster.width, raster.height, raster.pitch), n_slabs, s, axis.label()};
    parallel_for_blocks(raster.height, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q) {
            const double v = (static_cast<double>(q) + 0.5 - 0.5 * static_cast<double>(raster.height)) * raster.pitch;
            for (std::size_t p = 0; p < raster.width; ++p) {
                const double u =
                    (static_cast<double>(p) + 0.5 - 0.5 * static_cast<double>(raster.width)) * raster.pitch;
                const Vec3 base = axis.u_basis() * u + axis.v_basis() * v;
                const std::array<double, 3> o{base.x, base.y, base.z};
                Rgb sum;
                for (std::size_t m = 0; m < n_slabs; ++m) {
                    const double t = (g.centre(s, m) - o[static_cast<std::size_t>(s)]) / dir[static_cast<std::size_t>(s)];
                    const double ca = o[static_cast<std::size_t>(a)] + t * dir[static_cast<std::size_t>(a)];
                    const double cb = o[static_cast<std::size_t>(b)] + t * dir[static_cast<std::size_t>(b)];
                    detail::AxisWeights wa;
                    detail::AxisWeights wb;
                    if (!detail::axis_weights(ca, na, pa, wa) || !detail::axis_weights(cb, nb, pb, wb)) {
                        continue;
                    }
                    sum += detail::bilinear(wa, wb, [&](std::size_t ia, std::size_t ib) { return fetch(ia, ib, m); });
                }
                out.raw.at(p, q) = sum;
            }
        }
    });
    return out;
}

/// Maps raw sums to [0, 1] with one scalar for all channels, so hue ratios
/// survive. An all-zero image under automatic mode keeps scale 1.
inline NormalizedView normalize_projection(const ProjectedPattern& projected, NormalizeMode mode)
{
    double scale = 1.0;
    if (mode == NormalizeMode::theoretical_max) {
        scale = static_cast<double>(std::max<std::size_t>(projected.slab_count, 1));
    } else {
        const double peak = projected.raw.max_value();
        scale = peak > 0.0 ? peak : 1.0;
    }
    return {to_pattern(projected.raw, scale), {mode, scale}};
}

} // namespace volprint
