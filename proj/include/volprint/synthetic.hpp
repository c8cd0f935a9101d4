// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "volprint/film_stack.hpp"
#include "volprint/image.hpp"
#include "volprint/point_cloud.hpp"

// Procedural inputs for demos and tests: photograph-like patterns (smooth
// colour gradients with overlapping shapes) and scattered point clouds.

namespace volprint::synthetic {

/// Independent uniform [0, 1] channels per pixel.
inline PatternImage noise_pattern(std::size_t w, std::size_t h, double pitch, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PatternImage img(w, h, pitch);
    for (auto& p : img.pixels()) {
        p.r = unit(rng);
        p.g = unit(rng);
        p.b = unit(rng);
    }
    return img;
}

/// A structured scene: a light textured background covered by 60-90
/// filled ellipses and rectangles of random colour. Most of the contrast
/// sits in features a few percent of the pattern width across.
inline PatternImage scene_pattern(std::size_t w, std::size_t h, double pitch, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto colour = [&] { return Rgb{unit(rng), unit(rng), unit(rng)}; };

    const Rgb base = Rgb{0.5, 0.5, 0.5} + colour() * 0.4;
    const double angle = unit(rng) * std::numbers::pi;
    const double freq = 12.0 + 12.0 * unit(rng);

    PatternImage img(w, h, pitch);
    const auto fw = static_cast<double>(w);
    const auto fh = static_cast<double>(h);
    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t i = 0; i < w; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / fw;
            const double y = (static_cast<double>(j) + 0.5) / fh;
            const double texture =
                0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * freq * (x * std::cos(angle) + y * std::sin(angle)));
            img.at(i, j) = base * (0.75 + 0.25 * texture);
        }
    }

    const int shapes = 60 + static_cast<int>(unit(rng) * 30.0);
    for (int s = 0; s < shapes; ++s) {
        const Rgb c = colour();
        const double cx = unit(rng);
        const double cy = unit(rng);
        const double rx = 0.015 + 0.05 * unit(rng);
        const double ry = 0.015 + 0.05 * unit(rng);
        const bool ellipse = unit(rng) < 0.6;
        for (std::size_t j = 0; j < h; ++j) {
            for (std::size_t i = 0; i < w; ++i) {
                const double dx = ((static_cast<double>(i) + 0.5) / fw - cx) / rx;
                const double dy = ((static_cast<double>(j) + 0.5) / fh - cy) / ry;
                const bool inside = ellipse ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
                if (inside) {
                    img.at(i, j) = c;
                }
            }
        }
    }
    for (auto& p : img.pixels()) {
        p = {std::clamp(p.r, 0.0, 1.0), std::clamp(p.g, 0.0, 1.0), std::clamp(p.b, 0.0, 1.0)};
    }
    return img;
}

/// Red, green and blue discs on black, as used for film-sandwich tests.
inline PatternImage rgb_discs_pattern(std::size_t w, std::size_t h, double pitch)
{
    PatternImage img(w, h, pitch);
    const Rgb colours[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const double cx[3] = {0.3, 0.7, 0.5};
    const double cy[3] = {0.35, 0.35, 0.68};
    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t i = 0; i < w; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(w);
            const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(h);
            for (int d = 0; d < 3; ++d) {
                const double dx = x - cx[d];
                const double dy = y - cy[d];
                if (dx * dx + dy * dy <= 0.16 * 0.16) {
                    img.at(i, j) += colours[d];
                }
            }
        }
    }
    return img;
}

/// Points scattered over clustered "blossoms" inside the stack, plus a small
/// fraction of outliers above, below and beside it.
inline PointCloud scattered_cloud(std::size_t count, const FilmStackSpec& spec, std::uint64_t seed,
                                  double outlier_fraction = 0.02)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double depth = static_cast<double>(spec.n_films) * spec.pitch();

    struct Cluster {
        Vec3 centre;
        double radius;
        Rgb colour;
    };
    std::vector<Cluster> clusters(24);
    for (auto& c : clusters) {
        c.centre = {(unit(rng) - 0.5) * 0.8 * spec.width, (unit(rng) - 0.5) * 0.8 * spec.height,
                    spec.z_first + unit(rng) * depth};
        c.radius = 1.0 + 3.0 * unit(rng);
        c.colour = {unit(rng), unit(rng), unit(rng)};
    }

    PointCloud cloud;
    cloud.points.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        ColoredPoint p;
        if (unit(rng) < outlier_fraction) {
            const bool z_outlier = unit(rng) < 0.5;
            p.position = {(unit(rng) - 0.5) * (z_outlier ? 1.0 : 3.0) * spec.width,
                          (unit(rng) - 0.5) * spec.height,
                          z_outlier ? spec.z_first + (unit(rng) < 0.5 ? -1.0 - unit(rng) : depth + unit(rng))
                                    : spec.z_first + unit(rng) * depth};
            p.color = {unit(rng), unit(rng), unit(rng)};
        } else {
            const auto& c = clusters[static_cast<std::size_t>(unit(rng) * static_cast<double>(clusters.size())) %
                                     clusters.size()];
            p.position = {c.centre.x + gauss(rng) * c.radius, c.centre.y + gauss(rng) * c.radius,
                          std::clamp(c.centre.z + gauss(rng) * c.radius * 0.5, spec.z_first,
                                     spec.z_first + depth - 1e-9)};
            p.color = c.colour;
        }
        // Quantize colours the way the ASCII format stores them.
        for (std::size_t ch = 0; ch < 3; ++ch) {
            p.color[ch] = std::floor(p.color[ch] * 255.0 + 0.5) / 255.0;
        }
        cloud.points.push_back(p);
    }
    return cloud;
}

} // namespace volprint::synthetic
