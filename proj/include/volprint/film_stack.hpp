// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "volprint/error.hpp"

namespace volprint {

inline constexpr double kMillimetresPerInch = 25.4;

/// Physical film stack. Film k (0-based) lies at z = z_first + k * pitch and
/// covers the rectangle [-width/2, width/2) x [-height/2, height/2) in x/y.
struct FilmStackSpec {
    std::size_t n_films = 20;
    double film_thickness = 0.1; // mm
    double gap = 0.5;            // mm
    double width = 35.0;         // mm
    double height = 35.0;        // mm
    double z_first = 0.0;        // mm, Z_1

    [[nodiscard]] double pitch() const noexcept { return film_thickness + gap; }

    void validate() const
    {
        require(n_films >= 1, "FilmStackSpec: n_films must be >= 1");
        require(std::isfinite(film_thickness) && film_thickness > 0.0, "FilmStackSpec: film thickness must be > 0");
        require(std::isfinite(gap) && gap > 0.0, "FilmStackSpec: gap must be > 0");
        require(std::isfinite(width) && width > 0.0 && std::isfinite(height) && height > 0.0,
                "FilmStackSpec: width and height must be > 0");
        require(std::isfinite(z_first), "FilmStackSpec: z_first must be finite");
    }

    /// Z_1 ... Z_n.
    [[nodiscard]] std::vector<double> layer_z() const
    {
        std::vector<double> z(n_films);
        for (std::size_t k = 0; k < n_films; ++k) {
            z[k] = z_first + static_cast<double>(k) * pitch();
        }
        return z;
    }
};

struct StackMetrics {
    double layer_pitch = 0.0; // mm
    double depth_dpi = 0.0;   // dots per inch along z
    double total_depth = 0.0; // mm, films plus interior gaps
};

inline StackMetrics stack_metrics(const FilmStackSpec& spec)
{
    spec.validate();
    const double pitch = spec.pitch();
    return {pitch, kMillimetresPerInch / pitch, static_cast<double>(spec.n_films) * pitch - spec.gap};
}

} // namespace volprint
