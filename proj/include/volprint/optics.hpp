// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/film_stack.hpp"
#include "volprint/geometry.hpp"
#include "volprint/image.hpp"
#include "volprint/parallel.hpp"

namespace volprint {

enum class UvSides {
    one_sided, ///< single UV source on the viewer (front) side
    two_sided, ///< sources on both faces of the stack
};

/// Relative optical behaviour of a fluorescent film stack.
struct OpticalModel {
    double t_uv = 0.82;                  ///< per-film transmittance at 365 nm
    double t_vis = 0.90;                 ///< per-film visible transmittance
    Rgb quantum_yield{0.43, 0.85, 0.89}; ///< red, green, blue inks
    double blur_sigma_per_film = 0.05;   ///< mm of Gaussian sigma per film crossed
    UvSides uv_sides = UvSides::two_sided;
    bool oblique_path = false; ///< lengthen visible absorption by 1/cos(theta)

    void validate() const
    {
        require(t_uv > 0.0 && t_uv <= 1.0, "OpticalModel: t_uv must lie in (0, 1]");
        require(t_vis > 0.0 && t_vis <= 1.0, "OpticalModel: t_vis must lie in (0, 1]");
        for (std::size_t c = 0; c < 3; ++c) {
            require(quantum_yield[c] > 0.0 && quantum_yield[c] <= 1.0,
                    "OpticalModel: quantum yields must lie in (0, 1]");
        }
        require(std::isfinite(blur_sigma_per_film) && blur_sigma_per_film >= 0.0,
                "OpticalModel: blur sigma must be >= 0");
    }
};

/// Fraction of UV excitation left after crossing `n_films` clear films.
inline double uv_excitation_factor(std::size_t n_films, const OpticalModel& model)
{
    return std::pow(model.t_uv, static_cast<double>(n_films));
}

/// Fraction of emitted visible light left after crossing `n_films` films.
inline double visible_attenuation_factor(std::size_t n_films, const OpticalModel& model)
{
    return std::pow(model.t_vis, static_cast<double>(n_films));
}

/// Excitation reaching each film, listed from the (front) source side.
inline std::vector<double> layer_excitation_profile(const FilmStackSpec& spec, const OpticalModel& model)
{
    spec.validate();
    std::vector<double> profile(spec.n_films);
    for (std::size_t k = 0; k < spec.n_films; ++k) {
        profile[k] = uv_excitation_factor(k, model);
        if (model.uv_sides == UvSides::two_sided) {
            profile[k] += uv_excitation_factor(spec.n_films - 1 - k, model);
        }
    }
    return profile;
}

/// Separable, zero-padded Gaussian blur; `sigma_mm` is converted with the
/// image pitch. The kernel is truncated at 3 sigma and renormalized.
template <typename Range>
BasicImage<Range> gaussian_blur(const BasicImage<Range>& img, double sigma_mm)
{
    require(std::isfinite(sigma_mm) && sigma_mm >= 0.0, "gaussian_blur: sigma must be >= 0");
    const double sigma_px = sigma_mm / img.pixel_pitch();
    if (sigma_px < 1e-6) {
        return img;
    }
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma_px));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double total = 0.0;
    for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
        const double w = std::exp(-0.5 * static_cast<double>(t * t) / (sigma_px * sigma_px));
        kernel[static_cast<std::size_t>(t + radius)] = w;
        total += w;
    }
    for (auto& w : kernel) {
        w /= total;
    }

    const auto w = static_cast<std::ptrdiff_t>(img.width());
    const auto h = static_cast<std::ptrdiff_t>(img.height());
    BasicImage<Range> tmp(img.width(), img.height(), img.pixel_pitch());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            Rgb acc;
            for (std::ptrdiff_t t = std::max(-radius, -x); t <= std::min(radius, w - 1 - x); ++t) {
                acc += img.at(static_cast<std::size_t>(x + t), static_cast<std::size_t>(y)) *
                       kernel[static_cast<std::size_t>(t + radius)];
            }
            tmp.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
        }
    }
    BasicImage<Range> out(img.width(), img.height(), img.pixel_pitch());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            Rgb acc;
            for (std::ptrdiff_t t = std::max(-radius, -y); t <= std::min(radius, h - 1 - y); ++t) {
                acc += tmp.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y + t)) *
                       kernel[static_cast<std::size_t>(t + radius)];
            }
            out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
        }
    }
    return out;
}

inline constexpr double kMaxViewAngleDeg = 60.0;

struct StackView {
    FloatImage radiance;        ///< relative emitted light reaching the viewer
    double theoretical_max = 1; ///< radiance of an all-white stack
    PatternImage display;       ///< radiance / theoretical_max
};

/// Renders the stack as seen from angle `theta_deg` about Y. Layers are
/// ordered by increasing z; the viewer sits on the +z side, so layer k is
/// seen through n-1-k films. Each layer is shifted by its depth from the
/// stack centre times tan(theta), attenuated, blurred, and summed in order.
inline StackView render_stack_view(const std::vector<PatternImage>& layers, const FilmStackSpec& spec,
                                   const OpticalModel& model, double theta_deg, unsigned threads = 1)
{
    spec.validate();
    model.validate();
    require(std::isfinite(theta_deg) && std::abs(theta_deg) < kMaxViewAngleDeg,
            "render_stack_view: view angle must lie in (-60, 60) degrees");
    require(layers.size() == spec.n_films, "render_stack_view: layer count must equal the film count");
    const std::size_t w = layers.front().width();
    const std::size_t h = layers.front().height();
    const double pitch = layers.front().pixel_pitch();
    for (const auto& l : layers) {
        require(l.width() == w && l.height() == h, "render_stack_view: layers differ in size");
    }

    const std::size_t n = spec.n_films;
    const auto profile = layer_excitation_profile(spec, model); // from the front (top) film
    const auto z = spec.layer_z();
    const double z_centre = 0.5 * (z.front() + z.back());
    const double theta = deg_to_rad(theta_deg);
    const double path_scale = model.oblique_path ? 1.0 / std::cos(theta) : 1.0;
    const double yield_peak = model.quantum_yield.max_channel();

    std::vector<FloatImage> contributions(n);
    std::vector<double> gains(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t films_to_viewer = n - 1 - k;
        gains[k] = profile[films_to_viewer] *
                   std::pow(model.t_vis, static_cast<double>(films_to_viewer) * path_scale);
    }

    parallel_for_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double shift = (z[k] - z_centre) * std::tan(theta);
            const Rgb gain = model.quantum_yield * gains[k];
            FloatImage shifted(w, h, pitch);
            for (std::size_t q = 0; q < h; ++q) {
                for (std::size_t p = 0; p < w; ++p) {
                    const Rgb e = bilinear_sample(layers[k], shifted.pixel_u(p) + shift, shifted.pixel_v(q));
                    shifted.at(p, q) = e * gain;
                }
            }
            contributions[k] =
                gaussian_blur(shifted, model.blur_sigma_per_film * static_cast<double>(n - 1 - k));
        }
    });

    StackView view{FloatImage(w, h, pitch), 0.0, PatternImage(w, h, pitch)};
    for (std::size_t k = 0; k < n; ++k) {
        view.theoretical_max += yield_peak * gains[k];
        for (std::size_t i = 0; i < view.radiance.pixels().size(); ++i) {
            view.radiance.pixels()[i] += contributions[k].pixels()[i];
        }
    }
    view.display = to_pattern(view.radiance, view.theoretical_max);
    return view;
}

/// One printed film behind `n_uv` clear films on the UV side and `n_vis`
/// clear films on the camera side. Only the camera-side films blur.
inline PatternImage simulate_sandwich(const PatternImage& pattern, std::size_t n_uv, std::size_t n_vis,
                                      const OpticalModel& model)
{
    model.validate();
    const double gain = uv_excitation_factor(n_uv, model) * visible_attenuation_factor(n_vis, model);
    PatternImage out(pattern.width(), pattern.height(), pattern.pixel_pitch());
    const Rgb scale = model.quantum_yield * gain;
    for (std::size_t i = 0; i < pattern.pixels().size(); ++i) {
        out.pixels()[i] = pattern.pixels()[i] * scale;
    }
    out = gaussian_blur(out, model.blur_sigma_per_film * static_cast<double>(n_vis));
    for (auto& p : out.pixels()) {
        p = {std::clamp(p.r, 0.0, 1.0), std::clamp(p.g, 0.0, 1.0), std::clamp(p.b, 0.0, 1.0)};
    }
    return out;
}

enum class SweepPath {
    uv,      ///< vary n_uv with n_vis = 0
    visible, ///< vary n_vis with n_uv = 0
};

struct SweepEntry {
    std::size_t n_uv = 0;
    std::size_t n_vis = 0;
    double mean_brightness = 0.0;
    PatternImage image;
};

inline const std::vector<std::size_t>& default_sweep_counts()
{
    static const std::vector<std::size_t> counts{0, 5, 10, 15, 20, 25};
    return counts;
}

inline std::vector<SweepEntry> sandwich_sweep(const PatternImage& pattern, SweepPath path,
                                              const OpticalModel& model,
                                              const std::vector<std::size_t>& counts = default_sweep_counts())
{
    std::vector<SweepEntry> out;
    for (auto n : counts) {
        const std::size_t n_uv = path == SweepPath::uv ? n : 0;
        const std::size_t n_vis = path == SweepPath::visible ? n : 0;
        auto img = simulate_sandwich(pattern, n_uv, n_vis, model);
        const double mean = img.mean_value();
        out.push_back({n_uv, n_vis, mean, std::move(img)});
    }
    return out;
}

} // namespace volprint
