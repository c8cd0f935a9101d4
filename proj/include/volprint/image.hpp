// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "volprint/error.hpp"

namespace volprint {

template <typename T>
struct BasicRgb {
    T r{};
    T g{};
    T b{};

    constexpr BasicRgb operator+(const BasicRgb& o) const { return {r + o.r, g + o.g, b + o.b}; }
    constexpr BasicRgb operator*(T s) const { return {r * s, g * s, b * s}; }
    constexpr BasicRgb operator*(const BasicRgb& o) const { return {r * o.r, g * o.g, b * o.b}; }
    constexpr BasicRgb& operator+=(const BasicRgb& o)
    {
        r += o.r;
        g += o.g;
        b += o.b;
        return *this;
    }
    constexpr bool operator==(const BasicRgb&) const = default;

    constexpr T& operator[](std::size_t c) { return c == 0 ? r : (c == 1 ? g : b); }
    constexpr const T& operator[](std::size_t c) const { return c == 0 ? r : (c == 1 ? g : b); }

    [[nodiscard]] constexpr T max_channel() const { return std::max({r, g, b}); }
};

using Rgb = BasicRgb<double>;

/// Channel-range policies for BasicImage.
struct UnitRange {
    static constexpr const char* name = "PatternImage";
    static bool valid(double c) noexcept { return c >= 0.0 && c <= 1.0; }
};

struct NonNegativeRange {
    static constexpr const char* name = "FloatImage";
    static bool valid(double c) noexcept { return std::isfinite(c) && c >= 0.0; }
};

/// Row-major RGB raster with a physical pixel pitch in mm. The raster is
/// centred on (u, v) = (0, 0): pixel (i, j) sits at
/// ((i + 0.5 - w/2) * pitch, (j + 0.5 - h/2) * pitch).
template <typename Range>
class BasicImage {
public:
    BasicImage() = default;

    BasicImage(std::size_t width, std::size_t height, double pixel_pitch = 1.0, Rgb fill = {})
        : width_(width), height_(height), pitch_(pixel_pitch), pixels_(width * height, fill)
    {
        require(width >= 1 && height >= 1, std::string(Range::name) + ": width and height must be >= 1");
        require(std::isfinite(pixel_pitch) && pixel_pitch > 0.0, std::string(Range::name) + ": pixel pitch must be > 0");
    }

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] double pixel_pitch() const noexcept { return pitch_; }
    [[nodiscard]] bool empty() const noexcept { return pixels_.empty(); }

    Rgb& at(std::size_t i, std::size_t j) { return pixels_[j * width_ + i]; }
    [[nodiscard]] const Rgb& at(std::size_t i, std::size_t j) const { return pixels_[j * width_ + i]; }

    [[nodiscard]] std::vector<Rgb>& pixels() noexcept { return pixels_; }
    [[nodiscard]] const std::vector<Rgb>& pixels() const noexcept { return pixels_; }

    [[nodiscard]] double half_width_mm() const noexcept { return 0.5 * static_cast<double>(width_) * pitch_; }
    [[nodiscard]] double half_height_mm() const noexcept { return 0.5 * static_cast<double>(height_) * pitch_; }

    /// Centre of pixel (i, j) in plane coordinates.
    [[nodiscard]] double pixel_u(std::size_t i) const noexcept
    {
        return (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(width_)) * pitch_;
    }
    [[nodiscard]] double pixel_v(std::size_t j) const noexcept
    {
        return (static_cast<double>(j) + 0.5 - 0.5 * static_cast<double>(height_)) * pitch_;
    }

    [[nodiscard]] bool channels_valid() const noexcept
    {
        return std::all_of(pixels_.begin(), pixels_.end(), [](const Rgb& p) {
            return Range::valid(p.r) && Range::valid(p.g) && Range::valid(p.b);
        });
    }

    void validate() const
    {
        require(channels_valid(), std::string(Range::name) + ": channel value out of range");
    }

    [[nodiscard]] double max_value() const noexcept
    {
        double m = 0.0;
        for (const auto& p : pixels_) {
            m = std::max(m, p.max_channel());
        }
        return m;
    }

    /// Mean over all pixels and channels.
    [[nodiscard]] double mean_value() const noexcept
    {
        double s = 0.0;
        for (const auto& p : pixels_) {
            s += p.r + p.g + p.b;
        }
        return pixels_.empty() ? 0.0 : s / (3.0 * static_cast<double>(pixels_.size()));
    }

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    double pitch_ = 1.0;
    std::vector<Rgb> pixels_;
};

using PatternImage = BasicImage<UnitRange>;
using FloatImage = BasicImage<NonNegativeRange>;

namespace detail {

/// Continuous index along one axis: maps a coordinate (mm, centred) onto
/// pixel-centre space. Returns false when the coordinate is outside the
/// raster extent [-n*pitch/2, n*pitch/2].
struct AxisWeights {
    std::size_t i0 = 0;
    std::size_t i1 = 0;
    double t = 0.0;
};

inline bool axis_weights(double coord, std::size_t n, double pitch, AxisWeights& out) noexcept
{
    const double half = 0.5 * static_cast<double>(n) * pitch;
    if (!(coord >= -half && coord <= half)) {
        return false;
    }
    const double last = static_cast<double>(n - 1);
    const double f = std::clamp(coord / pitch + 0.5 * static_cast<double>(n) - 0.5, 0.0, last);
    if (n == 1) {
        out = {0, 0, 0.0};
        return true;
    }
    auto i0 = static_cast<std::size_t>(std::floor(f));
    if (i0 >= n - 1) {
        i0 = n - 2;
    }
    out = {i0, i0 + 1, f - static_cast<double>(i0)};
    return true;
}

/// Bilinear blend of four samples fetched through `fetch(i, j)`.
template <typename Fetch>
Rgb bilinear(const AxisWeights& wa, const AxisWeights& wb, Fetch&& fetch)
{
    const Rgb p00 = fetch(wa.i0, wb.i0);
    const Rgb p10 = fetch(wa.i1, wb.i0);
    const Rgb p01 = fetch(wa.i0, wb.i1);
    const Rgb p11 = fetch(wa.i1, wb.i1);
    const double sa = 1.0 - wa.t;
    const double sb = 1.0 - wb.t;
    Rgb out;
    for (std::size_t c = 0; c < 3; ++c) {
        out[c] = (p00[c] * sa + p10[c] * wa.t) * sb + (p01[c] * sa + p11[c] * wa.t) * wb.t;
    }
    return out;
}

} // namespace detail

/// Bilinear interpolation between pixel centres at plane position (u, v) mm.
/// Positions inside the raster rectangle but beyond the outermost pixel
/// centres clamp to the edge; positions outside the rectangle return black.
template <typename Range>
Rgb bilinear_sample(const BasicImage<Range>& img, double u, double v)
{
    detail::AxisWeights wu;
    detail::AxisWeights wv;
    if (!detail::axis_weights(u, img.width(), img.pixel_pitch(), wu) ||
        !detail::axis_weights(v, img.height(), img.pixel_pitch(), wv)) {
        return {};
    }
    return detail::bilinear(wu, wv, [&img](std::size_t i, std::size_t j) { return img.at(i, j); });
}

/// Round-half-up quantization of a [0,1] channel to an n-bit code.
inline std::uint16_t quantize(double c, int bit_depth)
{
    require(bit_depth == 8 || bit_depth == 16, "quantize: bit depth must be 8 or 16");
    const double max_code = bit_depth == 8 ? 255.0 : 65535.0;
    const double scaled = std::floor(std::clamp(c, 0.0, 1.0) * max_code + 0.5);
    return static_cast<std::uint16_t>(std::min(scaled, max_code));
}

inline double dequantize(std::uint16_t code, int bit_depth)
{
    return static_cast<double>(code) / (bit_depth == 8 ? 255.0 : 65535.0);
}

/// Copies a FloatImage into a PatternImage after dividing by `scale`,
/// clamping to [0, 1].
inline PatternImage to_pattern(const FloatImage& img, double scale)
{
    require(scale > 0.0, "to_pattern: scale must be > 0");
    PatternImage out(img.width(), img.height(), img.pixel_pitch());
    for (std::size_t n = 0; n < img.pixels().size(); ++n) {
        const Rgb& p = img.pixels()[n];
        out.pixels()[n] = {std::clamp(p.r / scale, 0.0, 1.0), std::clamp(p.g / scale, 0.0, 1.0),
                           std::clamp(p.b / scale, 0.0, 1.0)};
    }
    return out;
}

} // namespace volprint
