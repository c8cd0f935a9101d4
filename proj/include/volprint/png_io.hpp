// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/image.hpp"

namespace volprint {

/// Interleaved RGB samples as stored in a PNG file.
struct RawRgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    int bit_depth = 8;
    std::vector<std::uint16_t> samples; // 3 per pixel, row-major, row 0 first
};

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept
    {
        if (f != nullptr) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngHeader {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
};

// No object with a non-trivial destructor may live in a frame that setjmp
// can longjmp across; the C++ state is owned by the caller.
inline bool png_read_header(png_structp png, png_infop info, std::FILE* fp, PngHeader& hdr)
{
    if (setjmp(png_jmpbuf(png))) {
        return false;
    }
    png_init_io(png, fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    png_get_IHDR(png, info, &hdr.width, &hdr.height, &hdr.bit_depth, &hdr.color_type, nullptr, nullptr, nullptr);
    return true;
}

inline bool png_read_rows(png_structp png, png_infop info, png_bytepp rows)
{
    if (setjmp(png_jmpbuf(png))) {
        return false;
    }
    png_read_image(png, rows);
    png_read_end(png, info);
    return true;
}

inline bool png_write_all(png_structp png, png_infop info, std::FILE* fp, png_uint_32 w, png_uint_32 h,
                          int bit_depth, png_bytepp rows)
{
    if (setjmp(png_jmpbuf(png))) {
        return false;
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, w, h, bit_depth, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows);
    png_write_end(png, nullptr);
    return true;
}

} // namespace detail

/// Reads an RGB or RGBA PNG. Palette and grey images are expanded to RGB;
/// alpha is premultiplied into the colour channels and dropped.
inline RawRgbImage read_png(const std::filesystem::path& path, bool allow_16bit = false)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        fail(Errc::file_not_found, "no such image file: " + path.string());
    }
    detail::FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) {
        fail(Errc::io_failure, "cannot open image file: " + path.string());
    }
    png_byte sig[8] = {};
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        fail(Errc::not_an_image, "not a PNG image: " + path.string());
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png != nullptr ? png_create_info_struct(png) : nullptr;
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(Errc::io_failure, "libpng initialisation failed");
    }
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_read_struct(png, info, nullptr); }
    } guard{&png, &info};

    detail::PngHeader hdr;
    if (!detail::png_read_header(png, info, fp.get(), hdr)) {
        fail(Errc::not_an_image, "corrupt PNG header: " + path.string());
    }
    const bool depth_ok = hdr.bit_depth == 8 || (allow_16bit && hdr.bit_depth == 16) ||
                          (hdr.color_type == PNG_COLOR_TYPE_PALETTE && hdr.bit_depth <= 8);
    if (!depth_ok) {
        fail(Errc::unsupported_bit_depth,
             "unsupported PNG bit depth " + std::to_string(hdr.bit_depth) + ": " + path.string());
    }

    if (hdr.color_type == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS) != 0) {
        png_set_tRNS_to_alpha(png);
    }
    if (hdr.color_type == PNG_COLOR_TYPE_GRAY || hdr.color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_byte> buffer(rowbytes * hdr.height);
    std::vector<png_bytep> rows(hdr.height);
    for (png_uint_32 y = 0; y < hdr.height; ++y) {
        rows[y] = buffer.data() + y * rowbytes;
    }
    if (!detail::png_read_rows(png, info, rows.data())) {
        fail(Errc::not_an_image, "corrupt PNG data: " + path.string());
    }

    RawRgbImage out;
    out.width = hdr.width;
    out.height = hdr.height;
    out.bit_depth = depth;
    out.samples.resize(3 * out.width * out.height);
    const double max_code = depth == 16 ? 65535.0 : 255.0;
    for (std::size_t y = 0; y < out.height; ++y) {
        for (std::size_t x = 0; x < out.width; ++x) {
            auto sample = [&](int c) -> std::uint32_t {
                const std::size_t idx = x * channels + c;
                if (depth == 16) {
                    return (static_cast<std::uint32_t>(rows[y][2 * idx]) << 8) | rows[y][2 * idx + 1];
                }
                return rows[y][idx];
            };
            for (int c = 0; c < 3; ++c) {
                double value = sample(c);
                if (channels == 4) {
                    value = std::floor(value * static_cast<double>(sample(3)) / max_code + 0.5);
                }
                out.samples[3 * (y * out.width + x) + c] = static_cast<std::uint16_t>(value);
            }
        }
    }
    return out;
}

inline void write_png(const std::filesystem::path& path, const RawRgbImage& img)
{
    require(img.bit_depth == 8 || img.bit_depth == 16, "write_png: bit depth must be 8 or 16");
    require(img.samples.size() == 3 * img.width * img.height, "write_png: sample count mismatch");
    detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) {
        fail(Errc::io_failure, "cannot write image file: " + path.string());
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png != nullptr ? png_create_info_struct(png) : nullptr;
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        fail(Errc::io_failure, "libpng initialisation failed");
    }
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_write_struct(png, info); }
    } guard{&png, &info};

    const std::size_t bytes_per_sample = img.bit_depth == 16 ? 2 : 1;
    const std::size_t rowbytes = 3 * img.width * bytes_per_sample;
    std::vector<png_byte> buffer(rowbytes * img.height);
    for (std::size_t n = 0; n < img.samples.size(); ++n) {
        if (bytes_per_sample == 2) {
            buffer[2 * n] = static_cast<png_byte>(img.samples[n] >> 8);
            buffer[2 * n + 1] = static_cast<png_byte>(img.samples[n] & 0xff);
        } else {
            buffer[n] = static_cast<png_byte>(img.samples[n]);
        }
    }
    std::vector<png_bytep> rows(img.height);
    for (std::size_t y = 0; y < img.height; ++y) {
        rows[y] = buffer.data() + y * rowbytes;
    }
    if (!detail::png_write_all(png, info, fp.get(), static_cast<png_uint_32>(img.width),
                               static_cast<png_uint_32>(img.height), img.bit_depth, rows.data())) {
        fail(Errc::io_failure, "failed writing PNG: " + path.string());
    }
    if (std::fflush(fp.get()) != 0) {
        fail(Errc::io_failure, "failed writing PNG: " + path.string());
    }
}

inline PatternImage from_raw(const RawRgbImage& raw, double pixel_pitch_mm)
{
    PatternImage img(raw.width, raw.height, pixel_pitch_mm);
    for (std::size_t n = 0; n < raw.width * raw.height; ++n) {
        img.pixels()[n] = {dequantize(raw.samples[3 * n], raw.bit_depth),
                           dequantize(raw.samples[3 * n + 1], raw.bit_depth),
                           dequantize(raw.samples[3 * n + 2], raw.bit_depth)};
    }
    return img;
}

inline RawRgbImage to_raw(const PatternImage& img, int bit_depth)
{
    RawRgbImage raw{img.width(), img.height(), bit_depth, {}};
    raw.samples.resize(3 * img.width() * img.height());
    for (std::size_t n = 0; n < img.pixels().size(); ++n) {
        for (std::size_t c = 0; c < 3; ++c) {
            raw.samples[3 * n + c] = quantize(img.pixels()[n][c], bit_depth);
        }
    }
    return raw;
}

/// Loads an 8-bit RGB(A) PNG as a pattern; channels map c/255 -> [0, 1].
inline PatternImage load_pattern(const std::filesystem::path& path, double pixel_pitch_mm)
{
    require(std::isfinite(pixel_pitch_mm) && pixel_pitch_mm > 0.0, "load_pattern: pixel pitch must be > 0");
    return from_raw(read_png(path, false), pixel_pitch_mm);
}

/// Saves channels in [0, 1] as an RGB PNG with round-half-up quantization.
inline void save_image(const PatternImage& img, const std::filesystem::path& path, int bit_depth = 8)
{
    img.validate();
    write_png(path, to_raw(img, bit_depth));
}

} // namespace volprint
