// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/image.hpp"
#include "volprint/vec3.hpp"

namespace volprint {

struct ColoredPoint {
    Vec3 position; // mm
    Rgb color;     // [0, 1]
};

struct PointCloud {
    std::vector<ColoredPoint> points;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column = 0; // 1-based
};

inline std::vector<Token> split_whitespace(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

[[noreturn]] inline void cloud_error(const std::string& source, std::size_t line, std::size_t column,
                                     const std::string& what)
{
    fail(Errc::malformed_input,
         source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

} // namespace detail

/// Parses "x y z r g b" lines (mm, 0-255 integers). '#' starts a comment
/// line; blank lines are skipped; LF and CRLF are both accepted.
inline PointCloud parse_point_cloud(std::istream& in, const std::string& source = "<cloud>")
{
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r') {
            view.remove_suffix(1);
        }
        const auto tokens = detail::split_whitespace(view);
        if (tokens.empty() || tokens.front().text.front() == '#') {
            continue;
        }
        if (tokens.size() != 6) {
            const std::size_t col = tokens.size() > 6 ? tokens[6].column : view.size() + 1;
            detail::cloud_error(source, line_no, col,
                                "expected 6 fields 'x y z r g b', found " + std::to_string(tokens.size()));
        }
        ColoredPoint p;
        double xyz[3] = {};
        for (int c = 0; c < 3; ++c) {
            const auto& tok = tokens[c];
            const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), xyz[c]);
            if (res.ec != std::errc{} || res.ptr != tok.text.data() + tok.text.size() || !std::isfinite(xyz[c])) {
                detail::cloud_error(source, line_no, tok.column, "invalid coordinate '" + std::string(tok.text) + "'");
            }
        }
        p.position = {xyz[0], xyz[1], xyz[2]};
        for (int c = 0; c < 3; ++c) {
            const auto& tok = tokens[3 + c];
            int value = -1;
            const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
            if (res.ec != std::errc{} || res.ptr != tok.text.data() + tok.text.size()) {
                detail::cloud_error(source, line_no, tok.column, "invalid colour '" + std::string(tok.text) + "'");
            }
            if (value < 0 || value > 255) {
                detail::cloud_error(source, line_no, tok.column,
                                    "colour out of range 0-255: " + std::string(tok.text));
            }
            p.color[c] = static_cast<double>(value) / 255.0;
        }
        cloud.points.push_back(p);
    }
    return cloud;
}

inline PointCloud load_point_cloud(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        fail(std::filesystem::exists(path, ec) ? Errc::io_failure : Errc::file_not_found,
             "cannot open point cloud: " + path.string());
    }
    return parse_point_cloud(in, path.string());
}

/// Writes the ASCII cloud format; colours are rounded to the nearest code.
inline void save_point_cloud(const PointCloud& cloud, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io_failure, "cannot write point cloud: " + path.string());
    }
    out << "# x y z r g b\n";
    char buf[128];
    for (const auto& p : cloud.points) {
        const int n = std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g %u %u %u\n", p.position.x, p.position.y,
                                    p.position.z, static_cast<unsigned>(quantize(p.color.r, 8)),
                                    static_cast<unsigned>(quantize(p.color.g, 8)),
                                    static_cast<unsigned>(quantize(p.color.b, 8)));
        out.write(buf, n);
    }
    if (!out) {
        fail(Errc::io_failure, "failed writing point cloud: " + path.string());
    }
}

} // namespace volprint
