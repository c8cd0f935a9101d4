// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "volprint/error.hpp"
#include "volprint/film_stack.hpp"
#include "volprint/geometry.hpp"
#include "volprint/optics.hpp"
#include "volprint/projection.hpp"
#include "volprint/slicer.hpp"
#include "volprint/volume.hpp"

namespace volprint::cli {

using Json = nlohmann::json;

struct PatternEntry {
    std::string path;
    std::string label;
    double rotation_x_deg = 0.0;
    double rotation_y_deg = 0.0;
    RotationOrder rotation_order = RotationOrder::y_after_x;
    std::optional<double> pixel_pitch_mm; ///< default: pattern spans the grid cross-section
};

struct GridEntry {
    std::size_t nx = 512;
    std::size_t ny = 512;
    std::optional<std::size_t> nz;  ///< default: stack.n_films
    std::optional<double> pitch_x;  ///< default: stack.width / nx
    std::optional<double> pitch_y;  ///< default: stack.height / ny
};

struct SliceEntry {
    std::size_t res_x = 300;
    std::size_t res_y = 300;
    CellCombine combine = CellCombine::max;
};

struct OutputEntry {
    std::string directory = "volprint_out";
    int bit_depth = 8;
    NormalizeMode normalization = NormalizeMode::theoretical_max;
};

/// Parsed run configuration. Every omitted field takes the value of the
/// physical prototype (20 films of 0.1 mm at 0.5 mm gaps, 35 mm square).
struct Manifest {
    std::vector<PatternEntry> patterns;
    GridEntry grid;
    FilmStackSpec stack;
    OpticalModel optics;
    SliceEntry slice;
    OutputEntry output;
    std::filesystem::path base_dir; ///< relative paths resolve against this

    [[nodiscard]] GridSpec grid_spec() const
    {
        GridSpec g;
        g.nx = grid.nx;
        g.ny = grid.ny;
        g.nz = grid.nz.value_or(stack.n_films);
        g.pitch_x = grid.pitch_x.value_or(stack.width / static_cast<double>(grid.nx));
        g.pitch_y = grid.pitch_y.value_or(stack.height / static_cast<double>(grid.ny));
        g.layer_pitch = stack.pitch();
        return g;
    }

    [[nodiscard]] std::filesystem::path resolve(const std::string& p) const
    {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    }
};

/// Manifest content problem; maps to the validation exit code.
class ManifestError : public Error {
public:
    explicit ManifestError(const std::string& what) : Error(Errc::invalid_argument, what) {}
};

namespace detail {

inline std::string join_path(const std::string& parent, const std::string& key)
{
    return parent.empty() ? key : parent + "." + key;
}

inline void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        throw ManifestError((where.empty() ? std::string("manifest") : where) + ": expected an object");
    }
    const std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (names.count(item.key()) == 0) {
            throw ManifestError(join_path(where, item.key()) + ": unknown field");
        }
    }
}

inline double get_real(const Json& obj, const std::string& where, const char* key, double fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ManifestError(join_path(where, key) + ": expected a finite number");
    }
    return v.get<double>();
}

inline std::optional<double> get_optional_real(const Json& obj, const std::string& where, const char* key)
{
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return get_real(obj, where, key, 0.0);
}

inline std::size_t get_count(const Json& obj, const std::string& where, const char* key, std::size_t fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw ManifestError(join_path(where, key) + ": expected a positive integer");
    }
    return static_cast<std::size_t>(v.get<std::int64_t>());
}

inline std::string get_string(const Json& obj, const std::string& where, const char* key, std::string fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        throw ManifestError(join_path(where, key) + ": expected a string");
    }
    return v.get<std::string>();
}

inline bool get_bool(const Json& obj, const std::string& where, const char* key, bool fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
        throw ManifestError(join_path(where, key) + ": expected true or false");
    }
    return v.get<bool>();
}

inline void check_range(bool ok, const std::string& where, const char* key, const std::string& rule)
{
    if (!ok) {
        throw ManifestError(join_path(where, key) + ": " + rule);
    }
}

inline std::string default_label(std::size_t index)
{
    std::string label;
    std::size_t n = index;
    do {
        label.insert(label.begin(), static_cast<char>('A' + n % 26));
        n = n / 26;
    } while (n-- > 0);
    return label;
}

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

inline NormalizeMode parse_normalize_mode(const std::string& text, const std::string& where = "normalize")
{
    if (text == "max") {
        return NormalizeMode::theoretical_max;
    }
    if (text == "auto") {
        return NormalizeMode::automatic;
    }
    throw ManifestError(where + ": expected \"max\" or \"auto\", got \"" + text + "\"");
}

inline Manifest parse_manifest(const Json& doc, const std::filesystem::path& base_dir = {})
{
    using namespace detail;
    check_keys(doc, "", {"patterns", "grid", "stack", "optics", "slice", "output"});
    Manifest m;
    m.base_dir = base_dir;

    if (doc.contains("stack")) {
        const auto& s = doc.at("stack");
        const std::string w = "stack";
        check_keys(s, w, {"n_films", "film_thickness", "gap", "width", "height", "z_first"});
        m.stack.n_films = get_count(s, w, "n_films", m.stack.n_films);
        m.stack.film_thickness = get_real(s, w, "film_thickness", m.stack.film_thickness);
        m.stack.gap = get_real(s, w, "gap", m.stack.gap);
        m.stack.width = get_real(s, w, "width", m.stack.width);
        m.stack.height = get_real(s, w, "height", m.stack.height);
        m.stack.z_first = get_real(s, w, "z_first", m.stack.z_first);
        check_range(m.stack.film_thickness > 0.0, w, "film_thickness", "must be > 0");
        check_range(m.stack.gap > 0.0, w, "gap", "must be > 0");
        check_range(m.stack.width > 0.0, w, "width", "must be > 0");
        check_range(m.stack.height > 0.0, w, "height", "must be > 0");
    }

    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        const std::string w = "grid";
        check_keys(g, w, {"nx", "ny", "nz", "pitch_x", "pitch_y"});
        m.grid.nx = get_count(g, w, "nx", m.grid.nx);
        m.grid.ny = get_count(g, w, "ny", m.grid.ny);
        if (g.contains("nz")) {
            m.grid.nz = get_count(g, w, "nz", 1);
        }
        m.grid.pitch_x = get_optional_real(g, w, "pitch_x");
        m.grid.pitch_y = get_optional_real(g, w, "pitch_y");
        check_range(!m.grid.pitch_x || *m.grid.pitch_x > 0.0, w, "pitch_x", "must be > 0");
        check_range(!m.grid.pitch_y || *m.grid.pitch_y > 0.0, w, "pitch_y", "must be > 0");
    }
    check_range(!m.grid.nz || *m.grid.nz == m.stack.n_films, "grid", "nz", "must equal stack.n_films");

    if (doc.contains("optics")) {
        const auto& o = doc.at("optics");
        const std::string w = "optics";
        check_keys(o, w, {"t_uv", "t_vis", "quantum_yield", "blur_sigma_per_film", "uv_sides", "oblique_path"});
        m.optics.t_uv = get_real(o, w, "t_uv", m.optics.t_uv);
        m.optics.t_vis = get_real(o, w, "t_vis", m.optics.t_vis);
        m.optics.blur_sigma_per_film = get_real(o, w, "blur_sigma_per_film", m.optics.blur_sigma_per_film);
        m.optics.oblique_path = get_bool(o, w, "oblique_path", m.optics.oblique_path);
        check_range(m.optics.t_uv > 0.0 && m.optics.t_uv <= 1.0, w, "t_uv", "must lie in (0, 1]");
        check_range(m.optics.t_vis > 0.0 && m.optics.t_vis <= 1.0, w, "t_vis", "must lie in (0, 1]");
        check_range(m.optics.blur_sigma_per_film >= 0.0, w, "blur_sigma_per_film", "must be >= 0");
        if (o.contains("quantum_yield")) {
            const auto& q = o.at("quantum_yield");
            if (!q.is_array() || q.size() != 3) {
                throw ManifestError("optics.quantum_yield: expected [red, green, blue]");
            }
            for (std::size_t c = 0; c < 3; ++c) {
                if (!q[c].is_number() || !(q[c].get<double>() > 0.0 && q[c].get<double>() <= 1.0)) {
                    throw ManifestError("optics.quantum_yield[" + std::to_string(c) + "]: must lie in (0, 1]");
                }
                m.optics.quantum_yield[c] = q[c].get<double>();
            }
        }
        const auto sides = get_string(o, w, "uv_sides", "two-sided");
        if (sides == "two-sided") {
            m.optics.uv_sides = UvSides::two_sided;
        } else if (sides == "one-sided") {
            m.optics.uv_sides = UvSides::one_sided;
        } else {
            throw ManifestError("optics.uv_sides: expected \"one-sided\" or \"two-sided\"");
        }
    }

    if (doc.contains("slice")) {
        const auto& s = doc.at("slice");
        const std::string w = "slice";
        check_keys(s, w, {"res_x", "res_y", "combine"});
        m.slice.res_x = get_count(s, w, "res_x", m.slice.res_x);
        m.slice.res_y = get_count(s, w, "res_y", m.slice.res_y);
        const auto combine = get_string(s, w, "combine", "max");
        if (combine == "max") {
            m.slice.combine = CellCombine::max;
        } else if (combine == "mean") {
            m.slice.combine = CellCombine::mean;
        } else {
            throw ManifestError("slice.combine: expected \"max\" or \"mean\"");
        }
    }

    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        const std::string w = "output";
        check_keys(o, w, {"directory", "bit_depth", "normalization"});
        m.output.directory = get_string(o, w, "directory", m.output.directory);
        if (o.contains("bit_depth")) {
            const auto& b = o.at("bit_depth");
            if (!b.is_number_integer() || (b.get<int>() != 8 && b.get<int>() != 16)) {
                throw ManifestError("output.bit_depth: expected 8 or 16");
            }
            m.output.bit_depth = b.get<int>();
        }
        m.output.normalization =
            parse_normalize_mode(get_string(o, w, "normalization", "max"), "output.normalization");
    }

    if (doc.contains("patterns")) {
        const auto& pats = doc.at("patterns");
        if (!pats.is_array()) {
            throw ManifestError("patterns: expected an array");
        }
        std::set<std::string> labels;
        for (std::size_t i = 0; i < pats.size(); ++i) {
            const std::string w = "patterns[" + std::to_string(i) + "]";
            const auto& p = pats[i];
            check_keys(p, w, {"path", "label", "rotation_x_deg", "rotation_y_deg", "rotation_order", "pixel_pitch_mm"});
            PatternEntry e;
            if (!p.contains("path")) {
                throw ManifestError(w + ".path: required");
            }
            e.path = get_string(p, w, "path", "");
            e.label = get_string(p, w, "label", default_label(i));
            e.rotation_x_deg = get_real(p, w, "rotation_x_deg", 0.0);
            e.rotation_y_deg = get_real(p, w, "rotation_y_deg", 0.0);
            check_range(std::abs(e.rotation_x_deg) < 90.0, w, "rotation_x_deg", "must lie in (-90, 90)");
            check_range(std::abs(e.rotation_y_deg) < 90.0, w, "rotation_y_deg", "must lie in (-90, 90)");
            const auto order = get_string(p, w, "rotation_order", "yx");
            if (order == "yx") {
                e.rotation_order = RotationOrder::y_after_x;
            } else if (order == "xy") {
                e.rotation_order = RotationOrder::x_after_y;
            } else {
                throw ManifestError(w + ".rotation_order: expected \"yx\" or \"xy\"");
            }
            e.pixel_pitch_mm = get_optional_real(p, w, "pixel_pitch_mm");
            check_range(!e.pixel_pitch_mm || *e.pixel_pitch_mm > 0.0, w, "pixel_pitch_mm", "must be > 0");
            if (!labels.insert(e.label).second) {
                throw ManifestError(w + ".label: duplicate label \"" + e.label + "\"");
            }
            m.patterns.push_back(std::move(e));
        }
    }
    return m;
}

/// Parses manifest text; syntax errors report line and column.
inline Manifest parse_manifest_text(const std::string& text, const std::filesystem::path& base_dir = {})
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ManifestError("manifest:" + std::to_string(line) + ":" + std::to_string(col) +
                            ": JSON syntax error (" + e.what() + ")");
    }
    return parse_manifest(doc, base_dir);
}

inline Manifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::file_not_found, "cannot open manifest: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str(), path.parent_path());
}

inline const char* to_string(RotationOrder order) noexcept
{
    return order == RotationOrder::y_after_x ? "yx" : "xy";
}

/// The manifest with every default filled in, as embedded in reports.
inline Json resolved_json(const Manifest& m)
{
    const GridSpec g = m.grid_spec();
    Json doc;
    doc["patterns"] = Json::array();
    for (const auto& p : m.patterns) {
        Json e{{"path", p.path},
               {"label", p.label},
               {"rotation_x_deg", p.rotation_x_deg},
               {"rotation_y_deg", p.rotation_y_deg},
               {"rotation_order", to_string(p.rotation_order)}};
        e["pixel_pitch_mm"] = p.pixel_pitch_mm ? Json(*p.pixel_pitch_mm) : Json(nullptr);
        doc["patterns"].push_back(e);
    }
    doc["grid"] = {{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz}, {"pitch_x", g.pitch_x}, {"pitch_y", g.pitch_y}};
    doc["stack"] = {{"n_films", m.stack.n_films}, {"film_thickness", m.stack.film_thickness},
                    {"gap", m.stack.gap},         {"width", m.stack.width},
                    {"height", m.stack.height},   {"z_first", m.stack.z_first}};
    doc["optics"] = {{"t_uv", m.optics.t_uv},
                     {"t_vis", m.optics.t_vis},
                     {"quantum_yield", {m.optics.quantum_yield.r, m.optics.quantum_yield.g, m.optics.quantum_yield.b}},
                     {"blur_sigma_per_film", m.optics.blur_sigma_per_film},
                     {"uv_sides", m.optics.uv_sides == UvSides::two_sided ? "two-sided" : "one-sided"},
                     {"oblique_path", m.optics.oblique_path}};
    doc["slice"] = {{"res_x", m.slice.res_x},
                    {"res_y", m.slice.res_y},
                    {"combine", m.slice.combine == CellCombine::max ? "max" : "mean"}};
    doc["output"] = {{"directory", m.output.directory},
                     {"bit_depth", m.output.bit_depth},
                     {"normalization", to_string(m.output.normalization)}};
    return doc;
}

/// FNV-1a 64-bit digest, hex encoded.
inline std::string fnv1a64_hex(const std::string& data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string manifest_hash(const Manifest& m)
{
    return "fnv1a64:" + fnv1a64_hex(resolved_json(m).dump());
}

} // namespace volprint::cli
