// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "volprint/error.hpp"
#include "volprint/image.hpp"
#include "volprint/projection.hpp"

namespace volprint {

/// Rec. 709 luma weights.
inline constexpr double luminance(const Rgb& c) noexcept { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

template <typename Range>
std::vector<double> luminance_plane(const BasicImage<Range>& img)
{
    std::vector<double> out;
    out.reserve(img.pixels().size());
    for (const auto& p : img.pixels()) {
        out.push_back(luminance(p));
    }
    return out;
}

/// Zero-mean normalized cross-correlation; 0 when either side is constant.
inline double normalized_cross_correlation(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size(), "normalized_cross_correlation: size mismatch");
    if (x.empty()) {
        return 0.0;
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return 0.0;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double mean_squared_error(const PatternImage& x, const PatternImage& y)
{
    require(x.width() == y.width() && x.height() == y.height(), "mean_squared_error: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.pixels().size(); ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            const double d = x.pixels()[i][c] - y.pixels()[i][c];
            s += d * d;
        }
    }
    return s / (3.0 * static_cast<double>(x.pixels().size()));
}

/// Row v, column o: view v compared against original o.
struct CrosstalkReport {
    std::vector<std::string> view_labels;
    std::vector<std::string> original_labels;
    std::vector<std::vector<double>> correlations;
    std::vector<std::vector<double>> mse;
    std::vector<std::size_t> verdicts; ///< argmax of each correlation row

    /// Column of the original that view `v` was designed for, if any.
    [[nodiscard]] std::optional<std::size_t> own_original(std::size_t v) const
    {
        for (std::size_t o = 0; o < original_labels.size(); ++o) {
            if (original_labels[o] == view_labels[v]) {
                return o;
            }
        }
        return std::nullopt;
    }

    /// True when every view correlates best with its own original.
    [[nodiscard]] bool all_identified() const
    {
        for (std::size_t v = 0; v < verdicts.size(); ++v) {
            const auto own = own_original(v);
            if (!own || verdicts[v] != *own) {
                return false;
            }
        }
        return !verdicts.empty();
    }

    /// Mean correlation of each view with its own original.
    [[nodiscard]] double mean_own_correlation() const
    {
        double s = 0.0;
        std::size_t n = 0;
        for (std::size_t v = 0; v < correlations.size(); ++v) {
            if (const auto own = own_original(v)) {
                s += correlations[v][*own];
                ++n;
            }
        }
        return n == 0 ? 0.0 : s / static_cast<double>(n);
    }
};

/// Compares every simulated view against every original. Views are
/// normalized with `mode` before the squared-error term; correlation is
/// scale-invariant and uses luminance. Originals are labelled
/// `original_labels`, defaulting to the labels of the views in order.
inline CrosstalkReport crosstalk_report(const std::vector<ProjectedPattern>& views,
                                        const std::vector<PatternImage>& originals,
                                        NormalizeMode mode = NormalizeMode::automatic,
                                        std::vector<std::string> original_labels = {})
{
    require(!views.empty() && !originals.empty(), "crosstalk_report: need at least one view and one original");
    CrosstalkReport report;
    if (original_labels.size() != originals.size()) {
        original_labels.clear();
        for (std::size_t o = 0; o < originals.size(); ++o) {
            original_labels.push_back(o < views.size() && !views[o].label.empty() ? views[o].label
                                                                                   : std::to_string(o));
        }
    }
    report.original_labels = std::move(original_labels);

    std::vector<std::vector<double>> original_luma;
    for (const auto& o : originals) {
        original_luma.push_back(luminance_plane(o));
    }
    for (std::size_t v = 0; v < views.size(); ++v) {
        const auto& view = views[v];
        const auto normalized = normalize_projection(view, mode);
        const auto view_luma = luminance_plane(normalized.image);
        std::vector<double> corr_row;
        std::vector<double> mse_row;
        for (std::size_t o = 0; o < originals.size(); ++o) {
            require(originals[o].width() == normalized.image.width() &&
                        originals[o].height() == normalized.image.height(),
                    "crosstalk_report: view '" + view.label + "' and original " + std::to_string(o) +
                        " differ in size");
            corr_row.push_back(normalized_cross_correlation(view_luma, original_luma[o]));
            mse_row.push_back(mean_squared_error(normalized.image, originals[o]));
        }
        std::size_t best = 0;
        for (std::size_t o = 1; o < corr_row.size(); ++o) {
            if (corr_row[o] > corr_row[best]) {
                best = o;
            }
        }
        report.view_labels.push_back(view.label.empty() ? std::to_string(v) : view.label);
        report.correlations.push_back(std::move(corr_row));
        report.mse.push_back(std::move(mse_row));
        report.verdicts.push_back(best);
    }
    return report;
}

} // namespace volprint
