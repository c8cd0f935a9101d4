// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "volprint/crosstalk.hpp"
#include "volprint/design.hpp"
#include "volprint/projection.hpp"
#include "volprint/synthetic.hpp"

namespace volprint {
namespace {

ProjectedPattern from_raw(FloatImage raw, std::size_t slabs, std::string label = {})
{
    return {std::move(raw), slabs, 2, std::move(label)};
}

TEST(ProjectVolume, ConstantVolumeSumsToLayerCount)
{
    const GridSpec g{16, 16, 20, 1.0, 1.0, 0.6};
    const Volume vol(g, {1, 1, 1});
    const auto view = project_volume(vol, ProjectionAxis({0, 0, 1}), {16, 16, 1.0});
    EXPECT_EQ(view.slab_count, 20u);
    EXPECT_EQ(view.slab_axis, 2);
    for (const auto& p : view.raw.pixels()) {
        EXPECT_NEAR(p.g, 20.0, 1e-12);
    }
}

TEST(ProjectVolume, SinglePatternReturnsScaledPattern)
{
    const auto pattern = synthetic::noise_pattern(12, 12, 1.0, 4);
    const GridSpec g{12, 12, 5, 1.0, 1.0, 0.6};
    const Volume vol = design_volume({{{pattern, ProjectionAxis({0, 0, 1})}}, g});
    const auto view = project_volume(vol, ProjectionAxis({0, 0, 1}), ViewRaster::like(pattern));
    for (std::size_t n = 0; n < pattern.pixels().size(); ++n) {
        for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(view.raw.pixels()[n][c], 5.0 * pattern.pixels()[n][c], 1e-12);
        }
    }
    const auto normalized = normalize_projection(view, NormalizeMode::theoretical_max);
    EXPECT_NEAR(normalized.image.at(3, 7).r, pattern.at(3, 7).r, 1e-12);
}

TEST(ProjectVolume, AxisAlignedFactorizationMatchesOracle)
{
    const std::size_t w = 16;
    const std::size_t d = 4;
    const auto a = synthetic::noise_pattern(w, w, 1.0, 21);
    const auto b = synthetic::noise_pattern(w, w, 1.0, 22);
    const auto c = synthetic::noise_pattern(w, w, 1.0, 23);
    const ProjectionAxis ax({1, 0, 0});
    const ProjectionAxis ay({0, 1, 0});
    const ProjectionAxis az({0, 0, 1});
    const GridSpec g{w, w, d, 1.0, 1.0, 1.0};
    const Volume vol = design_volume({{{a, ax}, {b, ay}, {c, az}}, g});
    const auto expected = oracle::axis_aligned_views(a, b, c, d);
    const ViewRaster raster{w, w, 1.0};

    const auto check = [](const FloatImage& got, const FloatImage& want) {
        for (std::size_t n = 0; n < want.pixels().size(); ++n) {
            for (std::size_t ch = 0; ch < 3; ++ch) {
                ASSERT_NEAR(got.pixels()[n][ch], want.pixels()[n][ch], 1e-12) << "pixel " << n;
            }
        }
    };
    check(project_volume(vol, ax, raster).raw, expected.along_x);
    check(project_volume(vol, ay, raster).raw, expected.along_y);
    check(project_volume(vol, az, raster).raw, expected.along_z);
}

TEST(ProjectVolume, GrazingAxisSelectsVoxelSlabs)
{
    const Volume vol(GridSpec{8, 8, 4, 1, 1, 1}, {1, 1, 1});
    const auto along_x = project_volume(vol, ProjectionAxis({1, 0, 0}), {8, 8, 1.0});
    EXPECT_EQ(along_x.slab_axis, 0);
    EXPECT_EQ(along_x.slab_count, 8u);
    const auto along_y = project_volume(vol, ProjectionAxis({0.02, 1, 0}), {8, 8, 1.0});
    EXPECT_EQ(along_y.slab_axis, 1);
    EXPECT_THROW(project_volume(vol, ProjectionAxis({1, 0, 0}), {8, 8, 1.0}, {SliceMode::films, 1}), Error);
    EXPECT_NO_THROW(project_volume(vol, axis_from_rotations(0, 30), {8, 8, 1.0}, {SliceMode::films, 1}));
}

TEST(ProjectVolume, OutsideVolumeIsBlack)
{
    const Volume vol(GridSpec{4, 4, 2, 1, 1, 1}, {1, 1, 1});
    const auto view = project_volume(vol, ProjectionAxis({0, 0, 1}), {10, 10, 1.0});
    EXPECT_EQ(view.raw.at(0, 0), (Rgb{}));
    EXPECT_NEAR(view.raw.at(5, 5).b, 2.0, 1e-12);
}

TEST(ProjectVolume, ThreadCountDoesNotChangeResult)
{
    const auto pattern = synthetic::noise_pattern(16, 16, 1.0, 9);
    const Volume vol = design_volume(
        {{{pattern, axis_from_rotations(0, 30)}, {pattern, axis_from_rotations(0, -30)}}, GridSpec{16, 16, 6, 1, 1, 1}});
    const auto axis = axis_from_rotations(10, 30);
    const auto one = project_volume(vol, axis, {16, 16, 1.0}, {SliceMode::automatic, 1});
    const auto many = project_volume(vol, axis, {16, 16, 1.0}, {SliceMode::automatic, 5});
    EXPECT_EQ(one.raw.pixels(), many.raw.pixels());
}

TEST(NormalizeProjection, TheoreticalMaxDividesBySlabCount)
{
    FloatImage raw(1, 1, 1.0);
    raw.at(0, 0) = {2, 1, 0};
    const auto view = normalize_projection(from_raw(raw, 2), NormalizeMode::theoretical_max);
    EXPECT_EQ(view.image.at(0, 0), (Rgb{1, 0.5, 0}));
    EXPECT_EQ(view.normalization.scale, 2.0);
}

TEST(NormalizeProjection, AutomaticUsesPeakAndPreservesHue)
{
    FloatImage raw(2, 1, 1.0);
    raw.at(0, 0) = {0.4, 0.2, 0.1};
    raw.at(1, 0) = {0.8, 0.0, 0.0};
    const auto view = normalize_projection(from_raw(raw, 20), NormalizeMode::automatic);
    EXPECT_DOUBLE_EQ(view.normalization.scale, 0.8);
    EXPECT_DOUBLE_EQ(view.image.at(0, 0).r, 0.5);
    EXPECT_DOUBLE_EQ(view.image.at(0, 0).g / view.image.at(0, 0).b, 2.0);
}

TEST(NormalizeProjection, AllZeroAutomaticKeepsUnitScale)
{
    const auto view = normalize_projection(from_raw(FloatImage(3, 3, 1.0), 20), NormalizeMode::automatic);
    EXPECT_EQ(view.normalization.scale, 1.0);
    EXPECT_EQ(view.image.max_value(), 0.0);
}

TEST(Crosstalk, IdentityViewsCorrelatePerfectly)
{
    std::vector<PatternImage> originals;
    std::vector<ProjectedPattern> views;
    for (std::uint64_t s = 0; s < 3; ++s) {
        originals.push_back(synthetic::noise_pattern(10, 10, 1.0, 50 + s));
        FloatImage raw(10, 10, 1.0);
        for (std::size_t n = 0; n < raw.pixels().size(); ++n) {
            raw.pixels()[n] = originals.back().pixels()[n] * 7.0;
        }
        views.push_back(from_raw(raw, 7, std::string(1, static_cast<char>('A' + s))));
    }
    const auto report = crosstalk_report(views, originals, NormalizeMode::theoretical_max);
    EXPECT_EQ(report.original_labels, (std::vector<std::string>{"A", "B", "C"}));
    for (std::size_t v = 0; v < 3; ++v) {
        EXPECT_NEAR(report.correlations[v][v], 1.0, 1e-12);
        EXPECT_NEAR(report.mse[v][v], 0.0, 1e-24);
        EXPECT_EQ(report.verdicts[v], v);
    }
    EXPECT_TRUE(report.all_identified());
    EXPECT_NEAR(report.mean_own_correlation(), 1.0, 1e-12);
}

TEST(Crosstalk, ConstantViewHasZeroCorrelation)
{
    const auto original = synthetic::noise_pattern(6, 6, 1.0, 1);
    FloatImage raw(6, 6, 1.0);
    for (auto& p : raw.pixels()) {
        p = {0.3, 0.3, 0.3};
    }
    const auto report = crosstalk_report({from_raw(raw, 20, "A")}, {original});
    EXPECT_EQ(report.correlations[0][0], 0.0);
}

TEST(Crosstalk, CorrelationMatchesHandComputation)
{
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{2, 4, 5, 9};
    // mean 2.5 and 5; dx = (-1.5,-0.5,0.5,1.5), dy = (-3,-1,0,4)
    const double sxy = 4.5 + 0.5 + 0.0 + 6.0;
    const double sxx = 5.0;
    const double syy = 9 + 1 + 0 + 16;
    EXPECT_NEAR(normalized_cross_correlation(x, y), sxy / std::sqrt(sxx * syy), 1e-15);
    EXPECT_NEAR(normalized_cross_correlation(x, {4, 3, 2, 1}), -1.0, 1e-15);
}

TEST(Crosstalk, DimensionMismatchIsRejected)
{
    const auto original = synthetic::noise_pattern(6, 6, 1.0, 1);
    EXPECT_THROW(crosstalk_report({from_raw(FloatImage(5, 6, 1.0), 20)}, {original}), Error);
    EXPECT_THROW(crosstalk_report({}, {original}), Error);
}

TEST(Crosstalk, MoreOriginalsThanViews)
{
    const auto a = synthetic::noise_pattern(6, 6, 1.0, 1);
    const auto b = synthetic::noise_pattern(6, 6, 1.0, 2);
    FloatImage raw(6, 6, 1.0);
    for (std::size_t n = 0; n < raw.pixels().size(); ++n) {
        raw.pixels()[n] = b.pixels()[n];
    }
    const auto report = crosstalk_report({from_raw(raw, 1, "B")}, {a, b}, NormalizeMode::automatic, {"A", "B"});
    EXPECT_EQ(report.verdicts[0], 1u);
    EXPECT_TRUE(report.all_identified());
}

} // namespace
} // namespace volprint
