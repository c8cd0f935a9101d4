// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "volprint/geometry.hpp"

namespace volprint {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 rot_x(double deg)
{
    const double a = deg * std::numbers::pi / 180.0;
    return {{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}}};
}

Mat3 rot_y(double deg)
{
    const double a = deg * std::numbers::pi / 180.0;
    return {{{std::cos(a), 0, std::sin(a)}, {0, 1, 0}, {-std::sin(a), 0, std::cos(a)}}};
}

Mat3 mul(const Mat3& a, const Mat3& b)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return r;
}

Vec3 apply_to_z(const Mat3& m) { return {m[0][2], m[1][2], m[2][2]}; }

void expect_orthonormal_right_handed(const ProjectionAxis& axis)
{
    const Vec3& d = axis.direction();
    const Vec3& u = axis.u_basis();
    const Vec3& v = axis.v_basis();
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
    EXPECT_NEAR(u.norm(), 1.0, 1e-12);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT(std::abs(u.dot(v)), 1e-12);
    EXPECT_LT(std::abs(u.dot(d)), 1e-12);
    EXPECT_LT(std::abs(v.dot(d)), 1e-12);
    EXPECT_NEAR(u.cross(v).dot(d), 1.0, 1e-12);
}

TEST(AxisFromRotations, IdentityIsCanonicalFrame)
{
    const auto axis = axis_from_rotations(0.0, 0.0);
    EXPECT_EQ(axis.direction(), (Vec3{0, 0, 1}));
    EXPECT_EQ(axis.u_basis(), (Vec3{1, 0, 0}));
    EXPECT_EQ(axis.v_basis(), (Vec3{0, 1, 0}));
}

TEST(AxisFromRotations, ThirtyAboutY)
{
    const auto d = axis_from_rotations(0.0, 30.0).direction();
    EXPECT_NEAR(d.x, 0.5, 1e-15);
    EXPECT_NEAR(d.y, 0.0, 1e-15);
    EXPECT_NEAR(d.z, std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(AxisFromRotations, TwentyTwentyMatchesMatrixProduct)
{
    const Vec3 by_matrix = apply_to_z(mul(rot_y(20.0), rot_x(20.0)));
    const double c = std::cos(20.0 * std::numbers::pi / 180.0);
    const double s = std::sin(20.0 * std::numbers::pi / 180.0);
    const Vec3 by_hand{c * s, -s, c * c};
    const Vec3 d = axis_from_rotations(20.0, 20.0).direction();
    for (const Vec3& ref : {by_matrix, by_hand}) {
        EXPECT_NEAR(d.x, ref.x, 1e-14);
        EXPECT_NEAR(d.y, ref.y, 1e-14);
        EXPECT_NEAR(d.z, ref.z, 1e-14);
    }
}

TEST(AxisFromRotations, AlternateOrderMatchesMatrixProduct)
{
    for (double rx : {-35.0, 10.0, 20.0}) {
        for (double ry : {-20.0, 15.0, 40.0}) {
            const Vec3 ref = apply_to_z(mul(rot_x(rx), rot_y(ry)));
            const Vec3 d = axis_from_rotations(rx, ry, RotationOrder::x_after_y).direction();
            EXPECT_NEAR(d.x, ref.x, 1e-14);
            EXPECT_NEAR(d.y, ref.y, 1e-14);
            EXPECT_NEAR(d.z, ref.z, 1e-14);
        }
    }
}

TEST(AxisFromRotations, RejectsOutOfRangeAngles)
{
    EXPECT_THROW(axis_from_rotations(90.0, 0.0), Error);
    EXPECT_THROW(axis_from_rotations(0.0, -90.0), Error);
    EXPECT_THROW(axis_from_rotations(0.0, 120.0), Error);
    EXPECT_THROW(axis_from_rotations(std::nan(""), 0.0), Error);
    EXPECT_NO_THROW(axis_from_rotations(89.9, -89.9));
}

TEST(PlaneBasis, UpFallbackForVerticalDirection)
{
    const auto basis = plane_basis({0, 1, 0});
    EXPECT_NEAR(basis.v.x, 1.0, 1e-15);
    expect_orthonormal_right_handed(ProjectionAxis({0, 1, 0}));
    expect_orthonormal_right_handed(ProjectionAxis({0, -1, 0}));
}

TEST(PlaneBasis, ObliqueDirectionIsOrthonormal)
{
    expect_orthonormal_right_handed(ProjectionAxis({0.5, 0.0, 0.86603}));
}

TEST(PlaneBasis, RejectsZeroDirection)
{
    EXPECT_THROW(plane_basis({0, 0, 0}), Error);
    EXPECT_THROW(ProjectionAxis(Vec3{0, 0, 0}), Error);
}

TEST(PlaneBasis, RandomDirectionsSatisfyInvariants)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        expect_orthonormal_right_handed(ProjectionAxis({n(rng), n(rng), n(rng)}));
    }
}

TEST(ProjectPoint, AxisPointsMapToOrigin)
{
    const auto axis = axis_from_rotations(12.0, -25.0);
    const auto uv = project_point_to_plane(axis.direction() * 7.5, axis);
    EXPECT_NEAR(uv.u, 0.0, 1e-14);
    EXPECT_NEAR(uv.v, 0.0, 1e-14);
}

TEST(ProjectPoint, OffsetAlongU)
{
    const auto axis = axis_from_rotations(-20.0, 20.0);
    const Vec3 origin{1.0, -2.0, 0.5};
    const Vec3 p = origin + axis.direction() * 3.0 + axis.u_basis() * 2.0;
    const auto uv = project_point_to_plane(p, axis, origin);
    EXPECT_NEAR(uv.u, 2.0, 1e-14);
    EXPECT_NEAR(uv.v, 0.0, 1e-14);
}

TEST(ProjectPoint, InvariantAlongDirection)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-20.0, 20.0);
    std::uniform_real_distribution<double> ang(-60.0, 60.0);
    for (int a = 0; a < 10; ++a) {
        const auto axis = axis_from_rotations(ang(rng), ang(rng));
        const Vec3 p{pos(rng), pos(rng), pos(rng)};
        const auto base = project_point_to_plane(p, axis);
        for (int t = 0; t < 100; ++t) {
            const auto moved = project_point_to_plane(p + axis.direction() * pos(rng), axis);
            EXPECT_LT(std::hypot(moved.u - base.u, moved.v - base.v), 1e-9);
        }
    }
}

TEST(ProjectionAxis, AngleBetweenAxes)
{
    EXPECT_NEAR(axis_from_rotations(0, -30).angle_to(axis_from_rotations(0, 30)), 60.0, 1e-9);
    EXPECT_NEAR(axis_from_rotations(0, 0).angle_to(axis_from_rotations(0, 0)), 0.0, 1e-6);
}

} // namespace
} // namespace volprint
