// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "volprint/error.hpp"
#include "volprint/vec3.hpp"

namespace volprint {

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

/// Order in which the two axis rotations are applied to +Z.
enum class RotationOrder {
    y_after_x, ///< direction = R_y * R_x * z (default)
    x_after_y, ///< direction = R_x * R_y * z
};

struct PlaneBasis {
    Vec3 u;
    Vec3 v;
};

/// Deterministic orthonormal basis of the plane orthogonal to `direction`.
///
/// v is the global up (+Y) projected onto the plane; when the direction is
/// within ~2.6 deg of +/-Y the +X axis is used instead. u = v x d, so
/// (u, v, d) is right-handed.
inline PlaneBasis plane_basis(Vec3 direction)
{
    require(direction.finite(), "plane_basis: direction must be finite");
    const double len = direction.norm();
    require(len > 1e-12, "plane_basis: zero direction");
    const Vec3 d = direction / len;

    Vec3 up{0.0, 1.0, 0.0};
    if (std::abs(up.dot(d)) > 0.999) {
        up = {1.0, 0.0, 0.0};
    }
    Vec3 v = up - d * up.dot(d);
    v = v / v.norm();
    const Vec3 u = v.cross(d);
    return {u, v};
}

/// A viewing direction together with the (u, v) frame of its pattern plane.
class ProjectionAxis {
public:
    explicit ProjectionAxis(Vec3 direction, std::string label = {}) : label_(std::move(label))
    {
        require(direction.finite(), "ProjectionAxis: direction must be finite");
        const double len = direction.norm();
        require(len > 1e-12, "ProjectionAxis: zero direction");
        direction_ = direction / len;
        const auto basis = plane_basis(direction_);
        u_ = basis.u;
        v_ = basis.v;
    }

    [[nodiscard]] const Vec3& direction() const noexcept { return direction_; }
    [[nodiscard]] const Vec3& u_basis() const noexcept { return u_; }
    [[nodiscard]] const Vec3& v_basis() const noexcept { return v_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// Angle between two axes in degrees.
    [[nodiscard]] double angle_to(const ProjectionAxis& other) const
    {
        const double c = std::clamp(direction_.dot(other.direction_), -1.0, 1.0);
        return std::acos(c) * 180.0 / std::numbers::pi;
    }

private:
    Vec3 direction_;
    Vec3 u_;
    Vec3 v_;
    std::string label_;
};

/// Rotates +Z about X by `rot_x_deg` and about Y by `rot_y_deg`.
/// Both angles must lie strictly inside (-90, 90).
inline ProjectionAxis axis_from_rotations(double rot_x_deg, double rot_y_deg,
                                          RotationOrder order = RotationOrder::y_after_x,
                                          std::string label = {})
{
    require(std::isfinite(rot_x_deg) && std::isfinite(rot_y_deg), "axis_from_rotations: angles must be finite");
    require(std::abs(rot_x_deg) < 90.0 && std::abs(rot_y_deg) < 90.0,
            "axis_from_rotations: angles must lie in (-90, 90) degrees");

    const double ax = deg_to_rad(rot_x_deg);
    const double ay = deg_to_rad(rot_y_deg);
    const double sx = std::sin(ax), cx = std::cos(ax);
    const double sy = std::sin(ay), cy = std::cos(ay);

    Vec3 d;
    if (order == RotationOrder::y_after_x) {
        // R_x z = (0, -sx, cx), then R_y.
        d = {cx * sy, -sx, cx * cy};
    } else {
        // R_y z = (sy, 0, cy), then R_x.
        d = {sy, -sx * cy, cx * cy};
    }
    return ProjectionAxis(d, std::move(label));
}

struct PlanePoint {
    double u = 0.0;
    double v = 0.0;
};

/// Perpendicular (parallel-ray) projection of `p` onto the pattern plane of `axis`.
inline PlanePoint project_point_to_plane(const Vec3& p, const ProjectionAxis& axis, const Vec3& origin = {})
{
    const Vec3 rel = p - origin;
    return {rel.dot(axis.u_basis()), rel.dot(axis.v_basis())};
}

} // namespace volprint
