// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace volprint {

template <typename T>
struct BasicVec3 {
    T x{};
    T y{};
    T z{};

    constexpr BasicVec3 operator+(const BasicVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr BasicVec3 operator-(const BasicVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr BasicVec3 operator*(T s) const { return {x * s, y * s, z * s}; }
    constexpr BasicVec3 operator/(T s) const { return {x / s, y / s, z / s}; }
    constexpr bool operator==(const BasicVec3&) const = default;

    [[nodiscard]] constexpr T dot(const BasicVec3& o) const { return x * o.x + y * o.y + z * o.z; }

    [[nodiscard]] constexpr BasicVec3 cross(const BasicVec3& o) const
    {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }

    [[nodiscard]] T norm() const { return std::sqrt(dot(*this)); }

    [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

template <typename T>
constexpr BasicVec3<T> operator*(T s, const BasicVec3<T>& v)
{
    return v * s;
}

using Vec3 = BasicVec3<double>;

} // namespace volprint
