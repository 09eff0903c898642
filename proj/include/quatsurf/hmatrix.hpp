#pragma once

#include <Eigen/Dense>

#include "quatsurf/quaternion.hpp"

namespace quatsurf {

using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;

/// Column vector in H^2. Quaternionic scalars act on the right (v q);
/// matrices act on the left.
struct HVector2 {
    Quaternion a;
    Quaternion b;

    constexpr HVector2() = default;
    constexpr HVector2(const Quaternion& a_, const Quaternion& b_) : a(a_), b(b_) {}

    constexpr HVector2 operator+(const HVector2& o) const { return {a + o.a, b + o.b}; }
    constexpr HVector2 operator-(const HVector2& o) const { return {a - o.a, b - o.b}; }
    constexpr HVector2 operator-() const { return {-a, -b}; }
    constexpr HVector2 operator*(double s) const { return {a * s, b * s}; }
    friend constexpr HVector2 operator*(double s, const HVector2& v) { return v * s; }
    constexpr HVector2& operator+=(const HVector2& o) { return *this = *this + o; }

    /// Right scalar action v q.
    constexpr HVector2 rmulQ(const Quaternion& q) const { return {a * q, b * q}; }
    constexpr HVector2 rmul(const Cplx& c) const { return {a.rmul(c), b.rmul(c)}; }

    constexpr double norm2() const { return a.norm2() + b.norm2(); }
    double norm() const { return std::sqrt(norm2()); }
};

/// 2x2 quaternionic matrix, row-major entries, acting on HVector2 from the left.
struct HMatrix2 {
    Quaternion m00, m01, m10, m11;

    constexpr HMatrix2() = default;
    constexpr HMatrix2(const Quaternion& a, const Quaternion& b, const Quaternion& c,
                       const Quaternion& d)
        : m00(a), m01(b), m10(c), m11(d) {}

    static constexpr HMatrix2 identity() {
        return {Quaternion::one(), {}, {}, Quaternion::one()};
    }

    constexpr HVector2 operator*(const HVector2& v) const {
        return {m00 * v.a + m01 * v.b, m10 * v.a + m11 * v.b};
    }
    constexpr HMatrix2 operator*(const HMatrix2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    constexpr HMatrix2 operator+(const HMatrix2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    constexpr HMatrix2 operator-(const HMatrix2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    constexpr HMatrix2 operator*(double s) const {
        return {m00 * s, m01 * s, m10 * s, m11 * s};
    }

    double norm() const {
        return std::sqrt(m00.norm2() + m01.norm2() + m10.norm2() + m11.norm2());
    }
};

/// 2x2 complex image of left multiplication by q on the split (z0, z1).
Mat2c complexify(const Quaternion& q);
Quaternion decomplexify2(const Mat2c& m);

/// C^4 coordinates of v in H^2 under the right-i structure:
/// (a.z0, a.z1, b.z0, b.z1).
Vec4c complexify(const HVector2& v);
HVector2 decomplexify(const Vec4c& v);

/// 4x4 complex image of the left action of M on C^4.
Mat4c complexify(const HMatrix2& m);
HMatrix2 decomplexify(const Mat4c& m);

/// Right multiplication by j, q -> q j, as an antilinear map on the split:
/// (z0, z1) -> (-conj(z1), conj(z0)). Exposed for quaternionic-closure checks.
Vec4c rightJ(const Vec4c& v);

/// Inverse via the complexified 4x4 system. Throws SingularMatrixError when
/// the complexified determinant magnitude is below 1e-14 times scale.
HMatrix2 inverse(const HMatrix2& m);

} // namespace quatsurf
