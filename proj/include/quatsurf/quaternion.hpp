#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace quatsurf {

using Cplx = std::complex<double>;

/// Quaternion q = w + x i + y j + z k with i^2 = j^2 = k^2 = -1 and ij = k.
///
/// The complex split q = z0 + j z1 with z0 = w + ix, z1 = y - iz identifies
/// H with C^2 such that right multiplication by i acts as componentwise
/// multiplication by i. Left multiplication by any quaternion is C-linear
/// for that structure; this is the basis of all complexified linear algebra
/// in the library.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    /// Embeds a complex scalar into span{1, i}.
    constexpr explicit Quaternion(const Cplx& c) : w(c.real()), x(c.imag()) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    /// Complex split: q = z0 + j z1.
    constexpr Cplx z0() const { return {w, x}; }
    constexpr Cplx z1() const { return {y, -z}; }
    static constexpr Quaternion fromSplit(const Cplx& z0, const Cplx& z1) {
        return {z0.real(), z0.imag(), z1.real(), -z1.imag()};
    }

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

    // Hamilton product.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    constexpr Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
    constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
    constexpr Quaternion& operator*=(double s) { return *this = *this * s; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    constexpr Quaternion inverse() const {
        const double n2 = norm2();
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }

    /// Right multiplication by a complex scalar c in span{1, i}: acts
    /// componentwise on the split (z0 c, z1 c).
    constexpr Quaternion rmul(const Cplx& c) const {
        return fromSplit(z0() * c, z1() * c);
    }
    /// Left multiplication by a complex scalar in span{1, i}.
    constexpr Quaternion lmul(const Cplx& c) const { return Quaternion(c) * (*this); }

    constexpr Quaternion im() const { return {0, x, y, z}; }
    constexpr double re() const { return w; }

    constexpr bool operator==(const Quaternion&) const = default;
};

inline double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// e^{i t} as a quaternion in span{1, i}.
inline Quaternion expI(double t) { return Quaternion(Cplx(std::cos(t), std::sin(t))); }

/// Euclidean inner product of R^4 = H.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

} // namespace quatsurf
