#include "quatsurf/hmatrix.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace quatsurf {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    os << q.w << (q.x < 0 ? " - " : " + ") << std::abs(q.x) << "i"
       << (q.y < 0 ? " - " : " + ") << std::abs(q.y) << "j"
       << (q.z < 0 ? " - " : " + ") << std::abs(q.z) << "k";
    return os;
}

Mat2c complexify(const Quaternion& q) {
    // p (z0, z1)^T = (p0 z0 - conj(p1) z1, p1 z0 + conj(p0) z1)
    Mat2c m;
    m << q.z0(), -std::conj(q.z1()), q.z1(), std::conj(q.z0());
    return m;
}

Quaternion decomplexify2(const Mat2c& m) {
    return Quaternion::fromSplit(m(0, 0), m(1, 0));
}

Vec4c complexify(const HVector2& v) {
    return {v.a.z0(), v.a.z1(), v.b.z0(), v.b.z1()};
}

HVector2 decomplexify(const Vec4c& v) {
    return {Quaternion::fromSplit(v(0), v(1)), Quaternion::fromSplit(v(2), v(3))};
}

Mat4c complexify(const HMatrix2& m) {
    Mat4c r;
    r.block<2, 2>(0, 0) = complexify(m.m00);
    r.block<2, 2>(0, 2) = complexify(m.m01);
    r.block<2, 2>(2, 0) = complexify(m.m10);
    r.block<2, 2>(2, 2) = complexify(m.m11);
    return r;
}

HMatrix2 decomplexify(const Mat4c& m) {
    // Column action on the basis vectors 1, j of each H slot recovers the
    // quaternion entries.
    return {decomplexify2(m.block<2, 2>(0, 0)), decomplexify2(m.block<2, 2>(0, 2)),
            decomplexify2(m.block<2, 2>(2, 0)), decomplexify2(m.block<2, 2>(2, 2))};
}

Vec4c rightJ(const Vec4c& v) {
    return {-std::conj(v(1)), std::conj(v(0)), -std::conj(v(3)), std::conj(v(2))};
}

HMatrix2 inverse(const HMatrix2& m) {
    const Mat4c c = complexify(m);
    Eigen::PartialPivLU<Mat4c> lu(c);
    const double scale = c.norm();
    const double det = std::abs(lu.determinant());
    if (det < 1e-14 * std::max(1.0, scale * scale * scale * scale)) {
        std::ostringstream msg;
        msg << "HMatrix2 inverse: complexified determinant " << det << " below threshold";
        throw SingularMatrixError(msg.str());
    }
    const Mat4c inv = lu.inverse();
    return decomplexify(inv);
}

} // namespace quatsurf
