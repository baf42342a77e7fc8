#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace helidec {

using complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<complex, 3>;

/// Integer lattice wavevector in units of 2*pi/L with L = 2*pi.
struct WaveVector {
    int kx = 0;
    int ky = 0;
    int kz = 0;

    constexpr bool is_zero() const { return kx == 0 && ky == 0 && kz == 0; }
    constexpr int norm2() const { return kx * kx + ky * ky + kz * kz; }
    double norm() const { return std::sqrt(static_cast<double>(norm2())); }
    constexpr int max_abs() const {
        const int ax = kx < 0 ? -kx : kx;
        const int ay = ky < 0 ? -ky : ky;
        const int az = kz < 0 ? -kz : kz;
        return ax > ay ? (ax > az ? ax : az) : (ay > az ? ay : az);
    }
    Vec3 as_real() const {
        return {static_cast<double>(kx), static_cast<double>(ky), static_cast<double>(kz)};
    }

    friend constexpr WaveVector operator-(const WaveVector& k) { return {-k.kx, -k.ky, -k.kz}; }
    friend constexpr WaveVector operator+(const WaveVector& a, const WaveVector& b) {
        return {a.kx + b.kx, a.ky + b.ky, a.kz + b.kz};
    }
    friend constexpr bool operator==(const WaveVector&, const WaveVector&) = default;
};

/// Half-lattice membership: kz > 0, or kz == 0 and ky > 0, or kz == ky == 0 and kx > 0.
constexpr bool in_half_lattice(const WaveVector& k) {
    if (k.kz != 0) return k.kz > 0;
    if (k.ky != 0) return k.ky > 0;
    return k.kx > 0;
}

/// Lexicographic (kz, ky, kx) order used for storage and checkpoints.
constexpr bool storage_less(const WaveVector& a, const WaveVector& b) {
    if (a.kz != b.kz) return a.kz < b.kz;
    if (a.ky != b.ky) return a.ky < b.ky;
    return a.kx < b.kx;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Bilinear product, no conjugation.
inline complex dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Sesquilinear product conj(a).b
inline complex cdot(const CVec3& a, const CVec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

inline CVec3 conj(const CVec3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

inline CVec3 operator*(complex s, const CVec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline CVec3 operator-(const CVec3& a, const CVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline CVec3 to_complex(const Vec3& a) { return {a[0], a[1], a[2]}; }

inline double norm(const CVec3& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); }

}  // namespace helidec
