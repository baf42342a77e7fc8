#pragma once

#include <optional>

#include "helidec/vec3.hpp"

namespace helidec {

/// Reference vector used to build the unit vector orthogonal to k.
struct ReferenceAxis {
    Vec3 z{0.0, 0.0, 1.0};

    static constexpr ReferenceAxis primary() { return {{0.0, 0.0, 1.0}}; }
    static constexpr ReferenceAxis fallback() { return {{1.0, 0.0, 0.0}}; }
};

/// Below this value of |z x k| the axis is treated as parallel to k.
inline constexpr double kDegenerateAxisThreshold = 1e-12;

/// Curl eigenvector: i k x h = sign |k| h, with conj(h).h = 2.
struct HelicalBasisVector {
    CVec3 h{};
    int sign = +1;
};

struct HelicalPair {
    HelicalBasisVector plus;
    HelicalBasisVector minus;
    bool used_fallback = false;
};

/// (z x k) / |z x k|, or nullopt when z is (numerically) parallel to k.
std::optional<Vec3> try_mu_hat(const WaveVector& k, const ReferenceAxis& axis);

/// Throws Errc::DegenerateAxis when z is parallel to k.
Vec3 mu_hat(const WaveVector& k, const ReferenceAxis& axis);

/// h+- = mu x k_hat +- i mu. Falls back to ReferenceAxis::fallback() when the
/// requested axis is parallel to k; k and -k always take the same branch.
HelicalPair helical_vectors(const WaveVector& k, const ReferenceAxis& axis = ReferenceAxis::primary());

/// Positive-helicity amplitude conj(h+).u / 2, so that P+ u = amplitude * h+.
complex amplitude_plus(const CVec3& u, const WaveVector& k,
                       const ReferenceAxis& axis = ReferenceAxis::primary());
complex amplitude_minus(const CVec3& u, const WaveVector& k,
                        const ReferenceAxis& axis = ReferenceAxis::primary());

CVec3 project_plus(const CVec3& u, const WaveVector& k,
                   const ReferenceAxis& axis = ReferenceAxis::primary());
CVec3 project_minus(const CVec3& u, const WaveVector& k,
                    const ReferenceAxis& axis = ReferenceAxis::primary());

}  // namespace helidec
