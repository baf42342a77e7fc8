#include "helidec/helical_basis.hpp"

#include "helidec/errors.hpp"

namespace helidec {

namespace {

void require_nonzero(const WaveVector& k) {
    if (k.is_zero()) {
        throw Error(Errc::InvalidArgument, "helical basis is undefined at k = 0");
    }
}

HelicalPair build_pair(const Vec3& mu, const WaveVector& k, bool used_fallback) {
    const double kmag = k.norm();
    const Vec3 kr = k.as_real();
    const Vec3 khat{kr[0] / kmag, kr[1] / kmag, kr[2] / kmag};
    const Vec3 real_part = cross(mu, khat);

    HelicalPair pair;
    pair.used_fallback = used_fallback;
    for (int c = 0; c < 3; ++c) {
        pair.plus.h[c] = complex(real_part[c], mu[c]);
        pair.minus.h[c] = complex(real_part[c], -mu[c]);
    }
    pair.plus.sign = +1;
    pair.minus.sign = -1;
    return pair;
}

}  // namespace

std::optional<Vec3> try_mu_hat(const WaveVector& k, const ReferenceAxis& axis) {
    require_nonzero(k);
    const Vec3 zk = cross(axis.z, k.as_real());
    const double len = std::sqrt(dot(zk, zk));
    if (len < kDegenerateAxisThreshold) return std::nullopt;
    return Vec3{zk[0] / len, zk[1] / len, zk[2] / len};
}

Vec3 mu_hat(const WaveVector& k, const ReferenceAxis& axis) {
    if (auto mu = try_mu_hat(k, axis)) return *mu;
    throw Error(Errc::DegenerateAxis, "reference axis is parallel to k");
}

HelicalPair helical_vectors(const WaveVector& k, const ReferenceAxis& axis) {
    if (auto mu = try_mu_hat(k, axis)) return build_pair(*mu, k, false);
    return build_pair(mu_hat(k, ReferenceAxis::fallback()), k, true);
}

complex amplitude_plus(const CVec3& u, const WaveVector& k, const ReferenceAxis& axis) {
    return cdot(helical_vectors(k, axis).plus.h, u) * 0.5;
}

complex amplitude_minus(const CVec3& u, const WaveVector& k, const ReferenceAxis& axis) {
    return cdot(helical_vectors(k, axis).minus.h, u) * 0.5;
}

CVec3 project_plus(const CVec3& u, const WaveVector& k, const ReferenceAxis& axis) {
    const CVec3 h = helical_vectors(k, axis).plus.h;
    return (cdot(h, u) * 0.5) * h;
}

CVec3 project_minus(const CVec3& u, const WaveVector& k, const ReferenceAxis& axis) {
    const CVec3 h = helical_vectors(k, axis).minus.h;
    return (cdot(h, u) * 0.5) * h;
}

}  // namespace helidec
