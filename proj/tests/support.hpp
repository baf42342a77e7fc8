#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// nonlinear evaluators and transforms so they can serve as oracles.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "helidec/field.hpp"

namespace helidec::test {

/// Direct Fourier-space convolution of the rotational nonlinearity:
///   du+(k) = conj(h+(k)) . sum_{p+q=k} u(p) x (|q| u(q)) / 2
/// with u(p) = u+(p) h+(p) over the full lattice, each h recomputed from the
/// basis builder rather than read from the mode table.
inline SpectralState convolution_oracle(const SpectralState& state) {
    const ModeSet& modes = state.modes();
    std::vector<WaveVector> full;
    std::vector<CVec3> vel;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (const WaveVector& k : {modes.k(i), -modes.k(i)}) {
            const complex u = state.at(k);
            full.push_back(k);
            vel.push_back(u * helical_vectors(k).plus.h);
        }
    }
    SpectralState out(state.mode_set(), state.time());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const WaveVector k = modes.k(i);
        CVec3 acc{};
        for (std::size_t a = 0; a < full.size(); ++a) {
            const WaveVector q{k.kx - full[a].kx, k.ky - full[a].ky, k.kz - full[a].kz};
            if (q.is_zero() || !modes.locate(q)) continue;
            const CVec3 uq = state.at(q) * helical_vectors(q).plus.h;
            acc = acc + cross(vel[a], complex(q.norm()) * uq);
        }
        out[i] = cdot(helical_vectors(k).plus.h, acc) * 0.5;
    }
    return out;
}

/// v(x) = sum_k u(k) exp(i k.x) evaluated point by point in complex
/// arithmetic on an m^3 grid; returns per-component real and imaginary parts.
struct BruteForceField {
    std::vector<CVec3> values;  // index ((ix*m)+iy)*m+iz
};

inline BruteForceField brute_force_inverse(const SpectralState& state, int m) {
    const ModeSet& modes = state.modes();
    BruteForceField f;
    f.values.assign(static_cast<std::size_t>(m) * m * m, CVec3{});
    const double dx = 2.0 * std::numbers::pi / m;
    for (int ix = 0; ix < m; ++ix) {
        for (int iy = 0; iy < m; ++iy) {
            for (int iz = 0; iz < m; ++iz) {
                CVec3 v{};
                for (std::size_t i = 0; i < modes.size(); ++i) {
                    for (const WaveVector& k : {modes.k(i), -modes.k(i)}) {
                        const double phase = dx * (k.kx * ix + k.ky * iy + k.kz * iz);
                        v = v + std::polar(1.0, phase) * state.velocity_at(k);
                    }
                }
                f.values[(static_cast<std::size_t>(ix) * m + iy) * m + iz] = v;
            }
        }
    }
    return f;
}

inline double relative_l2(const SpectralState& a, const SpectralState& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double max_abs_diff(const SpectralState& a, const SpectralState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace helidec::test
