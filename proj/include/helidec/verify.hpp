#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "helidec/integrator.hpp"

namespace helidec {

/// Worst deviations over a mode table, each scaled by max(1, |k|) where the
/// identity is linear in k.
struct BasisIdentityErrors {
    double curl = 0.0;            ///< |i k x h+- -+ |k| h+-|
    double norm = 0.0;            ///< |conj(h).h - 2|
    double transversality = 0.0;  ///< |k . h|
    double conjugation = 0.0;     ///< |h(-k) - conj(h(k))|
    double orthogonality = 0.0;   ///< |conj(h+) . h-|
};
BasisIdentityErrors basis_identity_errors(const ModeSet& modes);

/// Worst relative errors of P+ algebra over random complex vectors.
struct ProjectorErrors {
    double idempotence = 0.0;
    double self_adjoint = 0.0;
    double completeness = 0.0;
};
ProjectorErrors projector_errors(int trials, std::uint64_t seed, int kmax);

/// ||fast - triadic|| / ||triadic||.
double oracle_relative_error(const SpectralState& state);

/// |sum w Re(conj u du)| / sum w |u| |du| for w = 1 (energy) and w = |k|.
struct ExchangeErrors {
    double energy = 0.0;
    double helicity = 0.0;
};
ExchangeErrors exchange_errors(const SpectralState& state, const SpectralState& increment);

/// Non-collinear triad with three distinct legs inside |k_i| <= kmax.
TriadSpec random_triad(std::mt19937_64& rng, int kmax);

struct PropertyResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
};

/// The invariant suite behind `helidec verify`.
std::vector<PropertyResult> run_invariant_suite(const SimConfig& config);

}  // namespace helidec
