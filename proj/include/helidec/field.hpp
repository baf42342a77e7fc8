#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "helidec/mode_set.hpp"

namespace helidec {

/// Positive-helicity spectral state: one complex amplitude u+(k) per stored
/// half-lattice mode. The value at -k is conj(u+(k)); u-(k) is identically
/// zero and has no storage. Also used for RHS increments and forcing.
class SpectralState {
public:
    explicit SpectralState(ModeSetPtr modes, double time = 0.0);

    const ModeSet& modes() const { return *modes_; }
    const ModeSetPtr& mode_set() const { return modes_; }
    const Grid& grid() const { return modes_->grid(); }
    std::size_t size() const { return amplitudes_.size(); }

    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    std::span<complex> amplitudes() { return amplitudes_; }
    std::span<const complex> amplitudes() const { return amplitudes_; }
    complex& operator[](std::size_t i) { return amplitudes_[i]; }
    const complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    /// Full-lattice amplitude: u+(k), conj(u+(-k)), or 0 when unretained.
    complex at(const WaveVector& k) const;

    /// Full-lattice velocity coefficient u+(k) h+(k).
    CVec3 velocity_at(const WaveVector& k) const;

    SpectralState& operator+=(const SpectralState& other);
    SpectralState& operator*=(double s);

    /// Bitwise comparison of time, mode list and amplitudes.
    bool identical(const SpectralState& other) const;

private:
    ModeSetPtr modes_;
    double time_ = 0.0;
    std::vector<complex> amplitudes_;
};

/// E = sum over the full lattice of |u+|^2.
double energy(const SpectralState& state);

/// H = sum over the full lattice of |k| |u+|^2; never negative.
double helicity(const SpectralState& state);

/// Full-lattice sum of |k|^power |u+|^2, accumulated in storage order.
double weighted_sum(const SpectralState& state, double power);

/// (sum |k|^{2s} |u+|^2)^{1/2}, s >= 0.
double norm_hs(const SpectralState& state, double s);

/// sum |k|^3 |u+|^2, the squared H^{3/2} norm.
double dissipation_sum(const SpectralState& state);

/// sum |f|^2 / |k|, the squared H^{-1/2} norm of a forcing field.
double dual_half_norm_sq(const SpectralState& forcing);

struct Band {
    double lo = 1.0;
    double hi = 1.0;
};

/// Random initial data: |u+(k)| proportional to |k|^exponent on the shell
/// band lo <= |k| <= hi, seeded uniform phases, rescaled to the requested
/// energy. Throws EmptyBand when no retained mode falls in the band.
SpectralState random_state(ModeSetPtr modes, double spectrum_exponent, Band band, std::uint64_t seed,
                           double target_energy = 1.0);
SpectralState random_state(const Grid& grid, double spectrum_exponent, Band band, std::uint64_t seed,
                           double target_energy = 1.0);

/// Deterministic uniform phase in [0, 2*pi) built from raw generator bits.
double phase_from_bits(std::uint64_t bits);

}  // namespace helidec
