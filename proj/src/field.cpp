#include "helidec/field.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "helidec/errors.hpp"

namespace helidec {

SpectralState::SpectralState(ModeSetPtr modes, double time)
    : modes_(std::move(modes)), time_(time), amplitudes_(modes_->size(), complex{}) {}

complex SpectralState::at(const WaveVector& k) const {
    const auto loc = modes_->locate(k);
    if (!loc) return {};
    const complex u = amplitudes_[loc->index];
    return loc->conjugated ? std::conj(u) : u;
}

CVec3 SpectralState::velocity_at(const WaveVector& k) const {
    const auto loc = modes_->locate(k);
    if (!loc) return {};
    const complex u = amplitudes_[loc->index];
    const CVec3& h = modes_->h_plus(loc->index);
    return loc->conjugated ? std::conj(u) * conj(h) : u * h;
}

SpectralState& SpectralState::operator+=(const SpectralState& other) {
    if (!modes_->same_modes(other.modes())) {
        throw Error(Errc::InvalidArgument, "cannot add states on different mode sets");
    }
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
    return *this;
}

SpectralState& SpectralState::operator*=(double s) {
    for (auto& a : amplitudes_) a *= s;
    return *this;
}

bool SpectralState::identical(const SpectralState& other) const {
    if (std::memcmp(&time_, &other.time_, sizeof(double)) != 0) return false;
    if (!modes_->same_modes(other.modes())) return false;
    return std::memcmp(amplitudes_.data(), other.amplitudes_.data(), amplitudes_.size() * sizeof(complex)) == 0;
}

namespace {

double weight(double kmag, double power) {
    if (power == 0.0) return 1.0;
    if (power == 1.0) return kmag;
    if (power == 2.0) return kmag * kmag;
    if (power == 3.0) return kmag * kmag * kmag;
    return std::pow(kmag, power);
}

}  // namespace

double weighted_sum(const SpectralState& state, double power) {
    const ModeSet& modes = state.modes();
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        sum += weight(modes.kmag(i), power) * std::norm(state[i]);
    }
    // each stored mode stands for itself and its conjugate partner
    return 2.0 * sum;
}

double energy(const SpectralState& state) { return weighted_sum(state, 0.0); }

double helicity(const SpectralState& state) { return weighted_sum(state, 1.0); }

double norm_hs(const SpectralState& state, double s) {
    if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "Sobolev index must be non-negative");
    return std::sqrt(weighted_sum(state, 2.0 * s));
}

double dissipation_sum(const SpectralState& state) { return weighted_sum(state, 3.0); }

double dual_half_norm_sq(const SpectralState& forcing) { return weighted_sum(forcing, -1.0); }

double phase_from_bits(std::uint64_t bits) {
    return 2.0 * std::numbers::pi * static_cast<double>(bits >> 11) * 0x1.0p-53;
}

SpectralState random_state(ModeSetPtr modes, double spectrum_exponent, Band band, std::uint64_t seed,
                           double target_energy) {
    if (!(band.lo >= 1.0) || !(band.hi >= band.lo)) {
        throw Error(Errc::InvalidArgument, "band must satisfy 1 <= lo <= hi");
    }
    if (!(target_energy > 0.0) || !std::isfinite(spectrum_exponent)) {
        throw Error(Errc::InvalidArgument, "target energy must be positive and exponent finite");
    }
    SpectralState state(std::move(modes));
    const ModeSet& table = state.modes();
    std::mt19937_64 rng(seed);
    bool any = false;
    for (std::size_t i = 0; i < state.size(); ++i) {
        // one draw per stored mode keeps phases stable when the band changes
        const double phase = phase_from_bits(rng());
        const double k = table.kmag(i);
        if (k < band.lo || k > band.hi) continue;
        state[i] = std::polar(std::pow(k, spectrum_exponent), phase);
        any = true;
    }
    if (!any) throw Error(Errc::EmptyBand, "no retained mode satisfies lo <= |k| <= hi");
    state *= std::sqrt(target_energy / energy(state));
    return state;
}

SpectralState random_state(const Grid& grid, double spectrum_exponent, Band band, std::uint64_t seed,
                           double target_energy) {
    return random_state(ModeSet::cube(grid), spectrum_exponent, band, seed, target_energy);
}

}  // namespace helidec
