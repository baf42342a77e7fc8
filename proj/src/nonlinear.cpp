#include "helidec/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "helidec/errors.hpp"

namespace helidec {

void TriadSpec::validate(const Grid& grid) const {
    if (!(k + p + q).is_zero()) throw Error(Errc::InvalidArgument, "triad legs must sum to zero");
    for (const WaveVector& leg : legs()) {
        if (leg.is_zero()) throw Error(Errc::InvalidArgument, "triad legs must be nonzero");
        if (leg.max_abs() > grid.dealias_limit) {
            throw Error(Errc::InvalidArgument, "triad leg lies outside the truncation");
        }
    }
}

// ============================================================================
// Convolution oracle
// ============================================================================

SpectralState triadic_rhs(const SpectralState& state, std::size_t oracle_budget) {
    const ModeSet& modes = state.modes();
    if (modes.size() > oracle_budget) {
        throw Error(Errc::GridTooLarge, "oracle budget of " + std::to_string(oracle_budget) +
                                            " modes exceeded (" + std::to_string(modes.size()) + ")");
    }
    SpectralState out(state.mode_set(), state.time());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const WaveVector& k = modes.k(i);
        const CVec3& hk = modes.h_plus(i);
        complex sum{};
        for (std::size_t j = 0; j < modes.size(); ++j) {
            for (const bool flip : {false, true}) {
                // p runs over the full lattice: stored mode or its conjugate partner
                const WaveVector p = flip ? -modes.k(j) : modes.k(j);
                const auto qloc = modes.locate(-(k + p));
                if (!qloc) continue;
                const complex up = flip ? std::conj(state[j]) : state[j];
                const CVec3 hp = flip ? conj(modes.h_plus(j)) : modes.h_plus(j);
                const std::size_t iq = qloc->index;
                const complex uq = qloc->conjugated ? std::conj(state[iq]) : state[iq];
                const CVec3 hq = qloc->conjugated ? conj(modes.h_plus(iq)) : modes.h_plus(iq);
                const double weight = modes.kmag(j) - modes.kmag(iq);
                sum += weight * dot(cross(hp, hq), hk) * up * uq;
            }
        }
        out[i] = std::conj(-0.25 * sum);
    }
    return out;
}

// ============================================================================
// Transform path
// ============================================================================

FastEvaluator::FastEvaluator(ModeSetPtr modes, NonlinearForm form)
    : modes_(std::move(modes)), form_(form), transform_(modes_->grid().transform_size()) {
    const std::size_t npos = std::numeric_limits<std::size_t>::max();
    slots_.reserve(modes_->size());
    mirror_slots_.reserve(modes_->size());
    for (std::size_t i = 0; i < modes_->size(); ++i) {
        const WaveVector& k = modes_->k(i);
        slots_.push_back(transform_.spectral_index(k));
        mirror_slots_.push_back(k.kz == 0 ? transform_.spectral_index(-k) : npos);
    }
    scratch_spec_ = transform_.make_spectral();
    for (int c = 0; c < 3; ++c) {
        vel_[c] = transform_.make_physical();
        aux_[c] = transform_.make_physical();
        prod_[c] = transform_.make_physical();
        prod_spec_[c] = transform_.make_spectral();
    }
}

void FastEvaluator::check_modes(const SpectralState& state) const {
    if (state.mode_set() != modes_ && !state.modes().same_modes(*modes_)) {
        throw Error(Errc::InvalidArgument, "state does not live on this evaluator's mode set");
    }
}

void FastEvaluator::scatter(const SpectralState& state, int component, double kpower,
                            AlignedBuffer<complex>& out) const {
    out.fill_zero();
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        complex v = state[i] * modes_->h_plus(i)[component];
        if (kpower == 1.0) v *= modes_->kmag(i);
        out[slots_[i]] = v;
        if (mirror_slots_[i] != std::numeric_limits<std::size_t>::max()) out[mirror_slots_[i]] = std::conj(v);
    }
}

void FastEvaluator::scatter_gradient(const SpectralState& state, int component, int direction,
                                     AlignedBuffer<complex>& out) const {
    out.fill_zero();
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Vec3 k = modes_->k(i).as_real();
        const complex v = complex(0.0, k[direction]) * state[i] * modes_->h_plus(i)[component];
        out[slots_[i]] = v;
        if (mirror_slots_[i] != std::numeric_limits<std::size_t>::max()) out[mirror_slots_[i]] = std::conj(v);
    }
}

SpectralState FastEvaluator::project(const std::array<AlignedBuffer<complex>, 3>& spectral, double time) const {
    SpectralState out(modes_, time);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const CVec3 n{spectral[0][slots_[i]], spectral[1][slots_[i]], spectral[2][slots_[i]]};
        out[i] = cdot(modes_->h_plus(i), n) * 0.5;
    }
    return out;
}

SpectralState FastEvaluator::rhs(const SpectralState& state) {
    check_modes(state);
    const std::size_t npts = transform_.physical_count();
    for (int c = 0; c < 3; ++c) {
        scatter(state, c, 0.0, scratch_spec_);
        transform_.inverse(scratch_spec_, vel_[c]);
    }

    if (form_ == NonlinearForm::rotational) {
        // curl of a positive-helical mode is multiplication by |k|
        for (int c = 0; c < 3; ++c) {
            scatter(state, c, 1.0, scratch_spec_);
            transform_.inverse(scratch_spec_, aux_[c]);
        }
        for (std::size_t x = 0; x < npts; ++x) {
            const double v0 = vel_[0][x], v1 = vel_[1][x], v2 = vel_[2][x];
            const double w0 = aux_[0][x], w1 = aux_[1][x], w2 = aux_[2][x];
            prod_[0][x] = v1 * w2 - v2 * w1;
            prod_[1][x] = v2 * w0 - v0 * w2;
            prod_[2][x] = v0 * w1 - v1 * w0;
        }
    } else {
        for (int c = 0; c < 3; ++c) {
            prod_[c].fill_zero();
            for (int d = 0; d < 3; ++d) {
                scatter_gradient(state, c, d, scratch_spec_);
                transform_.inverse(scratch_spec_, aux_[0]);
                for (std::size_t x = 0; x < npts; ++x) prod_[c][x] -= vel_[d][x] * aux_[0][x];
            }
        }
    }

    for (int c = 0; c < 3; ++c) transform_.forward(prod_[c], prod_spec_[c]);
    return project(prod_spec_, state.time());
}

std::array<std::vector<double>, 3> FastEvaluator::velocity(const SpectralState& state) {
    check_modes(state);
    std::array<std::vector<double>, 3> out;
    for (int c = 0; c < 3; ++c) {
        scatter(state, c, 0.0, scratch_spec_);
        transform_.inverse(scratch_spec_, vel_[c]);
        out[c].assign(vel_[c].data(), vel_[c].data() + vel_[c].size());
    }
    return out;
}

double FastEvaluator::max_speed(const SpectralState& state) {
    const auto v = velocity(state);
    double vmax = 0.0;
    for (std::size_t x = 0; x < v[0].size(); ++x) {
        vmax = std::max(vmax, std::sqrt(v[0][x] * v[0][x] + v[1][x] * v[1][x] + v[2][x] * v[2][x]));
    }
    return vmax;
}

SpectralState fast_rhs(const SpectralState& state, NonlinearForm form) {
    FastEvaluator evaluator(state.mode_set(), form);
    return evaluator.rhs(state);
}

// ============================================================================
// Full right-hand side
// ============================================================================

SpectralState RhsDecomposition::total() const {
    SpectralState sum = nonlinear;
    sum += viscous;
    sum += forcing;
    return sum;
}

SpectralState align_forcing(const SpectralState& forcing, const ModeSetPtr& modes) {
    if (forcing.mode_set() == modes || forcing.modes().same_modes(*modes)) {
        SpectralState out(modes, forcing.time());
        std::copy(forcing.amplitudes().begin(), forcing.amplitudes().end(), out.amplitudes().begin());
        return out;
    }
    SpectralState out(modes);
    const ModeSet& src = forcing.modes();
    for (std::size_t i = 0; i < forcing.size(); ++i) {
        if (forcing[i] == complex{}) continue;
        const auto loc = modes->locate(src.k(i));
        if (!loc) {
            throw Error(Errc::ForcingOutsideTruncation, "forcing is nonzero at a mode outside the retained set");
        }
        out[loc->index] = loc->conjugated ? std::conj(forcing[i]) : forcing[i];
    }
    return out;
}

RhsEvaluator::RhsEvaluator(ModeSetPtr modes, RhsMethod method, std::size_t oracle_budget)
    : modes_(std::move(modes)), method_(method), oracle_budget_(oracle_budget) {
    if (method_ == RhsMethod::fast) fast_ = std::make_unique<FastEvaluator>(modes_);
}

SpectralState RhsEvaluator::nonlinear(const SpectralState& state) {
    if (method_ == RhsMethod::triadic) return triadic_rhs(state, oracle_budget_);
    return fast_->rhs(state);
}

RhsDecomposition RhsEvaluator::full(const SpectralState& state, double nu, const SpectralState& forcing) {
    if (!(nu >= 0.0)) throw Error(Errc::InvalidArgument, "viscosity must be non-negative");
    SpectralState viscous(state.mode_set(), state.time());
    const ModeSet& modes = state.modes();
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double k = modes.kmag(i);
        viscous[i] = -nu * k * k * state[i];
    }
    return {nonlinear(state), std::move(viscous), align_forcing(forcing, state.mode_set())};
}

double RhsEvaluator::max_speed(const SpectralState& state) {
    if (!fast_) fast_ = std::make_unique<FastEvaluator>(modes_);
    return fast_->max_speed(state);
}

RhsDecomposition full_rhs(const SpectralState& state, double nu, const SpectralState& forcing, RhsMethod method) {
    RhsEvaluator evaluator(state.mode_set(), method);
    return evaluator.full(state, nu, forcing);
}

}  // namespace helidec
