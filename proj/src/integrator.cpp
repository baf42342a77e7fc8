#include "helidec/integrator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "helidec/checkpoint.hpp"

namespace helidec {

namespace {

bool all_finite(const SpectralState& s) {
    for (const complex& a : s.amplitudes()) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
}

void require_finite_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) throw Error(Errc::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

void SimConfig::validate() const {
    grid.validate();
    if (!std::isfinite(nu) || nu < 0.0) throw Error(Errc::InvalidArgument, "nu must be finite and >= 0");
    require_finite_positive(dt, "dt");
    if (!std::isfinite(t_end) || t_end < 0.0) throw Error(Errc::InvalidArgument, "t_end must be finite and >= 0");
    if (sample_every < 1) throw Error(Errc::InvalidArgument, "sample_every must be >= 1");
    require_finite_positive(init_energy, "init_energy");
    if (init_mode == InitMode::triad) {
        if (!triad) throw Error(Errc::InvalidArgument, "triad init requires a triad");
        triad->validate(grid);
    }
    if (init_mode == InitMode::checkpoint && init_checkpoint.empty()) {
        throw Error(Errc::InvalidArgument, "checkpoint init requires a path");
    }
    if (!std::isfinite(force_amp) || force_amp < 0.0) {
        throw Error(Errc::InvalidArgument, "force_amp must be finite and >= 0");
    }
    if (force_band) {
        if (!(force_band->lo >= 1.0) || !(force_band->hi >= force_band->lo)) {
            throw Error(Errc::InvalidArgument, "forcing band must satisfy 1 <= lo <= hi");
        }
        if (force_band->lo > std::sqrt(3.0) * grid.dealias_limit) {
            throw Error(Errc::ForcingOutsideTruncation, "forcing band lies beyond the retained modes");
        }
    }
}

// ============================================================================
// Forcing
// ============================================================================

SpectralState make_forcing(const ModeSetPtr& modes, Band band, double amplitude, std::uint64_t seed) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw Error(Errc::InvalidArgument, "forcing amplitude must be finite and >= 0");
    }
    SpectralState f(modes);
    if (amplitude == 0.0) return f;
    std::mt19937_64 rng(seed);
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double phase = phase_from_bits(rng());
        const double k = modes->kmag(i);
        if (k < band.lo || k > band.hi) continue;
        f[i] = std::polar(1.0, phase);
        any = true;
    }
    if (!any) throw Error(Errc::EmptyBand, "no retained mode lies in the forcing band");
    f *= amplitude / std::sqrt(energy(f));
    return f;
}

SpectralState make_forcing(const Grid& grid, Band band, double amplitude, std::uint64_t seed) {
    return make_forcing(ModeSet::cube(grid), band, amplitude, seed);
}

// ============================================================================
// Time stepping
// ============================================================================

Integrator::Integrator(ModeSetPtr modes, double nu, const SpectralState& forcing, double dt, RhsMethod method)
    : modes_(modes),
      nu_(nu),
      dt_(dt),
      forcing_(align_forcing(forcing, modes)),
      evaluator_(modes, method) {
    if (!std::isfinite(dt) || dt <= 0.0) throw Error(Errc::InvalidArgument, "dt must be positive");
    if (!std::isfinite(nu) || nu < 0.0) throw Error(Errc::InvalidArgument, "nu must be finite and >= 0");
    decay_full_.reserve(modes_->size());
    decay_half_.reserve(modes_->size());
    for (double k : modes_->kmags()) {
        const double rate = nu * k * k;
        decay_full_.push_back(std::exp(-rate * dt));
        decay_half_.push_back(std::exp(-rate * dt * 0.5));
    }
}

SpectralState Integrator::forced_nonlinear(const SpectralState& state) {
    SpectralState n = evaluator_.nonlinear(state);
    n += forcing_;
    return n;
}

SpectralState Integrator::step(const SpectralState& u) {
    const std::size_t n = u.size();
    const double h = dt_;
    const auto& E = decay_full_;
    const auto& E2 = decay_half_;

    const SpectralState k1 = forced_nonlinear(u);

    SpectralState stage(u.mode_set(), u.time() + 0.5 * h);
    for (std::size_t i = 0; i < n; ++i) stage[i] = E2[i] * (u[i] + 0.5 * h * k1[i]);
    const SpectralState k2 = forced_nonlinear(stage);

    for (std::size_t i = 0; i < n; ++i) stage[i] = E2[i] * u[i] + 0.5 * h * k2[i];
    const SpectralState k3 = forced_nonlinear(stage);

    stage.set_time(u.time() + h);
    for (std::size_t i = 0; i < n; ++i) stage[i] = E[i] * u[i] + h * E2[i] * k3[i];
    const SpectralState k4 = forced_nonlinear(stage);

    SpectralState next(u.mode_set(), u.time() + h);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = E[i] * u[i] + (h / 6.0) * (E[i] * k1[i] + 2.0 * E2[i] * (k2[i] + k3[i]) + k4[i]);
    }
    if (!all_finite(next)) throw Error(Errc::NonFinite, "non-finite amplitude after time step");
    return next;
}

SpectralState step_ifrk4(const SpectralState& state, double nu, const SpectralState& forcing, double dt,
                         RhsMethod method) {
    Integrator integrator(state.mode_set(), nu, forcing, dt, method);
    return integrator.step(state);
}

// ============================================================================
// Runs
// ============================================================================

SpectralState initial_state(const SimConfig& config) {
    switch (config.init_mode) {
    case InitMode::random:
        return random_state(config.grid, config.init_exponent, config.init_band, config.seed, config.init_energy);
    case InitMode::checkpoint: {
        SpectralState s = read_checkpoint(config.init_checkpoint);
        if (!(s.grid() == config.grid)) {
            throw Error(Errc::InconsistentGrid, "checkpoint grid differs from the configured grid_n");
        }
        return s;
    }
    case InitMode::triad: {
        const auto legs = config.triad->legs();
        auto modes = ModeSet::from_modes(config.grid, legs);
        double kmax = 0.0;
        for (double k : modes->kmags()) kmax = std::max(kmax, k);
        return random_state(modes, config.init_exponent, {1.0, kmax}, config.seed, config.init_energy);
    }
    }
    throw Error(Errc::InvalidArgument, "unknown init mode");
}

SpectralState config_forcing(const SimConfig& config, const ModeSetPtr& modes) {
    if (!config.force_band || config.force_amp == 0.0) return SpectralState(modes);
    // decorrelate forcing phases from the initial-condition stream
    return make_forcing(modes, *config.force_band, config.force_amp, config.seed ^ 0x9e3779b97f4a7c15ULL);
}

long step_count(const SimConfig& config) { return std::lround(config.t_end / config.dt); }

Trajectory run_from(const SimConfig& config, const SpectralState& initial, const SampleObserver& observer) {
    config.validate();
    const ModeSetPtr& modes = initial.mode_set();
    const SpectralState forcing = config_forcing(config, modes);
    Integrator integrator(modes, config.nu, forcing, config.dt, config.method());
    BoundTracker bound(config.nu, dual_half_norm_sq(forcing));

    Trajectory traj{{}, initial, integrator.forcing(), config.nu};
    const double t0 = initial.time();
    const long nsteps = step_count(config);

    auto sample = [&](const SpectralState& state) {
        const RhsDecomposition rhs = integrator.evaluator().full(state, config.nu, integrator.forcing());
        DiagnosticsRecord rec = make_record(state, config.nu, integrator.forcing(), rhs);
        std::tie(rec.bound_lhs, rec.bound_rhs) = bound.add(rec.t, rec.H, rec.D);
        traj.records.push_back(rec);
        if (observer) observer(state, rec);
    };

    SpectralState state = initial;
    sample(state);
    for (long step = 1; step <= nsteps; ++step) {
        try {
            SpectralState next = integrator.step(state);
            next.set_time(t0 + static_cast<double>(step) * config.dt);
            state = std::move(next);
        } catch (const Error& e) {
            if (e.code() != Errc::NonFinite) throw;
            std::ostringstream msg;
            msg.precision(17);
            msg << "non-finite amplitude at step " << step << " (t = " << t0 + static_cast<double>(step) * config.dt
                << ")";
            throw NonFiniteError(msg.str(), state, step);
        }
        if (step % config.sample_every == 0 || step == nsteps) sample(state);
    }
    traj.final_state = std::move(state);
    return traj;
}

Trajectory run(const SimConfig& config, const SampleObserver& observer) {
    config.validate();
    return run_from(config, initial_state(config), observer);
}

double cfl_advisory_dt(const SimConfig& config, const SpectralState& state) {
    FastEvaluator evaluator(state.mode_set());
    const double vmax = evaluator.max_speed(state);
    const double dx = 2.0 * std::numbers::pi / config.grid.transform_size();
    return vmax > 0.0 ? 0.5 * dx / vmax : std::numeric_limits<double>::infinity();
}

}  // namespace helidec
