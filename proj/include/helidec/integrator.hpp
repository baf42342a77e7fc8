#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "helidec/diagnostics.hpp"
#include "helidec/errors.hpp"
#include "helidec/nonlinear.hpp"

namespace helidec {

enum class InitMode { random, checkpoint, triad };

/// One experiment. Field names follow the config file keys.
struct SimConfig {
    Grid grid = Grid::with_default_dealias(8);
    double nu = 0.01;
    double dt = 1e-3;
    double t_end = 1.0;
    int sample_every = 10;
    std::uint64_t seed = 1;

    InitMode init_mode = InitMode::random;
    Band init_band{1.0, 3.0};
    double init_exponent = 0.0;
    double init_energy = 1.0;
    std::string init_checkpoint;
    std::optional<TriadSpec> triad;

    std::optional<Band> force_band;
    double force_amp = 0.0;

    std::string out_dir = ".";

    /// Triad runs use the convolution oracle on the three-mode system.
    RhsMethod method() const { return init_mode == InitMode::triad ? RhsMethod::triadic : RhsMethod::fast; }
    void validate() const;
};

/// Static, zero-mean, positive-helical forcing on lo <= |k| <= hi with seeded
/// phases and sum over the full lattice of |f|^2 equal to amplitude^2.
SpectralState make_forcing(const ModeSetPtr& modes, Band band, double amplitude, std::uint64_t seed);
SpectralState make_forcing(const Grid& grid, Band band, double amplitude, std::uint64_t seed);

/// Integrating-factor RK4 for du/dt = -nu |k|^2 u + N(u) + f. The viscous
/// factor exp(-nu |k|^2 dt) is applied exactly.
class Integrator {
public:
    Integrator(ModeSetPtr modes, double nu, const SpectralState& forcing, double dt,
               RhsMethod method = RhsMethod::fast);

    /// One step; throws NonFinite when any amplitude leaves the finite range.
    SpectralState step(const SpectralState& state);

    double nu() const { return nu_; }
    double dt() const { return dt_; }
    const SpectralState& forcing() const { return forcing_; }
    RhsEvaluator& evaluator() { return evaluator_; }

private:
    SpectralState forced_nonlinear(const SpectralState& state);

    ModeSetPtr modes_;
    double nu_;
    double dt_;
    SpectralState forcing_;
    RhsEvaluator evaluator_;
    std::vector<double> decay_full_;
    std::vector<double> decay_half_;
};

SpectralState step_ifrk4(const SpectralState& state, double nu, const SpectralState& forcing, double dt,
                         RhsMethod method = RhsMethod::fast);

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    SpectralState final_state;
    SpectralState forcing;
    double nu = 0.0;
};

/// Raised by run(): carries the last finite state so it can be checkpointed.
class NonFiniteError : public Error {
public:
    NonFiniteError(const std::string& message, SpectralState last_finite, long step)
        : Error(Errc::NonFinite, message), last_finite_(std::move(last_finite)), step_(step) {}

    const SpectralState& last_finite() const { return last_finite_; }
    long step() const { return step_; }

private:
    SpectralState last_finite_;
    long step_;
};

/// Called at each sample with the sampled state and its record.
using SampleObserver = std::function<void(const SpectralState&, const DiagnosticsRecord&)>;

/// Initial state from the config's init mode.
SpectralState initial_state(const SimConfig& config);
/// Forcing for the config on `modes` (zero when no band is configured).
SpectralState config_forcing(const SimConfig& config, const ModeSetPtr& modes);

/// Number of steps round(t_end / dt).
long step_count(const SimConfig& config);

/// Integrates from `initial` to t_end. Samples at step 0, every sample_every
/// steps, and at the last step.
Trajectory run_from(const SimConfig& config, const SpectralState& initial, const SampleObserver& observer = {});
Trajectory run(const SimConfig& config, const SampleObserver& observer = {});

/// CFL advisory dt_max = 0.5 dx / max|v| on the transform grid (not enforced).
double cfl_advisory_dt(const SimConfig& config, const SpectralState& state);

}  // namespace helidec
