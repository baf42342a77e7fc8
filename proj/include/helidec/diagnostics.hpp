#pragma once

#include <span>
#include <vector>

#include "helidec/field.hpp"
#include "helidec/nonlinear.hpp"

namespace helidec {

struct SimConfig;
struct Trajectory;

/// One sample of the verification time series.
struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;
    double H = 0.0;
    double D = 0.0;  ///< sum |k|^3 |u+|^2
    double inj_E = 0.0;
    double inj_H = 0.0;
    double budget_residual_H = 0.0;
    double budget_residual_E = 0.0;
    double bound_lhs = 0.0;
    double bound_rhs = 0.0;
};

/// Rate of change of sum |k|^power |u+|^2 (full lattice) along `increment`:
/// 2 Re sum |k|^power conj(u+) du+.
double quadratic_exchange(const SpectralState& state, const SpectralState& increment, double power);

/// 2 Re sum |k|^power u+ conj(f+) over the full lattice.
double injection(const SpectralState& state, const SpectralState& forcing, double power);

/// dH/dt from the full right-hand side minus (-2 nu D + inj_H), divided by
/// max(1, nu D + |inj_H|).
double helicity_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing,
                                const RhsDecomposition& rhs);
double helicity_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing);

/// Companion identity for energy: dE/dt versus -2 nu sum |k|^2 |u+|^2 + inj_E.
double energy_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing,
                              const RhsDecomposition& rhs);
double energy_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing);

/// Running trapezoidal evaluation of
///   H(t) + (nu/2) int D  <=  H(0) + t / (2 nu) sum |f|^2 / |k|.
class BoundTracker {
public:
    BoundTracker(double nu, double forcing_dual_sq) : nu_(nu), forcing_dual_sq_(forcing_dual_sq) {}

    /// Feed samples in time order; returns (lhs, rhs).
    std::pair<double, double> add(double t, double H, double D);

private:
    double nu_;
    double forcing_dual_sq_;
    bool started_ = false;
    double t0_ = 0.0;
    double H0_ = 0.0;
    double t_prev_ = 0.0;
    double D_prev_ = 0.0;
    double integral_D_ = 0.0;
};

/// Record for `state` given its right-hand side; bound columns left zero.
DiagnosticsRecord make_record(const SpectralState& state, double nu, const SpectralState& forcing,
                              const RhsDecomposition& rhs);

struct BoundSample {
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// The a-priori inequality evaluated at every sample of a trajectory.
/// Throws ViscosityZero for nu == 0.
std::vector<BoundSample> apriori_bound_check(const Trajectory& trajectory, double nu,
                                             const SpectralState& forcing);

/// Shell n holds n - 1/2 <= |k| < n + 1/2. Fluxes count nonlinear transfer
/// out of shells <= n, so a negative energy flux is transfer toward larger scales.
struct ShellSpectrum {
    int shell = 0;
    double E_n = 0.0;
    double H_n = 0.0;
    double Pi_E = 0.0;
    double Pi_H = 0.0;
};

std::vector<ShellSpectrum> spectra_and_fluxes(const SpectralState& state, const SpectralState& nonlinear);
std::vector<ShellSpectrum> spectra_and_fluxes(const SpectralState& state);

/// |Pi| through the outermost shell relative to the summed |transfer|.
struct FluxClosure {
    double energy = 0.0;
    double helicity = 0.0;
};
FluxClosure flux_closure(const SpectralState& state, const SpectralState& nonlinear);

struct ProbeRow {
    double epsilon = 0.0;
    double sup_ratio = 0.0;  ///< sup_t ||w(t)|| / ||w(0)||
    double sup_norm = 0.0;   ///< sup_t ||w(t)||
};

/// Integrates the config's run alongside copies perturbed by an L2 kick of
/// size epsilon, reporting the worst growth of the difference over the
/// samples. Requires nu > 0 and a strictly decreasing epsilon list with at
/// least two values (epsilon = 0 is allowed as the last entry).
std::vector<ProbeRow> lipschitz_probe(const SimConfig& config, std::span<const double> epsilons);

/// Unit-L2 perturbation direction used by the probe.
SpectralState probe_direction(const SimConfig& config, const ModeSetPtr& modes);

}  // namespace helidec
