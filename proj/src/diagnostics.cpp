#include "helidec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "helidec/errors.hpp"
#include "helidec/integrator.hpp"

namespace helidec {

namespace {

double kpow(double k, double power) {
    if (power == 0.0) return 1.0;
    if (power == 1.0) return k;
    if (power == 2.0) return k * k;
    return std::pow(k, power);
}

void require_same_modes(const SpectralState& a, const SpectralState& b) {
    if (a.mode_set() != b.mode_set() && !a.modes().same_modes(b.modes())) {
        throw Error(Errc::InvalidArgument, "states live on different mode sets");
    }
}

}  // namespace

double quadratic_exchange(const SpectralState& state, const SpectralState& increment, double power) {
    require_same_modes(state, increment);
    const ModeSet& modes = state.modes();
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        sum += kpow(modes.kmag(i), power) * std::real(std::conj(state[i]) * increment[i]);
    }
    // 2 Re(...) per lattice point, two lattice points per stored mode
    return 4.0 * sum;
}

double injection(const SpectralState& state, const SpectralState& forcing, double power) {
    const SpectralState f = align_forcing(forcing, state.mode_set());
    const ModeSet& modes = state.modes();
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        sum += kpow(modes.kmag(i), power) * std::real(state[i] * std::conj(f[i]));
    }
    return 4.0 * sum;
}

double helicity_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing,
                                const RhsDecomposition& rhs) {
    const double dH = quadratic_exchange(state, rhs.nonlinear, 1.0) + quadratic_exchange(state, rhs.viscous, 1.0) +
                      quadratic_exchange(state, rhs.forcing, 1.0);
    const double D = dissipation_sum(state);
    const double inj = injection(state, forcing, 1.0);
    const double predicted = -2.0 * nu * D + inj;
    return (dH - predicted) / std::max(1.0, nu * D + std::abs(inj));
}

double helicity_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing) {
    return helicity_budget_residual(state, nu, forcing, full_rhs(state, nu, forcing));
}

double energy_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing,
                              const RhsDecomposition& rhs) {
    const double dE = quadratic_exchange(state, rhs.nonlinear, 0.0) + quadratic_exchange(state, rhs.viscous, 0.0) +
                      quadratic_exchange(state, rhs.forcing, 0.0);
    const double Z = weighted_sum(state, 2.0);
    const double inj = injection(state, forcing, 0.0);
    const double predicted = -2.0 * nu * Z + inj;
    return (dE - predicted) / std::max(1.0, nu * Z + std::abs(inj));
}

double energy_budget_residual(const SpectralState& state, double nu, const SpectralState& forcing) {
    return energy_budget_residual(state, nu, forcing, full_rhs(state, nu, forcing));
}

std::pair<double, double> BoundTracker::add(double t, double H, double D) {
    if (!started_) {
        started_ = true;
        t0_ = t;
        H0_ = H;
    } else {
        integral_D_ += 0.5 * (t - t_prev_) * (D + D_prev_);
    }
    t_prev_ = t;
    D_prev_ = D;

    const double elapsed = t - t0_;
    const double lhs = H + 0.5 * nu_ * integral_D_;
    double rhs = H0_;
    if (forcing_dual_sq_ > 0.0) {
        rhs += nu_ > 0.0 ? elapsed * forcing_dual_sq_ / (2.0 * nu_) : std::numeric_limits<double>::infinity();
    }
    return {lhs, rhs};
}

DiagnosticsRecord make_record(const SpectralState& state, double nu, const SpectralState& forcing,
                              const RhsDecomposition& rhs) {
    DiagnosticsRecord rec;
    rec.t = state.time();
    rec.E = energy(state);
    rec.H = helicity(state);
    rec.D = dissipation_sum(state);
    rec.inj_E = injection(state, forcing, 0.0);
    rec.inj_H = injection(state, forcing, 1.0);
    rec.budget_residual_H = helicity_budget_residual(state, nu, forcing, rhs);
    rec.budget_residual_E = energy_budget_residual(state, nu, forcing, rhs);
    return rec;
}

std::vector<BoundSample> apriori_bound_check(const Trajectory& trajectory, double nu,
                                             const SpectralState& forcing) {
    if (!(nu > 0.0)) throw Error(Errc::ViscosityZero, "the a-priori bound requires nu > 0");
    BoundTracker tracker(nu, dual_half_norm_sq(forcing));
    std::vector<BoundSample> out;
    out.reserve(trajectory.records.size());
    for (const DiagnosticsRecord& r : trajectory.records) {
        const auto [lhs, rhs] = tracker.add(r.t, r.H, r.D);
        out.push_back({r.t, lhs, rhs, rhs - lhs});
    }
    return out;
}

// ============================================================================
// Shell spectra and fluxes
// ============================================================================

std::vector<ShellSpectrum> spectra_and_fluxes(const SpectralState& state, const SpectralState& nonlinear) {
    require_same_modes(state, nonlinear);
    const ModeSet& modes = state.modes();
    const int nmax = static_cast<int>(std::floor(std::sqrt(3.0) * modes.grid().dealias_limit + 0.5));
    std::vector<ShellSpectrum> shells(static_cast<std::size_t>(nmax));
    std::vector<double> transfer_E(shells.size(), 0.0), transfer_H(shells.size(), 0.0);
    for (std::size_t n = 0; n < shells.size(); ++n) shells[n].shell = static_cast<int>(n) + 1;

    for (std::size_t i = 0; i < state.size(); ++i) {
        const double k = modes.kmag(i);
        const auto n = static_cast<std::size_t>(std::floor(k + 0.5)) - 1;
        const double e = 2.0 * std::norm(state[i]);
        const double t = 4.0 * std::real(std::conj(state[i]) * nonlinear[i]);
        shells[n].E_n += e;
        shells[n].H_n += k * e;
        transfer_E[n] += t;
        transfer_H[n] += k * t;
    }
    double cum_E = 0.0, cum_H = 0.0;
    for (std::size_t n = 0; n < shells.size(); ++n) {
        cum_E += transfer_E[n];
        cum_H += transfer_H[n];
        shells[n].Pi_E = -cum_E;
        shells[n].Pi_H = -cum_H;
    }
    return shells;
}

std::vector<ShellSpectrum> spectra_and_fluxes(const SpectralState& state) {
    FastEvaluator evaluator(state.mode_set());
    return spectra_and_fluxes(state, evaluator.rhs(state));
}

FluxClosure flux_closure(const SpectralState& state, const SpectralState& nonlinear) {
    const auto shells = spectra_and_fluxes(state, nonlinear);
    const ModeSet& modes = state.modes();
    double scale_E = 0.0, scale_H = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double t = 4.0 * std::abs(std::real(std::conj(state[i]) * nonlinear[i]));
        scale_E += t;
        scale_H += modes.kmag(i) * t;
    }
    if (shells.empty() || scale_E == 0.0) return {};
    return {std::abs(shells.back().Pi_E) / scale_E, std::abs(shells.back().Pi_H) / scale_H};
}

// ============================================================================
// Continuity in the initial data
// ============================================================================

SpectralState probe_direction(const SimConfig& config, const ModeSetPtr& modes) {
    double kmax = 0.0;
    for (double k : modes->kmags()) kmax = std::max(kmax, k);
    const Band band = config.init_mode == InitMode::random ? config.init_band : Band{1.0, kmax};
    SpectralState dir = random_state(modes, config.init_exponent, band, config.seed + 0x5bd1e995ULL, 1.0);
    dir *= 1.0 / std::sqrt(energy(dir));
    return dir;
}

namespace {

std::vector<SpectralState> sampled_states(const SimConfig& config, const SpectralState& initial) {
    std::vector<SpectralState> states;
    run_from(config, initial, [&](const SpectralState& s, const DiagnosticsRecord&) { states.push_back(s); });
    return states;
}

double l2_distance(const SpectralState& a, const SpectralState& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
    return std::sqrt(2.0 * sum);
}

}  // namespace

std::vector<ProbeRow> lipschitz_probe(const SimConfig& config, std::span<const double> epsilons) {
    config.validate();
    if (!(config.nu > 0.0)) throw Error(Errc::ViscosityZero, "the Lipschitz probe requires nu > 0");
    if (epsilons.size() < 2) throw Error(Errc::InvalidArgument, "the probe needs at least two epsilons");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!std::isfinite(epsilons[i]) || epsilons[i] < 0.0) {
            throw Error(Errc::InvalidArgument, "epsilons must be finite and non-negative");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw Error(Errc::InvalidArgument, "epsilons must be strictly decreasing");
        }
    }

    const SpectralState base_initial = initial_state(config);
    const SpectralState direction = probe_direction(config, base_initial.mode_set());

    // independent integrations; each task owns its evaluator and buffers
    auto base_future = std::async(std::launch::async, [&] { return sampled_states(config, base_initial); });
    std::vector<std::future<std::vector<SpectralState>>> perturbed;
    for (double eps : epsilons) {
        SpectralState init = base_initial;
        for (std::size_t i = 0; i < init.size(); ++i) init[i] += eps * direction[i];
        perturbed.push_back(std::async(std::launch::async, [&config, init = std::move(init)] {
            return sampled_states(config, init);
        }));
    }
    const std::vector<SpectralState> base = base_future.get();

    std::vector<ProbeRow> rows;
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        const std::vector<SpectralState> other = perturbed[e].get();
        const double w0 = l2_distance(base.front(), other.front());
        double sup = 0.0;
        for (std::size_t s = 0; s < base.size(); ++s) sup = std::max(sup, l2_distance(base[s], other[s]));
        rows.push_back({epsilons[e], w0 > 0.0 ? sup / w0 : 0.0, sup});
    }
    return rows;
}

}  // namespace helidec
