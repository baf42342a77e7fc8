#include "helidec/verify.hpp"

#include <algorithm>
#include <cmath>

namespace helidec {

namespace {

double max_abs(const CVec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

CVec3 curl_symbol(const WaveVector& k, const CVec3& h) {
    const CVec3 kc = to_complex(k.as_real());
    return complex(0.0, 1.0) * cross(kc, h);
}

CVec3 random_cvec(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {complex(g(rng), g(rng)), complex(g(rng), g(rng)), complex(g(rng), g(rng))};
}

WaveVector random_wavevector(std::mt19937_64& rng, int kmax) {
    std::uniform_int_distribution<int> d(-kmax, kmax);
    WaveVector k;
    do {
        k = {d(rng), d(rng), d(rng)};
    } while (k.is_zero());
    return k;
}

PropertyResult check(std::string name, double value, double threshold) {
    return {std::move(name), std::isfinite(value) && value <= threshold, value, threshold};
}

}  // namespace

BasisIdentityErrors basis_identity_errors(const ModeSet& modes) {
    BasisIdentityErrors err;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (const WaveVector& k : {modes.k(i), -modes.k(i)}) {
            const double kmag = k.norm();
            const double scale = std::max(1.0, kmag);
            const HelicalPair pair = helical_vectors(k);
            const HelicalPair mirror = helical_vectors(-k);
            for (const HelicalBasisVector& hv : {pair.plus, pair.minus}) {
                const CVec3 target = complex(hv.sign * kmag) * hv.h;
                err.curl = std::max(err.curl, max_abs(curl_symbol(k, hv.h) - target) / scale);
                err.norm = std::max(err.norm, std::abs(cdot(hv.h, hv.h) - 2.0));
                err.transversality =
                    std::max(err.transversality, std::abs(dot(to_complex(k.as_real()), hv.h)) / scale);
            }
            err.conjugation = std::max(err.conjugation, max_abs(mirror.plus.h - conj(pair.plus.h)));
            err.conjugation = std::max(err.conjugation, max_abs(mirror.minus.h - conj(pair.minus.h)));
            err.orthogonality = std::max(err.orthogonality, std::abs(cdot(pair.plus.h, pair.minus.h)));
        }
        // the table's cached vector must be the one the basis builder returns
        err.conjugation = std::max(err.conjugation, max_abs(modes.h_plus(i) - helical_vectors(modes.k(i)).plus.h));
    }
    return err;
}

ProjectorErrors projector_errors(int trials, std::uint64_t seed, int kmax) {
    std::mt19937_64 rng(seed);
    ProjectorErrors err;
    for (int t = 0; t < trials; ++t) {
        const WaveVector k = random_wavevector(rng, kmax);
        const CVec3 u = random_cvec(rng);
        const CVec3 a = random_cvec(rng);
        const CVec3 b = random_cvec(rng);

        const CVec3 pu = project_plus(u, k);
        err.idempotence = std::max(err.idempotence, norm(project_plus(pu, k) - pu) / norm(u));

        const complex lhs = cdot(project_plus(a, k), b);
        const complex rhs = cdot(a, project_plus(b, k));
        err.self_adjoint = std::max(err.self_adjoint, std::abs(lhs - rhs) / (norm(a) * norm(b)));

        const CVec3 kc = to_complex(k.as_real());
        const CVec3 solenoidal = u - (dot(kc, u) / static_cast<double>(k.norm2())) * kc;
        const CVec3 rebuilt = project_plus(solenoidal, k) + project_minus(solenoidal, k);
        err.completeness = std::max(err.completeness, norm(rebuilt - solenoidal) / norm(solenoidal));
    }
    return err;
}

double oracle_relative_error(const SpectralState& state) {
    const SpectralState exact = triadic_rhs(state);
    const SpectralState fast = fast_rhs(state);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        num += std::norm(fast[i] - exact[i]);
        den += std::norm(exact[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

ExchangeErrors exchange_errors(const SpectralState& state, const SpectralState& increment) {
    const ModeSet& modes = state.modes();
    double e = 0.0, h = 0.0, se = 0.0, sh = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double k = modes.kmag(i);
        const double x = std::real(std::conj(state[i]) * increment[i]);
        const double ax = std::abs(state[i]) * std::abs(increment[i]);
        e += x;
        h += k * x;
        se += ax;
        sh += k * ax;
    }
    if (se == 0.0) return {};
    return {std::abs(e) / se, std::abs(h) / sh};
}

TriadSpec random_triad(std::mt19937_64& rng, int kmax) {
    for (;;) {
        const WaveVector k = random_wavevector(rng, kmax);
        const WaveVector p = random_wavevector(rng, kmax);
        const WaveVector q = -(k + p);
        if (q.is_zero() || q.max_abs() > kmax) continue;
        const Vec3 c = cross(k.as_real(), p.as_real());
        if (dot(c, c) == 0.0) continue;
        return {k, p, q};
    }
}

std::vector<PropertyResult> run_invariant_suite(const SimConfig& config) {
    config.validate();
    std::vector<PropertyResult> out;
    std::mt19937_64 rng(config.seed);

    const ModeSetPtr cube = ModeSet::cube(config.grid);
    const BasisIdentityErrors basis = basis_identity_errors(*cube);
    out.push_back(check("basis_curl_eigenvector", basis.curl, 1e-13));
    out.push_back(check("basis_normalization", basis.norm, 1e-13));
    out.push_back(check("basis_transversality", basis.transversality, 1e-13));
    out.push_back(check("basis_conjugation_symmetry", basis.conjugation, 1e-13));
    out.push_back(check("basis_helical_orthogonality", basis.orthogonality, 1e-13));

    const ProjectorErrors proj = projector_errors(200, config.seed, config.grid.dealias_limit);
    out.push_back(check("projector_idempotence", proj.idempotence, 1e-13));
    out.push_back(check("projector_self_adjoint", proj.self_adjoint, 1e-13));
    out.push_back(check("projector_completeness", proj.completeness, 1e-13));

    double oracle = 0.0;
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 2; ++trial) {
            const double exponent = -1.0 + 0.5 * trial;
            const SpectralState s = random_state(Grid::full_cube(n), exponent, {1.0, 2.0 * n}, rng());
            oracle = std::max(oracle, oracle_relative_error(s));
        }
    }
    out.push_back(check("oracle_equivalence", oracle, 1e-12));

    double triad_exchange = 0.0;
    for (int t = 0; t < 5; ++t) {
        const TriadSpec triad = random_triad(rng, config.grid.dealias_limit);
        const auto legs = triad.legs();
        const SpectralState s = random_state(ModeSet::from_modes(config.grid, legs), 0.0, {1.0, 1e9}, rng());
        const ExchangeErrors ex = exchange_errors(s, triadic_rhs(s));
        triad_exchange = std::max({triad_exchange, ex.energy, ex.helicity});
    }
    out.push_back(check("single_triad_conservation", triad_exchange, 1e-13));

    const SpectralState init = initial_state(config);
    const SpectralState forcing = config_forcing(config, init.mode_set());
    RhsEvaluator evaluator(init.mode_set(), config.method());
    const RhsDecomposition rhs = evaluator.full(init, config.nu, forcing);
    const ExchangeErrors ex = exchange_errors(init, rhs.nonlinear);
    out.push_back(check("nonlinear_conservation", std::max(ex.energy, ex.helicity), 1e-12));
    out.push_back(check("helicity_budget_identity", std::abs(helicity_budget_residual(init, config.nu, forcing, rhs)),
                        1e-12));
    out.push_back(
        check("energy_budget_identity", std::abs(energy_budget_residual(init, config.nu, forcing, rhs)), 1e-12));
    const FluxClosure closure = flux_closure(init, rhs.nonlinear);
    out.push_back(check("flux_closure", std::max(closure.energy, closure.helicity), 1e-12));

    SimConfig short_run = config;
    short_run.t_end = std::min(config.t_end, 100.0 * config.dt);
    double worst_residual = 0.0, worst_positivity = 0.0, worst_norm = 0.0;
    const Trajectory traj = run_from(short_run, init, [&](const SpectralState& s, const DiagnosticsRecord& r) {
        worst_residual = std::max({worst_residual, std::abs(r.budget_residual_H), std::abs(r.budget_residual_E)});
        worst_positivity = std::max(worst_positivity, -r.H);
        const double hs = norm_hs(s, 0.5);
        if (r.H > 0.0) worst_norm = std::max(worst_norm, std::abs(r.H - hs * hs) / r.H);
    });
    out.push_back(check("budget_identity_along_run", worst_residual, 1e-12));
    out.push_back(check("helicity_nonnegative", worst_positivity, 0.0));
    out.push_back(check("helicity_equals_h_half_norm", worst_norm, 1e-14));
    if (config.nu > 0.0) {
        double worst = 0.0;
        for (const BoundSample& b : apriori_bound_check(traj, config.nu, traj.forcing)) {
            worst = std::max(worst, -b.margin / b.rhs);
        }
        out.push_back(check("apriori_bound_margin", worst, 1e-3));
    }
    return out;
}

}  // namespace helidec
