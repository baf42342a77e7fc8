#include <doctest.h>

#include <cmath>
#include <limits>
#include <tuple>

#include "helidec/diagnostics.hpp"
#include "helidec/errors.hpp"
#include "helidec/integrator.hpp"

using namespace helidec;

namespace {

SimConfig probe_config() {
    SimConfig c;
    c.grid = Grid::with_default_dealias(4);
    c.nu = 0.05;
    c.dt = 0.01;
    c.t_end = 0.5;
    c.force_band = Band{1.0, 2.0};
    c.force_amp = 1.0;
    return c;
}

}  // namespace

TEST_CASE("budget residuals vanish for random states and forcings") {
    const Grid grid = Grid::with_default_dealias(8);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const SpectralState u = random_state(grid, -1.0, {1.0, 7.0}, seed);
        const SpectralState f = make_forcing(u.mode_set(), {2.0, 4.0}, 3.0, seed + 10);
        CHECK(std::abs(helicity_budget_residual(u, 0.02, f)) < 1e-12);
        CHECK(std::abs(energy_budget_residual(u, 0.02, f)) < 1e-12);
        CHECK(std::abs(helicity_budget_residual(u, 0.0, SpectralState(u.mode_set()))) < 1e-12);
    }
}

TEST_CASE("injection and exchange by hand") {
    const WaveVector legs[] = {{0, 0, 2}};
    const ModeSetPtr modes = ModeSet::from_modes(Grid::full_cube(3), legs);
    SpectralState u(modes), f(modes);
    u[0] = complex(1.0, 1.0);
    f[0] = complex(0.5, 0.0);
    // 2 Re(u conj f) at k and -k
    CHECK(injection(u, f, 0.0) == doctest::Approx(2.0));
    CHECK(injection(u, f, 1.0) == doctest::Approx(4.0));
    CHECK(quadratic_exchange(u, u, 0.0) == doctest::Approx(2.0 * energy(u)));
}

TEST_CASE("bound tracker without forcing, at t = 0 and with nu = 0") {
    BoundTracker tracker(0.1, 0.0);
    auto [l0, r0] = tracker.add(0.0, 3.0, 10.0);
    CHECK(l0 == 3.0);
    CHECK(r0 == 3.0);
    auto [l1, r1] = tracker.add(1.0, 2.0, 6.0);
    CHECK(l1 == doctest::Approx(2.0 + 0.05 * 8.0));
    CHECK(r1 == 3.0);

    BoundTracker inviscid(0.0, 1.0);
    inviscid.add(0.0, 1.0, 1.0);
    CHECK(std::isinf(inviscid.add(1.0, 1.0, 1.0).second));

    Trajectory empty{{}, SpectralState(ModeSet::cube(Grid::full_cube(1))), SpectralState(ModeSet::cube(Grid::full_cube(1))), 0.0};
    try {
        apriori_bound_check(empty, 0.0, empty.forcing);
        FAIL("expected ViscosityZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ViscosityZero);
    }
}

TEST_CASE("lone forced mode: tracked bound matches closed form") {
    // u(t) = u*(1 - exp(-a t)), a = nu k^2, u* = f / a, starting from rest
    const double nu = 0.5, k = 2.0, f = 0.3, a = nu * k * k, us = f / a;
    const double Hs = 2.0 * k * us * us, Ds = 2.0 * k * k * k * us * us, F = 2.0 * f * f / k;
    BoundTracker tracker(nu, F);
    const double dt = 1e-3;
    double lhs = 0.0, rhs = 0.0, integral = 0.0;
    for (int n = 0; n <= 20000; ++n) {
        const double t = n * dt;
        const double g = 1.0 - std::exp(-a * t);
        std::tie(lhs, rhs) = tracker.add(t, Hs * g * g, Ds * g * g);
    }
    const double T = 20.0;
    integral = Ds * (T - 2.0 / a * (1.0 - std::exp(-a * T)) + 0.5 / a * (1.0 - std::exp(-2.0 * a * T)));
    const double g = 1.0 - std::exp(-a * T);
    CHECK(lhs == doctest::Approx(Hs * g * g + 0.5 * nu * integral).epsilon(1e-6));
    CHECK(rhs == doctest::Approx(T * F / (2.0 * nu)).epsilon(1e-12));

    // the differential inequality dH/dt + nu D <= F / nu integrates to
    // H + nu int D <= H0 + t F / nu, which holds along this solution
    CHECK(Hs * g * g + nu * integral <= T * F / nu);
}

TEST_CASE("shell spectra sum to the invariants and fluxes close") {
    const SpectralState u = random_state(Grid::with_default_dealias(8), -1.0, {1.0, 8.0}, 6);
    const auto shells = spectra_and_fluxes(u);
    double E = 0.0, H = 0.0;
    for (const ShellSpectrum& s : shells) {
        E += s.E_n;
        H += s.H_n;
    }
    CHECK(E == doctest::Approx(energy(u)).epsilon(1e-13));
    CHECK(H == doctest::Approx(helicity(u)).epsilon(1e-13));
    CHECK(shells.front().shell == 1);
    CHECK(shells.back().shell == 9);  // floor(sqrt(3) 5 + 1/2)

    FastEvaluator ev(u.mode_set());
    const FluxClosure closure = flux_closure(u, ev.rhs(u));
    CHECK(closure.energy < 1e-12);
    CHECK(closure.helicity < 1e-12);
}

TEST_CASE("a lone mode carries no flux") {
    SpectralState u(ModeSet::cube(Grid::with_default_dealias(4)));
    u[u.modes().locate({1, 1, 0})->index] = 1.0;
    for (const ShellSpectrum& s : spectra_and_fluxes(u)) {
        CHECK(std::abs(s.Pi_E) < 1e-15);
        CHECK(std::abs(s.Pi_H) < 1e-15);
    }
    // |k| = sqrt(2) rounds to shell 1
    CHECK(spectra_and_fluxes(u).front().E_n == doctest::Approx(2.0));
}

TEST_CASE("unforced helicity decays monotonically") {
    SimConfig c;
    c.grid = Grid::with_default_dealias(8);
    c.nu = 0.02;
    c.t_end = 0.5;
    c.dt = 1e-3;
    double prev = std::numeric_limits<double>::infinity();
    run(c, [&](const SpectralState&, const DiagnosticsRecord& r) {
        CHECK(r.H <= prev);
        prev = r.H;
        CHECK(r.bound_lhs <= r.bound_rhs * (1.0 + 1e-12));
    });
}

TEST_CASE("continuity probe") {
    const SimConfig c = probe_config();
    const double eps[] = {1e-4, 5e-5, 0.0};
    const auto rows = lipschitz_probe(c, eps);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].sup_ratio >= 1.0);
    CHECK(std::abs(rows[0].sup_ratio - rows[1].sup_ratio) < 1e-3 * rows[0].sup_ratio);
    CHECK(rows[0].sup_norm == doctest::Approx(2.0 * rows[1].sup_norm).epsilon(1e-3));
    CHECK(rows[2].sup_ratio == 0.0);
    CHECK(rows[2].sup_norm == 0.0);

    const SpectralState dir = probe_direction(c, ModeSet::cube(c.grid));
    CHECK(std::abs(energy(dir) - 1.0) < 1e-14);
}

TEST_CASE("continuity probe argument checks") {
    SimConfig c = probe_config();
    const double one[] = {1e-4};
    const double rising[] = {1e-5, 1e-4};
    const double negative[] = {1e-4, -1e-5};
    CHECK_THROWS_AS(lipschitz_probe(c, one), Error);
    CHECK_THROWS_AS(lipschitz_probe(c, rising), Error);
    CHECK_THROWS_AS(lipschitz_probe(c, negative), Error);
    c.nu = 0.0;
    const double ok[] = {1e-4, 5e-5};
    try {
        lipschitz_probe(c, ok);
        FAIL("expected ViscosityZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ViscosityZero);
    }
}
