#include <doctest.h>

#include <random>

#include "helidec/errors.hpp"
#include "helidec/field.hpp"
#include "helidec/nonlinear.hpp"
#include "helidec/verify.hpp"
#include "support.hpp"

using namespace helidec;

namespace {

double max_abs(const SpectralState& s) {
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) m = std::max(m, std::abs(s[i]));
    return m;
}

}  // namespace

TEST_CASE("zero state has zero nonlinearity") {
    const SpectralState zero(ModeSet::cube(Grid::full_cube(3)));
    CHECK(max_abs(triadic_rhs(zero)) == 0.0);
    CHECK(max_abs(fast_rhs(zero)) == 0.0);
}

TEST_CASE("a single Beltrami mode is a steady solution") {
    SpectralState s(ModeSet::cube(Grid::full_cube(3)));
    s[s.modes().locate({1, 2, 0})->index] = complex(0.7, -0.2);
    CHECK(max_abs(triadic_rhs(s)) < 1e-15);
    CHECK(max_abs(fast_rhs(s)) < 1e-15);
}

TEST_CASE("two modes without a third leg exchange nothing") {
    const WaveVector legs[] = {{1, 0, 0}, {0, 1, 0}};
    SpectralState s(ModeSet::from_modes(Grid::full_cube(2), legs));
    s[0] = 1.0;
    s[1] = complex(0.0, 1.0);
    CHECK(max_abs(triadic_rhs(s)) == 0.0);
}

TEST_CASE("convolution oracle agrees with the triadic sum") {
    for (int n : {2, 3}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const SpectralState s = random_state(Grid::full_cube(n), -1.0, {1.0, 2.0 * n}, seed);
            CHECK(test::relative_l2(triadic_rhs(s), test::convolution_oracle(s)) < 1e-13);
        }
    }
}

TEST_CASE("fast route agrees with the convolution oracle") {
    for (int n : {2, 3, 4}) {
        const SpectralState s = random_state(Grid::full_cube(n), -0.5, {1.0, 2.0 * n}, 40 + n);
        const SpectralState oracle = test::convolution_oracle(s);
        CHECK(test::relative_l2(fast_rhs(s), oracle) < 1e-12);
        CHECK(test::relative_l2(fast_rhs(s, NonlinearForm::advective), oracle) < 1e-12);
    }
    // dealiased grid: products of retained modes still project exactly
    const SpectralState s = random_state(Grid::with_default_dealias(4), 0.0, {1.0, 5.0}, 9);
    CHECK(test::relative_l2(fast_rhs(s), test::convolution_oracle(s)) < 1e-12);
}

TEST_CASE("nonlinear transfer conserves energy and helicity") {
    const SpectralState s = random_state(Grid::with_default_dealias(8), -1.0, {1.0, 8.0}, 5);
    const ExchangeErrors ex = exchange_errors(s, fast_rhs(s));
    CHECK(ex.energy < 1e-13);
    CHECK(ex.helicity < 1e-13);
}

TEST_CASE("single triads conserve energy and helicity") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const TriadSpec triad = random_triad(rng, 5);
        CHECK_NOTHROW(triad.validate(Grid::with_default_dealias(8)));
        const auto legs = triad.legs();
        const SpectralState s = random_state(ModeSet::from_modes(Grid::with_default_dealias(8), legs), 0.0,
                                             {1.0, 1e9}, rng());
        const SpectralState du = triadic_rhs(s);
        CHECK(max_abs(du) > 0.0);
        const ExchangeErrors ex = exchange_errors(s, du);
        CHECK(ex.energy < 1e-13);
        CHECK(ex.helicity < 1e-13);
    }
}

TEST_CASE("triad validation") {
    const Grid grid = Grid::with_default_dealias(8);
    CHECK_THROWS_AS((TriadSpec{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}.validate(grid)), Error);
    CHECK_THROWS_AS((TriadSpec{{1, 0, 0}, {-1, 0, 0}, {0, 0, 0}}.validate(grid)), Error);
    CHECK_THROWS_AS((TriadSpec{{6, 0, 0}, {-7, 1, 0}, {1, -1, 0}}.validate(grid)), Error);
    CHECK_NOTHROW((TriadSpec{{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}}.validate(grid)));
}

TEST_CASE("oracle refuses grids past its budget") {
    const SpectralState s(ModeSet::cube(Grid::full_cube(4)));
    try {
        triadic_rhs(s, 100);
        FAIL("expected GridTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::GridTooLarge);
    }
}

TEST_CASE("full right-hand side parts") {
    const SpectralState s = random_state(Grid::with_default_dealias(4), 0.0, {1.0, 4.0}, 2);
    const SpectralState zero_force(s.mode_set());
    const RhsDecomposition rhs = full_rhs(s, 0.1, zero_force);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double k = s.modes().kmag(i);
        CHECK(rhs.viscous[i] == -0.1 * k * k * s[i]);
        CHECK(rhs.forcing[i] == complex(0.0));
    }
    const SpectralState total = rhs.total();
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(total[i] == rhs.nonlinear[i] + rhs.viscous[i]);
    CHECK_THROWS_AS(full_rhs(s, -1.0, zero_force), Error);
}

TEST_CASE("forcing outside the retained set is rejected") {
    SpectralState f(ModeSet::cube(Grid::full_cube(4)));
    f[f.modes().locate({4, 4, 4})->index] = 1.0;
    const ModeSetPtr small = ModeSet::cube(Grid::with_default_dealias(4));
    try {
        align_forcing(f, small);
        FAIL("expected ForcingOutsideTruncation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ForcingOutsideTruncation);
    }
    SpectralState inside(ModeSet::cube(Grid::full_cube(4)));
    inside[inside.modes().locate({1, 0, 1})->index] = complex(0.0, 2.0);
    const SpectralState aligned = align_forcing(inside, small);
    CHECK(aligned.at({1, 0, 1}) == complex(0.0, 2.0));
}
