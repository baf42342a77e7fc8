#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helidec/checkpoint.hpp"
#include "helidec/config.hpp"
#include "helidec/csv.hpp"
#include "helidec/errors.hpp"

using namespace helidec;

namespace {

Error caught(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an exception");
    return Error(Errc::Io, "unreachable");
}

template <class T>
T read_le(const std::vector<unsigned char>& b, std::size_t at) {
    T v{};
    std::memcpy(&v, b.data() + at, sizeof(T));  // host is little-endian on all CI targets
    return v;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("helidec_test_io_" + name);
}

}  // namespace

TEST_CASE("config defaults with only grid_n") {
    const SimConfig c = parse_config("grid_n = 8\n");
    CHECK(c.grid == Grid::with_default_dealias(8));
    CHECK(c.nu == 0.01);
    CHECK(c.dt == 1e-3);
    CHECK(c.t_end == 1.0);
    CHECK(c.sample_every == 10);
    CHECK(c.seed == 1);
    CHECK(c.init_mode == InitMode::random);
    CHECK(c.init_band.lo == 1.0);
    CHECK(c.init_band.hi == 3.0);
    CHECK_FALSE(c.force_band.has_value());
    CHECK(c.out_dir == ".");
}

TEST_CASE("config full parse and round trip") {
    const char* text = R"(# forced run
grid_n = 16
nu = 0.05   # viscosity
dt = 0.002
t_end = 5
sample_every = 20
seed = 99
init_mode = triad
triad = 1,0,0, 0,2,1  -1 -2 -1
force_band_lo = 2
force_band_hi = 4
force_amp = 1.5
out_dir = /tmp/run
)";
    const SimConfig c = parse_config(text);
    CHECK(c.grid.n == 16);
    CHECK(c.nu == 0.05);
    CHECK(c.dt == 0.002);
    CHECK(c.seed == 99);
    CHECK(c.init_mode == InitMode::triad);
    REQUIRE(c.triad.has_value());
    CHECK(c.triad->q == WaveVector{-1, -2, -1});
    CHECK(c.force_band->hi == 4.0);
    CHECK(c.force_amp == 1.5);
    CHECK(c.out_dir == "/tmp/run");

    const SimConfig again = parse_config(format_config(c));
    CHECK(format_config(again) == format_config(c));
}

TEST_CASE("config errors name the line") {
    Error e = caught([] { parse_config("grid_n = 8\nbogus = 1\n"); });
    CHECK(e.code() == Errc::UnknownKey);
    CHECK(std::string(e.what()).starts_with("line 2:"));

    e = caught([] { parse_config("nu = 0.1\n"); });
    CHECK(e.code() == Errc::MissingKey);

    e = caught([] { parse_config("grid_n = 8\nnu = 0.1\n\nnu = 0.2\n"); });
    CHECK(e.code() == Errc::InvalidValue);
    CHECK(std::string(e.what()).find("lines 2 and 4") != std::string::npos);

    e = caught([] { parse_config("grid_n = 8\ndt = -1\n"); });
    CHECK(e.code() == Errc::InvalidValue);
    CHECK(std::string(e.what()).starts_with("line 2:"));

    e = caught([] { parse_config("grid_n = eight\n"); });
    CHECK(e.code() == Errc::InvalidValue);

    e = caught([] { parse_config("grid_n = 8\ninit_mode = checkpoint\n"); });
    CHECK(e.code() == Errc::MissingKey);

    e = caught([] { parse_config("grid_n = 8\ninit_mode = triad\n"); });
    CHECK(e.code() == Errc::MissingKey);

    e = caught([] { parse_config("grid_n = 8\nforce_band_lo = 2\n"); });
    CHECK(e.code() == Errc::MissingKey);

    e = caught([] { parse_config("grid_n = 8\ntriad = 1 0 0 0 1 0\n"); });
    CHECK(e.code() == Errc::InvalidValue);

    e = caught([] { parse_config("grid_n = 8\nnu\n"); });
    CHECK(e.code() == Errc::InvalidValue);

    e = caught([] { load_config("/nonexistent/helidec.cfg"); });
    CHECK(e.code() == Errc::Io);
}

TEST_CASE("checkpoint byte layout") {
    SpectralState s(ModeSet::cube(Grid::with_default_dealias(1)), 2.5);
    s[0] = complex(1.0, -2.0);
    const auto bytes = encode_checkpoint(s, 0.125);
    REQUIRE(bytes.size() == 37 + 13 * 28);
    CHECK(std::memcmp(bytes.data(), "DNSH", 4) == 0);
    CHECK(read_le<std::uint32_t>(bytes, 4) == 1);
    CHECK(read_le<std::uint32_t>(bytes, 8) == 1);
    CHECK(bytes[12] == 1);  // (0, 0, 1) needs the fallback axis
    CHECK(read_le<double>(bytes, 13) == 0.125);
    CHECK(read_le<double>(bytes, 21) == 2.5);
    CHECK(read_le<std::uint64_t>(bytes, 29) == 13);
    CHECK(read_le<std::int32_t>(bytes, 37) == 1);
    CHECK(read_le<std::int32_t>(bytes, 41) == 0);
    CHECK(read_le<std::int32_t>(bytes, 45) == 0);
    CHECK(read_le<double>(bytes, 49) == 1.0);
    CHECK(read_le<double>(bytes, 57) == -2.0);
    // last mode is (1, 1, 1)
    const std::size_t last = 37 + 12 * 28;
    CHECK(read_le<std::int32_t>(bytes, last) == 1);
    CHECK(read_le<std::int32_t>(bytes, last + 8) == 1);
}

TEST_CASE("checkpoint round trip is bit-exact") {
    for (int n : {1, 3, 8, 12}) {
        for (std::uint64_t seed : {1u, 7u}) {
            SpectralState s = random_state(Grid::with_default_dealias(n), -1.3, {1.0, 100.0}, seed);
            s.set_time(0.1 * seed + 1.0 / 3.0);
            const Checkpoint back = decode_checkpoint(encode_checkpoint(s, 0.07));
            CHECK(back.state.identical(s));
            CHECK(back.nu == 0.07);
            CHECK(back.fallback_axis);
        }
    }
    const auto path = temp_path("roundtrip.chk");
    const SpectralState s = random_state(Grid::with_default_dealias(6), 0.0, {1.0, 4.0}, 3);
    write_checkpoint(s, path.string(), 0.01);
    CHECK(read_checkpoint(path.string()).identical(s));
    std::filesystem::remove(path);
}

TEST_CASE("checkpoint corruption is classified") {
    const SpectralState s = random_state(Grid::with_default_dealias(3), 0.0, {1.0, 3.0}, 3);
    const auto good = encode_checkpoint(s);

    auto bytes = good;
    bytes[0] = 'X';
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::BadMagic);
    CHECK(caught([&] { decode_checkpoint({}); }).code() == Errc::BadMagic);

    bytes = good;
    bytes[4] = 2;
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::VersionMismatch);

    bytes = good;
    bytes.resize(bytes.size() - 5);
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::TruncatedFile);
    bytes.resize(20);
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::TruncatedFile);

    bytes = good;
    bytes.push_back(0);
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::InconsistentGrid);

    bytes = good;
    bytes[8] = 0;  // N = 0
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::InconsistentGrid);

    bytes = good;
    bytes[12] = 0;  // fallback flag disagrees
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::InconsistentGrid);

    bytes = good;
    bytes[37] = 9;  // kx beyond the truncation
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::InconsistentGrid);

    bytes = good;
    std::memcpy(bytes.data() + 37, bytes.data() + 37 + 28, 12);  // repeated mode
    CHECK(caught([&] { decode_checkpoint(bytes); }).code() == Errc::InconsistentGrid);

    const SpectralState oracle_grid(ModeSet::cube(Grid::full_cube(3)));
    CHECK(caught([&] { encode_checkpoint(oracle_grid); }).code() == Errc::InconsistentGrid);

    CHECK(caught([] { read_checkpoint("/nonexistent/x.chk"); }).code() == Errc::Io);
}

TEST_CASE("series csv header and exact round trip") {
    DiagnosticsRecord r;
    r.t = 0.1;
    r.E = 1.0 / 3.0;
    r.H = 2.0 / 7.0;
    r.D = 1e-300;
    r.inj_E = -0.0;
    r.inj_H = 12345.678901234567;
    r.budget_residual_H = 3e-17;
    r.bound_lhs = 1.5;
    r.bound_rhs = 1.75;
    const DiagnosticsRecord rows[] = {r};
    std::ostringstream out;
    write_series_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == kSeriesHeader);
    std::vector<double> v;
    std::stringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 9);
    CHECK(v[0] == r.t);
    CHECK(v[1] == r.E);
    CHECK(v[2] == r.H);
    CHECK(v[3] == r.D);
    CHECK(v[5] == r.inj_H);
    CHECK(v[6] == r.budget_residual_H);
    CHECK(v[8] == r.bound_rhs);
}

TEST_CASE("spectra csv") {
    const ShellSpectrum rows[] = {{1, 0.5, 0.5, -0.25, 0.125}, {2, 0.25, 0.5, 0.0, 0.0}};
    std::ostringstream out;
    write_spectra_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == kSpectraHeader);
    CHECK(first == "1,0.5,0.5,-0.25,0.125");
}
