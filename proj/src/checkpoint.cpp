#include "helidec/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "helidec/errors.hpp"

namespace helidec {

namespace {

constexpr unsigned char kMagic[4] = {'D', 'N', 'S', 'H'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 1 + 8 + 8 + 8;
constexpr std::size_t kModeBytes = 3 * 4 + 2 * 8;

class Writer {
public:
    explicit Writer(std::vector<unsigned char>& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) { le(v, 4); }
    void i32(std::int32_t v) { le(static_cast<std::uint32_t>(v), 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }

private:
    void le(std::uint64_t v, int bytes) {
        for (int b = 0; b < bytes; ++b) out_.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xffu));
    }
    std::vector<unsigned char>& out_;
};

class Reader {
public:
    explicit Reader(const std::vector<unsigned char>& in) : in_(in) {}

    std::size_t remaining() const { return in_.size() - pos_; }
    std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(le(4))); }
    std::uint64_t u64() { return le(8); }
    double f64() { return std::bit_cast<double>(le(8)); }

private:
    std::uint64_t le(int bytes) {
        if (remaining() < static_cast<std::size_t>(bytes)) throw Error(Errc::TruncatedFile, "checkpoint ends early");
        std::uint64_t v = 0;
        for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(in_[pos_ + b]) << (8 * b);
        pos_ += static_cast<std::size_t>(bytes);
        return v;
    }
    const std::vector<unsigned char>& in_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<unsigned char> encode_checkpoint(const SpectralState& state, double nu) {
    const ModeSet& modes = state.modes();
    if (!(modes.grid() == Grid::with_default_dealias(modes.grid().n))) {
        throw Error(Errc::InconsistentGrid, "checkpoints store grids with the default dealias limit only");
    }
    std::vector<unsigned char> bytes;
    bytes.reserve(kHeaderBytes + modes.size() * kModeBytes);
    Writer w(bytes);
    for (unsigned char c : kMagic) w.u8(c);
    w.u32(kCheckpointVersion);
    w.u32(static_cast<std::uint32_t>(modes.grid().n));
    w.u8(modes.any_fallback() ? 1 : 0);
    w.f64(nu);
    w.f64(state.time());
    w.u64(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const WaveVector& k = modes.k(i);
        w.i32(k.kx);
        w.i32(k.ky);
        w.i32(k.kz);
        w.f64(state[i].real());
        w.f64(state[i].imag());
    }
    return bytes;
}

Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw Error(Errc::BadMagic, "not a checkpoint (magic \"DNSH\" missing)");
    }
    Reader r(bytes);
    for (int i = 0; i < 4; ++i) r.u8();
    const std::uint32_t version = r.u32();
    if (version != kCheckpointVersion) {
        throw Error(Errc::VersionMismatch, "checkpoint version " + std::to_string(version) + " is not supported");
    }
    const std::uint32_t n = r.u32();
    if (n < 1 || n > static_cast<std::uint32_t>(kMaxGridN)) {
        throw Error(Errc::InconsistentGrid, "checkpoint grid N = " + std::to_string(n) + " outside [1, " +
                                                std::to_string(kMaxGridN) + "]");
    }
    const bool fallback = r.u8() != 0;
    const double nu = r.f64();
    const double t = r.f64();
    const std::uint64_t count = r.u64();

    const Grid grid = Grid::with_default_dealias(static_cast<int>(n));
    const auto K = static_cast<std::uint64_t>(grid.dealias_limit);
    const std::uint64_t max_modes = ((2 * K + 1) * (2 * K + 1) * (2 * K + 1) - 1) / 2;
    if (count > max_modes) throw Error(Errc::InconsistentGrid, "mode count exceeds the grid's half-lattice");
    if (r.remaining() < count * kModeBytes) throw Error(Errc::TruncatedFile, "checkpoint ends inside the mode table");
    if (r.remaining() > count * kModeBytes) throw Error(Errc::InconsistentGrid, "trailing bytes after the mode table");

    std::vector<WaveVector> ks;
    std::vector<complex> amps;
    ks.reserve(count);
    amps.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        WaveVector k;
        k.kx = r.i32();
        k.ky = r.i32();
        k.kz = r.i32();
        const double re = r.f64();
        const double im = r.f64();
        if (!in_half_lattice(k) || k.max_abs() > grid.dealias_limit) {
            throw Error(Errc::InconsistentGrid, "mode outside the retained half-lattice");
        }
        if (!ks.empty() && !storage_less(ks.back(), k)) {
            throw Error(Errc::InconsistentGrid, "modes not in strictly increasing (kz, ky, kx) order");
        }
        ks.push_back(k);
        amps.emplace_back(re, im);
    }

    ModeSetPtr modes = ModeSet::from_modes(grid, ks);
    if (modes->any_fallback() != fallback) {
        throw Error(Errc::InconsistentGrid, "fallback-axis flag disagrees with the stored modes");
    }
    SpectralState state(modes, t);
    std::copy(amps.begin(), amps.end(), state.amplitudes().begin());
    return {std::move(state), nu, fallback};
}

void write_checkpoint(const SpectralState& state, const std::string& path, double nu) {
    const auto bytes = encode_checkpoint(state, nu);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::Io, "write to " + path + " failed");
}

Checkpoint read_checkpoint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

SpectralState read_checkpoint(const std::string& path) { return read_checkpoint_file(path).state; }

}  // namespace helidec
