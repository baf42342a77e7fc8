#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helidec/field.hpp"

namespace helidec {

/// Binary checkpoint, all little-endian:
///   "DNSH" | u32 version = 1 | u32 N | u8 fallback flag | f64 nu | f64 t |
///   u64 mode count | per mode: i32 kx, ky, kz, f64 Re u+, f64 Im u+
/// Modes in (kz, ky, kx) lexicographic order over the half-lattice. The
/// fallback flag is 1 when any stored mode builds h+ from the (1,0,0) axis.
/// States are read back on Grid::with_default_dealias(N).
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    SpectralState state;
    double nu = 0.0;
    bool fallback_axis = false;
};

std::vector<unsigned char> encode_checkpoint(const SpectralState& state, double nu = 0.0);
Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes);

void write_checkpoint(const SpectralState& state, const std::string& path, double nu = 0.0);
Checkpoint read_checkpoint_file(const std::string& path);
SpectralState read_checkpoint(const std::string& path);

}  // namespace helidec
