#pragma once

#include <string>
#include <string_view>

#include "helidec/integrator.hpp"

namespace helidec {

/// Parses `key = value` lines ('#' starts a comment). Only grid_n is
/// required; defaults are those of SimConfig (nu = 0.01, dt = 1e-3,
/// t_end = 1, sample_every = 10, seed = 1, init_mode = random on band [1, 3]
/// with exponent 0, no forcing, out_dir = "."). Errors carry the offending
/// line number: UnknownKey, MissingKey, InvalidValue.
SimConfig parse_config(std::string_view text);

SimConfig load_config(const std::string& path);

/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const SimConfig& config);

}  // namespace helidec
