#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "helidec/diagnostics.hpp"

namespace helidec {

/// Column order of series.csv.
inline constexpr const char* kSeriesHeader = "t,E,H,D,inj_E,inj_H,budget_residual_H,bound_lhs,bound_rhs";
/// Column order of spectra.csv.
inline constexpr const char* kSpectraHeader = "shell,E_n,H_n,Pi_E,Pi_H";

/// Values use 17 significant digits so they read back bit-exact.
void write_series_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
void write_series_csv(const std::string& path, std::span<const DiagnosticsRecord> records);

void write_spectra_csv(std::ostream& out, std::span<const ShellSpectrum> shells);
void write_spectra_csv(const std::string& path, std::span<const ShellSpectrum> shells);

}  // namespace helidec
