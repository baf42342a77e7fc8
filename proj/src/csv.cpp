#include "helidec/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "helidec/errors.hpp"

namespace helidec {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot open " + path + " for writing");
    return out;
}

}  // namespace

void write_series_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
    out << kSeriesHeader << '\n';
    for (const DiagnosticsRecord& r : records) {
        out << fmt17(r.t) << ',' << fmt17(r.E) << ',' << fmt17(r.H) << ',' << fmt17(r.D) << ',' << fmt17(r.inj_E)
            << ',' << fmt17(r.inj_H) << ',' << fmt17(r.budget_residual_H) << ',' << fmt17(r.bound_lhs) << ','
            << fmt17(r.bound_rhs) << '\n';
    }
}

void write_series_csv(const std::string& path, std::span<const DiagnosticsRecord> records) {
    auto out = open_for_write(path);
    write_series_csv(out, records);
    if (!out) throw Error(Errc::Io, "write to " + path + " failed");
}

void write_spectra_csv(std::ostream& out, std::span<const ShellSpectrum> shells) {
    out << kSpectraHeader << '\n';
    for (const ShellSpectrum& s : shells) {
        out << s.shell << ',' << fmt17(s.E_n) << ',' << fmt17(s.H_n) << ',' << fmt17(s.Pi_E) << ','
            << fmt17(s.Pi_H) << '\n';
    }
}

void write_spectra_csv(const std::string& path, std::span<const ShellSpectrum> shells) {
    auto out = open_for_write(path);
    write_spectra_csv(out, shells);
    if (!out) throw Error(Errc::Io, "write to " + path + " failed");
}

}  // namespace helidec
