#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace helidec {

/// Failure categories surfaced by the library. The CLI prints the name
/// verbatim so scripts can match on it.
enum class Errc {
    DegenerateAxis,
    EmptyBand,
    InvalidArgument,
    GridTooLarge,
    ForcingOutsideTruncation,
    NonFinite,
    ViscosityZero,
    UnknownKey,
    MissingKey,
    InvalidValue,
    BadMagic,
    VersionMismatch,
    TruncatedFile,
    InconsistentGrid,
    Io,
};

constexpr std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::DegenerateAxis: return "DegenerateAxis";
    case Errc::EmptyBand: return "EmptyBand";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::ForcingOutsideTruncation: return "ForcingOutsideTruncation";
    case Errc::NonFinite: return "NonFinite";
    case Errc::ViscosityZero: return "ViscosityZero";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::MissingKey: return "MissingKey";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::InconsistentGrid: return "InconsistentGrid";
    case Errc::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace helidec
