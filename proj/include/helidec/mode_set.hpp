#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "helidec/helical_basis.hpp"
#include "helidec/vec3.hpp"

namespace helidec {

/// Largest grid size accepted from files and configs.
inline constexpr int kMaxGridN = 1024;

/// Cubic truncation. Retained modes satisfy |k_i| <= dealias_limit; the
/// nominal transform resolution is 2N points per direction.
struct Grid {
    int n = 1;
    int dealias_limit = 1;

    /// dealias_limit = floor(2N/3), at least 1.
    static Grid with_default_dealias(int n);
    /// Oracle-style grid retaining the whole cube |k_i| <= N.
    static Grid full_cube(int n);

    void validate() const;

    /// Smallest 2^a 3^b 5^c >= 3 * dealias_limit + 1: products of retained
    /// fields then alias nothing back onto retained modes.
    int transform_size() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Immutable table of retained half-lattice wavevectors with cached |k| and
/// h+(k). Stored in lexicographic (kz, ky, kx) order. Shared read-only
/// between states and workers.
class ModeSet {
public:
    struct Location {
        std::size_t index;
        bool conjugated;  ///< true when the lattice point is -k of the stored mode
    };

    /// Every half-lattice k with 0 < max|k_i| <= dealias_limit.
    static std::shared_ptr<const ModeSet> cube(const Grid& grid);

    /// Arbitrary subset. Each wavevector is mapped to its half-lattice
    /// representative; duplicates collapse. Throws InvalidArgument when a
    /// mode is zero or lies outside the truncation cube.
    static std::shared_ptr<const ModeSet> from_modes(const Grid& grid, std::span<const WaveVector> modes);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return modes_.size(); }
    bool is_cube() const { return is_cube_; }

    const WaveVector& k(std::size_t i) const { return modes_[i]; }
    double kmag(std::size_t i) const { return kmag_[i]; }
    const CVec3& h_plus(std::size_t i) const { return h_plus_[i]; }
    bool used_fallback(std::size_t i) const { return fallback_[i] != 0; }
    bool any_fallback() const;

    std::span<const WaveVector> modes() const { return modes_; }
    std::span<const double> kmags() const { return kmag_; }

    /// Stored index of k or -k; nullopt for k = 0 or unretained lattice points.
    std::optional<Location> locate(const WaveVector& k) const;

    /// Mode tables built from identical wavevector lists compare equal.
    bool same_modes(const ModeSet& other) const;

private:
    ModeSet(const Grid& grid, std::vector<WaveVector> modes, bool is_cube);

    Grid grid_;
    bool is_cube_ = false;
    std::vector<WaveVector> modes_;
    std::vector<double> kmag_;
    std::vector<CVec3> h_plus_;
    std::vector<unsigned char> fallback_;
    std::vector<int> lookup_;  ///< dense (2K+1)^3 table, -1 when absent
};

using ModeSetPtr = std::shared_ptr<const ModeSet>;

}  // namespace helidec
