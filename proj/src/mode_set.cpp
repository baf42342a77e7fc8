#include "helidec/mode_set.hpp"

#include <algorithm>
#include <string>

#include "helidec/errors.hpp"

namespace helidec {

namespace {

bool fft_friendly(int m) {
    for (int f : {2, 3, 5}) {
        while (m % f == 0) m /= f;
    }
    return m == 1;
}

}  // namespace

Grid Grid::with_default_dealias(int n) {
    Grid g{n, std::max(1, (2 * n) / 3)};
    g.validate();
    return g;
}

Grid Grid::full_cube(int n) {
    Grid g{n, n};
    g.validate();
    return g;
}

void Grid::validate() const {
    if (n < 1 || n > kMaxGridN) {
        throw Error(Errc::InvalidArgument, "grid N must lie in [1, " + std::to_string(kMaxGridN) + "]");
    }
    if (dealias_limit < 1 || dealias_limit > n) {
        throw Error(Errc::InvalidArgument, "dealias_limit must lie in [1, N]");
    }
}

int Grid::transform_size() const {
    int m = 3 * dealias_limit + 1;
    while (!fft_friendly(m)) ++m;
    return m;
}

ModeSet::ModeSet(const Grid& grid, std::vector<WaveVector> modes, bool is_cube)
    : grid_(grid), is_cube_(is_cube), modes_(std::move(modes)) {
    const int K = grid_.dealias_limit;
    const int width = 2 * K + 1;
    lookup_.assign(static_cast<std::size_t>(width) * width * width, -1);

    kmag_.reserve(modes_.size());
    h_plus_.reserve(modes_.size());
    fallback_.reserve(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const WaveVector& k = modes_[i];
        const HelicalPair pair = helical_vectors(k);
        kmag_.push_back(k.norm());
        h_plus_.push_back(pair.plus.h);
        fallback_.push_back(pair.used_fallback ? 1 : 0);
        const auto slot = (static_cast<std::size_t>(k.kx + K) * width + (k.ky + K)) * width + (k.kz + K);
        lookup_[slot] = static_cast<int>(i);
    }
}

ModeSetPtr ModeSet::cube(const Grid& grid) {
    grid.validate();
    const int K = grid.dealias_limit;
    std::vector<WaveVector> modes;
    for (int kz = 0; kz <= K; ++kz) {
        for (int ky = -K; ky <= K; ++ky) {
            for (int kx = -K; kx <= K; ++kx) {
                const WaveVector k{kx, ky, kz};
                if (in_half_lattice(k)) modes.push_back(k);
            }
        }
    }
    return std::shared_ptr<const ModeSet>(new ModeSet(grid, std::move(modes), true));
}

ModeSetPtr ModeSet::from_modes(const Grid& grid, std::span<const WaveVector> modes) {
    grid.validate();
    std::vector<WaveVector> canonical;
    canonical.reserve(modes.size());
    for (const WaveVector& k : modes) {
        if (k.is_zero()) throw Error(Errc::InvalidArgument, "mode set cannot contain k = 0");
        if (k.max_abs() > grid.dealias_limit) {
            throw Error(Errc::InvalidArgument, "mode lies outside the truncation cube");
        }
        canonical.push_back(in_half_lattice(k) ? k : -k);
    }
    std::sort(canonical.begin(), canonical.end(), storage_less);
    canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());

    const int K = grid.dealias_limit;
    const std::size_t full_count = (static_cast<std::size_t>(2 * K + 1) * (2 * K + 1) * (2 * K + 1) - 1) / 2;
    const bool cube = canonical.size() == full_count;
    return std::shared_ptr<const ModeSet>(new ModeSet(grid, std::move(canonical), cube));
}

bool ModeSet::any_fallback() const {
    return std::any_of(fallback_.begin(), fallback_.end(), [](unsigned char f) { return f != 0; });
}

std::optional<ModeSet::Location> ModeSet::locate(const WaveVector& k) const {
    const int K = grid_.dealias_limit;
    if (k.is_zero() || k.max_abs() > K) return std::nullopt;
    const bool conjugated = !in_half_lattice(k);
    const WaveVector c = conjugated ? -k : k;
    const int width = 2 * K + 1;
    const auto slot = (static_cast<std::size_t>(c.kx + K) * width + (c.ky + K)) * width + (c.kz + K);
    const int idx = lookup_[slot];
    if (idx < 0) return std::nullopt;
    return Location{static_cast<std::size_t>(idx), conjugated};
}

bool ModeSet::same_modes(const ModeSet& other) const {
    return grid_ == other.grid_ && modes_ == other.modes_;
}

}  // namespace helidec
