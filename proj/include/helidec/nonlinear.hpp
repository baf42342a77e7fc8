#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "helidec/field.hpp"
#include "helidec/transform.hpp"

namespace helidec {

/// Three wavevectors closing a triad, k + p + q = 0.
struct TriadSpec {
    WaveVector k;
    WaveVector p;
    WaveVector q;

    /// Throws InvalidArgument unless the legs sum to zero, are nonzero and
    /// lie inside the truncation of `grid`.
    void validate(const Grid& grid) const;
    std::array<WaveVector, 3> legs() const { return {k, p, q}; }
};

/// Stored-mode budget above which the O(M^2) convolution oracle refuses to run.
inline constexpr std::size_t kDefaultOracleBudget = 6000;

/// Exact triadic convolution over all ordered pairs (p, q) with k + p + q = 0
/// and all legs retained:
///   d conj(u+(k))/dt = -1/4 sum (|p| - |q|) [h+(p) x h+(q) . h+(k)] u+(p) u+(q).
/// Nonlinear part only. Throws GridTooLarge above `oracle_budget` stored modes.
SpectralState triadic_rhs(const SpectralState& state, std::size_t oracle_budget = kDefaultOracleBudget);

enum class NonlinearForm {
    rotational,  ///< v x omega
    advective,   ///< -(v . grad) v
};

/// Transform-based Galerkin nonlinearity. Owns FFT buffers, so one instance
/// per worker; the mode table it points at is shared and immutable.
class FastEvaluator {
public:
    explicit FastEvaluator(ModeSetPtr modes, NonlinearForm form = NonlinearForm::rotational);

    const ModeSetPtr& mode_set() const { return modes_; }
    int transform_size() const { return transform_.size(); }

    /// P+ of the dealiased nonlinearity, projected back onto stored modes.
    SpectralState rhs(const SpectralState& state);

    /// Physical-space velocity components on the m^3 transform grid.
    std::array<std::vector<double>, 3> velocity(const SpectralState& state);

    /// max_x |v(x)| on the transform grid.
    double max_speed(const SpectralState& state);

private:
    void check_modes(const SpectralState& state) const;
    void scatter(const SpectralState& state, int component, double kpower, AlignedBuffer<complex>& out) const;
    void scatter_gradient(const SpectralState& state, int component, int direction,
                          AlignedBuffer<complex>& out) const;
    SpectralState project(const std::array<AlignedBuffer<complex>, 3>& spectral, double time) const;

    ModeSetPtr modes_;
    NonlinearForm form_;
    RealTransform3d transform_;
    std::vector<std::size_t> slots_;  ///< spectral slot of each stored mode
    std::vector<std::size_t> mirror_slots_;  ///< slot of -k for kz = 0 modes, npos otherwise
    AlignedBuffer<complex> scratch_spec_;
    std::array<AlignedBuffer<double>, 3> vel_;
    std::array<AlignedBuffer<double>, 3> aux_;
    std::array<AlignedBuffer<double>, 3> prod_;
    std::array<AlignedBuffer<complex>, 3> prod_spec_;
};

/// Convenience wrapper building a one-shot FastEvaluator.
SpectralState fast_rhs(const SpectralState& state, NonlinearForm form = NonlinearForm::rotational);

enum class RhsMethod { fast, triadic };

struct RhsDecomposition {
    SpectralState nonlinear;
    SpectralState viscous;
    SpectralState forcing;

    SpectralState total() const;
};

/// Re-expresses `forcing` on `modes`. Throws ForcingOutsideTruncation when a
/// nonzero forcing amplitude has no retained counterpart.
SpectralState align_forcing(const SpectralState& forcing, const ModeSetPtr& modes);

/// Nonlinear + viscous + forcing right-hand side for a fixed mode table.
class RhsEvaluator {
public:
    explicit RhsEvaluator(ModeSetPtr modes, RhsMethod method = RhsMethod::fast,
                          std::size_t oracle_budget = kDefaultOracleBudget);

    const ModeSetPtr& mode_set() const { return modes_; }
    RhsMethod method() const { return method_; }

    SpectralState nonlinear(const SpectralState& state);
    /// `forcing` must already live on this evaluator's mode table.
    RhsDecomposition full(const SpectralState& state, double nu, const SpectralState& forcing);
    double max_speed(const SpectralState& state);

private:
    ModeSetPtr modes_;
    RhsMethod method_;
    std::size_t oracle_budget_;
    std::unique_ptr<FastEvaluator> fast_;
};

RhsDecomposition full_rhs(const SpectralState& state, double nu, const SpectralState& forcing,
                          RhsMethod method = RhsMethod::fast);

}  // namespace helidec
