#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "helidec/vec3.hpp"

namespace helidec {

namespace detail {
struct FftwFree {
    void operator()(void* p) const;
};
}  // namespace detail

/// FFTW-aligned array. All buffers handed to one RealTransform3d must come
/// from here so plans can be re-executed on them.
template <class T>
class AlignedBuffer {
public:
    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n);

    T* data() { return data_.get(); }
    const T* data() const { return data_.get(); }
    std::size_t size() const { return size_; }
    std::span<T> span() { return {data_.get(), size_}; }
    std::span<const T> span() const { return {data_.get(), size_}; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    void fill_zero();

private:
    std::unique_ptr<T[], detail::FftwFree> data_;
    std::size_t size_ = 0;
};

/// Real <-> half-complex 3D transform on an m^3 periodic grid.
/// Physical index ((ix*m)+iy)*m+iz; spectral index ((ix*m)+iy)*(m/2+1)+kz with
/// kx = ix, ky = iy folded modulo m. The inverse is the plain Fourier sum
/// v(x) = sum_k u(k) exp(i k.x); the forward carries 1/m^3.
class RealTransform3d {
public:
    explicit RealTransform3d(int m);
    ~RealTransform3d();
    RealTransform3d(const RealTransform3d&) = delete;
    RealTransform3d& operator=(const RealTransform3d&) = delete;

    int size() const { return m_; }
    std::size_t physical_count() const;
    std::size_t spectral_count() const;

    /// Slot of a wavevector with kz >= 0 in the spectral layout.
    std::size_t spectral_index(const WaveVector& k) const;

    AlignedBuffer<double> make_physical() const { return AlignedBuffer<double>(physical_count()); }
    AlignedBuffer<complex> make_spectral() const { return AlignedBuffer<complex>(spectral_count()); }

    /// Overwrites `spectral` (FFTW c2r destroys its input).
    void inverse(AlignedBuffer<complex>& spectral, AlignedBuffer<double>& physical) const;
    /// Normalized forward transform; `physical` is preserved.
    void forward(AlignedBuffer<double>& physical, AlignedBuffer<complex>& spectral) const;

private:
    int m_;
    void* plan_r2c_ = nullptr;
    void* plan_c2r_ = nullptr;
};

/// Worker count from HELIDEC_THREADS (0 or unset = hardware concurrency).
int configured_threads();

}  // namespace helidec
