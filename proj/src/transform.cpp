#include "helidec/transform.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <new>
#include <thread>

#include "helidec/errors.hpp"

namespace helidec {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void init_threads_once() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        fftw_init_threads();
        fftw_plan_with_nthreads(configured_threads());
    });
}

}  // namespace

void detail::FftwFree::operator()(void* p) const { fftw_free(p); }

template <class T>
AlignedBuffer<T>::AlignedBuffer(std::size_t n) : size_(n) {
    void* raw = fftw_malloc(sizeof(T) * (n == 0 ? 1 : n));
    if (raw == nullptr) throw std::bad_alloc();
    data_.reset(static_cast<T*>(raw));
    fill_zero();
}

template <class T>
void AlignedBuffer<T>::fill_zero() {
    if (size_ != 0) std::memset(static_cast<void*>(data_.get()), 0, sizeof(T) * size_);
}

template class AlignedBuffer<double>;
template class AlignedBuffer<complex>;

int configured_threads() {
    if (const char* env = std::getenv("HELIDEC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

RealTransform3d::RealTransform3d(int m) : m_(m) {
    if (m < 2) throw Error(Errc::InvalidArgument, "transform size must be at least 2");
    init_threads_once();
    auto phys = make_physical();
    auto spec = make_spectral();
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE planning is deterministic, which keeps runs bit-reproducible.
    plan_r2c_ = fftw_plan_dft_r2c_3d(m, m, m, phys.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                     FFTW_ESTIMATE);
    plan_c2r_ = fftw_plan_dft_c2r_3d(m, m, m, reinterpret_cast<fftw_complex*>(spec.data()), phys.data(),
                                     FFTW_ESTIMATE);
    if (plan_r2c_ == nullptr || plan_c2r_ == nullptr) {
        throw Error(Errc::InvalidArgument, "FFTW failed to create a plan");
    }
}

RealTransform3d::~RealTransform3d() {
    std::lock_guard lock(planner_mutex());
    if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
    if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

std::size_t RealTransform3d::physical_count() const {
    const auto m = static_cast<std::size_t>(m_);
    return m * m * m;
}

std::size_t RealTransform3d::spectral_count() const {
    const auto m = static_cast<std::size_t>(m_);
    return m * m * (m / 2 + 1);
}

std::size_t RealTransform3d::spectral_index(const WaveVector& k) const {
    const auto fold = [m = m_](int v) { return static_cast<std::size_t>(((v % m) + m) % m); };
    const auto m = static_cast<std::size_t>(m_);
    return (fold(k.kx) * m + fold(k.ky)) * (m / 2 + 1) + static_cast<std::size_t>(k.kz);
}

void RealTransform3d::inverse(AlignedBuffer<complex>& spectral, AlignedBuffer<double>& physical) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_), reinterpret_cast<fftw_complex*>(spectral.data()),
                         physical.data());
}

void RealTransform3d::forward(AlignedBuffer<double>& physical, AlignedBuffer<complex>& spectral) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), physical.data(),
                         reinterpret_cast<fftw_complex*>(spectral.data()));
    const double scale = 1.0 / static_cast<double>(physical_count());
    for (std::size_t i = 0; i < spectral.size(); ++i) spectral[i] *= scale;
}

}  // namespace helidec
