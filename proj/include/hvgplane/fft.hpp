#pragma once

// Thin RAII layer over FFTW. Plans are built with FFTW_ESTIMATE, which is
// deterministic, so repeated transforms of the same input are bit-identical.
// The FFTW planner is not reentrant; plan creation and destruction are
// serialized, execution is not.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hvgplane::fft {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

namespace detail {

struct Plan {
    fftw_plan handle = nullptr;
    explicit Plan(fftw_plan h) : handle(h) {
        if (!handle) throw std::runtime_error("fftw: plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(handle);
    }
};

inline fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace detail

/// Forward real-to-complex transform; returns n/2+1 coefficients (unnormalized).
inline std::vector<std::complex<double>> rfft(std::vector<double> input) {
    const int n = static_cast<int>(input.size());
    std::vector<std::complex<double>> out(input.size() / 2 + 1);
    fftw_plan h;
    {
        std::lock_guard lock(planner_mutex());
        h = fftw_plan_dft_r2c_1d(n, input.data(), detail::as_fftw(out.data()), FFTW_ESTIMATE);
    }
    detail::Plan plan(h);
    fftw_execute(plan.handle);
    return out;
}

/// Inverse complex-to-real transform of length n from n/2+1 Hermitian
/// coefficients, scaled by 1/n so that irfft(rfft(x)) == x.
inline std::vector<double> irfft(std::vector<std::complex<double>> spectrum, std::size_t n) {
    if (spectrum.size() != n / 2 + 1) throw std::invalid_argument("irfft: spectrum size mismatch");
    std::vector<double> out(n);
    fftw_plan h;
    {
        std::lock_guard lock(planner_mutex());
        h = fftw_plan_dft_c2r_1d(static_cast<int>(n), detail::as_fftw(spectrum.data()), out.data(),
                                 FFTW_ESTIMATE);
    }
    detail::Plan plan(h);
    fftw_execute(plan.handle);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

/// In-place forward complex transform (unnormalized).
inline void dft(std::vector<std::complex<double>>& data) {
    fftw_plan h;
    {
        std::lock_guard lock(planner_mutex());
        h = fftw_plan_dft_1d(static_cast<int>(data.size()), detail::as_fftw(data.data()),
                             detail::as_fftw(data.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    detail::Plan plan(h);
    fftw_execute(plan.handle);
}

}  // namespace hvgplane::fft
