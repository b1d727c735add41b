#include "ilw/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ilw {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Planning with a scratch buffer; FFTW_ESTIMATE plans do not touch data
    // and the same plan is reused with fftw_execute_dft on any aligned buffer.
    fftw_complex* buf = fftw_alloc_complex(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    cache[n] = p;
    return p;
}

}  // namespace

void fft_forward_raw(int n, cplx* data) {
    PlanPair p = get_plans(n);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void fft_backward_raw(int n, cplx* data) {
    PlanPair p = get_plans(n);
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

SpectralField transform(const RealField& u) {
    const Grid& g = *u.grid;
    SpectralField s(u.grid);
    for (int i = 0; i < g.n_points; ++i) s.coefficients[i] = u.samples[i];
    fft_forward_raw(g.n_points, s.coefficients.data());
    for (int i = 0; i < g.n_points; ++i) {
        double sign = (g.freqs[i] % 2 == 0) ? 1.0 : -1.0;
        s.coefficients[i] *= sign * g.spacing;
    }
    return s;
}

SpectralField transform(const ComplexField& u) {
    const Grid& g = *u.grid;
    SpectralField s(u.grid);
    s.coefficients = u.samples;
    fft_forward_raw(g.n_points, s.coefficients.data());
    for (int i = 0; i < g.n_points; ++i) {
        double sign = (g.freqs[i] % 2 == 0) ? 1.0 : -1.0;
        s.coefficients[i] *= sign * g.spacing;
    }
    return s;
}

ComplexField inverse_transform_complex(const SpectralField& s) {
    const Grid& g = *s.grid;
    ComplexField u(s.grid);
    for (int i = 0; i < g.n_points; ++i) {
        double sign = (g.freqs[i] % 2 == 0) ? 1.0 : -1.0;
        u.samples[i] = s.coefficients[i] * (sign / g.length);
    }
    fft_backward_raw(g.n_points, u.samples.data());
    return u;
}

RealField inverse_transform(const SpectralField& s) {
    ComplexField c = inverse_transform_complex(s);
    RealField u(s.grid);
    for (int i = 0; i < s.grid->n_points; ++i) u.samples[i] = c.samples[i].real();
    return u;
}

}  // namespace ilw
