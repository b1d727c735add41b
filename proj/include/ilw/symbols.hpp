#ifndef ILW_SYMBOLS_HPP
#define ILW_SYMBOLS_HPP

#include <cstdint>

namespace ilw {

struct ModelParams {
    double delta = 1.0;  // depth parameter, > 0
};

// Dispersion symbol Omega_delta(k) = k^2 coth(delta k) - k/delta: real, odd,
// with the removable singularity at k = 0 handled by a 3-term series in
// y = delta*k for |y| < 1e-3 (series truncation < 1e-15, coth cancellation at
// the switch < 1e-10).
double symbol_omega(const ModelParams& params, double k);

// Analytic derivative 2k coth(delta k) - delta k^2 csch^2(delta k) - 1/delta,
// even in k, Omega'(0) = 0.
double symbol_omega_prime(const ModelParams& params, double k);

// q(k) = sqrt(max(Omega'(k), 0)), even, nonnegative, q(0) = 0, q'(0+) = 1.
// Negative Omega' samples (none are expected) are clamped and counted.
double symbol_q(const ModelParams& params, double k);

// p(k) = sgn(k) q(k), odd.
double symbol_p(const ModelParams& params, double k);

// Clamp bookkeeping for symbol_q / symbol_p.
std::uint64_t clamped_omega_prime_count();
void reset_clamped_omega_prime_count();

}  // namespace ilw

#endif
