#include "ilw/symbols.hpp"

#include <atomic>
#include <cmath>

namespace ilw {

namespace {
std::atomic<std::uint64_t> clamp_count{0};
constexpr double series_threshold = 1e-3;  // in y = delta*k
}  // namespace

double symbol_omega(const ModelParams& params, double k) {
    const double d = params.delta;
    const double y = d * k;
    if (std::abs(y) < series_threshold) {
        // (y^2 coth y - y)/delta^2 = (y^3/3 - y^5/45 + 2 y^7/945)/delta^2
        const double y2 = y * y;
        return y * y2 * (1.0 / 3.0 + y2 * (-1.0 / 45.0 + y2 * (2.0 / 945.0))) / (d * d);
    }
    return k * k / std::tanh(y) - k / d;
}

double symbol_omega_prime(const ModelParams& params, double k) {
    const double d = params.delta;
    const double y = d * k;
    if (std::abs(y) < series_threshold) {
        // (y^2 - y^4/9 + 2 y^6/135)/delta
        const double y2 = y * y;
        return y2 * (1.0 + y2 * (-1.0 / 9.0 + y2 * (2.0 / 135.0))) / d;
    }
    if (std::abs(y) > 350.0) {
        // coth -> sgn, csch^2 underflows
        return 2.0 * std::abs(k) - 1.0 / d;
    }
    const double coth = 1.0 / std::tanh(y);
    const double sh = std::sinh(y);
    return 2.0 * k * coth - d * k * k / (sh * sh) - 1.0 / d;
}

double symbol_q(const ModelParams& params, double k) {
    double op = symbol_omega_prime(params, k);
    if (op < 0.0) {
        clamp_count.fetch_add(1, std::memory_order_relaxed);
        op = 0.0;
    }
    return std::sqrt(op);
}

double symbol_p(const ModelParams& params, double k) {
    double q = symbol_q(params, k);
    return k < 0.0 ? -q : (k > 0.0 ? q : 0.0);
}

std::uint64_t clamped_omega_prime_count() { return clamp_count.load(); }
void reset_clamped_omega_prime_count() { clamp_count.store(0); }

}  // namespace ilw
