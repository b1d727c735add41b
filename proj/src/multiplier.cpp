#include "ilw/multiplier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "ilw/fft.hpp"

namespace ilw {

namespace {

// Index of the -k partner of mode i (i = 0 maps to itself, Nyquist has none).
int partner_index(const Grid& g, int i) { return i == 0 ? 0 : g.n_points - i; }

}  // namespace

Multiplier make_multiplier(GridPtr grid, std::vector<cplx> symbol, Parity parity,
                           Reality reality, std::string name) {
    const Grid& g = *grid;
    if (static_cast<int>(symbol.size()) != g.n_points)
        throw std::invalid_argument("make_multiplier: symbol size mismatch");

    const int nyq = g.nyquist_index();
    std::vector<cplx> sym(g.n_points);
    const double ps = (parity == Parity::even) ? 1.0 : -1.0;
    for (int i = 0; i < g.n_points; ++i) {
        if (i == nyq) {
            sym[i] = (parity == Parity::odd) ? cplx{0.0, 0.0} : symbol[i];
            continue;
        }
        sym[i] = 0.5 * (symbol[i] + ps * symbol[partner_index(g, i)]);
    }
    for (auto& s : sym) {
        if (reality == Reality::real)
            s = cplx{s.real(), 0.0};
        else
            s = cplx{0.0, s.imag()};
    }
    return Multiplier{std::move(grid), std::move(sym), parity, reality, std::move(name)};
}

namespace {

template <class F>
Multiplier from_function(GridPtr grid, F f, Parity p, Reality r, std::string name) {
    std::vector<cplx> sym(grid->n_points);
    for (int i = 0; i < grid->n_points; ++i) sym[i] = f(grid->wavenumbers[i]);
    return make_multiplier(std::move(grid), std::move(sym), p, r, std::move(name));
}

}  // namespace

Multiplier multiplier_identity(GridPtr grid) {
    return from_function(std::move(grid), [](double) { return cplx{1.0, 0.0}; },
                         Parity::even, Reality::real, "identity");
}

Multiplier multiplier_derivative(GridPtr grid) {
    return from_function(std::move(grid), [](double k) { return cplx{0.0, k}; },
                         Parity::odd, Reality::imaginary, "d/dx");
}

Multiplier multiplier_T_delta(const ModelParams& params, GridPtr grid) {
    const double d = params.delta;
    return from_function(
        std::move(grid),
        [d](double k) {
            if (k == 0.0) return cplx{0.0, 0.0};
            return cplx{0.0, 1.0 / std::tanh(d * k)};
        },
        Parity::odd, Reality::imaginary, "T_delta");
}

Multiplier multiplier_hilbert(GridPtr grid) {
    return from_function(
        std::move(grid),
        [](double k) { return cplx{0.0, k > 0.0 ? 1.0 : (k < 0.0 ? -1.0 : 0.0)}; },
        Parity::odd, Reality::imaginary, "H");
}

Multiplier multiplier_L(const ModelParams& params, GridPtr grid) {
    ModelParams mp = params;
    return from_function(
        std::move(grid),
        [mp](double k) {
            if (k == 0.0) return cplx{0.0, 0.0};
            return cplx{symbol_omega(mp, k) / k, 0.0};
        },
        Parity::even, Reality::real, "L");
}

Multiplier multiplier_L_dx(const ModelParams& params, GridPtr grid) {
    ModelParams mp = params;
    return from_function(std::move(grid),
                         [mp](double k) { return cplx{0.0, symbol_omega(mp, k)}; },
                         Parity::odd, Reality::imaginary, "L*d/dx");
}

Multiplier multiplier_J(double s, GridPtr grid) {
    return from_function(std::move(grid),
                         [s](double k) { return cplx{std::pow(1.0 + k * k, 0.5 * s), 0.0}; },
                         Parity::even, Reality::real, "J^s");
}

Multiplier multiplier_D(double s, GridPtr grid) {
    return from_function(std::move(grid),
                         [s](double k) { return cplx{std::pow(std::abs(k), s), 0.0}; },
                         Parity::even, Reality::real, "D^s");
}

Multiplier multiplier_q(const ModelParams& params, GridPtr grid) {
    ModelParams mp = params;
    return from_function(std::move(grid),
                         [mp](double k) { return cplx{symbol_q(mp, k), 0.0}; },
                         Parity::even, Reality::real, "q");
}

Multiplier multiplier_p(const ModelParams& params, GridPtr grid) {
    ModelParams mp = params;
    return from_function(std::move(grid),
                         [mp](double k) { return cplx{symbol_p(mp, k), 0.0}; },
                         Parity::odd, Reality::real, "p");
}

Multiplier multiplier_omega_prime(const ModelParams& params, GridPtr grid) {
    ModelParams mp = params;
    return from_function(std::move(grid),
                         [mp](double k) { return cplx{symbol_omega_prime(mp, k), 0.0}; },
                         Parity::even, Reality::real, "Omega'");
}

ComplexField apply_multiplier_complex(const Multiplier& m, const RealField& u) {
    if (!same_grid(*m.grid, *u.grid))
        throw std::invalid_argument("apply_multiplier: grid mismatch");
    SpectralField s = transform(u);
    for (int i = 0; i < u.grid->n_points; ++i) s.coefficients[i] *= m.symbol[i];
    ComplexField out = inverse_transform_complex(s);
    return out;
}

RealField apply_multiplier(const Multiplier& m, const RealField& u) {
    if (!m.preserves_realness())
        throw std::invalid_argument("apply_multiplier: symbol tags (" + m.name +
                                    ") do not guarantee a real result");
    ComplexField c = apply_multiplier_complex(m, u);
    RealField out(u.grid, u.time);
    for (int i = 0; i < u.grid->n_points; ++i) out.samples[i] = c.samples[i].real();
    return out;
}

RealField apply_T_delta(const ModelParams& params, const RealField& u) {
    return apply_multiplier(multiplier_T_delta(params, u.grid), u);
}

RealField apply_hilbert(const RealField& u) {
    return apply_multiplier(multiplier_hilbert(u.grid), u);
}

RealField apply_L(const ModelParams& params, const RealField& u) {
    return apply_multiplier(multiplier_L(params, u.grid), u);
}

RealField apply_J(double s, const RealField& u) {
    return apply_multiplier(multiplier_J(s, u.grid), u);
}

RealField apply_D(double s, const RealField& u) {
    return apply_multiplier(multiplier_D(s, u.grid), u);
}

RealField apply_derivative(const RealField& u) {
    return apply_multiplier(multiplier_derivative(u.grid), u);
}

RealField multiplier_weight_commutator(const Multiplier& m, const RealField& w,
                                       const RealField& u) {
    require_same_grid(w, u);
    RealField wu(u.grid, u.time);
    for (int i = 0; i < u.grid->n_points; ++i) wu.samples[i] = w.samples[i] * u.samples[i];
    RealField a = apply_multiplier(m, wu);
    RealField mu = apply_multiplier(m, u);
    RealField out(u.grid, u.time);
    for (int i = 0; i < u.grid->n_points; ++i)
        out.samples[i] = a.samples[i] - w.samples[i] * mu.samples[i];
    return out;
}

bool quadrature_oracle_contaminated(const RealField& u) {
    return boundary_mass_fraction(u) > 1e-8;
}

double quadrature_T_oracle(const ModelParams& params, const RealField& u, int node_index) {
    const Grid& g = *u.grid;
    const int n = g.n_points;
    const int j = node_index;
    if (j < 0 || j >= n) throw std::out_of_range("quadrature_T_oracle: node index");
    const double h = g.spacing;
    const double L = g.length;
    const double d = params.delta;
    const double pi = std::numbers::pi;

    // Periodic convolution kernel with sine coefficients coth(2 pi delta m/L):
    //   K(s) = -(2/L) sum_m coth(2 pi delta m / L) sin(2 pi m s / L)
    //        = -cot(pi s/L)/L - (4/L) sum_m q^{2m}/(1-q^{2m}) sin(2 pi m s/L),
    // q = e^{-2 pi delta/L}. The cot term resums the square-wave part of coth
    // and carries the -1/(pi s) singularity; the remainder converges
    // geometrically. Evaluated by series summation, never through the FFT.
    // Cached per (n, L, delta) since the test batteries revisit nodes.
    static std::mutex cache_mutex;
    static std::map<std::tuple<int, double, double>, std::vector<double>> cache;
    const std::vector<double>* kern;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto& entry = cache[{n, L, d}];
        if (entry.empty()) {
            entry.resize(n / 2, 0.0);  // entry[r] = K(r h), r = 1 .. n/2-1
            const double q2 = std::exp(-4.0 * pi * d / L);
            int terms = static_cast<int>(std::ceil(40.0 * L / (4.0 * pi * d))) + 8;
            for (int r = 1; r < n / 2; ++r) {
                double s = r * h;
                double k = -std::cos(pi * s / L) / std::sin(pi * s / L) / L;
                double q2m = 1.0;
                for (int m = 1; m <= terms; ++m) {
                    q2m *= q2;
                    if (q2m < 1e-18) break;
                    k -= (4.0 / L) * q2m / (1.0 - q2m) * std::sin(2.0 * pi * m * s / L);
                }
                entry[r] = k;
            }
        }
        kern = &entry;
    }

    // Symmetric pairs at x_j -+ r h (periodic indexing): the odd kernel
    // cancels against the even part of u about x_j, leaving a smooth even
    // integrand, so the trapezoid pair sum converges spectrally. The
    // half-period offset drops out (sin(pi m) = 0 for every mode).
    double acc = 0.0;
    for (int r = 1; r < n / 2; ++r) {
        acc += (*kern)[r] * (u.samples[(j - r + n) % n] - u.samples[(j + r) % n]);
    }

    // Singular node: kernel*(u(y)-u(x)) -> -(2 delta/pi) u'(x) as y -> x.
    // 6th-order centered finite difference keeps the oracle off the FFT path.
    auto at = [&](int i) { return u.samples[((i % n) + n) % n]; };
    double up = (45.0 * (at(j + 1) - at(j - 1)) - 9.0 * (at(j + 2) - at(j - 2)) +
                 (at(j + 3) - at(j - 3))) /
                (60.0 * h);

    return h * acc + h * up / pi;
}

double weighted_norm(const RealField& u, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("weighted_norm: alpha must be >= 0");
    double s = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double x = u.grid->nodes[i];
        s += std::pow(1.0 + x * x, alpha) * u.samples[i] * u.samples[i];
    }
    return std::sqrt(s * u.grid->spacing);
}

}  // namespace ilw
