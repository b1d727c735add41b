#include "ilw/evolution.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ilw/fft.hpp"

namespace ilw {

namespace {

// 2/3-rule mask: zero the top third of the spectrum (|f| > n/3).
std::vector<double> dealias_mask(const Grid& g) {
    std::vector<double> mask(g.n_points, 1.0);
    for (int i = 0; i < g.n_points; ++i)
        if (3 * std::abs(g.freqs[i]) > g.n_points) mask[i] = 0.0;
    return mask;
}

struct Stepper {
    GridPtr grid;
    std::vector<double> omega;   // dispersion Omega(k), modes advance e^{i Omega t}
    bool dealias;
    bool linear_only;
    Integrator integrator;
    double dt;

    std::vector<double> mask{};
    // Integrating-factor propagators e^{i Omega dt} and e^{i Omega dt/2}.
    std::vector<cplx> e_full{}, e_half{};
    // ETD coefficients (dt*phi-functions at Omega*dt and Omega*dt/2).
    std::vector<cplx> etd_q{}, etd_f1{}, etd_f2{}, etd_f3{};

    // -1/2 dx(u^2) evaluated spectrally from spectral input.
    std::vector<cplx> nonlinear(const std::vector<cplx>& uh) const {
        const Grid& g = *grid;
        const int n = g.n_points;
        std::vector<cplx> w(n);
        for (int i = 0; i < n; ++i) w[i] = dealias ? uh[i] * mask[i] : uh[i];
        // to physical: inverse = backward FFT of sign/L-adjusted coefficients
        SpectralField s{grid};
        s.coefficients = std::move(w);
        ComplexField phys = inverse_transform_complex(s);
        for (auto& v : phys.samples) v *= v;
        SpectralField sq = transform(phys);
        std::vector<cplx> out(n);
        for (int i = 0; i < n; ++i) {
            cplx d = cplx{0.0, -0.5 * g.wavenumbers[i]} * sq.coefficients[i];
            out[i] = dealias ? d * mask[i] : d;
        }
        return out;
    }

    void prepare() {
        const int n = grid->n_points;
        mask = dealias_mask(*grid);
        e_full.resize(n);
        e_half.resize(n);
        for (int i = 0; i < n; ++i) {
            e_full[i] = std::exp(cplx{0.0, omega[i] * dt});
            e_half[i] = std::exp(cplx{0.0, omega[i] * dt * 0.5});
        }
        if (integrator == Integrator::etd_rk4) prepare_etd();
    }

    // Kassam-Trefethen contour evaluation of the phi-function combinations:
    // averaging over a unit circle around each z = i*Omega*dt removes the
    // cancellation that plagues the closed forms near z = 0.
    void prepare_etd() {
        const int n = grid->n_points;
        constexpr int M = 32;
        etd_q.assign(n, cplx{});
        etd_f1.assign(n, cplx{});
        etd_f2.assign(n, cplx{});
        etd_f3.assign(n, cplx{});
        for (int i = 0; i < n; ++i) {
            cplx z0{0.0, omega[i] * dt};
            cplx q{}, f1{}, f2{}, f3{};
            for (int m = 0; m < M; ++m) {
                double th = std::numbers::pi * (m + 0.5) / M * 2.0;
                cplx z = z0 + std::exp(cplx{0.0, th});
                cplx ez = std::exp(z), z2 = z * z, z3 = z2 * z;
                q += (std::exp(0.5 * z) - 1.0) / z;
                f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
                f2 += (2.0 + z + ez * (-2.0 + z)) / z3;
                f3 += (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
            }
            etd_q[i] = dt * q / double(M);
            etd_f1[i] = dt * f1 / double(M);
            etd_f2[i] = 2.0 * dt * f2 / double(M);
            etd_f3[i] = dt * f3 / double(M);
        }
    }

    std::vector<cplx> advance(const std::vector<cplx>& uh) const {
        const int n = grid->n_points;
        if (linear_only) {
            std::vector<cplx> out(n);
            for (int i = 0; i < n; ++i) out[i] = e_full[i] * uh[i];
            return out;
        }
        return integrator == Integrator::etd_rk4 ? advance_etd(uh) : advance_ifrk4(uh);
    }

    std::vector<cplx> advance_ifrk4(const std::vector<cplx>& uh) const {
        const int n = grid->n_points;
        std::vector<cplx> n1 = nonlinear(uh);
        std::vector<cplx> stage(n);
        for (int i = 0; i < n; ++i) stage[i] = e_half[i] * (uh[i] + 0.5 * dt * n1[i]);
        std::vector<cplx> n2 = nonlinear(stage);
        for (int i = 0; i < n; ++i) stage[i] = e_half[i] * uh[i] + 0.5 * dt * n2[i];
        std::vector<cplx> n3 = nonlinear(stage);
        for (int i = 0; i < n; ++i) stage[i] = e_full[i] * uh[i] + dt * e_half[i] * n3[i];
        std::vector<cplx> n4 = nonlinear(stage);
        std::vector<cplx> out(n);
        for (int i = 0; i < n; ++i)
            out[i] = e_full[i] * uh[i] +
                     (dt / 6.0) * (e_full[i] * n1[i] +
                                   2.0 * e_half[i] * (n2[i] + n3[i]) + n4[i]);
        return out;
    }

    std::vector<cplx> advance_etd(const std::vector<cplx>& uh) const {
        const int n = grid->n_points;
        std::vector<cplx> nu = nonlinear(uh);
        std::vector<cplx> a(n), b(n), c(n);
        for (int i = 0; i < n; ++i) a[i] = e_half[i] * uh[i] + etd_q[i] * nu[i];
        std::vector<cplx> na = nonlinear(a);
        for (int i = 0; i < n; ++i) b[i] = e_half[i] * uh[i] + etd_q[i] * na[i];
        std::vector<cplx> nb = nonlinear(b);
        for (int i = 0; i < n; ++i) c[i] = e_half[i] * a[i] + etd_q[i] * (2.0 * nb[i] - nu[i]);
        std::vector<cplx> nc = nonlinear(c);
        std::vector<cplx> out(n);
        for (int i = 0; i < n; ++i)
            out[i] = e_full[i] * uh[i] + etd_f1[i] * nu[i] +
                     etd_f2[i] * (na[i] + nb[i]) + etd_f3[i] * nc[i];
        return out;
    }
};

std::vector<double> ilw_dispersion(const ModelParams& p, const Grid& g) {
    std::vector<double> w(g.n_points);
    for (int i = 0; i < g.n_points; ++i) w[i] = symbol_omega(p, g.wavenumbers[i]);
    w[g.nyquist_index()] = 0.0;  // odd symbol, no partner mode
    return w;
}

std::vector<double> bo_dispersion(const Grid& g) {
    std::vector<double> w(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        double k = g.wavenumbers[i];
        w[i] = k * std::abs(k);
    }
    w[g.nyquist_index()] = 0.0;
    return w;
}

std::vector<double> kdv_dispersion(const Grid& g) {
    std::vector<double> w(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        double k = g.wavenumbers[i];
        w[i] = k * k * k;
    }
    w[g.nyquist_index()] = 0.0;
    return w;
}

void check_finite(const std::vector<cplx>& uh, double t) {
    for (const auto& c : uh)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            std::ostringstream msg;
            msg << "evolution aborted at t = " << t
                << ": non-finite field (blow-up or step size too large)";
            throw std::runtime_error(msg.str());
        }
}

RealField to_real(GridPtr grid, const std::vector<cplx>& uh, double t) {
    SpectralField s{grid};
    s.coefficients = uh;
    ComplexField c = inverse_transform_complex(s);
    RealField out(grid, t);
    for (int i = 0; i < grid->n_points; ++i) out.samples[i] = c.samples[i].real();
    return out;
}

void validate(const EvolutionConfig& config, const RealField& u0) {
    if (!config.grid) throw std::invalid_argument("evolve: config has no grid");
    if (!same_grid(*config.grid, *u0.grid))
        throw std::invalid_argument("evolve: initial datum is on a different grid");
    if (!(config.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (config.t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");
    if (config.checkpoint_stride < 1)
        throw std::invalid_argument("evolve: checkpoint_stride must be >= 1");
}

Trajectory run(const EvolutionConfig& config, const RealField& u0,
               std::vector<double> omega) {
    validate(config, u0);
    const Grid& g = *config.grid;

    Stepper st{config.grid, std::move(omega), config.dealias, config.linear_only,
               config.integrator, config.dt};
    st.prepare();

    Trajectory traj;
    traj.config = config;

    // Advisory nonlinear step-size bound dt <= h/(pi max|u| + eps); violations
    // are recorded, not fatal (the exact linear propagator absorbs stiffness).
    auto guard = [&](const RealField& u, double t) {
        double bound = g.spacing / (std::numbers::pi * max_norm(u) + 1e-30);
        if (config.dt > bound && !config.linear_only) {
            std::ostringstream msg;
            msg << "t=" << t << ": dt=" << config.dt
                << " exceeds advisory nonlinear bound " << bound;
            traj.warnings.push_back(msg.str());
        }
        double bm = boundary_mass_fraction(u);
        if (bm > 1e-6) {
            std::ostringstream msg;
            msg << "t=" << t << ": boundary mass fraction " << bm
                << " exceeds 1e-6 (domain too small for this run)";
            traj.warnings.push_back(msg.str());
        }
    };

    const long n_steps = std::lround(config.t_end / config.dt);
    std::vector<cplx> uh = transform(u0).coefficients;

    auto record = [&](long step_idx) {
        double t = u0.time + step_idx * config.dt;
        // the first checkpoint is the initial datum itself, bit for bit
        RealField u = step_idx == 0 ? u0 : to_real(config.grid, uh, t);
        guard(u, t);
        traj.times.push_back(t);
        traj.checkpoints.push_back(std::move(u));
        if (config.capture_neighbors) {
            traj.before.emplace_back();
            traj.after.emplace_back();
        }
    };

    record(0);
    std::vector<cplx> prev;
    long pending_after = -1;  // checkpoint index waiting for its +dt neighbor

    for (long s = 0; s < n_steps; ++s) {
        if (config.capture_neighbors) prev = uh;
        double t = u0.time + s * config.dt;
        uh = st.advance(uh);
        check_finite(uh, t + config.dt);
        ++traj.steps_taken;

        long done = s + 1;
        if (config.capture_neighbors && pending_after >= 0) {
            traj.after[pending_after] = to_real(config.grid, uh, u0.time + done * config.dt);
            pending_after = -1;
        }
        if (done % config.checkpoint_stride == 0 || done == n_steps) {
            record(done);
            if (config.capture_neighbors) {
                traj.before.back() =
                    to_real(config.grid, prev, u0.time + (done - 1) * config.dt);
                if (done < n_steps) pending_after = long(traj.checkpoints.size()) - 1;
            }
        }
    }
    return traj;
}

}  // namespace

RealField nonlinear_term(const RealField& u, bool dealias) {
    Stepper st{u.grid, std::vector<double>(u.grid->n_points, 0.0), dealias,
               false, Integrator::integrating_factor_rk4, 1.0};
    st.mask = dealias_mask(*u.grid);
    std::vector<cplx> nh = st.nonlinear(transform(u).coefficients);
    return to_real(u.grid, nh, u.time);
}

RealField step(const RealField& u, double t, const EvolutionConfig& config) {
    if (!same_grid(*config.grid, *u.grid))
        throw std::invalid_argument("step: field is on a different grid");
    Stepper st{config.grid, ilw_dispersion(config.params, *config.grid),
               config.dealias, config.linear_only, config.integrator, config.dt};
    st.prepare();
    std::vector<cplx> uh = st.advance(transform(u).coefficients);
    check_finite(uh, t + config.dt);
    return to_real(config.grid, uh, t + config.dt);
}

Trajectory evolve(const EvolutionConfig& config, const RealField& u0) {
    return run(config, u0, ilw_dispersion(config.params, *config.grid));
}

Trajectory evolve_bo(const EvolutionConfig& config, const RealField& u0) {
    return run(config, u0, bo_dispersion(*config.grid));
}

Trajectory evolve_kdv(const EvolutionConfig& config, const RealField& u0) {
    return run(config, u0, kdv_dispersion(*config.grid));
}

Trajectory kdv_rescale(const Trajectory& traj, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("kdv_rescale: delta must be positive");
    Trajectory out;
    out.config = traj.config;
    out.warnings = traj.warnings;
    out.steps_taken = traj.steps_taken;
    const double amp = 3.0 / delta;
    for (std::size_t i = 0; i < traj.checkpoints.size(); ++i) {
        double t = delta * traj.times[i] / 3.0;
        RealField v(traj.checkpoints[i].grid, t);
        for (int j = 0; j < v.grid->n_points; ++j)
            v.samples[j] = amp * traj.checkpoints[i].samples[j];
        out.times.push_back(t);
        out.checkpoints.push_back(std::move(v));
    }
    return out;
}

}  // namespace ilw
