#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ilw/evolution.hpp"
#include "ilw/fft.hpp"
#include "ilw/grid.hpp"
#include "ilw/multiplier.hpp"
#include "ilw/symbols.hpp"

using namespace ilw;
constexpr double pi = std::numbers::pi;

namespace {

RealField gaussian(GridPtr g, double amp, double width, double center = 0.0) {
    RealField u(g);
    for (int i = 0; i < g->n_points; ++i) {
        double x = g->nodes[i] - center;
        u.samples[i] = amp * std::exp(-(x * x) / (width * width));
    }
    return u;
}

double rel_l2_diff(const RealField& a, const RealField& b) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < a.grid->n_points; ++i) {
        double d = a.samples[i] - b.samples[i];
        num += d * d;
        den += b.samples[i] * b.samples[i];
    }
    return std::sqrt(num / den);
}

RealField reflect(const RealField& u) {
    int n = u.grid->n_points;
    RealField r(u.grid, u.time);
    for (int i = 0; i < n; ++i) r.samples[i] = u.samples[(n - i) % n];
    return r;
}

}  // namespace

TEST_CASE("nonlinear term closed forms") {
    auto g = build_grid(256, 2.0 * pi);

    RealField c(g);
    for (auto& v : c.samples) v = 2.7;
    RealField nc = nonlinear_term(c, true);
    for (double v : nc.samples) CHECK(std::abs(v) < 1e-12);

    double k = 5.0;
    RealField s(g);
    for (int i = 0; i < g->n_points; ++i) s.samples[i] = std::sin(k * g->nodes[i]);
    RealField ns = nonlinear_term(s, true);
    for (int i = 0; i < g->n_points; ++i)
        CHECK(ns.samples[i] ==
              doctest::Approx(-(k / 2.0) * std::sin(2.0 * k * g->nodes[i])).epsilon(1e-10));

    // exact derivative of a periodic quantity: zero mean
    RealField u = gaussian(g, 1.0, 0.8);
    CHECK(std::abs(integral(nonlinear_term(u, true))) < 1e-12);
}

TEST_CASE("dealiasing touches only the top third of the spectrum") {
    auto g = build_grid(192, 2.0 * pi);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    RealField u(g);
    for (int m = 1; m <= 40; ++m) {  // band-limited well under the 2/3 cutoff? no: up to 40 of 96
        double a = amp(rng), b = amp(rng);
        for (int i = 0; i < g->n_points; ++i)
            u.samples[i] += a * std::cos(m * g->nodes[i]) + b * std::sin(m * g->nodes[i]);
    }
    SpectralField clean = transform(nonlinear_term(u, true));
    SpectralField raw = transform(nonlinear_term(u, false));
    const int cutoff = g->n_points / 3;
    for (int i = 0; i < g->n_points; ++i) {
        if (std::abs(g->freqs[i]) <= cutoff)
            CHECK(std::abs(clean.coefficients[i] - raw.coefficients[i]) < 1e-9);
        else
            CHECK(std::abs(clean.coefficients[i]) < 1e-12);
    }
}

TEST_CASE("step basics") {
    auto g = build_grid(256, 50.0);
    EvolutionConfig cfg{ModelParams{1.0}, g, 1e-2, 1.0};

    RealField zero(g);
    RealField z1 = step(zero, 0.0, cfg);
    for (double v : z1.samples) CHECK(v == 0.0);
}

TEST_CASE("linear-only step is the exact unitary multiplier") {
    auto g = build_grid(256, 50.0);
    ModelParams p{1.3};
    EvolutionConfig cfg{p, g, 7e-3, 1.0};
    cfg.linear_only = true;

    RealField u = gaussian(g, 1.0, 3.0, 2.0);
    double n0 = l2_norm(u);
    RealField v = step(u, 0.0, cfg);
    CHECK(std::abs(l2_norm(v) - n0) / n0 < 1e-13);

    // single mode: phase advances by exactly Omega(k) dt
    double k = 2.0 * pi * 7 / g->length;
    RealField mode(g);
    for (int i = 0; i < g->n_points; ++i) mode.samples[i] = std::cos(k * g->nodes[i]);
    RealField moved = step(mode, 0.0, cfg);
    double ph = symbol_omega(p, k) * cfg.dt;
    // e^{i Omega t} on the +-k pair of cos(kx) gives cos(kx + Omega t)... with
    // the +k mode multiplied by e^{+i Omega(k) t}: cos(kx) -> cos(kx - Omega t)
    // in x-space is equivalent to evaluating the scalar oracle mode-wise:
    SpectralField sm = transform(mode), sv = transform(moved);
    for (int i = 0; i < g->n_points; ++i) {
        if (std::abs(sm.coefficients[i]) < 1e-8) continue;
        cplx ratio = sv.coefficients[i] / sm.coefficients[i];
        cplx oracle = std::exp(cplx{0.0, symbol_omega(p, g->wavenumbers[i]) * cfg.dt});
        CHECK(std::abs(ratio - oracle) < 1e-13);
    }
    (void)ph;
}

TEST_CASE("linear unitarity and reversibility over many steps") {
    auto g = build_grid(256, 80.0);
    EvolutionConfig cfg{ModelParams{0.8}, g, 5e-3, 50.0};  // 10^4 steps
    cfg.linear_only = true;
    cfg.checkpoint_stride = 10000;
    RealField u = gaussian(g, 1.0, 4.0);
    Trajectory traj = evolve(cfg, u);
    CHECK(traj.steps_taken == 10000);
    double drift = std::abs(l2_norm(traj.checkpoints.back()) - l2_norm(u)) / l2_norm(u);
    CHECK(drift < 1e-12);

    // Omega is odd, so reflecting in x conjugates the linear flow: forward,
    // reflect, forward again, reflect returns the initial field.
    Trajectory back = evolve(cfg, reflect(traj.checkpoints.back()));
    CHECK(rel_l2_diff(reflect(back.checkpoints.back()), u) < 1e-12);
}

TEST_CASE("evolve handles t_end = 0 and conserves mass and momentum") {
    auto g = build_grid(1024, 200.0);
    EvolutionConfig cfg{ModelParams{1.0}, g, 1e-3, 0.0};
    RealField u0 = gaussian(g, 1.0, 4.0);
    Trajectory t0 = evolve(cfg, u0);
    CHECK(t0.checkpoints.size() == 1);
    CHECK(rel_l2_diff(t0.checkpoints[0], u0) == 0.0);

    cfg.t_end = 1.0;
    cfg.checkpoint_stride = 250;
    Trajectory traj = evolve(cfg, u0);
    double m0 = integral(u0), e0 = l2_norm_sq(u0);
    for (const auto& u : traj.checkpoints) {
        CHECK(std::abs(integral(u) - m0) < 1e-10);
        CHECK(std::abs(l2_norm_sq(u) - e0) / e0 < 1e-10);
    }
    CHECK(traj.warnings.empty());
}

TEST_CASE("fourth-order convergence in dt") {
    auto g = build_grid(256, 50.0);
    RealField u0 = gaussian(g, 1.0, 2.5);
    for (Integrator integ : {Integrator::integrating_factor_rk4, Integrator::etd_rk4}) {
        auto final_state = [&](double dt) {
            EvolutionConfig cfg{ModelParams{1.0}, g, dt, 2.0};
            cfg.integrator = integ;
            cfg.checkpoint_stride = 1 << 30;
            return evolve(cfg, u0).checkpoints.back();
        };
        RealField ref = final_state(0.05 / 8.0);
        double e1 = rel_l2_diff(final_state(0.05), ref);
        double e2 = rel_l2_diff(final_state(0.025), ref);
        CHECK(e1 > 1e-10);  // above roundoff so the ratio is meaningful
        double factor = e1 / e2;
        CHECK(factor > 12.0);
        CHECK(factor < 20.0);
    }
}

TEST_CASE("integrators agree with each other") {
    auto g = build_grid(256, 50.0);
    RealField u0 = gaussian(g, 1.0, 2.5);
    EvolutionConfig a{ModelParams{1.0}, g, 1e-3, 1.0};
    a.checkpoint_stride = 1 << 30;
    EvolutionConfig b = a;
    b.integrator = Integrator::etd_rk4;
    CHECK(rel_l2_diff(evolve(a, u0).checkpoints.back(), evolve(b, u0).checkpoints.back()) <
          1e-10);
}

TEST_CASE("spectral tail stays empty for smooth data") {
    auto g = build_grid(256, 50.0);
    EvolutionConfig cfg{ModelParams{1.0}, g, 1e-3, 2.0};
    cfg.checkpoint_stride = 1 << 30;
    Trajectory traj = evolve(cfg, gaussian(g, 1.0, 3.0));
    SpectralField s = transform(traj.checkpoints.back());
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < g->n_points; ++i) {
        double e = std::norm(s.coefficients[i]);
        total += e;
        if (3 * std::abs(g->freqs[i]) > g->n_points) tail += e;
    }
    CHECK(tail / total < 1e-10);
}

TEST_CASE("NaN abort on absurd step size") {
    auto g = build_grid(128, 20.0);
    EvolutionConfig cfg{ModelParams{1.0}, g, 50.0, 5000.0};
    cfg.checkpoint_stride = 1 << 30;
    RealField u0 = gaussian(g, 20.0, 1.0);
    CHECK_THROWS_AS(evolve(cfg, u0), std::runtime_error);
}

TEST_CASE("advisory warnings: step-size bound and boundary mass") {
    auto g = build_grid(128, 20.0);
    EvolutionConfig cfg{ModelParams{1.0}, g, 0.05, 0.05};
    RealField u0 = gaussian(g, 10.0, 1.0);  // bound = h/(pi*10) ~ 0.005 < dt
    Trajectory traj = evolve(cfg, u0);
    CHECK(!traj.warnings.empty());

    EvolutionConfig cfg2{ModelParams{1.0}, g, 1e-3, 0.0};
    Trajectory edge = evolve(cfg2, gaussian(g, 1.0, 2.0, 9.5));
    CHECK(!edge.warnings.empty());
}

TEST_CASE("Benjamin-Ono flow and the deep-water limit") {
    auto g = build_grid(512, 100.0);
    RealField zero(g);
    EvolutionConfig cfg{ModelParams{50.0}, g, 1e-3, 1.0};
    cfg.checkpoint_stride = 1 << 30;
    Trajectory z = evolve_bo(cfg, zero);
    for (double v : z.checkpoints.back().samples) CHECK(v == 0.0);

    RealField u0 = gaussian(g, 1.0, 3.0);
    RealField ilw = evolve(cfg, u0).checkpoints.back();
    RealField bo = evolve_bo(cfg, u0).checkpoints.back();
    CHECK(rel_l2_diff(ilw, bo) < 0.05);
}

TEST_CASE("KdV linear mode phase") {
    auto g = build_grid(128, 2.0 * pi);
    EvolutionConfig cfg{ModelParams{1.0}, g, 1e-3, 0.1};
    cfg.linear_only = true;
    cfg.checkpoint_stride = 1 << 30;
    double k = 3.0;
    RealField mode(g);
    for (int i = 0; i < g->n_points; ++i) mode.samples[i] = std::cos(k * g->nodes[i]);
    RealField out = evolve_kdv(cfg, mode).checkpoints.back();
    SpectralField sm = transform(mode), so = transform(out);
    for (int i = 0; i < g->n_points; ++i) {
        if (std::abs(sm.coefficients[i]) < 1e-8) continue;
        double kk = g->wavenumbers[i];
        cplx oracle = std::exp(cplx{0.0, kk * kk * kk * 0.1});
        CHECK(std::abs(so.coefficients[i] / sm.coefficients[i] - oracle) < 1e-11);
    }
}

TEST_CASE("shallow-water rescaling toward KdV") {
    auto g = build_grid(512, 100.0);
    RealField w = gaussian(g, 0.5, 4.0);

    // time remap: output time 1.0 reads the ILW checkpoint at input time 3/delta
    {
        EvolutionConfig cfg{ModelParams{0.1}, g, 0.1, 30.0};
        cfg.checkpoint_stride = 300;
        cfg.linear_only = true;
        Trajectory tr = kdv_rescale(evolve(cfg, w), 0.1);
        CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-12));
    }

    EvolutionConfig kcfg{ModelParams{1.0}, g, 1e-3, 1.0};
    kcfg.checkpoint_stride = 1 << 30;
    RealField kdv = evolve_kdv(kcfg, w).checkpoints.back();

    auto gap = [&](double delta) {
        RealField u0(g);
        for (int i = 0; i < g->n_points; ++i) u0.samples[i] = delta / 3.0 * w.samples[i];
        EvolutionConfig cfg{ModelParams{delta}, g, 5e-3, 3.0 / delta};
        cfg.checkpoint_stride = 1 << 30;
        Trajectory v = kdv_rescale(evolve(cfg, u0), delta);
        return rel_l2_diff(v.checkpoints.back(), kdv);
    };
    double g01 = gap(0.1), g03 = gap(0.3);
    CHECK(g01 < g03);
    CHECK(g01 < 0.05);
}
