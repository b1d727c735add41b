#include "ilw/diagnostics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "ilw/multiplier.hpp"

namespace ilw {

double invariant_I1(const RealField& u) { return integral(u); }

double invariant_I2(const RealField& u) { return l2_norm_sq(u); }

double invariant_I3(const ModelParams& params, const RealField& u) {
    RealField tux = apply_T_delta(params, apply_derivative(u));
    const double inv_d = 1.0 / params.delta;
    double acc = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double v = u.samples[i];
        acc += v * tux.samples[i] + v * v * inv_d + v * v * v / 3.0;
    }
    return acc * u.grid->spacing;
}

double invariant_I4(const ModelParams& params, const RealField& u) {
    RealField ux = apply_derivative(u);
    RealField tux = apply_T_delta(params, ux);
    const double inv_d = 1.0 / params.delta;
    double acc = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double v = u.samples[i];
        double d = ux.samples[i];
        double w = tux.samples[i];
        acc += 0.25 * v * v * v * v + 1.5 * v * v * w + 0.5 * d * d + 1.5 * w * w +
               inv_d * (1.5 * v * v * v + 4.5 * v * w) + 1.5 * inv_d * inv_d * v * v;
    }
    return acc * u.grid->spacing;
}

double region_mass(const RealField& u, double t, const VirialParams& p, Region region) {
    const Grid& g = *u.grid;
    const double half = 0.5 * g.length;
    double lo = 0.0, hi = 0.0;
    if (region == Region::right_of_ray) {
        lo = p.c0 * t + p.c1;
        hi = half;
        if (lo <= -half || lo >= half)
            throw std::domain_error("ray cut x = c0 t + c1 lies outside the torus");
    } else {
        if (!(t > 1.0))
            throw std::domain_error("ball-region masses are defined for t > 1 only");
        double radius = std::pow(t, p.b);
        double center = region == Region::ball_shifted ? std::pow(t, p.m) : 0.0;
        lo = center - radius;
        hi = center + radius;
        if (lo <= -half || hi >= half)
            throw std::domain_error("ball region does not fit inside the torus");
    }
    double acc = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        double x = g.nodes[i];
        bool inside = region == Region::right_of_ray ? (x >= lo) : (x > lo && x < hi);
        if (inside) acc += u.samples[i] * u.samples[i];
    }
    return acc * g.spacing;
}

namespace {

void require_functional_time(double t) {
    if (!(t >= 10.0))
        throw std::domain_error("decay functionals are defined for t >= 10 only");
}

}  // namespace

double functional_I(const WeightFamily& w, const RealField& u, double t,
                    const VirialParams& p) {
    return functional_I_rho(w, u, t, p, 0);
}

double functional_I_rho(const WeightFamily& w, const RealField& u, double t,
                        const VirialParams& p, int sign) {
    require_functional_time(t);
    const double mu1 = scale_mu1(p, t);
    const double mu1q = std::pow(mu1, p.q_exp);
    const double mu = scale_mu(p, t);
    const double shift = sign == 0 ? 0.0 : (sign > 0 ? 1.0 : -1.0) * std::pow(t, p.m);
    double acc = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double x = u.grid->nodes[i] - shift;
        acc += u.samples[i] * w.psi_scaled(p.sigma, x / mu1) * w.phi_scaled(p.lambda, x / mu1q);
    }
    return acc * u.grid->spacing / mu;
}

double functional_J(const WeightFamily& w, const RealField& u, double t,
                    const VirialParams& p) {
    require_functional_time(t);
    const double mu1 = scale_mu1(p, t);
    const double mu = scale_mu(p, t);
    double acc = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double x = u.grid->nodes[i];
        acc += u.samples[i] * u.samples[i] * w.psi_scaled(p.sigma, x / mu1);
    }
    return acc * u.grid->spacing / mu;
}

double functional_envelope(const VirialParams& p, double t) {
    double rate = -0.5 * (2.0 - 2.0 * p.b - p.b * p.q_exp);
    double log_rate = -0.5 * (4.0 + p.q_exp);
    return std::pow(t, rate) * std::pow(std::log(t), log_rate);
}

SmoothingFlux smoothing_flux(const ModelParams& params, const RealField& u, double alpha) {
    const Grid& g = *u.grid;
    ComplexField pu = apply_multiplier_complex(multiplier_p(params, u.grid), u);
    RealField p2u = apply_multiplier(multiplier_omega_prime(params, u.grid), u);
    SmoothingFlux flux;
    for (int i = 0; i < g.n_points; ++i) {
        double x2 = g.nodes[i] * g.nodes[i];
        flux.half += std::pow(1.0 + x2, alpha - 0.5) * std::norm(pu.samples[i]);
        flux.full += std::pow(1.0 + x2, alpha - 1.0) * p2u.samples[i] * p2u.samples[i];
    }
    flux.half *= g.spacing;
    flux.full *= g.spacing;
    return flux;
}

namespace {

struct WeightFields {
    RealField w, d1, d2, d3;  // weight and first three x-derivatives
};

WeightFields sample_weight(GridPtr grid, const std::function<double(double)>& w0,
                           const std::function<double(double)>& w1,
                           const std::function<double(double)>& w2,
                           const std::function<double(double)>& w3) {
    WeightFields f{RealField(grid), RealField(grid), RealField(grid), RealField(grid)};
    for (int i = 0; i < grid->n_points; ++i) {
        double x = grid->nodes[i];
        f.w.samples[i] = w0(x);
        f.d1.samples[i] = w1(x);
        f.d2.samples[i] = w2(x);
        f.d3.samples[i] = w3(x);
    }
    return f;
}

}  // namespace

VirialTerms virial_decomposition(const ModelParams& params, const VirialParams& vp,
                                 const WeightFamily& w, const Trajectory& traj,
                                 std::size_t index) {
    if (index >= traj.checkpoints.size())
        throw std::invalid_argument("checkpoint index out of range");
    const RealField& u = traj.checkpoints[index];
    const double t = traj.times[index];
    if (!(t > 0.0))
        throw std::domain_error("the ray weight chi((x-c1)/(c0 t)) needs t > 0");
    if (index >= traj.before.size() || index >= traj.after.size() ||
        !traj.before[index].grid || !traj.after[index].grid)
        throw std::invalid_argument(
            "missing neighbor checkpoints: run with capture_neighbors and use an "
            "interior checkpoint");

    GridPtr grid = u.grid;
    const Grid& g = *grid;
    const double h = g.spacing;
    const double scale = 1.0 / (vp.c0 * t);

    RealField phi(grid), phi_x(grid), phi_t(grid);
    for (int i = 0; i < g.n_points; ++i) {
        double x = g.nodes[i] - vp.c1;
        double s = x * scale;
        phi.samples[i] = w.chi(s);
        phi_x.samples[i] = w.chi_prime(s) * scale;
        phi_t.samples[i] = -w.chi_prime(s) * x * scale / t;
    }

    VirialTerms out;

    // Left side: centered difference of int u^2 phi over the one-step
    // neighbors, with the weight evaluated at the matching times.
    const double dt = traj.config.dt;
    double wm = 0.0, wp = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        double x = g.nodes[i] - vp.c1;
        double um = traj.before[index].samples[i];
        double up = traj.after[index].samples[i];
        wm += um * um * w.chi(x / (vp.c0 * (t - dt)));
        wp += up * up * w.chi(x / (vp.c0 * (t + dt)));
    }
    out.lhs_fd = (wp - wm) * h / (2.0 * dt);

    // Transport coefficient by projection of the dispersive commutator onto
    // phi_x Omega'(dx)u, then the term-by-term decomposition.
    Multiplier q_mult = multiplier_q(params, grid);
    RealField qu = apply_multiplier(q_mult, u);
    RealField comm_L = multiplier_weight_commutator(multiplier_L_dx(params, grid), phi, u);
    RealField omega_prime_u = apply_multiplier(multiplier_omega_prime(params, grid), u);
    double num = 0.0, den = 0.0;
    std::vector<double> gvec(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        gvec[i] = phi_x.samples[i] * omega_prime_u.samples[i];
        num += comm_L.samples[i] * gvec[i];
        den += gvec[i] * gvec[i];
    }
    const double c = den > 0.0 ? num / den : 0.0;
    out.projection_constant = c;

    RealField q_comm = apply_multiplier(q_mult, multiplier_weight_commutator(q_mult, phi_x, u));
    for (int i = 0; i < g.n_points; ++i) {
        double v = u.samples[i];
        out.e1 -= c * phi_x.samples[i] * qu.samples[i] * qu.samples[i];
        out.e2 -= c * v * q_comm.samples[i];
        out.e3 -= v * (comm_L.samples[i] - c * gvec[i]);
        out.e4 += (2.0 / 3.0) * v * v * v * phi_x.samples[i];
        out.e5 += v * v * phi_t.samples[i];
    }
    out.e1 *= h;
    out.e2 *= h;
    out.e3 *= h;
    out.e4 *= h;
    out.e5 *= h;
    return out;
}

RemainderReport check_remainder_bounds(const ModelParams& params, const WeightFamily& w,
                                       GridPtr grid) {
    const Grid& g = *grid;
    RemainderReport report;

    struct NamedWeight {
        std::string name;
        WeightFields fields;
    };
    std::vector<NamedWeight> weights;
    for (auto [c0, t] : {std::pair{1.0, 5.0}, std::pair{2.0, 8.0}}) {
        double s = 1.0 / (c0 * t);
        weights.push_back(
            {"chi_ray(c0=" + std::to_string(c0) + ",t=" + std::to_string(t) + ")",
             sample_weight(
                 grid, [&, s](double x) { return w.chi(x * s); },
                 [&, s](double x) { return w.chi_prime(x * s) * s; },
                 [&, s](double x) { return w.chi_second(x * s) * s * s; },
                 [&, s](double x) { return w.chi_third(x * s) * s * s * s; })});
    }
    for (double sigma : {1.0, 3.0}) {
        weights.push_back(
            {"psi_sigma(" + std::to_string(sigma) + ")",
             sample_weight(
                 grid, [&, sigma](double x) { return w.psi_scaled(sigma, x); },
                 [&, sigma](double x) { return w.phi(x / sigma); },
                 [&, sigma](double x) { return w.phi_prime(x / sigma) / sigma; },
                 [&, sigma](double x) {
                     // third derivative of sigma psi(x/sigma) = phi''(x/sigma)/sigma^2
                     return w.phi_second(x / sigma) / (sigma * sigma);
                 })});
    }

    struct NamedField {
        std::string name;
        RealField f;
    };
    std::vector<NamedField> fields;
    auto sample_field = [&](const std::string& name, auto&& fn) {
        RealField f(grid);
        for (int i = 0; i < g.n_points; ++i) f.samples[i] = fn(g.nodes[i]);
        fields.push_back({name, std::move(f)});
    };
    sample_field("gaussian", [](double x) { return std::exp(-x * x / 4.0); });
    sample_field("modulated", [](double x) { return std::cos(3.0 * x) * std::exp(-x * x / 9.0); });
    sample_field("shifted", [](double x) { return std::exp(-(x - 5.0) * (x - 5.0) / 4.0); });
    sample_field("zero", [](double) { return 0.0; });

    Multiplier q_mult = multiplier_q(params, grid);
    Multiplier ldx = multiplier_L_dx(params, grid);
    Multiplier omega_prime = multiplier_omega_prime(params, grid);

    auto ratio_of = [](double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; };

    for (const auto& nw : weights) {
        double n_d1 = l2_norm(nw.fields.d1);
        double n_d2 = l2_norm(nw.fields.d2);
        double n_d3 = l2_norm(nw.fields.d3);
        double h2_d1 = l2_norm(apply_J(2.0, nw.fields.d1));
        for (const auto& nf : fields) {
            double nf2 = l2_norm(nf.f);

            RealField comm_L = multiplier_weight_commutator(ldx, nw.fields.w, nf.f);
            RealField opu = apply_multiplier(omega_prime, nf.f);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < g.n_points; ++i) {
                double gv = nw.fields.d1.samples[i] * opu.samples[i];
                num += comm_L.samples[i] * gv;
                den += gv * gv;
            }
            double c = den > 0.0 ? num / den : 0.0;
            double r1_sq = 0.0;
            for (int i = 0; i < g.n_points; ++i) {
                double r = comm_L.samples[i] - c * nw.fields.d1.samples[i] * opu.samples[i];
                r1_sq += r * r;
            }
            double lhs_r1 = std::sqrt(r1_sq * g.spacing);
            double rhs_r1 = std::sqrt(n_d2) * std::sqrt(n_d3) * nf2;
            report.r1.push_back({nw.name, nf.name, lhs_r1, rhs_r1, ratio_of(lhs_r1, rhs_r1)});

            RealField qcomm =
                apply_multiplier(q_mult, multiplier_weight_commutator(q_mult, nw.fields.w, nf.f));
            double lhs_q = l2_norm(qcomm);
            double rhs_q = h2_d1 * nf2;
            report.q_comm.push_back({nw.name, nf.name, lhs_q, rhs_q, ratio_of(lhs_q, rhs_q)});

            double rhs_qb = std::sqrt(n_d2) * (std::sqrt(n_d1) + std::sqrt(n_d3)) * nf2;
            report.q_comm_alt.push_back({nw.name, nf.name, lhs_q, rhs_qb, ratio_of(lhs_q, rhs_qb)});
        }
    }
    for (const auto& c : report.r1) report.max_ratio_r1 = std::max(report.max_ratio_r1, c.ratio);
    for (const auto& c : report.q_comm) report.max_ratio_q = std::max(report.max_ratio_q, c.ratio);
    for (const auto& c : report.q_comm_alt)
        report.max_ratio_q_alt = std::max(report.max_ratio_q_alt, c.ratio);
    return report;
}

DiagnosticsRow diagnostics_row(const ModelParams& params, const VirialParams& vp,
                               const WeightFamily& w, const RealField& u, double t) {
    DiagnosticsRow row;
    row.t = t;
    row.I1 = invariant_I1(u);
    row.I2 = invariant_I2(u);
    row.I3 = invariant_I3(params, u);
    row.I4 = invariant_I4(params, u);
    auto gated = [](auto&& fn) {
        try {
            return fn();
        } catch (const std::domain_error&) {
            return 0.0;
        }
    };
    row.mass_ball_centered = gated([&] { return region_mass(u, t, vp, Region::ball_centered); });
    row.mass_ball_shifted = gated([&] { return region_mass(u, t, vp, Region::ball_shifted); });
    row.mass_right = gated([&] { return region_mass(u, t, vp, Region::right_of_ray); });
    row.func_I = gated([&] { return functional_I(w, u, t, vp); });
    row.func_I_rho = gated([&] { return functional_I_rho(w, u, t, vp, +1); });
    row.func_J = gated([&] { return functional_J(w, u, t, vp); });
    row.weighted_norm_alpha = weighted_norm(u, vp.alpha);
    SmoothingFlux flux = smoothing_flux(params, u, vp.alpha);
    row.smoothing_flux_half = flux.half;
    row.smoothing_flux_full = flux.full;
    row.boundary_mass_fraction = boundary_mass_fraction(u);
    return row;
}

}  // namespace ilw
