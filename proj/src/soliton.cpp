#include "ilw/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ilw/evolution.hpp"
#include "ilw/fft.hpp"

namespace ilw {

namespace {

void validate(const SolitonSpec& spec) {
    if (!spec.grid) throw std::invalid_argument("soliton: spec has no grid");
    if (!(spec.speed > 1.0 / spec.params.delta))
        throw std::invalid_argument("soliton: speed must exceed 1/delta");
    if (!(spec.tol > 0.0)) throw std::invalid_argument("soliton: tol must be positive");
    if (spec.max_iter < 1) throw std::invalid_argument("soliton: max_iter must be >= 1");
}

// Denominator c - 1/delta + k coth(delta k); equals c at k = 0 and grows like
// c - 1/delta + |k|, so it is bounded below by c > 0.
std::vector<double> denominator(const SolitonSpec& spec) {
    const Grid& g = *spec.grid;
    const double d = spec.params.delta;
    std::vector<double> den(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        double k = g.wavenumbers[i];
        double kcoth = std::abs(d * k) < 1e-8 ? 1.0 / d + d * k * k / 3.0
                                              : k / std::tanh(d * k);
        den[i] = spec.speed - 1.0 / d + kcoth;
    }
    return den;
}

// Spectral coefficients of the dealiased square of the field behind uh.
std::vector<cplx> half_square(GridPtr grid, const std::vector<cplx>& uh) {
    const Grid& g = *grid;
    const int n = g.n_points;
    SpectralField s{grid};
    s.coefficients = uh;
    for (int i = 0; i < n; ++i)
        if (3 * std::abs(g.freqs[i]) > n) s.coefficients[i] = 0.0;
    ComplexField phys = inverse_transform_complex(s);
    for (auto& v : phys.samples) v *= v;
    SpectralField sq = transform(phys);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = 3 * std::abs(g.freqs[i]) > n ? cplx{} : 0.5 * sq.coefficients[i];
    return out;
}

double spectral_l2(const Grid& g, const std::vector<cplx>& h) {
    double s = 0.0;
    for (const auto& c : h) s += std::norm(c);
    return std::sqrt(s / g.length);
}

std::vector<cplx> residual_hat(const SolitonSpec& spec, const std::vector<double>& den,
                               const std::vector<cplx>& qh) {
    std::vector<cplx> w = half_square(spec.grid, qh);
    for (int i = 0; i < spec.grid->n_points; ++i) w[i] -= den[i] * qh[i];
    return w;
}

RealField recenter_peak(const RealField& q) {
    const int n = q.grid->n_points;
    int peak = int(std::max_element(q.samples.begin(), q.samples.end()) - q.samples.begin());
    int origin = n / 2;  // node at x = 0
    RealField out(q.grid, q.time);
    for (int i = 0; i < n; ++i) out.samples[i] = q.samples[((i + peak - origin) % n + n) % n];
    return out;
}

}  // namespace

double soliton_residual(const RealField& q, const SolitonSpec& spec) {
    validate(spec);
    if (!same_grid(*q.grid, *spec.grid))
        throw std::invalid_argument("soliton_residual: grid mismatch");
    std::vector<cplx> qh = transform(q).coefficients;
    return spectral_l2(*spec.grid, residual_hat(spec, denominator(spec), qh));
}

SolitonResult petviashvili_solve(const SolitonSpec& spec) {
    validate(spec);
    const Grid& g = *spec.grid;
    const int n = g.n_points;
    const std::vector<double> den = denominator(spec);

    RealField guess(spec.grid);
    const double amp = 3.0 * (spec.speed - 1.0 / spec.params.delta);
    for (int i = 0; i < n; ++i) {
        double s = 1.0 / std::cosh(g.nodes[i]);
        guess.samples[i] = amp * s * s;
    }
    std::vector<cplx> qh = transform(guess).coefficients;

    SolitonResult result;
    int stagnant = 0;
    double prev_res = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= spec.max_iter; ++it) {
        std::vector<cplx> w = half_square(spec.grid, qh);

        // stabilizing factor S = <D q, q>/<w, q>, applied with exponent 2
        double num = 0.0;
        cplx dot{};
        for (int i = 0; i < n; ++i) {
            num += den[i] * std::norm(qh[i]);
            dot += std::conj(qh[i]) * w[i];
        }
        double s = num / dot.real();

        for (int i = 0; i < n; ++i) qh[i] = s * s * w[i] / den[i];
        // Project back to a real field (Hermitian symmetry). Roundoff seeds an
        // imaginary component along Q that the stabilizing factor cannot see
        // (it is phase-blind), and that component doubles every iteration.
        for (int i = 1; i < n / 2; ++i) {
            cplx h = 0.5 * (qh[i] + std::conj(qh[n - i]));
            qh[i] = h;
            qh[n - i] = std::conj(h);
        }
        qh[0] = qh[0].real();
        qh[n / 2] = qh[n / 2].real();

        double res = spectral_l2(g, residual_hat(spec, den, qh));
        result.residual_history.push_back(res);
        result.iterations = it;
        result.residual_norm = res;
        if (res <= spec.tol) {
            result.converged = true;
            break;
        }
        stagnant = res >= prev_res ? stagnant + 1 : 0;
        if (stagnant >= 50) break;  // divergence or stall
        prev_res = res;
    }

    SpectralField sf{spec.grid};
    sf.coefficients = std::move(qh);
    result.profile = recenter_peak(inverse_transform(sf));
    return result;
}

PropagationReport propagation_error(const SolitonResult& result, const SolitonSpec& spec,
                                    double t_end, double dt) {
    validate(spec);
    if (!result.converged)
        throw std::invalid_argument("propagation_error: needs a converged profile");

    PropagationReport report;
    if (t_end == 0.0) {
        report.fitted_speed = spec.speed;
        return report;
    }

    EvolutionConfig cfg{spec.params, spec.grid, dt, t_end};
    cfg.checkpoint_stride = 1 << 30;
    Trajectory traj = evolve(cfg, result.profile);
    report.warnings = traj.warnings;

    const Grid& g = *spec.grid;
    const int n = g.n_points;
    std::vector<cplx> qh = transform(result.profile).coefficients;
    std::vector<cplx> uh = transform(traj.checkpoints.back()).coefficients;

    // cross-correlation C(s) = sum_k u_hat conj(q_hat) e^{iks} via inverse FFT
    SpectralField cross{spec.grid};
    for (int i = 0; i < n; ++i) cross.coefficients[i] = uh[i] * std::conj(qh[i]) / g.length;
    ComplexField corr = inverse_transform_complex(cross);

    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        if (corr.samples[i].real() > best_val) {
            best_val = corr.samples[i].real();
            best = i;
        }
    // sub-grid refinement: parabola through the three samples around the peak
    double cm = corr.samples[(best - 1 + n) % n].real();
    double cp = corr.samples[(best + 1) % n].real();
    double frac = 0.5 * (cm - cp) / (cm - 2.0 * best_val + cp);
    double shift = g.nodes[best] + frac * g.spacing - 0.0;  // x = 0 is the profile peak

    double err2 = 0.0, qn2 = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx moved = qh[i] * std::exp(cplx{0.0, -g.wavenumbers[i] * shift});
        err2 += std::norm(uh[i] - moved);
        qn2 += std::norm(qh[i]);
    }
    report.shape_error = std::sqrt(err2 / qn2);
    double travel = shift;
    while (travel < 0.0) travel += g.length;  // unwrap one period for forward motion
    report.fitted_speed = travel / t_end;
    return report;
}

}  // namespace ilw
