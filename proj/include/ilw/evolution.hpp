#ifndef ILW_EVOLUTION_HPP
#define ILW_EVOLUTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ilw/grid.hpp"
#include "ilw/symbols.hpp"

namespace ilw {

enum class Integrator { integrating_factor_rk4, etd_rk4 };

struct EvolutionConfig {
    ModelParams params;
    GridPtr grid;
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;
    Integrator integrator = Integrator::integrating_factor_rk4;
    int checkpoint_stride = 1;

    // Diagnostics hooks: drop the nonlinearity entirely (the step is then the
    // exact unitary multiplier), and/or store the one-step neighbors of each
    // interior checkpoint so time derivatives of functionals can be formed by
    // centered differences.
    bool linear_only = false;
    bool capture_neighbors = false;
};

struct Trajectory {
    EvolutionConfig config;
    std::vector<double> times;
    std::vector<RealField> checkpoints;

    // Aligned with checkpoints when capture_neighbors is set: the fields one
    // step before/after each checkpoint (empty grid pointer when absent, i.e.
    // at the ends of the run).
    std::vector<RealField> before;
    std::vector<RealField> after;

    std::vector<std::string> warnings;
    std::uint64_t steps_taken = 0;
};

// -1/2 dx(u^2), the conservative form of -u u_x. With dealias on, the square
// is formed in physical space after a 2/3-rule truncation of u and the result
// is truncated again, so quadratic aliasing never reaches the retained modes.
RealField nonlinear_term(const RealField& u, bool dealias);

// One fourth-order step of du/dt = -(T_delta dx^2 + dx/delta)u - u u_x.
// Aborts with a diagnostic on NaN/Inf (blow-up or a step-size violation).
RealField step(const RealField& u, double t, const EvolutionConfig& config);

// Integrate to t_end (rounded to a whole number of steps), checkpointing
// every checkpoint_stride steps plus the final state. Deterministic for a
// fixed config. Boundary-mass guard findings land in Trajectory::warnings.
Trajectory evolve(const EvolutionConfig& config, const RealField& u0);

// Reference flows on the same harness: Benjamin-Ono (dispersion k|k|) and
// KdV (dispersion k^3) in the convention where modes advance as e^{i Omega t}.
Trajectory evolve_bo(const EvolutionConfig& config, const RealField& u0);
Trajectory evolve_kdv(const EvolutionConfig& config, const RealField& u0);

// Shallow-water rescaling v(x,t) = (3/delta) u(x, 3t/delta): maps an ILW
// trajectory at parameter delta onto the KdV time axis (checkpoint at input
// time s appears at output time delta*s/3).
Trajectory kdv_rescale(const Trajectory& traj, double delta);

}  // namespace ilw

#endif
