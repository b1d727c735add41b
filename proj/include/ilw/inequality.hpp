#ifndef ILW_INEQUALITY_HPP
#define ILW_INEQUALITY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ilw/grid.hpp"
#include "ilw/multiplier.hpp"
#include "ilw/symbols.hpp"

namespace ilw {

// Seeded battery of localized test functions (Gaussians x Hermite-like
// factors x modulated oscillations, randomly translated and dilated) and
// smooth weight fields (truncated <x>^beta and x<x>^{beta-1}). Deterministic
// for a fixed seed; every function keeps its boundary mass below 1e-8.
struct BatteryCase {
    std::string name;
    RealField f;
};

struct TestBattery {
    std::uint64_t seed = 0;
    GridPtr grid;
    std::vector<BatteryCase> functions;
    std::vector<BatteryCase> weights;
};

TestBattery make_battery(std::uint64_t seed, GridPtr grid);

// One inequality instance: lhs, rhs and their ratio. Cases with vanishing
// right side are collected separately so ratios stay well defined.
struct RatioCase {
    std::string name;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

struct RatioReport {
    std::string check;
    std::vector<RatioCase> cases;
    std::vector<RatioCase> zero_rhs;
    double max_ratio = 0.0;
};

// ||J^s f||_2 and ||<x>^b f||_2.
double h_norm(const RealField& f, double s);
double weighted_power_norm(const RealField& f, double b);

// A real Fourier symbol together with its k-derivatives; when no analytic
// derivative is supplied, 6th-order centered differences with step
// h = 1e-3 (1+|k|) are used (symbols here are smooth away from 0).
struct SymbolFamily {
    std::string name;
    Parity parity = Parity::even;
    std::function<double(double)> value;
    std::function<double(double, int)> derivative;  // j-th derivative, optional
};

SymbolFamily family_identity();
SymbolFamily family_J(double s);
SymbolFamily family_p(const ModelParams& params);
SymbolFamily family_omega_prime(const ModelParams& params);

// The operator of the j-th expansion term: symbol (-i)^j d^j Q/dk^j (j = 0
// gives Q itself). The (-i)^j factor is what turns the Taylor kernel powers
// into derivatives of the weight under this transform convention.
Multiplier symbol_derivative_multiplier(const SymbolFamily& q, int j, GridPtr grid);

// Commutator expansion [Q; w]f = sum_{j=1..k} (1/j!) w^(j) Q^(j)(dx) f + R_k f
// with the remainder measured against ||w^(k)||_{H^1} ||f||_2. Weight
// derivatives are spectral. Also reports the raw remainder norm per order so
// the k=1 -> k=2 tightening is observable.
struct CommutatorExpansionResult {
    RatioReport report;
    double commutator_norm = 0.0;
    std::vector<double> remainder_norm;  // entry j-1: ||R_j f||_2, j = 1..k
};
CommutatorExpansionResult check_commutator_expansion(const SymbolFamily& q,
                                                     const RealField& w,
                                                     const RealField& f, int k);

// Weighted interpolation ||<x>^{tb} J^{(1-t)a} f|| <= c ||<x>^b f||^t ||J^a f||^{1-t}
// and the four-parameter version
// ||<x>^{ta+(1-t)c} J^{tb+(1-t)d} f|| <= c ||<x>^a J^b f||^t ||<x>^c J^d f||^{1-t}.
RatioReport check_interpolation(const TestBattery& battery, double a, double b,
                                double theta);
RatioReport check_interpolation_full(const TestBattery& battery, double a, double b,
                                     double c, double d, double theta);

// ||f||_3 <= c ||f||_2^{2/3} ||D^{1/2} f||_2^{1/3}; the ratio is invariant
// under dilation and amplitude scaling.
double gns_ratio(const RealField& f);
RatioReport check_gns(const TestBattery& battery);

// Commutator ||[J^s, f] g||_2 against ||f'||_inf ||J^{s-1} g||_2 + ||J^s f||_2 ||g||_inf
// and product rule ||J^s(fg)||_2 against ||J^s f||_2 ||g||_inf + ||f||_inf ||J^s g||_2.
// The L^inf factors are grid maxima. Only this p = 2 / p = inf corner is
// exercised; other exponent splittings are untested here.
RatioReport check_kato_ponce(const TestBattery& battery, double s);
RatioReport check_leibniz(const TestBattery& battery, double s);

}  // namespace ilw

#endif
