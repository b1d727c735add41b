#ifndef ILW_WEIGHTS_HPP
#define ILW_WEIGHTS_HPP

#include <string>
#include <vector>

namespace ilw {

// Parameters of the localized-decay diagnostics. The admissible ranges are
// checked together so a bad configuration reports every violation at once.
struct VirialParams {
    double b = 0.5;        // 0 < b < 2/3 and b <= 2/(2 + q_exp)
    double m = 0.0;        // 0 <= m <= 1 - b/2 (strengthened below in corollary mode)
    double q_exp = 1.5;    // > 1
    double sigma = 1.0;    // > 0
    double lambda = 1.0;   // > 0
    double alpha = 0.5;    // >= 0
    double c0 = 1.0;       // > 0, slope of the monitored ray x = c0 t + c1
    double c1 = 0.0;
    bool corollary_mode = false;  // additionally require m < 1 - 3b/2
};

// Every violated constraint, one human-readable message each (empty if valid).
std::vector<std::string> virial_params_violations(const VirialParams& p);
// Throws std::invalid_argument listing all violations.
void validate_virial_params(const VirialParams& p);

// Diagnostic time scales mu1(t) = t^b/log t and mu(t) = t^{1-b} log^2 t with
// their logarithmic derivatives in closed form.
double scale_mu1(const VirialParams& p, double t);
double scale_mu(const VirialParams& p, double t);
double scale_mu1_log_deriv(const VirialParams& p, double t);  // b/t - 1/(t log t)
double scale_mu_log_deriv(const VirialParams& p, double t);   // (1-b)/t + 2/(t log t)

// Smooth weight profiles used by the decay functionals.
//
//   phi:  even, C^2; 1 on [0,1], e^{-x} beyond x = 2, and e^{-rho(x)} on
//         [1,2] with a polynomial exponent that keeps e^{-x} <= phi <= 3e^{-x}
//         and phi' <= 0 throughout x >= 0.
//   psi:  antiderivative of phi from 0 (odd).
//   chi:  0 below 1, 1 above 2, strictly increasing quintic blend between.
//   zeta: unit bump, 1 on [-1/2,1/2], supported in [-1,1].
class WeightFamily {
public:
    WeightFamily();

    double phi(double x) const;
    double phi_prime(double x) const;
    double phi_second(double x) const;
    double psi(double x) const;

    // Scaled variants psi_sigma(x) = sigma psi(x/sigma), phi_lambda likewise.
    double psi_scaled(double sigma, double x) const { return sigma * psi(x / sigma); }
    double phi_scaled(double lambda, double x) const { return lambda * phi(x / lambda); }

    double chi(double s) const;
    double chi_prime(double s) const;
    double chi_second(double s) const;
    double chi_third(double s) const;

    double zeta(double x) const;
    double zeta_n(double x, int n) const { return zeta(x - n); }

    // Measured sup of |chi^(k)| over the blend, k in {1,2,3}. Only k = 1 fits
    // under 2^k: any C^2 ramp from 0 to 1 on a unit interval has
    // sup|chi''| > 4 (the bang-bang profile attaining 4 is not C^2), so the
    // k = 2 and k = 3 caps are recorded as measurements, not invariants.
    double chi_derivative_sup(int k) const;

    // Measured sup of |phi'|/phi (order 1) and |phi''|/phi (order 2).
    double phi_log_derivative_sup(int order) const;
};

}  // namespace ilw

#endif
