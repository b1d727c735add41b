#include "ilw/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ilw {

std::vector<std::string> virial_params_violations(const VirialParams& p) {
    std::vector<std::string> v;
    if (!(p.b > 0.0 && p.b < 2.0 / 3.0))
        v.push_back("b must satisfy 0 < b < 2/3 (got " + std::to_string(p.b) + ")");
    if (!(p.q_exp > 1.0))
        v.push_back("q_exp must exceed 1 (got " + std::to_string(p.q_exp) + ")");
    if (p.q_exp > 1.0 && p.b > 0.0 && p.b > 2.0 / (2.0 + p.q_exp))
        v.push_back("b must not exceed 2/(2 + q_exp)");
    if (!(p.m >= 0.0)) v.push_back("m must be >= 0");
    if (p.m > 1.0 - p.b / 2.0) v.push_back("m must not exceed 1 - b/2");
    if (p.corollary_mode && !(p.m < 1.0 - 1.5 * p.b))
        v.push_back("m must be below 1 - 3b/2 for the shifted-ball diagnostics");
    if (!(p.sigma > 0.0)) v.push_back("sigma must be positive");
    if (!(p.lambda > 0.0)) v.push_back("lambda must be positive");
    if (!(p.alpha >= 0.0)) v.push_back("alpha must be >= 0");
    if (!(p.c0 > 0.0)) v.push_back("c0 must be positive");
    return v;
}

void validate_virial_params(const VirialParams& p) {
    auto v = virial_params_violations(p);
    if (v.empty()) return;
    std::ostringstream msg;
    msg << "invalid virial parameters:";
    for (const auto& s : v) msg << "\n  - " << s;
    throw std::invalid_argument(msg.str());
}

double scale_mu1(const VirialParams& p, double t) {
    return std::pow(t, p.b) / std::log(t);
}

double scale_mu(const VirialParams& p, double t) {
    double lg = std::log(t);
    return std::pow(t, 1.0 - p.b) * lg * lg;
}

double scale_mu1_log_deriv(const VirialParams& p, double t) {
    return p.b / t - 1.0 / (t * std::log(t));
}

double scale_mu_log_deriv(const VirialParams& p, double t) {
    return (1.0 - p.b) / t + 2.0 / (t * std::log(t));
}

namespace {

// Exponent rho on [1,2] via tau = x - 1 in [0,1]:
//   rho(1+tau) = 24 tau^3 - 47 tau^4 + 33 tau^5 - 8 tau^6.
// Chosen so rho, rho', rho'' match 0 at x=1 and the e^{-x} branch at x=2
// (rho=2, rho'=1, rho''=0), rho' >= 0 throughout, and x - log 3 <= rho <= x
// (which is exactly the envelope e^{-x} <= phi <= 3 e^{-x}).
double rho_poly(double tau) {
    return tau * tau * tau * (24.0 + tau * (-47.0 + tau * (33.0 - 8.0 * tau)));
}
double rho_poly_d1(double tau) {
    return tau * tau * (72.0 + tau * (-188.0 + tau * (165.0 - 48.0 * tau)));
}
double rho_poly_d2(double tau) {
    return tau * (144.0 + tau * (-564.0 + tau * (660.0 - 240.0 * tau)));
}

struct Rho {
    double r, d1, d2;
};

Rho rho_at(double x) {
    if (x <= 1.0) return {0.0, 0.0, 0.0};
    if (x >= 2.0) return {x, 1.0, 0.0};
    double tau = x - 1.0;
    return {rho_poly(tau), rho_poly_d1(tau), rho_poly_d2(tau)};
}

// Quintic ramp 0 -> 1 on [0,1] with two vanishing end derivatives.
double ramp(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double ramp_d1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double ramp_d2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }
double ramp_d3(double t) { return 60.0 * (1.0 + 6.0 * t * (t - 1.0)); }

// psi on [1,2] by cumulative Simpson over a fixed fine table; the integrand
// e^{-rho} is smooth, so the composite error is far below 1e-13.
constexpr int psi_cells = 2048;  // even count of Simpson cells on [1,2]
const std::vector<double>& psi_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(psi_cells + 1);
        t[0] = 0.0;
        const double h = 1.0 / psi_cells;
        for (int i = 0; i < psi_cells; ++i) {
            double a = 1.0 + i * h;
            double fa = std::exp(-rho_at(a).r);
            double fm = std::exp(-rho_at(a + 0.5 * h).r);
            double fb = std::exp(-rho_at(a + h).r);
            t[i + 1] = t[i] + h / 6.0 * (fa + 4.0 * fm + fb);
        }
        return t;
    }();
    return table;
}

}  // namespace

WeightFamily::WeightFamily() { psi_table(); }

double WeightFamily::phi(double x) const { return std::exp(-rho_at(std::abs(x)).r); }

double WeightFamily::phi_prime(double x) const {
    double ax = std::abs(x);
    Rho r = rho_at(ax);
    double d = -r.d1 * std::exp(-r.r);
    return x < 0.0 ? -d : d;
}

double WeightFamily::phi_second(double x) const {
    Rho r = rho_at(std::abs(x));
    return (r.d1 * r.d1 - r.d2) * std::exp(-r.r);
}

double WeightFamily::psi(double x) const {
    double ax = std::abs(x);
    double v;
    if (ax <= 1.0) {
        v = ax;
    } else if (ax >= 2.0) {
        v = 1.0 + psi_table().back() + (std::exp(-2.0) - std::exp(-ax));
    } else {
        const double h = 1.0 / psi_cells;
        int cell = std::min(int((ax - 1.0) / h), psi_cells - 1);
        double a = 1.0 + cell * h;
        // one sub-cell Simpson step from the table node to x
        double w = ax - a;
        double fa = std::exp(-rho_at(a).r);
        double fm = std::exp(-rho_at(a + 0.5 * w).r);
        double fb = std::exp(-rho_at(ax).r);
        v = 1.0 + psi_table()[cell] + w / 6.0 * (fa + 4.0 * fm + fb);
    }
    return x < 0.0 ? -v : v;
}

double WeightFamily::chi(double s) const {
    if (s <= 1.0) return 0.0;
    if (s >= 2.0) return 1.0;
    return ramp(s - 1.0);
}

double WeightFamily::chi_prime(double s) const {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    return ramp_d1(s - 1.0);
}

double WeightFamily::chi_second(double s) const {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    return ramp_d2(s - 1.0);
}

double WeightFamily::chi_third(double s) const {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    return ramp_d3(s - 1.0);
}

double WeightFamily::zeta(double x) const {
    double ax = std::abs(x);
    if (ax <= 0.5) return 1.0;
    if (ax >= 1.0) return 0.0;
    return 1.0 - ramp(2.0 * (ax - 0.5));
}

double WeightFamily::chi_derivative_sup(int k) const {
    double sup = 0.0;
    const int samples = 40001;
    for (int i = 0; i < samples; ++i) {
        double s = 1.0 + double(i) / (samples - 1);
        double v = k == 1 ? chi_prime(s) : k == 2 ? chi_second(s) : chi_third(s);
        sup = std::max(sup, std::abs(v));
    }
    return sup;
}

double WeightFamily::phi_log_derivative_sup(int order) const {
    double sup = 0.0;
    const int samples = 40001;
    for (int i = 0; i < samples; ++i) {
        double x = 4.0 * double(i) / (samples - 1);
        double num = order == 1 ? phi_prime(x) : phi_second(x);
        sup = std::max(sup, std::abs(num) / phi(x));
    }
    return sup;
}

}  // namespace ilw
