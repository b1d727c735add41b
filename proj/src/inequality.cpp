#include "ilw/inequality.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ilw/weights.hpp"

namespace ilw {

namespace {

RealField sampled(GridPtr grid, const std::function<double(double)>& fn) {
    RealField f(grid);
    for (int i = 0; i < grid->n_points; ++i) f.samples[i] = fn(grid->nodes[i]);
    return f;
}

RealField pointwise_product(const RealField& a, const RealField& b) {
    require_same_grid(a, b);
    RealField out(a.grid);
    for (int i = 0; i < a.grid->n_points; ++i) out.samples[i] = a.samples[i] * b.samples[i];
    return out;
}

}  // namespace

TestBattery make_battery(std::uint64_t seed, GridPtr grid) {
    if (grid->length < 60.0)
        throw std::invalid_argument(
            "battery functions need length >= 60 to keep boundary mass below 1e-8");
    TestBattery battery;
    battery.seed = seed;
    battery.grid = grid;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(-5.0, 5.0);
    std::uniform_real_distribution<double> width(1.0, 3.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    for (int draw = 0; draw < 3; ++draw) {
        double x0 = center(rng);
        double wd = width(rng);
        double om = freq(rng);
        double ph = phase(rng);
        auto tag = [&](const char* kind) {
            return std::string(kind) + "_" + std::to_string(draw);
        };
        battery.functions.push_back({tag("gauss"), sampled(grid, [=](double x) {
                                         double s = (x - x0) / wd;
                                         return std::exp(-s * s);
                                     })});
        battery.functions.push_back({tag("hermite1"), sampled(grid, [=](double x) {
                                         double s = (x - x0) / wd;
                                         return s * std::exp(-s * s);
                                     })});
        battery.functions.push_back({tag("hermite2"), sampled(grid, [=](double x) {
                                         double s = (x - x0) / wd;
                                         return (2.0 * s * s - 1.0) * std::exp(-s * s);
                                     })});
        battery.functions.push_back({tag("modulated"), sampled(grid, [=](double x) {
                                         double s = (x - x0) / wd;
                                         return std::cos(om * x + ph) * std::exp(-s * s);
                                     })});
    }

    WeightFamily family;
    const double cutoff = 0.4 * grid->length;
    for (double beta : {0.5, 1.0}) {
        battery.weights.push_back(
            {"jx_pow_" + std::to_string(beta), sampled(grid, [&, beta](double x) {
                 return std::pow(1.0 + x * x, 0.5 * beta) * family.zeta(x / cutoff);
             })});
        battery.weights.push_back(
            {"phi_beta_" + std::to_string(beta), sampled(grid, [&, beta](double x) {
                 return x * std::pow(1.0 + x * x, 0.5 * (beta - 1.0)) *
                        family.zeta(x / cutoff);
             })});
    }
    return battery;
}

double h_norm(const RealField& f, double s) { return l2_norm(apply_J(s, f)); }

double weighted_power_norm(const RealField& f, double b) {
    double acc = 0.0;
    for (int i = 0; i < f.grid->n_points; ++i) {
        double x = f.grid->nodes[i];
        double w = std::pow(1.0 + x * x, 0.5 * b);
        acc += w * w * f.samples[i] * f.samples[i];
    }
    return std::sqrt(acc * f.grid->spacing);
}

namespace {

// 6th-order centered difference in the symbol variable, applied recursively
// for higher orders; step 1e-3 (1+|k|) tracks the symbol's scale.
double fd_symbol_derivative(const std::function<double(double)>& fn, double k, int j) {
    if (j == 0) return fn(k);
    const double h = 1e-3 * (1.0 + std::abs(k));
    auto g = [&](double kk) { return fd_symbol_derivative(fn, kk, j - 1); };
    return (-g(k - 3.0 * h) + 9.0 * g(k - 2.0 * h) - 45.0 * g(k - h) + 45.0 * g(k + h) -
            9.0 * g(k + 2.0 * h) + g(k + 3.0 * h)) /
           (60.0 * h);
}

}  // namespace

SymbolFamily family_identity() {
    SymbolFamily q;
    q.name = "identity";
    q.parity = Parity::even;
    q.value = [](double) { return 1.0; };
    q.derivative = [](double, int) { return 0.0; };
    return q;
}

SymbolFamily family_J(double s) {
    SymbolFamily q;
    q.name = "J^" + std::to_string(s);
    q.parity = Parity::even;
    q.value = [s](double k) { return std::pow(1.0 + k * k, 0.5 * s); };
    q.derivative = [s](double k, int j) {
        const double u = 1.0 + k * k;
        switch (j) {
            case 0:
                return std::pow(u, 0.5 * s);
            case 1:
                return s * k * std::pow(u, 0.5 * s - 1.0);
            case 2:
                return s * std::pow(u, 0.5 * s - 2.0) * (1.0 + (s - 1.0) * k * k);
            case 3:
                return 2.0 * s * k * std::pow(u, 0.5 * s - 3.0) *
                       ((0.5 * s - 2.0) * (1.0 + (s - 1.0) * k * k) + (s - 1.0) * u);
            default:
                break;
        }
        auto base = [s](double kk) { return std::pow(1.0 + kk * kk, 0.5 * s); };
        return fd_symbol_derivative(base, k, j);
    };
    return q;
}

SymbolFamily family_p(const ModelParams& params) {
    SymbolFamily q;
    q.name = "p";
    q.parity = Parity::odd;
    ModelParams mp = params;
    q.value = [mp](double k) { return symbol_p(mp, k); };
    return q;
}

SymbolFamily family_omega_prime(const ModelParams& params) {
    SymbolFamily q;
    q.name = "Omega'";
    q.parity = Parity::even;
    ModelParams mp = params;
    q.value = [mp](double k) { return symbol_omega_prime(mp, k); };
    return q;
}

Multiplier symbol_derivative_multiplier(const SymbolFamily& q, int j, GridPtr grid) {
    // (-i)^j cycles through 1, -i, -1, +i
    static const cplx phase[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    const cplx factor = phase[j % 4];
    std::vector<cplx> symbol(grid->n_points);
    for (int i = 0; i < grid->n_points; ++i) {
        double k = grid->wavenumbers[i];
        double d = q.derivative ? q.derivative(k, j) : fd_symbol_derivative(q.value, k, j);
        symbol[i] = factor * d;
    }
    Parity parity = q.parity;
    if (j % 2 == 1) parity = parity == Parity::even ? Parity::odd : Parity::even;
    Reality reality = j % 2 == 0 ? Reality::real : Reality::imaginary;
    return make_multiplier(grid, std::move(symbol), parity, reality,
                           q.name + "^(" + std::to_string(j) + ")");
}

CommutatorExpansionResult check_commutator_expansion(const SymbolFamily& q,
                                                     const RealField& w,
                                                     const RealField& f, int k) {
    if (k < 1) throw std::invalid_argument("expansion order k must be >= 1");
    require_same_grid(w, f);
    GridPtr grid = f.grid;
    const int n = grid->n_points;

    Multiplier q0 = symbol_derivative_multiplier(q, 0, grid);
    ComplexField q_wf = apply_multiplier_complex(q0, pointwise_product(w, f));
    ComplexField q_f = apply_multiplier_complex(q0, f);
    std::vector<cplx> remainder(n);
    for (int i = 0; i < n; ++i)
        remainder[i] = q_wf.samples[i] - w.samples[i] * q_f.samples[i];

    CommutatorExpansionResult result;
    {
        ComplexField comm(grid);
        comm.samples = remainder;
        result.commutator_norm = l2_norm(comm);
    }

    RealField w_deriv = w;
    double factorial = 1.0;
    for (int j = 1; j <= k; ++j) {
        w_deriv = apply_derivative(w_deriv);
        factorial *= j;
        ComplexField term = apply_multiplier_complex(symbol_derivative_multiplier(q, j, grid), f);
        for (int i = 0; i < n; ++i)
            remainder[i] -= w_deriv.samples[i] * term.samples[i] / factorial;
        ComplexField rj(grid);
        rj.samples = remainder;
        result.remainder_norm.push_back(l2_norm(rj));
    }

    double lhs = result.remainder_norm.back();
    double rhs = h_norm(w_deriv, 1.0) * l2_norm(f);
    RatioCase cs{q.name + ",k=" + std::to_string(k), lhs, rhs,
                 rhs > 0.0 ? lhs / rhs : 0.0};
    result.report.check = "commutator_expansion";
    if (rhs > 0.0) {
        result.report.cases.push_back(cs);
        result.report.max_ratio = cs.ratio;
    } else {
        result.report.zero_rhs.push_back(cs);
    }
    return result;
}

namespace {

void add_case(RatioReport& report, const std::string& name, double lhs, double rhs) {
    if (rhs > 0.0) {
        double ratio = lhs / rhs;
        report.cases.push_back({name, lhs, rhs, ratio});
        report.max_ratio = std::max(report.max_ratio, ratio);
    } else {
        report.zero_rhs.push_back({name, lhs, rhs, 0.0});
    }
}

}  // namespace

RatioReport check_interpolation(const TestBattery& battery, double a, double b,
                                double theta) {
    RatioReport report;
    report.check = "interpolation";
    for (const auto& c : battery.functions) {
        RealField jf = apply_J((1.0 - theta) * a, c.f);
        double lhs = weighted_power_norm(jf, theta * b);
        double rhs = std::pow(weighted_power_norm(c.f, b), theta) *
                     std::pow(h_norm(c.f, a), 1.0 - theta);
        add_case(report, c.name, lhs, rhs);
    }
    return report;
}

RatioReport check_interpolation_full(const TestBattery& battery, double a, double b,
                                     double c, double d, double theta) {
    RatioReport report;
    report.check = "interpolation_full";
    for (const auto& fn : battery.functions) {
        RealField j_mid = apply_J(theta * b + (1.0 - theta) * d, fn.f);
        double lhs = weighted_power_norm(j_mid, theta * a + (1.0 - theta) * c);
        double rhs = std::pow(weighted_power_norm(apply_J(b, fn.f), a), theta) *
                     std::pow(weighted_power_norm(apply_J(d, fn.f), c), 1.0 - theta);
        add_case(report, fn.name, lhs, rhs);
    }
    return report;
}

double gns_ratio(const RealField& f) {
    double den = std::pow(l2_norm(f), 2.0 / 3.0) * std::pow(l2_norm(apply_D(0.5, f)), 1.0 / 3.0);
    if (den == 0.0) throw std::invalid_argument("gns_ratio needs a nonzero field");
    return lp_norm(f, 3.0) / den;
}

RatioReport check_gns(const TestBattery& battery) {
    RatioReport report;
    report.check = "gns";
    for (const auto& c : battery.functions) {
        double lhs = lp_norm(c.f, 3.0);
        double rhs = std::pow(l2_norm(c.f), 2.0 / 3.0) *
                     std::pow(l2_norm(apply_D(0.5, c.f)), 1.0 / 3.0);
        add_case(report, c.name, lhs, rhs);
    }
    return report;
}

RatioReport check_kato_ponce(const TestBattery& battery, double s) {
    RatioReport report;
    report.check = "kato_ponce_s=" + std::to_string(s);
    const std::size_t n = battery.functions.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RealField& f = battery.functions[i].f;
        const RealField& g = battery.functions[(i + 1) % n].f;
        RealField js_fg = apply_J(s, pointwise_product(f, g));
        RealField js_g = apply_J(s, g);
        RealField comm(f.grid);
        for (int idx = 0; idx < f.grid->n_points; ++idx)
            comm.samples[idx] = js_fg.samples[idx] - f.samples[idx] * js_g.samples[idx];
        double lhs = l2_norm(comm);
        double rhs = max_norm(apply_derivative(f)) * h_norm(g, s - 1.0) +
                     h_norm(f, s) * max_norm(g);
        add_case(report,
                 battery.functions[i].name + "*" + battery.functions[(i + 1) % n].name,
                 lhs, rhs);
    }
    return report;
}

RatioReport check_leibniz(const TestBattery& battery, double s) {
    RatioReport report;
    report.check = "leibniz_s=" + std::to_string(s);
    const std::size_t n = battery.functions.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RealField& f = battery.functions[i].f;
        const RealField& g = battery.functions[(i + 1) % n].f;
        double lhs = h_norm(pointwise_product(f, g), s);
        double rhs = h_norm(f, s) * max_norm(g) + max_norm(f) * h_norm(g, s);
        add_case(report,
                 battery.functions[i].name + "*" + battery.functions[(i + 1) % n].name,
                 lhs, rhs);
    }
    return report;
}

}  // namespace ilw
