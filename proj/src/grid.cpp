#include "ilw/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ilw {

GridPtr build_grid(int n_points, double length) {
    if (n_points < 16) throw std::invalid_argument("build_grid: n_points must be >= 16");
    if (n_points % 2 != 0) throw std::invalid_argument("build_grid: n_points must be even");
    if (!(length > 0.0)) throw std::invalid_argument("build_grid: length must be positive");

    auto g = std::make_shared<Grid>();
    g->n_points = n_points;
    g->length = length;
    g->spacing = length / n_points;
    g->nodes.resize(n_points);
    g->wavenumbers.resize(n_points);
    g->freqs.resize(n_points);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < n_points; ++i) {
        g->nodes[i] = -0.5 * length + i * g->spacing;
        int f = (i < n_points / 2) ? i : i - n_points;
        g->freqs[i] = f;
        g->wavenumbers[i] = two_pi * f / length;
    }
    return g;
}

bool same_grid(const Grid& a, const Grid& b) {
    return a.n_points == b.n_points && a.length == b.length;
}

void require_same_grid(const RealField& a, const RealField& b) {
    if (!same_grid(*a.grid, *b.grid)) throw std::invalid_argument("grid mismatch");
}

double integral(const RealField& u) {
    double s = 0.0;
    for (double v : u.samples) s += v;
    return s * u.grid->spacing;
}

double l2_norm_sq(const RealField& u) {
    double s = 0.0;
    for (double v : u.samples) s += v * v;
    return s * u.grid->spacing;
}

double l2_norm(const RealField& u) { return std::sqrt(l2_norm_sq(u)); }

double lp_norm(const RealField& u, double p) {
    double s = 0.0;
    for (double v : u.samples) s += std::pow(std::abs(v), p);
    return std::pow(s * u.grid->spacing, 1.0 / p);
}

double max_norm(const RealField& u) {
    double m = 0.0;
    for (double v : u.samples) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const ComplexField& u) {
    double s = 0.0;
    for (const cplx& v : u.samples) s += std::norm(v);
    return std::sqrt(s * u.grid->spacing);
}

double boundary_mass_fraction(const RealField& u) {
    const double edge = 0.45 * u.grid->length;
    double outer = 0.0, total = 0.0;
    for (int i = 0; i < u.grid->n_points; ++i) {
        double m = u.samples[i] * u.samples[i];
        total += m;
        if (std::abs(u.grid->nodes[i]) >= edge) outer += m;
    }
    return total > 0.0 ? outer / total : 0.0;
}

bool all_finite(const RealField& u) {
    for (double v : u.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace ilw
