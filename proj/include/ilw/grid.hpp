#ifndef ILW_GRID_HPP
#define ILW_GRID_HPP

#include <complex>
#include <memory>
#include <vector>

namespace ilw {

using cplx = std::complex<double>;

// Uniform periodic grid on [-L/2, L/2) with angular wavenumbers in FFT
// (frequency-index) order: k[i] = 2*pi*f_i/L, f_i = i for i < n/2, i-n else.
struct Grid {
    int n_points;
    double length;
    double spacing;
    std::vector<double> nodes;
    std::vector<double> wavenumbers;
    std::vector<int> freqs;

    int nyquist_index() const { return n_points / 2; }
};

using GridPtr = std::shared_ptr<const Grid>;

// n_points must be even and >= 16, length > 0.
GridPtr build_grid(int n_points, double length);

struct RealField {
    GridPtr grid;
    std::vector<double> samples;
    double time = 0.0;

    RealField() = default;
    explicit RealField(GridPtr g, double t = 0.0)
        : grid(std::move(g)), samples(grid->n_points, 0.0), time(t) {}
};

struct SpectralField {
    GridPtr grid;
    std::vector<cplx> coefficients;

    SpectralField() = default;
    explicit SpectralField(GridPtr g)
        : grid(std::move(g)), coefficients(grid->n_points, cplx{}) {}
};

// Complex-valued field in physical space (output of multipliers whose symbol
// tags do not guarantee a real result, e.g. p(dx)).
struct ComplexField {
    GridPtr grid;
    std::vector<cplx> samples;

    ComplexField() = default;
    explicit ComplexField(GridPtr g)
        : grid(std::move(g)), samples(grid->n_points, cplx{}) {}
};

bool same_grid(const Grid& a, const Grid& b);
void require_same_grid(const RealField& a, const RealField& b);

// Grid-weighted quadrature and norms. integral(u) = h * sum(u_j); the grid
// trapezoid rule is exact (spectral) for smooth periodic integrands.
double integral(const RealField& u);
double l2_norm(const RealField& u);
double l2_norm_sq(const RealField& u);
double lp_norm(const RealField& u, double p);
double max_norm(const RealField& u);
double l2_norm(const ComplexField& u);

// Fraction of ||u||_2^2 carried by the outer 10% of the domain (|x| >= 0.45 L).
// Quantifies contamination of the R -> torus truncation.
double boundary_mass_fraction(const RealField& u);

bool all_finite(const RealField& u);

}  // namespace ilw

#endif
