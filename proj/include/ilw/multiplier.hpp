#ifndef ILW_MULTIPLIER_HPP
#define ILW_MULTIPLIER_HPP

#include <string>

#include "ilw/grid.hpp"
#include "ilw/symbols.hpp"

namespace ilw {

enum class Parity { even, odd };
enum class Reality { real, imaginary };

// A Fourier symbol sampled on the grid wavenumbers, with declared parity and
// reality tags. Construction symmetrizes the samples so the tags hold exactly;
// the Nyquist mode of odd symbols is zeroed (it has no +/- partner).
struct Multiplier {
    GridPtr grid;
    std::vector<cplx> symbol;
    Parity parity;
    Reality reality;
    std::string name;

    // True when applying the symbol to a real field yields a real field
    // (Hermitian symbol: even-real or odd-imaginary).
    bool preserves_realness() const {
        return (parity == Parity::even && reality == Reality::real) ||
               (parity == Parity::odd && reality == Reality::imaginary);
    }
};

// Build a multiplier from samples; enforces the tags by symmetrization.
Multiplier make_multiplier(GridPtr grid, std::vector<cplx> symbol, Parity parity,
                           Reality reality, std::string name);

// Symbol catalog. All sampled in the angular-wavenumber convention where the
// linear ILW flow is u_hat(t) = e^{i Omega_delta(k) t} u_hat(0).
Multiplier multiplier_identity(GridPtr grid);
Multiplier multiplier_derivative(GridPtr grid);           // ik
Multiplier multiplier_T_delta(const ModelParams&, GridPtr grid);  // i coth(delta k), 0 at k=0
Multiplier multiplier_hilbert(GridPtr grid);              // i sgn(k)
Multiplier multiplier_L(const ModelParams&, GridPtr grid);        // Omega(k)/k (even real)
Multiplier multiplier_L_dx(const ModelParams&, GridPtr grid);     // i Omega(k) (L(dx) dx)
Multiplier multiplier_J(double s, GridPtr grid);          // (1+k^2)^{s/2}
Multiplier multiplier_D(double s, GridPtr grid);          // |k|^s
Multiplier multiplier_q(const ModelParams&, GridPtr grid);        // q(k), even real
Multiplier multiplier_p(const ModelParams&, GridPtr grid);        // p(k), odd real (not realness-preserving)
Multiplier multiplier_omega_prime(const ModelParams&, GridPtr grid);  // Omega'(k)

// Spectral application; throws if the tags do not guarantee a real result.
RealField apply_multiplier(const Multiplier& m, const RealField& u);

// Application without the realness restriction.
ComplexField apply_multiplier_complex(const Multiplier& m, const RealField& u);

RealField apply_T_delta(const ModelParams& params, const RealField& u);
RealField apply_hilbert(const RealField& u);
RealField apply_L(const ModelParams& params, const RealField& u);
RealField apply_J(double s, const RealField& u);
RealField apply_D(double s, const RealField& u);
RealField apply_derivative(const RealField& u);

// Commutator [m, w]u = m(w u) - w (m u) with a pointwise weight w.
RealField multiplier_weight_commutator(const Multiplier& m, const RealField& w,
                                       const RealField& u);

// Direct principal-value quadrature of the coth-kernel convolution
//   T_delta u(x_j) = -(1/2 delta) p.v. int coth(pi (x_j - y)/(2 delta)) u(y) dy,
// with the kernel periodized by a symmetric image sum, summed over symmetric
// pairs around x_j, and the singular node replaced by its odd-cancellation
// limit (h u'(x_j)/pi, u' by 6th-order finite differences).
// Independent of the FFT path; this is the oracle for apply_T_delta.
double quadrature_T_oracle(const ModelParams& params, const RealField& u, int node_index);

// True when more than 1e-8 of ||u||_2^2 sits in the outer 10% of the domain
// (periodization contaminates the oracle).
bool quadrature_oracle_contaminated(const RealField& u);

// ||<x>^alpha u||_2 with <x> = (1+x^2)^{1/2} on centered coordinates.
double weighted_norm(const RealField& u, double alpha);

}  // namespace ilw

#endif
