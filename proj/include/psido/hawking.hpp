#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace psido {

/// Schwarzschild mass in geometric units with the derived surface gravity.
struct SchwarzschildParams {
    double mass;
    double kappa;  // 1/(4m)

    explicit SchwarzschildParams(double m);
};

/// Sturm-Liouville coefficients of the radial eigenproblem
/// (p u')' + lambda^2 w u = 0:  p = r^2 (1 - 2m/r), w = r^2 (1 - 2m/r)^{-1}.
std::pair<double, double> radial_operator_coeffs(double r, double m);

struct RadialEigenproblem {
    double mass = 0.0;   // m >= 0; m = 0 is the flat limit
    double radius = 1.0; // outer Dirichlet radius R > 2m
    int count = 1;       // eigenvalues requested

    void validate() const;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;   // strictly increasing
    double mean_spacing = 0.0;         // consecutive-difference average
    double theta_fit = 0.0;            // phase of the arithmetic-progression fit
    double fit_residual = 0.0;         // max |lambda_n - (theta + n*spacing)|
};

/// Shooting from the inner endpoint (horizon for m > 0, origin for m = 0)
/// with Dirichlet matching at R; brackets sign changes of u(R; lambda) on a
/// lambda scan and bisects to 1e-8.
SpectrumResult solve_radial_eigenvalues(const RadialEigenproblem& prob);

/// The arithmetic-progression spectrum lambda_n = theta/(2m) + n pi/(2m).
std::vector<double> asymptotic_spectrum(double theta, double m, int n_min, int n_max);

/// Hurwitz zeta for complex s and complex a (a with positive real part and
/// never a non-positive integer), via a 50-term direct sum plus the
/// Euler-Maclaurin tail with Bernoulli numbers through B12.
std::complex<double> hurwitz_zeta(std::complex<double> s, std::complex<double> a);

struct SpectralZetaSpec {
    std::complex<double> s;
    double xi = 0.0;
    double kappa = 1.0;

    /// Second Hurwitz argument 1 + i kappa xi / (2 pi).
    std::complex<double> shifted_argument() const;
};

/// zeta_H(s, 1 + i kappa xi / (2 pi)); the named pipeline stage between the
/// eigenvalue sum and its Fourier dual.
std::complex<double> spectral_zeta(const SpectralZetaSpec& spec);

/// Closed-form Fourier dual of the spectral zeta:
/// (2 pi / kappa)^s omega^{s-1} / (Gamma(s) (e^{2 pi omega / kappa} - 1)).
/// Real-valued for real s; for complex s the real part is returned.
double spectral_density(std::complex<double> s, double omega, double kappa);

/// kappa * spectral_density at s = 1 with kappa = 1/(4m):
/// 2 pi / (e^{8 pi m omega} - 1).
double hawking_density(double m, double omega);

/// Gamma function for complex argument (Lanczos approximation; exact
/// std::tgamma on the real axis).
std::complex<double> complex_gamma(std::complex<double> z);

}  // namespace psido
