#pragma once

#include <array>

namespace psido {

/// Euclidean four-momentum, metric diag(1,1,1,1).
struct Momentum4 {
    std::array<double, 4> k{0, 0, 0, 0};

    double squared() const { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3]; }
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Momentum-space symbol of the gauge-field operator at gauge parameter alpha.
struct GaugeSymbol {
    double alpha = 1.0;
    Matrix4 sigma{};

    /// Symmetry defect, should be exactly zero.
    double asymmetry() const;
};

struct PropagatorCoefficients {
    double a;  // coefficient of g^{mu nu}, equal to 1/k^2
    double b;  // coefficient of k^mu k^nu, equal to (alpha-1)/k^4
};

/// sigma_{mu nu} = k^2 g_{mu nu} + (1/alpha - 1) k_mu k_nu; alpha must be nonzero.
GaugeSymbol gauge_symbol(const Momentum4& k, double alpha);

/// Closed-form inverse coefficients (A, B) = (1/k^2, (alpha-1)/k^4);
/// k = 0 is the symbol's pole and is rejected.
PropagatorCoefficients invert_gauge_symbol(const GaugeSymbol& sigma, const Momentum4& k,
                                           double alpha);

/// Assembles Sigma^{mu nu} = A g^{mu nu} + B k^mu k^nu.
Matrix4 assemble_inverse(const PropagatorCoefficients& c, const Momentum4& k);

/// max |sigma Sigma - identity| entrywise.
double identity_residual(const GaugeSymbol& sigma, const Matrix4& inverse);

/// Position-space photon propagator in Feynman gauge:
/// g^{mu nu} / (4 pi^2 |x-y|^2).  Rejects coincident points and alpha != 1
/// (the longitudinal term is provided in momentum space only).
Matrix4 euclidean_propagator(const std::array<double, 4>& x_minus_y, double alpha);

}  // namespace psido
