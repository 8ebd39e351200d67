#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "psido/multi_index.hpp"
#include "psido/poly_symbol.hpp"

namespace psido {

/// Black-box symbol sample sigma(x, xi).
using SampledSymbol =
    std::function<std::complex<double>(std::span<const double>, std::span<const double>)>;

struct SymbolClassEntry {
    MultiIndex j;      // x-derivative order
    MultiIndex k;      // xi-derivative order
    double slope;      // fitted growth exponent of |d^j_x d^k_xi sigma| vs (1+|xi|)
    double residual;   // max deviation of log-magnitudes from the fit
    double omega_est;  // slope + rho|k| - (1-rho)|j|
};

struct SymbolClassEstimate {
    double omega;  // max of the per-(j,k) estimates
    double rho;
    std::vector<SymbolClassEntry> entries;
};

/// Fits growth exponents of mixed derivatives over dyadic |xi| in [2^4, 2^10]
/// on a compact x box, by log-log least squares.  Derivatives are central
/// finite differences with steps 1e-4*(1+|xi|) in xi and 1e-4 in x.
SymbolClassEstimate estimate_symbol_class(const SampledSymbol& sigma, int n, double rho,
                                          const MultiIndex& j_max, const MultiIndex& k_max,
                                          const std::vector<std::array<double, 2>>& x_box);

/// Convenience adaptor for polynomial symbols.
SampledSymbol sampled_from_poly(const PolySymbol& sigma);

}  // namespace psido
