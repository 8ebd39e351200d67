#include "psido/qed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psido {

double GaugeSymbol::asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(sigma[i][j] - sigma[j][i]));
    return m;
}

GaugeSymbol gauge_symbol(const Momentum4& k, double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("gauge_symbol: alpha must be nonzero");
    GaugeSymbol s;
    s.alpha = alpha;
    const double k2 = k.squared();
    const double c = 1.0 / alpha - 1.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            s.sigma[mu][nu] = (mu == nu ? k2 : 0.0) + c * k.k[mu] * k.k[nu];
    return s;
}

PropagatorCoefficients invert_gauge_symbol(const GaugeSymbol& sigma, const Momentum4& k,
                                           double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("invert_gauge_symbol: alpha must be nonzero");
    const double k2 = k.squared();
    if (k2 == 0.0)
        throw std::domain_error("invert_gauge_symbol: symbol is singular at k = 0");
    (void)sigma;
    return {1.0 / k2, (alpha - 1.0) / (k2 * k2)};
}

Matrix4 assemble_inverse(const PropagatorCoefficients& c, const Momentum4& k) {
    Matrix4 m{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            m[mu][nu] = (mu == nu ? c.a : 0.0) + c.b * k.k[mu] * k.k[nu];
    return m;
}

double identity_residual(const GaugeSymbol& sigma, const Matrix4& inverse) {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int lam = 0; lam < 4; ++lam) {
            double acc = 0.0;
            for (int nu = 0; nu < 4; ++nu) acc += sigma.sigma[mu][nu] * inverse[nu][lam];
            worst = std::max(worst, std::abs(acc - (mu == lam ? 1.0 : 0.0)));
        }
    }
    return worst;
}

Matrix4 euclidean_propagator(const std::array<double, 4>& x_minus_y, double alpha) {
    if (alpha != 1.0)
        throw std::invalid_argument(
            "euclidean_propagator: closed form available in Feynman gauge (alpha = 1) only");
    double r2 = 0.0;
    for (double v : x_minus_y) r2 += v * v;
    if (r2 == 0.0) throw std::domain_error("euclidean_propagator: coincident points");
    const double val = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * r2);
    Matrix4 m{};
    for (int mu = 0; mu < 4; ++mu) m[mu][mu] = val;
    return m;
}

}  // namespace psido
