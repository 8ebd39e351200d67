#include "psido/symbol_class.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psido {

namespace {

// Central-difference evaluation of d^j_x d^k_xi sigma, recursing one
// derivative at a time.  Steps: hx fixed, hxi proportional to (1+|xi|).
std::complex<double> fd_derivative(const SampledSymbol& sigma, std::vector<double> x,
                                   std::vector<double> xi, MultiIndex j, MultiIndex k,
                                   double hx, double hxi) {
    for (int a = 0; a < j.dim(); ++a) {
        if (j[a] > 0) {
            j[a] -= 1;
            auto xp = x, xm = x;
            xp[static_cast<std::size_t>(a)] += hx;
            xm[static_cast<std::size_t>(a)] -= hx;
            return (fd_derivative(sigma, xp, xi, j, k, hx, hxi) -
                    fd_derivative(sigma, xm, xi, j, k, hx, hxi)) /
                   (2.0 * hx);
        }
    }
    for (int a = 0; a < k.dim(); ++a) {
        if (k[a] > 0) {
            k[a] -= 1;
            auto xip = xi, xim = xi;
            xip[static_cast<std::size_t>(a)] += hxi;
            xim[static_cast<std::size_t>(a)] -= hxi;
            return (fd_derivative(sigma, x, xip, j, k, hx, hxi) -
                    fd_derivative(sigma, x, xim, j, k, hx, hxi)) /
                   (2.0 * hxi);
        }
    }
    return sigma(x, xi);
}

std::vector<std::vector<double>> ray_directions(int n) {
    std::vector<std::vector<double>> dirs;
    for (int a = 0; a < n; ++a) {
        std::vector<double> d(static_cast<std::size_t>(n), 0.0);
        d[static_cast<std::size_t>(a)] = 1.0;
        dirs.push_back(d);
        d[static_cast<std::size_t>(a)] = -1.0;
        dirs.push_back(d);
    }
    if (n > 1) {
        std::vector<double> d(static_cast<std::size_t>(n), 1.0 / std::sqrt(double(n)));
        dirs.push_back(d);
    }
    return dirs;
}

}  // namespace

SymbolClassEstimate estimate_symbol_class(const SampledSymbol& sigma, int n, double rho,
                                          const MultiIndex& j_max, const MultiIndex& k_max,
                                          const std::vector<std::array<double, 2>>& x_box) {
    if (!(rho > 0.5 && rho <= 1.0))
        throw std::invalid_argument("estimate_symbol_class: rho must lie in (1/2, 1]");
    if (j_max.dim() != n || k_max.dim() != n || static_cast<int>(x_box.size()) != n)
        throw std::invalid_argument("estimate_symbol_class: dimension mismatch");

    // Deterministic x lattice: three points per axis.
    std::vector<std::vector<double>> xs;
    {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        const int per_axis = 3;
        while (true) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) {
                const double lo = x_box[static_cast<std::size_t>(a)][0];
                const double hi = x_box[static_cast<std::size_t>(a)][1];
                x[static_cast<std::size_t>(a)] =
                    lo + (hi - lo) * (idx[static_cast<std::size_t>(a)] + 0.5) / per_axis;
            }
            xs.push_back(x);
            int a = 0;
            for (; a < n; ++a) {
                if (++idx[static_cast<std::size_t>(a)] < per_axis) break;
                idx[static_cast<std::size_t>(a)] = 0;
            }
            if (a == n) break;
        }
    }

    const auto dirs = ray_directions(n);
    std::vector<double> radii;
    for (int e = 4; e <= 10; ++e) radii.push_back(std::pow(2.0, e));

    SymbolClassEstimate est;
    est.rho = rho;
    est.omega = -std::numeric_limits<double>::infinity();

    for (const MultiIndex& j : multi_indices_up_to(n, j_max.order())) {
        if (!j.leq(j_max)) continue;
        for (const MultiIndex& k : multi_indices_up_to(n, k_max.order())) {
            if (!k.leq(k_max)) continue;
            std::vector<double> logR, logM;
            for (double R : radii) {
                double m = 0.0;
                const double hxi = 1e-4 * (1.0 + R);
                for (const auto& x : xs) {
                    for (const auto& d : dirs) {
                        std::vector<double> xi(static_cast<std::size_t>(n));
                        for (int a = 0; a < n; ++a)
                            xi[static_cast<std::size_t>(a)] =
                                R * d[static_cast<std::size_t>(a)];
                        const auto v = fd_derivative(sigma, x, xi, j, k, 1e-4, hxi);
                        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                            throw std::domain_error(
                                "estimate_symbol_class: non-finite derivative samples");
                        m = std::max(m, std::abs(v));
                    }
                }
                if (m > 1e-300) {
                    logR.push_back(std::log(1.0 + R));
                    logM.push_back(std::log(m));
                }
            }
            if (logR.empty()) continue;  // derivative vanishes; no growth constraint
            if (logR.size() < 2)
                throw std::runtime_error("estimate_symbol_class: insufficient samples");

            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double N = static_cast<double>(logR.size());
            for (std::size_t i = 0; i < logR.size(); ++i) {
                sx += logR[i];
                sy += logM[i];
                sxx += logR[i] * logR[i];
                sxy += logR[i] * logM[i];
            }
            const double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
            const double intercept = (sy - slope * sx) / N;
            double resid = 0.0;
            for (std::size_t i = 0; i < logR.size(); ++i)
                resid = std::max(resid, std::abs(logM[i] - intercept - slope * logR[i]));

            SymbolClassEntry e;
            e.j = j;
            e.k = k;
            e.slope = slope;
            e.residual = resid;
            e.omega_est = slope + rho * k.order() - (1.0 - rho) * j.order();
            est.omega = std::max(est.omega, e.omega_est);
            est.entries.push_back(std::move(e));
        }
    }
    if (est.entries.empty())
        throw std::runtime_error("estimate_symbol_class: insufficient samples");
    return est;
}

SampledSymbol sampled_from_poly(const PolySymbol& sigma) {
    return [sigma](std::span<const double> x, std::span<const double> xi) {
        return sigma.eval(x, xi);
    };
}

}  // namespace psido
