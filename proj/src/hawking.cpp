#include "psido/hawking.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psido {

using std::numbers::pi;
using cd = std::complex<double>;

SchwarzschildParams::SchwarzschildParams(double m) : mass(m), kappa(1.0 / (4.0 * m)) {
    if (!(m > 0.0)) throw std::invalid_argument("SchwarzschildParams: mass must be positive");
}

std::pair<double, double> radial_operator_coeffs(double r, double m) {
    if (m < 0.0) throw std::invalid_argument("radial_operator_coeffs: negative mass");
    if (m > 0.0 && r <= 2.0 * m)
        throw std::domain_error("radial_operator_coeffs: r must exceed the horizon 2m");
    if (m == 0.0 && r <= 0.0)
        throw std::domain_error("radial_operator_coeffs: r must be positive");
    const double f = 1.0 - 2.0 * m / r;
    return {r * r * f, r * r / f};
}

void RadialEigenproblem::validate() const {
    if (mass < 0.0) throw std::invalid_argument("RadialEigenproblem: negative mass");
    if (!(radius > 2.0 * mass))
        throw std::invalid_argument("RadialEigenproblem: radius must exceed 2m");
    if (count < 1) throw std::invalid_argument("RadialEigenproblem: count must be >= 1");
}

namespace {

// Dirichlet mismatch u(R; lambda) for the shooting method.
//
// m > 0: integrates in t = log(r - 2m); the oscillation near the horizon is
// uniform in t, so fixed-step RK4 resolves it.  State y = (u, p u') with
//   du/dt = y2 / r,   d(p u')/dt = -lambda^2 r^3 u,   r = 2m + e^t.
// m = 0: integrates in r with the series start of the branch bounded at 0.
double shoot(double lambda, const RadialEigenproblem& prob, int steps) {
    const double m = prob.mass;
    const double R = prob.radius;
    if (m > 0.0) {
        const double eps = 1e-6 * (R - 2.0 * m);
        const double t0 = std::log(eps);
        const double t1 = std::log(R - 2.0 * m);
        const double h = (t1 - t0) / steps;
        double y1 = 0.0;
        double y2 = radial_operator_coeffs(2.0 * m + eps, m).first;  // u'(2m) = 1
        auto rhs = [&](double t, double u, double v, double& du, double& dv) {
            const double r = 2.0 * m + std::exp(t);
            du = v / r;
            dv = -lambda * lambda * r * r * r * u;
        };
        double t = t0;
        for (int i = 0; i < steps; ++i) {
            double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
            rhs(t, y1, y2, k1u, k1v);
            rhs(t + 0.5 * h, y1 + 0.5 * h * k1u, y2 + 0.5 * h * k1v, k2u, k2v);
            rhs(t + 0.5 * h, y1 + 0.5 * h * k2u, y2 + 0.5 * h * k2v, k3u, k3v);
            rhs(t + h, y1 + h * k3u, y2 + h * k3v, k4u, k4v);
            y1 += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
            y2 += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
            t += h;
        }
        return y1;
    }

    // flat limit: (r^2 u')' + lambda^2 r^2 u = 0, u bounded at the origin
    const double eps = 1e-6 * R;
    const double lr = lambda * eps;
    double y1 = 1.0 - lr * lr / 6.0 + lr * lr * lr * lr / 120.0;
    double y2 = eps * eps * (-lambda * lambda * eps / 3.0 + std::pow(lambda, 4) * eps * eps * eps / 30.0);
    auto rhs = [&](double r, double u, double v, double& du, double& dv) {
        du = v / (r * r);
        dv = -lambda * lambda * r * r * u;
    };
    const double h = (R - eps) / steps;
    double r = eps;
    for (int i = 0; i < steps; ++i) {
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        rhs(r, y1, y2, k1u, k1v);
        rhs(r + 0.5 * h, y1 + 0.5 * h * k1u, y2 + 0.5 * h * k1v, k2u, k2v);
        rhs(r + 0.5 * h, y1 + 0.5 * h * k2u, y2 + 0.5 * h * k2v, k3u, k3v);
        rhs(r + h, y1 + h * k3u, y2 + h * k3v, k4u, k4v);
        y1 += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        y2 += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        r += h;
    }
    return y1;
}

}  // namespace

SpectrumResult solve_radial_eigenvalues(const RadialEigenproblem& prob) {
    prob.validate();
    const double span = prob.radius - 2.0 * prob.mass;
    const double dlam = 0.1 / span;
    const int steps = std::max(6000, 800 * prob.count);

    SpectrumResult result;
    double lo = dlam;
    double flo = shoot(lo, prob, steps);
    int scans = 0;
    const int max_scans = 200000;
    while (static_cast<int>(result.eigenvalues.size()) < prob.count) {
        if (++scans > max_scans)
            throw std::runtime_error(
                "solve_radial_eigenvalues: bracketing failure at scan step " +
                std::to_string(dlam) + " after " + std::to_string(max_scans) + " steps");
        const double hi = lo + dlam;
        const double fhi = shoot(hi, prob, steps);
        if ((flo < 0.0) != (fhi < 0.0)) {
            double a = lo, b = hi, fa = flo;
            while (b - a > 1e-8) {
                const double mid = 0.5 * (a + b);
                const double fm = shoot(mid, prob, steps);
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            result.eigenvalues.push_back(0.5 * (a + b));
        }
        lo = hi;
        flo = fhi;
    }

    const int n = prob.count;
    if (n >= 2) {
        // least-squares arithmetic-progression fit lambda_k ~ theta + k*spacing
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = 0; k < n; ++k) {
            sx += k + 1;
            sy += result.eigenvalues[static_cast<std::size_t>(k)];
            sxx += double(k + 1) * (k + 1);
            sxy += (k + 1) * result.eigenvalues[static_cast<std::size_t>(k)];
        }
        result.mean_spacing = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        result.theta_fit = (sy - result.mean_spacing * sx) / n;
        for (int k = 0; k < n; ++k)
            result.fit_residual = std::max(
                result.fit_residual,
                std::abs(result.eigenvalues[static_cast<std::size_t>(k)] -
                         (result.theta_fit + result.mean_spacing * (k + 1))));
    }
    return result;
}

std::vector<double> asymptotic_spectrum(double theta, double m, int n_min, int n_max) {
    if (!(m > 0.0)) throw std::invalid_argument("asymptotic_spectrum: mass must be positive");
    if (n_max < n_min) throw std::invalid_argument("asymptotic_spectrum: empty index range");
    std::vector<double> out;
    for (int n = n_min; n <= n_max; ++n) out.push_back(theta / (2.0 * m) + n * pi / (2.0 * m));
    return out;
}

std::complex<double> hurwitz_zeta(std::complex<double> s, std::complex<double> a) {
    if (s == cd(1.0, 0.0)) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::floor(a.real()))
        throw std::domain_error("hurwitz_zeta: a is a non-positive integer");
    constexpr int M = 50;
    if (a.real() + M <= 1.0)
        throw std::domain_error("hurwitz_zeta: real part of a too negative");

    cd sum = 0.0;
    for (int n = 0; n < M; ++n) sum += std::pow(cd(n, 0.0) + a, -s);

    const cd q = cd(M, 0.0) + a;
    sum += std::pow(q, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(q, -s);

    // Euler-Maclaurin tail, Bernoulli numbers B2..B12
    static constexpr double bern[6] = {1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0,
                                       -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
    static constexpr double fact2j[6] = {2.0, 24.0, 720.0, 40320.0, 3628800.0, 479001600.0};
    cd rising = s;  // s (s+1) ... (s + 2j - 2)
    for (int j = 1; j <= 6; ++j) {
        sum += bern[j - 1] / fact2j[j - 1] * rising * std::pow(q, -s - cd(2.0 * j - 1.0, 0.0));
        rising *= (s + cd(2.0 * j - 1.0, 0.0)) * (s + cd(2.0 * j, 0.0));
    }
    return sum;
}

std::complex<double> SpectralZetaSpec::shifted_argument() const {
    return cd(1.0, kappa * xi / (2.0 * pi));
}

std::complex<double> spectral_zeta(const SpectralZetaSpec& spec) {
    return hurwitz_zeta(spec.s, spec.shifted_argument());
}

std::complex<double> complex_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() > 0.0) return std::tgamma(z.real());
    static const double g[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    z -= 1.0;
    cd x = g[0];
    for (int i = 1; i < 9; ++i) x += g[i] / (z + cd(i, 0.0));
    const cd t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double spectral_density(std::complex<double> s, double omega, double kappa) {
    if (!(omega > 0.0)) throw std::invalid_argument("spectral_density: omega must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("spectral_density: kappa must be positive");
    const double denom = std::expm1(2.0 * pi * omega / kappa);
    if (s.imag() == 0.0) {
        const double sr = s.real();
        return std::pow(2.0 * pi / kappa, sr) * std::pow(omega, sr - 1.0) /
               (std::tgamma(sr) * denom);
    }
    const cd value = std::pow(cd(2.0 * pi / kappa, 0.0), s) *
                     std::pow(cd(omega, 0.0), s - 1.0) / (complex_gamma(s) * denom);
    return value.real();
}

double hawking_density(double m, double omega) {
    if (!(m > 0.0)) throw std::invalid_argument("hawking_density: mass must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("hawking_density: omega must be positive");
    return 2.0 * pi / std::expm1(8.0 * pi * m * omega);
}

}  // namespace psido
