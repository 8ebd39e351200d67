#include "psido/chart.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace psido {

// ---------------------------------------------------------------- Jet ----

Jet::Jet(int n, int order) : n_(n), order_(order) {
    if (n < 1 || n > 4) throw std::invalid_argument("Jet: dimension must be 1..4");
    if (order < 0 || order > 8) throw std::invalid_argument("Jet: order must be 0..8");
    stride_.resize(static_cast<std::size_t>(n));
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) {
        stride_[static_cast<std::size_t>(a)] = s;
        s *= static_cast<std::size_t>(order + 1);
    }
    c_.assign(s, 0.0);
}

Jet Jet::constant(int n, int order, double v) {
    Jet j(n, order);
    j.c_[0] = v;
    return j;
}

Jet Jet::linear(int n, int order, std::span<const double> v) {
    Jet j(n, order);
    if (order >= 1)
        for (int a = 0; a < n; ++a) j.c_[j.stride_[static_cast<std::size_t>(a)]] = v[static_cast<std::size_t>(a)];
    return j;
}

std::size_t Jet::index(std::span<const int> expo) const {
    std::size_t idx = 0;
    for (int a = 0; a < n_; ++a)
        idx += static_cast<std::size_t>(expo[static_cast<std::size_t>(a)]) *
               stride_[static_cast<std::size_t>(a)];
    return idx;
}

double Jet::coeff(std::span<const int> expo) const {
    int total = 0;
    for (int a = 0; a < n_; ++a) {
        if (expo[static_cast<std::size_t>(a)] < 0 || expo[static_cast<std::size_t>(a)] > order_)
            return 0.0;
        total += expo[static_cast<std::size_t>(a)];
    }
    if (total > order_) return 0.0;
    return c_[index(expo)];
}

void Jet::set_coeff(std::span<const int> expo, double v) {
    int total = 0;
    for (int a = 0; a < n_; ++a) total += expo[static_cast<std::size_t>(a)];
    if (total > order_) throw std::invalid_argument("Jet::set_coeff: beyond truncation order");
    c_[index(expo)] = v;
}

Jet Jet::operator+(const Jet& o) const {
    if (n_ != o.n_ || order_ != o.order_)
        throw std::invalid_argument("Jet: mixed dimensions or truncation orders");
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Jet Jet::operator-(const Jet& o) const {
    if (n_ != o.n_ || order_ != o.order_)
        throw std::invalid_argument("Jet: mixed dimensions or truncation orders");
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

Jet Jet::scaled(double s) const {
    Jet r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

namespace {
// Odometer over exponent tuples with total degree <= order.
bool advance(std::vector<int>& e, int order) {
    int total = 0;
    for (int v : e) total += v;
    for (std::size_t a = 0; a < e.size(); ++a) {
        if (total + 1 <= order) {
            ++e[a];
            return true;
        }
        total -= e[a];
        e[a] = 0;
    }
    return false;
}
}  // namespace

Jet Jet::operator*(const Jet& o) const {
    if (n_ != o.n_ || order_ != o.order_)
        throw std::invalid_argument("Jet: mixed dimensions or truncation orders");
    Jet r(n_, order_);
    std::vector<int> ea(static_cast<std::size_t>(n_), 0);
    std::vector<int> sum(static_cast<std::size_t>(n_), 0);
    do {
        const double ca = c_[index(ea)];
        if (ca == 0.0) continue;
        int ta = 0;
        for (int v : ea) ta += v;
        std::vector<int> eb(static_cast<std::size_t>(n_), 0);
        do {
            int tb = 0;
            for (int v : eb) tb += v;
            if (ta + tb > order_) continue;
            const double cb = o.c_[o.index(eb)];
            if (cb == 0.0) continue;
            for (int a = 0; a < n_; ++a)
                sum[static_cast<std::size_t>(a)] =
                    ea[static_cast<std::size_t>(a)] + eb[static_cast<std::size_t>(a)];
            r.c_[r.index(sum)] += ca * cb;
        } while (advance(eb, order_));
    } while (advance(ea, order_));
    return r;
}

Jet Jet::partial(int axis) const {
    Jet r(n_, order_);
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    do {
        if (e[static_cast<std::size_t>(axis)] == 0) continue;
        std::vector<int> src = e;
        const double k = static_cast<double>(e[static_cast<std::size_t>(axis)]);
        std::vector<int> dst = e;
        dst[static_cast<std::size_t>(axis)] -= 1;
        r.c_[r.index(dst)] = k * c_[index(src)];
    } while (advance(e, order_));
    return r;
}

Jet Jet::extended(int new_order) const {
    if (new_order < order_) throw std::invalid_argument("Jet::extended: cannot shrink");
    Jet r(n_, new_order);
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    do {
        r.set_coeff(e, c_[index(e)]);
    } while (advance(e, order_));
    return r;
}

double Jet::eval(std::span<const double> y) const {
    double acc = 0.0;
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    do {
        const double c = c_[index(e)];
        if (c == 0.0) continue;
        double mono = 1.0;
        for (int a = 0; a < n_; ++a)
            for (int j = 0; j < e[static_cast<std::size_t>(a)]; ++j)
                mono *= y[static_cast<std::size_t>(a)];
        acc += c * mono;
    } while (advance(e, order_));
    return acc;
}

double Jet::partial_value(std::span<const int> expo) const {
    double fact = 1.0;
    for (int a = 0; a < n_; ++a)
        for (int k = 2; k <= expo[static_cast<std::size_t>(a)]; ++k) fact *= k;
    return coeff(expo) * fact;
}

// ------------------------------------------------------------- series ----

namespace series {

Coeffs constant(double v, int order) {
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = v;
    return c;
}

Coeffs linear(double a, double b, double x0, int order) {
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = a * x0 + b;
    if (order >= 1) c[1] = a;
    return c;
}

Coeffs monomial(int k, double x0, int order) {
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    double binom = 1.0;
    for (int m = 0; m <= std::min(order, k); ++m) {
        c[static_cast<std::size_t>(m)] = binom * std::pow(x0, k - m);
        binom = binom * (k - m) / (m + 1);
    }
    return c;
}

Coeffs reciprocal_linear(double a, double b, double x0, int order) {
    const double s = a * x0 + b;
    if (s == 0.0) throw std::domain_error("series: reciprocal evaluated at its pole");
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    double v = 1.0 / s;
    for (int m = 0; m <= order; ++m) {
        c[static_cast<std::size_t>(m)] = v;
        v *= -a / s;
    }
    return c;
}

Coeffs sin_linear(double a, double b, double x0, int order) {
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    const double u = a * x0 + b;
    double fact = 1.0;
    for (int m = 0; m <= order; ++m) {
        if (m > 0) fact *= m;
        c[static_cast<std::size_t>(m)] =
            std::pow(a, m) * std::sin(u + m * std::numbers::pi / 2.0) / fact;
    }
    return c;
}

Coeffs cos_linear(double a, double b, double x0, int order) {
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    const double u = a * x0 + b;
    double fact = 1.0;
    for (int m = 0; m <= order; ++m) {
        if (m > 0) fact *= m;
        c[static_cast<std::size_t>(m)] =
            std::pow(a, m) * std::cos(u + m * std::numbers::pi / 2.0) / fact;
    }
    return c;
}

Coeffs cot(double x0, int order) {
    const double s = std::sin(x0);
    if (s == 0.0) throw std::domain_error("series: cot evaluated at its pole");
    Coeffs c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = std::cos(x0) / s;
    for (int m = 0; m < order; ++m) {
        double conv = 0.0;
        for (int i = 0; i <= m; ++i)
            conv += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(m - i)];
        c[static_cast<std::size_t>(m) + 1] = -((m == 0 ? 1.0 : 0.0) + conv) / (m + 1);
    }
    return c;
}

Coeffs product(const Coeffs& a, const Coeffs& b) {
    Coeffs c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < c.size() && j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

Coeffs sum(const Coeffs& a, const Coeffs& b) {
    Coeffs c = a;
    for (std::size_t i = 0; i < b.size() && i < c.size(); ++i) c[i] += b[i];
    return c;
}

Coeffs scale(const Coeffs& a, double s) {
    Coeffs c = a;
    for (auto& v : c) v *= s;
    return c;
}

Jet lift(const Coeffs& c, int n, int axis, int order) {
    Jet j(n, order);
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int m = 0; m <= order && m < static_cast<int>(c.size()); ++m) {
        e[static_cast<std::size_t>(axis)] = m;
        j.set_coeff(e, c[static_cast<std::size_t>(m)]);
    }
    return j;
}

}  // namespace series

// --------------------------------------------------------- polynomial ----

double poly_eval(const Polynomial& p, std::span<const double> x) {
    double acc = 0.0;
    for (const auto& t : p) {
        double mono = t.coef;
        for (std::size_t a = 0; a < t.expo.size(); ++a)
            for (int j = 0; j < t.expo[a]; ++j) mono *= x[a];
        acc += mono;
    }
    return acc;
}

Jet poly_jet(const Polynomial& p, const Vec& x0, int order) {
    const int n = static_cast<int>(x0.size());
    Jet j(n, order);
    // shift each monomial: prod_a (x0_a + y_a)^{e_a}
    for (const auto& t : p) {
        Jet mono = Jet::constant(n, order, t.coef);
        for (int a = 0; a < n; ++a) {
            const int k = a < static_cast<int>(t.expo.size()) ? t.expo[static_cast<std::size_t>(a)] : 0;
            if (k == 0) continue;
            mono = mono * series::lift(series::monomial(k, x0[static_cast<std::size_t>(a)], order),
                                       n, a, order);
        }
        j = j + mono;
    }
    return j;
}

// ------------------------------------------------------ ChartConnection ----

Jet ChartConnection::gamma_jet(int p, int i, int j, const Vec& x0, int order) const {
    const auto& f = gamma_[static_cast<std::size_t>((p * n_ + i) * n_ + j)];
    if (!f) return Jet(n_, order);
    return f(x0, order);
}

double ChartConnection::gamma(int p, int i, int j, const Vec& x) const {
    return gamma_jet(p, i, j, x, 0).value();
}

Jet ChartConnection::metric_jet(int i, int j, const Vec& x0, int order) const {
    if (metric_.empty()) throw std::logic_error("ChartConnection: chart has no metric");
    const auto& f = metric_[static_cast<std::size_t>(i * n_ + j)];
    if (!f) return Jet(n_, order);
    return f(x0, order);
}

Jet ChartConnection::inverse_metric_jet(int i, int j, const Vec& x0, int order) const {
    if (inverse_.empty()) throw std::logic_error("ChartConnection: chart has no inverse metric");
    const auto& f = inverse_[static_cast<std::size_t>(i * n_ + j)];
    if (!f) return Jet(n_, order);
    return f(x0, order);
}

double ChartConnection::metric(int i, int j, const Vec& x) const {
    return metric_jet(i, j, x, 0).value();
}

double ChartConnection::inverse_metric(int i, int j, const Vec& x) const {
    return inverse_metric_jet(i, j, x, 0).value();
}

std::vector<double> ChartConnection::torsion(const Vec& x) const {
    std::vector<double> t(static_cast<std::size_t>(n_ * n_ * n_), 0.0);
    for (int p = 0; p < n_; ++p)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                t[static_cast<std::size_t>((p * n_ + i) * n_ + j)] =
                    gamma(p, i, j, x) - gamma(p, j, i, x);
    return t;
}

bool ChartConnection::inside_box(const Vec& x) const {
    for (int a = 0; a < n_; ++a)
        if (x[static_cast<std::size_t>(a)] < box_[static_cast<std::size_t>(a)][0] ||
            x[static_cast<std::size_t>(a)] > box_[static_cast<std::size_t>(a)][1])
            return false;
    return true;
}

double ChartConnection::scale() const {
    double s = box_[0][1] - box_[0][0];
    for (const auto& b : box_) s = std::min(s, b[1] - b[0]);
    return s;
}

ChartConnection ChartConnection::flat(int n, std::vector<std::array<double, 2>> box) {
    ChartConnection c;
    c.n_ = n;
    c.name_ = "flat";
    c.box_ = box.empty() ? std::vector<std::array<double, 2>>(
                               static_cast<std::size_t>(n), std::array<double, 2>{-2.0, 2.0})
                         : std::move(box);
    c.gamma_.assign(static_cast<std::size_t>(n * n * n), nullptr);
    auto delta = [n](int i, int j) {
        return [n, i, j](const Vec&, int order) {
            return Jet::constant(n, order, i == j ? 1.0 : 0.0);
        };
    };
    c.metric_.resize(static_cast<std::size_t>(n * n));
    c.inverse_.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c.metric_[static_cast<std::size_t>(i * n + j)] = delta(i, j);
            c.inverse_[static_cast<std::size_t>(i * n + j)] = delta(i, j);
        }
    return c;
}

ChartConnection ChartConnection::sphere2(std::vector<std::array<double, 2>> box) {
    ChartConnection c;
    c.n_ = 2;
    c.name_ = "sphere2";
    c.box_ = box.empty()
                 ? std::vector<std::array<double, 2>>{{0.4, 2.7}, {0.0, 6.2}}
                 : std::move(box);
    c.gamma_.assign(8, nullptr);
    // theta = axis 0, phi = axis 1; unit radius
    auto minus_sincos = [](const Vec& x0, int order) {
        return series::lift(series::scale(series::sin_linear(2.0, 0.0, x0[0], order), -0.5), 2, 0,
                            order);
    };
    auto cot_theta = [](const Vec& x0, int order) {
        return series::lift(series::cot(x0[0], order), 2, 0, order);
    };
    c.gamma_[static_cast<std::size_t>((0 * 2 + 1) * 2 + 1)] = minus_sincos;  // ^theta_{phi phi}
    c.gamma_[static_cast<std::size_t>((1 * 2 + 0) * 2 + 1)] = cot_theta;    // ^phi_{theta phi}
    c.gamma_[static_cast<std::size_t>((1 * 2 + 1) * 2 + 0)] = cot_theta;    // ^phi_{phi theta}

    c.metric_.resize(4);
    c.inverse_.resize(4);
    c.metric_[0] = [](const Vec&, int order) { return Jet::constant(2, order, 1.0); };
    c.metric_[3] = [](const Vec& x0, int order) {
        // sin^2 = (1 - cos 2x)/2
        auto s = series::scale(series::cos_linear(2.0, 0.0, x0[0], order), -0.5);
        s[0] += 0.5;
        return series::lift(s, 2, 0, order);
    };
    c.inverse_[0] = [](const Vec&, int order) { return Jet::constant(2, order, 1.0); };
    c.inverse_[3] = [](const Vec& x0, int order) {
        // 1/sin^2 = 1 + cot^2
        auto ct = series::cot(x0[0], order);
        auto s = series::product(ct, ct);
        s[0] += 1.0;
        return series::lift(s, 2, 0, order);
    };
    return c;
}

ChartConnection ChartConnection::schwarzschild_spatial(double mass,
                                                       std::vector<std::array<double, 2>> box) {
    if (!(mass > 0.0))
        throw std::invalid_argument("schwarzschild_spatial: mass must be positive");
    ChartConnection c;
    c.n_ = 3;
    c.name_ = "schwarzschild_spatial";
    c.box_ = box.empty()
                 ? std::vector<std::array<double, 2>>{{2.5 * mass, 12.0 * mass}, {0.4, 2.7}, {0.0, 6.2}}
                 : std::move(box);
    c.gamma_.assign(27, nullptr);
    const double m = mass;
    const int n = 3;
    auto idx = [n](int p, int i, int j) { return static_cast<std::size_t>((p * n + i) * n + j); };

    // r = axis 0, theta = axis 1, phi = axis 2
    c.gamma_[idx(0, 0, 0)] = [m](const Vec& x0, int order) {
        // -m / (r (r - 2m))
        auto s = series::product(series::reciprocal_linear(1.0, 0.0, x0[0], order),
                                 series::reciprocal_linear(1.0, -2.0 * m, x0[0], order));
        return series::lift(series::scale(s, -m), 3, 0, order);
    };
    c.gamma_[idx(0, 1, 1)] = [m](const Vec& x0, int order) {
        return series::lift(series::linear(-1.0, 2.0 * m, x0[0], order), 3, 0, order);
    };
    c.gamma_[idx(0, 2, 2)] = [m](const Vec& x0, int order) {
        // -(r-2m) sin^2(theta)
        Jet radial =
            series::lift(series::linear(-1.0, 2.0 * m, x0[0], order), 3, 0, order);
        auto s = series::scale(series::cos_linear(2.0, 0.0, x0[1], order), -0.5);
        s[0] += 0.5;
        return radial * series::lift(s, 3, 1, order);
    };
    auto inv_r = [](const Vec& x0, int order) {
        return series::lift(series::reciprocal_linear(1.0, 0.0, x0[0], order), 3, 0, order);
    };
    c.gamma_[idx(1, 0, 1)] = inv_r;
    c.gamma_[idx(1, 1, 0)] = inv_r;
    c.gamma_[idx(2, 0, 2)] = inv_r;
    c.gamma_[idx(2, 2, 0)] = inv_r;
    c.gamma_[idx(1, 2, 2)] = [](const Vec& x0, int order) {
        return series::lift(series::scale(series::sin_linear(2.0, 0.0, x0[1], order), -0.5), 3, 1,
                            order);
    };
    auto cot_theta = [](const Vec& x0, int order) {
        return series::lift(series::cot(x0[1], order), 3, 1, order);
    };
    c.gamma_[idx(2, 1, 2)] = cot_theta;
    c.gamma_[idx(2, 2, 1)] = cot_theta;

    c.metric_.resize(9);
    c.inverse_.resize(9);
    c.metric_[0] = [m](const Vec& x0, int order) {
        // r/(r-2m)
        auto s = series::product(series::monomial(1, x0[0], order),
                                 series::reciprocal_linear(1.0, -2.0 * m, x0[0], order));
        return series::lift(s, 3, 0, order);
    };
    c.metric_[4] = [](const Vec& x0, int order) {
        return series::lift(series::monomial(2, x0[0], order), 3, 0, order);
    };
    c.metric_[8] = [](const Vec& x0, int order) {
        Jet r2 = series::lift(series::monomial(2, x0[0], order), 3, 0, order);
        auto s = series::scale(series::cos_linear(2.0, 0.0, x0[1], order), -0.5);
        s[0] += 0.5;
        return r2 * series::lift(s, 3, 1, order);
    };
    c.inverse_[0] = [m](const Vec& x0, int order) {
        // (r-2m)/r
        auto s = series::product(series::linear(1.0, -2.0 * m, x0[0], order),
                                 series::reciprocal_linear(1.0, 0.0, x0[0], order));
        return series::lift(s, 3, 0, order);
    };
    c.inverse_[4] = [](const Vec& x0, int order) {
        auto inv = series::reciprocal_linear(1.0, 0.0, x0[0], order);
        return series::lift(series::product(inv, inv), 3, 0, order);
    };
    c.inverse_[8] = [](const Vec& x0, int order) {
        auto inv = series::reciprocal_linear(1.0, 0.0, x0[0], order);
        Jet inv_r2 = series::lift(series::product(inv, inv), 3, 0, order);
        auto ct = series::cot(x0[1], order);
        auto s = series::product(ct, ct);
        s[0] += 1.0;
        return inv_r2 * series::lift(s, 3, 1, order);
    };
    return c;
}

ChartConnection ChartConnection::custom_polynomial(int n, std::vector<Polynomial> christoffel,
                                                   std::vector<std::array<double, 2>> box,
                                                   std::vector<Polynomial> metric,
                                                   std::vector<Polynomial> inverse_metric,
                                                   std::string name) {
    if (static_cast<int>(christoffel.size()) != n * n * n)
        throw std::invalid_argument("custom_polynomial: need n^3 christoffel polynomials");
    ChartConnection c;
    c.n_ = n;
    c.name_ = std::move(name);
    c.box_ = box.empty() ? std::vector<std::array<double, 2>>(
                               static_cast<std::size_t>(n), std::array<double, 2>{-1.0, 1.0})
                         : std::move(box);
    c.gamma_.resize(static_cast<std::size_t>(n * n * n));
    for (std::size_t k = 0; k < christoffel.size(); ++k) {
        if (christoffel[k].empty()) continue;
        Polynomial p = christoffel[k];
        c.gamma_[k] = [p](const Vec& x0, int order) { return poly_jet(p, x0, order); };
    }
    auto fill = [&](std::vector<JetProvider>& dst, std::vector<Polynomial>& src) {
        if (src.empty()) return;
        if (static_cast<int>(src.size()) != n * n)
            throw std::invalid_argument("custom_polynomial: need n^2 metric polynomials");
        dst.resize(static_cast<std::size_t>(n * n));
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (src[k].empty()) continue;
            Polynomial p = src[k];
            dst[k] = [p](const Vec& x0, int order) { return poly_jet(p, x0, order); };
        }
    };
    fill(c.metric_, metric);
    fill(c.inverse_, inverse_metric);
    return c;
}

// Finite-difference Taylor coefficients of a black-box scalar through
// jet order 2 (4th-order stencils).
Jet fd_scalar_jet(const std::function<double(const Vec&)>& f, const Vec& x0, int n, int order,
                  double h) {
    if (order > 2)
        throw std::invalid_argument("fd_scalar_jet: jets beyond order 2 unsupported");
    Jet j(n, std::min(order, 8));
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    j.set_coeff(e, f(x0));
    if (order == 0) return j;
    auto at = [&](int a, double da, int b, double db) {
        Vec x = x0;
        x[static_cast<std::size_t>(a)] += da;
        if (b >= 0) x[static_cast<std::size_t>(b)] += db;
        return f(x);
    };
    for (int a = 0; a < n; ++a) {
        const double d1 = (-at(a, 2 * h, -1, 0) + 8 * at(a, h, -1, 0) - 8 * at(a, -h, -1, 0) +
                           at(a, -2 * h, -1, 0)) /
                          (12 * h);
        std::fill(e.begin(), e.end(), 0);
        e[static_cast<std::size_t>(a)] = 1;
        j.set_coeff(e, d1);
    }
    if (order >= 2) {
        const double f0 = f(x0);
        for (int a = 0; a < n; ++a) {
            const double d2 =
                (-at(a, 2 * h, -1, 0) + 16 * at(a, h, -1, 0) - 30 * f0 + 16 * at(a, -h, -1, 0) -
                 at(a, -2 * h, -1, 0)) /
                (12 * h * h);
            std::fill(e.begin(), e.end(), 0);
            e[static_cast<std::size_t>(a)] = 2;
            j.set_coeff(e, d2 / 2.0);
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const double dab = (at(a, h, b, h) - at(a, h, b, -h) - at(a, -h, b, h) +
                                    at(a, -h, b, -h)) /
                                   (4 * h * h);
                std::fill(e.begin(), e.end(), 0);
                e[static_cast<std::size_t>(a)] = 1;
                e[static_cast<std::size_t>(b)] = 1;
                j.set_coeff(e, dab);
            }
        }
    }
    return j;
}

ChartConnection ChartConnection::levi_civita_fd(
    int n, std::function<void(const Vec&, std::vector<double>&)> metric,
    std::vector<std::array<double, 2>> box, std::string name) {
    ChartConnection c;
    c.n_ = n;
    c.name_ = std::move(name);
    c.box_ = std::move(box);
    if (c.box_.empty())
        throw std::invalid_argument("levi_civita_fd: a sampling box is required");
    const double h = 1e-3 * c.scale();
    if (!(h > 1e-14) || !std::isfinite(h))
        throw std::domain_error("levi_civita_fd: finite-difference step underflow");

    auto metric_at = [metric, n](const Vec& x) {
        std::vector<double> g(static_cast<std::size_t>(n * n));
        metric(x, g);
        return g;
    };
    auto inverse_at = [metric_at, n](const Vec& x) {
        // Gauss-Jordan, pivoting on the diagonal; charts keep metrics well
        // conditioned at test points.
        std::vector<double> a = metric_at(x);
        std::vector<double> inv(static_cast<std::size_t>(n * n), 0.0);
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1.0;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(a[static_cast<std::size_t>(r * n + col)]) >
                    std::abs(a[static_cast<std::size_t>(piv * n + col)]))
                    piv = r;
            if (piv != col)
                for (int k = 0; k < n; ++k) {
                    std::swap(a[static_cast<std::size_t>(col * n + k)],
                              a[static_cast<std::size_t>(piv * n + k)]);
                    std::swap(inv[static_cast<std::size_t>(col * n + k)],
                              inv[static_cast<std::size_t>(piv * n + k)]);
                }
            const double d = a[static_cast<std::size_t>(col * n + col)];
            if (d == 0.0) throw std::domain_error("levi_civita_fd: singular metric");
            for (int k = 0; k < n; ++k) {
                a[static_cast<std::size_t>(col * n + k)] /= d;
                inv[static_cast<std::size_t>(col * n + k)] /= d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = a[static_cast<std::size_t>(r * n + col)];
                for (int k = 0; k < n; ++k) {
                    a[static_cast<std::size_t>(r * n + k)] -=
                        f * a[static_cast<std::size_t>(col * n + k)];
                    inv[static_cast<std::size_t>(r * n + k)] -=
                        f * inv[static_cast<std::size_t>(col * n + k)];
                }
            }
        }
        return inv;
    };

    auto gamma_at = [metric_at, inverse_at, n, h](int p, int i, int j, const Vec& x) {
        // Gamma^p_{ij} = 1/2 g^{pl} (d_i g_{lj} + d_j g_{li} - d_l g_{ij})
        auto dg = [&](int axis, int r, int s) {
            Vec xp = x, xm = x, xp2 = x, xm2 = x;
            xp[static_cast<std::size_t>(axis)] += h;
            xm[static_cast<std::size_t>(axis)] -= h;
            xp2[static_cast<std::size_t>(axis)] += 2 * h;
            xm2[static_cast<std::size_t>(axis)] -= 2 * h;
            return (-metric_at(xp2)[static_cast<std::size_t>(r * n + s)] +
                    8 * metric_at(xp)[static_cast<std::size_t>(r * n + s)] -
                    8 * metric_at(xm)[static_cast<std::size_t>(r * n + s)] +
                    metric_at(xm2)[static_cast<std::size_t>(r * n + s)]) /
                   (12 * h);
        };
        const auto ginv = inverse_at(x);
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
            acc += 0.5 * ginv[static_cast<std::size_t>(p * n + l)] *
                   (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
        return acc;
    };

    c.gamma_.resize(static_cast<std::size_t>(n * n * n));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                c.gamma_[static_cast<std::size_t>((p * n + i) * n + j)] =
                    [gamma_at, p, i, j, n, h](const Vec& x0, int order) {
                        if (order > 2)
                            throw std::invalid_argument(
                                "levi_civita_fd: jets beyond order 2 unsupported");
                        return fd_scalar_jet([&](const Vec& x) { return gamma_at(p, i, j, x); }, x0, n,
                                      order, 4.0 * h);
                    };
            }
    c.metric_.resize(static_cast<std::size_t>(n * n));
    c.inverse_.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c.metric_[static_cast<std::size_t>(i * n + j)] = [metric_at, i, j, n, h](
                                                                 const Vec& x0, int order) {
                if (order > 2)
                    throw std::invalid_argument("levi_civita_fd: jets beyond order 2 unsupported");
                return fd_scalar_jet(
                    [&](const Vec& x) { return metric_at(x)[static_cast<std::size_t>(i * n + j)]; },
                    x0, n, order, h);
            };
            c.inverse_[static_cast<std::size_t>(i * n + j)] = [inverse_at, i, j, n, h](
                                                                  const Vec& x0, int order) {
                if (order > 2)
                    throw std::invalid_argument("levi_civita_fd: jets beyond order 2 unsupported");
                return fd_scalar_jet(
                    [&](const Vec& x) {
                        return inverse_at(x)[static_cast<std::size_t>(i * n + j)];
                    },
                    x0, n, order, h);
            };
        }
    return c;
}

ChartConnection ChartConnection::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    std::vector<std::array<double, 2>> box;
    if (j.contains("box"))
        for (const auto& b : j.at("box")) box.push_back({b.at(0).get<double>(), b.at(1).get<double>()});

    const auto& metric = j.at("metric");
    ChartConnection c;
    if (metric.is_string()) {
        const std::string kind = metric.get<std::string>();
        if (kind == "flat") {
            c = flat(n, box);
        } else if (kind == "sphere2") {
            if (n != 2) throw std::invalid_argument("geometry: sphere2 requires n = 2");
            c = sphere2(box);
        } else if (kind == "schwarzschild_spatial") {
            if (n != 3)
                throw std::invalid_argument("geometry: schwarzschild_spatial requires n = 3");
            c = schwarzschild_spatial(j.value("mass", 1.0), box);
        } else {
            throw std::invalid_argument("geometry: unknown metric kind '" + kind + "'");
        }
    } else {
        std::vector<Polynomial> gam(static_cast<std::size_t>(n * n * n));
        for (const auto& e : metric.at("christoffel")) {
            const int p = e.at("p").get<int>();
            const int i = e.at("i").get<int>();
            const int jj = e.at("j").get<int>();
            Polynomial poly;
            for (const auto& t : e.at("poly")) {
                PolyTerm term;
                term.coef = t.at("c").get<double>();
                term.expo = t.at("e").get<std::vector<int>>();
                poly.push_back(term);
            }
            gam[static_cast<std::size_t>((p * n + i) * n + jj)] = poly;
        }
        c = custom_polynomial(n, std::move(gam), box);
    }
    if (j.contains("name")) c.name_ = j.at("name").get<std::string>();
    return c;
}

ChartConnection ChartConnection::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace psido
