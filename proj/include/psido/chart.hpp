#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace psido {

using Vec = std::vector<double>;

/// Truncated Taylor polynomial in n variables around a base point: dense
/// coefficients of y^e for componentwise e <= order, terms of total degree
/// beyond `order` dropped by every product.  The workhorse of all covariant
/// derivative evaluations at a point.
class Jet {
public:
    Jet() : n_(0), order_(0) {}
    Jet(int n, int order);

    static Jet constant(int n, int order, double v);
    /// v . y (origin value zero).
    static Jet linear(int n, int order, std::span<const double> v);

    int dim() const { return n_; }
    int order() const { return order_; }

    double value() const { return c_.empty() ? 0.0 : c_[0]; }
    double coeff(std::span<const int> expo) const;
    void set_coeff(std::span<const int> expo, double v);

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet scaled(double s) const;
    /// Partial derivative in y_axis (degree drops by one).
    Jet partial(int axis) const;
    /// Same coefficients re-embedded at a (not smaller) truncation order.
    Jet extended(int new_order) const;

    double eval(std::span<const double> y) const;

    /// Pure k-th partial value at the base point (includes the factorials).
    double partial_value(std::span<const int> expo) const;

private:
    std::size_t index(std::span<const int> expo) const;

    int n_, order_;
    std::vector<double> c_;
    std::vector<std::size_t> stride_;
};

/// Univariate Taylor coefficient helpers used to build analytic chart jets.
namespace series {
/// coefficients of f around x0, lifted later onto one jet axis
using Coeffs = std::vector<double>;

Coeffs constant(double v, int order);
/// a*x + b around x0
Coeffs linear(double a, double b, double x0, int order);
/// x^k around x0
Coeffs monomial(int k, double x0, int order);
/// 1/(a*x + b) around x0; the evaluation point must avoid the pole
Coeffs reciprocal_linear(double a, double b, double x0, int order);
/// sin(a*x + b), cos(a*x + b)
Coeffs sin_linear(double a, double b, double x0, int order);
Coeffs cos_linear(double a, double b, double x0, int order);
/// cot(x) via the Riccati recurrence c' = -(1 + c^2)
Coeffs cot(double x0, int order);
Coeffs product(const Coeffs& a, const Coeffs& b);
Coeffs sum(const Coeffs& a, const Coeffs& b);
Coeffs scale(const Coeffs& a, double s);

/// Embed a univariate series as a Jet along `axis`.
Jet lift(const Coeffs& c, int n, int axis, int order);
}  // namespace series

/// Sparse multivariate polynomial used for user-defined charts.
struct PolyTerm {
    double coef;
    std::vector<int> expo;
};
using Polynomial = std::vector<PolyTerm>;

double poly_eval(const Polynomial& p, std::span<const double> x);
/// Re-expansion of a global polynomial around x0 as a Jet.
Jet poly_jet(const Polynomial& p, const Vec& x0, int order);

/// Taylor jet of a black-box scalar by 4th-order central differences;
/// supports jet orders 0..2.
Jet fd_scalar_jet(const std::function<double(const Vec&)>& f, const Vec& x0, int n, int order,
                  double h);

/// Connection coefficients on a coordinate chart, with optional metric.
/// Components are exposed as Taylor jets around any base point; built-in
/// charts provide exact analytic expansions, finite-difference charts are
/// exact through jet order 2 (enough for fourth covariant derivatives).
class ChartConnection {
public:
    using JetProvider = std::function<Jet(const Vec& x0, int order)>;

    int dim() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<std::array<double, 2>>& box() const { return box_; }
    bool has_metric() const { return !metric_.empty(); }

    /// Gamma^p_{ij}: p labels the upper index; in the covariant derivative
    /// the first lower index contracts the tensor slot and the second is the
    /// differentiation direction.
    Jet gamma_jet(int p, int i, int j, const Vec& x0, int order) const;
    double gamma(int p, int i, int j, const Vec& x) const;

    Jet metric_jet(int i, int j, const Vec& x0, int order) const;
    Jet inverse_metric_jet(int i, int j, const Vec& x0, int order) const;
    double metric(int i, int j, const Vec& x) const;
    double inverse_metric(int i, int j, const Vec& x) const;

    /// T^p_{ij} = Gamma^p_{ij} - Gamma^p_{ji} at x, layout [p][i][j].
    std::vector<double> torsion(const Vec& x) const;

    bool inside_box(const Vec& x) const;
    /// Representative length scale (smallest box span).
    double scale() const;

    static ChartConnection flat(int n, std::vector<std::array<double, 2>> box = {});
    static ChartConnection sphere2(std::vector<std::array<double, 2>> box = {});
    static ChartConnection schwarzschild_spatial(double mass,
                                                 std::vector<std::array<double, 2>> box = {});
    /// Christoffel symbols given directly as polynomials in x (may carry
    /// torsion); optional polynomial metric.
    static ChartConnection custom_polynomial(int n, std::vector<Polynomial> christoffel,
                                             std::vector<std::array<double, 2>> box,
                                             std::vector<Polynomial> metric = {},
                                             std::vector<Polynomial> inverse_metric = {},
                                             std::string name = "custom");
    /// Levi-Civita connection of a black-box metric, all derivatives by
    /// central finite differences.  Used as an independent oracle route.
    static ChartConnection levi_civita_fd(
        int n, std::function<void(const Vec&, std::vector<double>&)> metric,
        std::vector<std::array<double, 2>> box, std::string name = "metric-fd");

    /// Geometry file: {"name":str,"n":int,"metric":"flat"|"sphere2"|
    /// "schwarzschild_spatial"|{"christoffel":[...]},"box":[[lo,hi]...],
    /// "mass":number}.
    static ChartConnection from_json(const std::string& text);
    static ChartConnection from_json_file(const std::string& path);

private:
    int n_ = 0;
    std::string name_;
    std::vector<std::array<double, 2>> box_;
    std::vector<JetProvider> gamma_;    // n^3, [p][i][j]
    std::vector<JetProvider> metric_;   // n^2 when present
    std::vector<JetProvider> inverse_;  // n^2 when present
};

}  // namespace psido
