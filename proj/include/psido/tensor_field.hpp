#pragma once

#include <functional>

#include "psido/chart.hpp"

namespace psido {

/// Components of a type-(contra, cov) tensor at a chart point, row-major
/// with the contravariant slots first.
struct TensorFieldValue {
    int n = 0;
    int contra = 0;
    int cov = 0;
    std::vector<double> comp;

    TensorFieldValue() = default;
    TensorFieldValue(int n_, int contra_, int cov_);

    int rank() const { return contra + cov; }
    std::size_t size() const { return comp.size(); }
    double& at(std::span<const int> idx);
    double at(std::span<const int> idx) const;
    double max_abs() const;
};

/// Tensor field given by a pointwise evaluator.
struct TensorField {
    int n = 0;
    int contra = 0;
    int cov = 0;
    std::function<TensorFieldValue(const Vec&)> eval;

    static TensorField scalar(int n, std::function<double(const Vec&)> f);
    static TensorField covector(int n, std::function<void(const Vec&, std::vector<double>&)> f);
    /// Metric of the chart as a rank-(0,2) field.
    static TensorField metric_of(const ChartConnection& conn);
};

/// One covariant derivative: the new covariant index is appended last, so
/// (grad tau)_{i...;k} sits at index (..., k).  Partial derivatives are
/// 4th-order central differences with step 1e-3 * chart scale.
TensorField covariant_derivative(const TensorField& tau, const ChartConnection& conn);

/// f_{;i1;...;ik} at x by iterating covariant_derivative; k <= 4.
TensorFieldValue iterated_scalar_derivative(const std::function<double(const Vec&)>& f,
                                            const ChartConnection& conn, int k, const Vec& x);

/// R^p_{ijk}, fixed by the Ricci identity
///   tau_{i;j;k} - tau_{i;k;j} = sum_nu tau_{..p..} R^p_{i_nu jk} - tau_{;p} T^p_{jk}.
struct CurvatureValue {
    int n = 0;
    std::vector<double> comp;  // [p][i][j][k]

    double at(int p, int i, int j, int k) const {
        return comp[static_cast<std::size_t>(((p * n + i) * n + j) * n + k)];
    }
    /// max |R^p_{ijk} + R^p_{ikj}|; the commutator structure forces zero.
    double antisymmetry_defect() const;
};

CurvatureValue curvature_tensor(const ChartConnection& conn, const Vec& x);

struct CurvatureTorsion {
    CurvatureValue curvature;
    std::vector<double> torsion;  // [p][i][j]
};
CurvatureTorsion curvature_torsion(const ChartConnection& conn, const Vec& x);

/// g^{ik} R^p_{ipk}; requires a metric.
double scalar_curvature(const ChartConnection& conn, const Vec& x);

/// Max-norm of (LHS - RHS) of the Ricci identity on the given field at x.
/// Scalars (rank 0) exercise the pure torsion term.
double ricci_identity_residual(const TensorField& tau, const ChartConnection& conn, const Vec& x);

/// Max-norm of the covariant derivative of the metric at x (zero for
/// Levi-Civita connections).
double metric_compatibility_residual(const ChartConnection& conn, const Vec& x);

}  // namespace psido
