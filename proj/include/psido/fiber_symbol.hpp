#pragma once

#include "psido/l_jet.hpp"

namespace psido {

/// Symbol on the chart cotangent bundle, sigma(x, w).  `pullback` produces
/// the jet of x -> (d^j sigma / dw_{widx})(x, w(x)) for polynomial covector
/// jets w; analytic symbols implement it exactly, black boxes fall back to
/// finite differences (jets through order 2).
struct FiberSymbol {
    int max_fiber_order = 0;
    std::function<double(const Vec& x, const Vec& w)> value;
    std::function<Jet(const Vec& x0, const std::vector<Jet>& w, std::span<const int> widx,
                      int order)>
        pullback;
};

/// sigma(v) = |v|^2 = g^{ij} v_i v_j through the chart metric.
FiberSymbol metric_norm_symbol(const ChartConnection& conn);

/// Generic sampled symbol; fiber derivatives and x-jets by central
/// differences.  Cross-check route, jets limited to order 2.
FiberSymbol black_box_symbol(std::function<double(const Vec&, const Vec&)> f, int n);

/// k-th fiber derivative at v, a contravariant k-tensor (indices are the
/// dual-basis directions at the base point).
TensorFieldValue fiber_derivative(const FiberSymbol& sigma, const CotangentPoint& v, int k);

/// nabla^k D^j sigma(v): fiber-differentiate the pullback through the
/// linearization jet, then covariant-differentiate in x at the base point.
/// Contravariant slots (from D^j) come first in the result layout.
TensorFieldValue symbol_covariant_derivative(const FiberSymbol& sigma, const CotangentPoint& v,
                                             const ChartConnection& conn, int k, int j);

}  // namespace psido
