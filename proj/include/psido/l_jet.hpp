#pragma once

#include "psido/chart.hpp"
#include "psido/tensor_field.hpp"

namespace psido {

/// Covector v attached to a chart point x0.
struct CotangentPoint {
    Vec x0;
    Vec v;
};

/// All-covariant tensor whose components are jets around a common base
/// point; the carrier for pointwise covariant derivative evaluation.
struct JetTensor {
    int n = 0;
    int rank = 0;
    std::vector<Jet> comp;  // row-major over base-n indices

    static JetTensor scalar(const Jet& j);
    Jet& at(std::span<const int> idx);
    const Jet& at(std::span<const int> idx) const;
    /// Constant terms of every component.
    TensorFieldValue values() const;
};

/// Christoffel jets around one base point, precomputed once.
struct GammaJets {
    int n = 0;
    int order = 0;
    std::vector<Jet> g;  // [p][i][j]

    static GammaJets at(const ChartConnection& conn, const Vec& x0, int order);
    const Jet& operator()(int p, int i, int j) const {
        return g[static_cast<std::size_t>((p * n + i) * n + j)];
    }
};

/// One covariant derivative in the jet algebra; appends the new index last:
/// (grad tau)_{I,i} = d_i tau_I - sum_nu Gamma^p_{I_nu i} tau_{I,nu->p}.
JetTensor jet_covariant_derivative(const JetTensor& tau, const GammaJets& gamma);

/// Truncated Taylor data of the linearization function l(v, .) around x0:
/// value 0 and gradient v at the base point, and all symmetrized covariant
/// derivatives of order 2..K vanishing there.
///
/// The conditions pin every Taylor coefficient through order K; smooth
/// functions realizing the jet differ only by higher-order tails, and all
/// derived quantities at the base point are representative-independent
/// (two gauge choices are compared in the tests).  In that sense a symbol
/// built from l is an equivalence class: at jet level all members agree.
struct LJet {
    CotangentPoint base;
    int order = 0;
    Jet poly;  // coefficients of (x - x0)^alpha

    double coefficient(std::span<const int> expo) const { return poly.coeff(expo); }
};

/// Solves the vanishing conditions order by order; 1 <= K <= 4.
LJet build_l_jet(const CotangentPoint& v, const ChartConnection& conn, int K);

/// Unsymmetrized covariant derivatives at the base point, natural
/// differentiation order: result_{i1...ik} = l_{;i1;...;ik}.
TensorFieldValue nabla_l(const LJet& jet, const ChartConnection& conn, int k);
TensorFieldValue nabla_l(const CotangentPoint& v, const ChartConnection& conn, int k);

/// Max over index tuples of |sum over permutations of nabla^k l|; vanishes
/// by construction of the jet.
double nabla_l_permutation_sum(const TensorFieldValue& nk);

/// Covariant Taylor polynomial T_N f around x0, assembled from nabla^n f and
/// the tensor powers of the linearization jets; returned as a jet around x0.
Jet covariant_taylor(const Jet& f_jet, const Vec& x0, const ChartConnection& conn, int N);

/// Symmetrized covariant derivative values of a scalar jet at the base
/// point (rank k, fully symmetric).
TensorFieldValue symmetrized_cov_derivative(const Jet& f_jet, const ChartConnection& conn,
                                            const Vec& x0, int k);

}  // namespace psido
