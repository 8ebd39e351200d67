#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psido/grid_function.hpp"
#include "psido/poly_symbol.hpp"

namespace psido {

/// Radial cutoff chi(xi): identically 0 for |xi| <= r0, identically 1 for
/// |xi| >= r1, polynomial smoothstep in between (degree 5 is C^2 at both ends).
struct CutoffSpec {
    double r0 = 1.0;
    double r1 = 2.0;
    int smoothstep_degree = 5;  // one of 1, 3, 5, 7

    void validate() const;
    double chi(double xi_norm) const;
    double chi_at(std::span<const double> xi) const;
};

enum class AmplitudeMode { ConstantCoeff, FrozenCoeff, Iterative };

/// Rational symbol num(x,xi) / p_L(x,xi)^den_pow with exact coefficients;
/// closed under the x and xi derivatives used by the parametrix recursion.
struct RationalSymbol {
    PolySymbol num;
    PolySymbol den_base;  // the fixed leading symbol
    int den_pow = 0;

    cplx eval(std::span<const double> x, std::span<const double> xi) const;
    RationalSymbol d_x_axis(int axis) const;
    RationalSymbol d_xi_axis(int axis) const;
    RationalSymbol d_x(const MultiIndex& k) const;
    RationalSymbol d_xi(const MultiIndex& k) const;
    /// xi-homogeneity order away from the cutoff (num degree - den_pow * deg p_L).
    int nominal_order() const;
};

struct ExpansionTerm {
    RationalSymbol g;
    int nominal_order;
};

/// Evaluable parametrix amplitude q(x, xi) with provenance metadata.
class ParametrixAmplitude {
public:
    static ParametrixAmplitude constant_coeff(PolySymbol p, CutoffSpec spec);
    static ParametrixAmplitude frozen_coeff(PolySymbol p, CutoffSpec spec);
    static ParametrixAmplitude iterative(PolySymbol p, CutoffSpec spec,
                                         std::vector<ExpansionTerm> terms);

    AmplitudeMode mode() const { return mode_; }
    const PolySymbol& source_symbol() const { return p_; }
    const CutoffSpec& cutoff() const { return spec_; }
    const std::vector<ExpansionTerm>& terms() const { return terms_; }
    bool x_dependent() const;

    cplx eval(std::span<const double> x, std::span<const double> xi) const;

private:
    ParametrixAmplitude(AmplitudeMode mode, PolySymbol p, CutoffSpec spec,
                        std::vector<ExpansionTerm> terms)
        : mode_(mode), p_(std::move(p)), spec_(spec), terms_(std::move(terms)) {}

    AmplitudeMode mode_;
    PolySymbol p_;
    CutoffSpec spec_;
    std::vector<ExpansionTerm> terms_;
};

/// q(xi) = chi(xi)/p(xi) for a xi-only symbol p with no zeros on the cutoff
/// support (checked on a dyadic radius sample; throws when a zero is found).
ParametrixAmplitude cutoff_amplitude(const PolySymbol& p, const CutoffSpec& spec);

/// Frozen-coefficient variant q(x,xi) = chi(xi)/p(x,xi), evaluated per
/// output sample (O(M^2) in the grid size).
ParametrixAmplitude frozen_amplitude(const PolySymbol& p, const CutoffSpec& spec);

GridFunction parametrix_apply(const ParametrixAmplitude& q, const GridFunction& f);

struct RemainderReport {
    GridFunction remainder;          // Rf = PQf - f on the grid
    double max_highband_residual;    // max |FT(Rf)| on |xi| >= r1, relative to max |fhat|
    double tail_norm;                // l2 of FT(Rf) on |xi| >= r1, relative to |fhat|_2
    CutoffSpec cutoff;

    std::string to_json() const;
};

/// Computes Rf = P(Qf) - f and verifies its transform is supported inside
/// the cutoff ball.
RemainderReport remainder_report(const PolySymbol& p, const ParametrixAmplitude& q,
                                 const GridFunction& f);

/// q_0 = chi/p_L plus recursive corrections chosen so the composed symbol is
/// 1 + O(|xi|^{-(m+1)}) beyond the cutoff.  Requires the leading symbol to be
/// elliptic on the x box (sampled check).
std::vector<ExpansionTerm> elliptic_parametrix_expansion(
    const PolySymbol& sigma_p, int order, const CutoffSpec& spec,
    const std::vector<std::array<double, 2>>& x_box);

/// Composed-symbol residual sum_k i^{-|k|}/k! d_xi^k sigma_p d_x^k (sum g_j) - 1,
/// exact away from the cutoff; used for the decay checks on the expansion.
RationalSymbol expansion_residual(const PolySymbol& sigma_p,
                                  const std::vector<ExpansionTerm>& terms);

}  // namespace psido
