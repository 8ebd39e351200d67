#pragma once

#include <map>

#include "psido/poly_symbol.hpp"

namespace psido {

/// Linear partial differential operator sum_{|alpha|<=d} a_alpha(x) D^alpha
/// with D^alpha = (-i)^{|alpha|} d^alpha and polynomial coefficients a_alpha.
class DiffOperator {
public:
    DiffOperator() : n_(0) {}
    explicit DiffOperator(int n) : n_(n) {
        if (n <= 0) throw std::invalid_argument("DiffOperator: dimension must be positive");
    }

    /// The flat second-derivative sum: sum_k d^2/dx_k^2 = -sum_k D_k^2.
    static DiffOperator flat_laplace_like(int n);
    static DiffOperator identity(int n);

    int dim() const { return n_; }
    int order() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, PolySymbol>& terms() const { return terms_; }

    /// Adds coeff(x) * D^alpha; coeff must have no xi-dependence.
    void add_term(const MultiIndex& alpha, const PolySymbol& coeff);

    DiffOperator operator+(const DiffOperator& o) const;

    bool operator==(const DiffOperator& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const DiffOperator& o) const { return !(*this == o); }

private:
    int n_;
    std::map<MultiIndex, PolySymbol> terms_;  // alpha -> a_alpha(x)
};

/// sigma(P) = sum a_alpha(x) xi^alpha, exact.
PolySymbol op_to_symbol(const DiffOperator& p);

/// Inverse of op_to_symbol; exact round trip.
DiffOperator symbol_to_op(const PolySymbol& sigma);

/// Operator product A(B(.)) expanded by the Leibniz rule, exact.
/// Serves as the independent route against which symbol composition
/// is checked.
DiffOperator diff_op_compose(const DiffOperator& a, const DiffOperator& b);

}  // namespace psido
