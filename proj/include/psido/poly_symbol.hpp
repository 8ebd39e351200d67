#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psido/multi_index.hpp"
#include "psido/rational.hpp"

namespace psido {

/// Polynomial symbol sigma(x, xi): sum of c * x^a * xi^b with exact
/// complex-rational coefficients.  Zero coefficients are never stored,
/// so equality of symbols is equality of the term maps.
class PolySymbol {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;  // (x exponent, xi exponent)

    PolySymbol() : n_(0) {}
    explicit PolySymbol(int n) : n_(n) {
        if (n <= 0) throw std::invalid_argument("PolySymbol: dimension must be positive");
    }

    static PolySymbol constant(int n, RatC c);
    /// xi_axis as a symbol (axis is 0-based).
    static PolySymbol xi(int n, int axis);
    /// x_axis as a symbol.
    static PolySymbol x(int n, int axis);
    /// -|xi|^2 = symbol of the flat second-derivative sum.
    static PolySymbol minus_xi_norm2(int n);

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, RatC>& terms() const { return terms_; }

    /// Symbol order: max |xi-exponent| over stored terms (-1 for the zero symbol).
    int xi_degree() const;
    int x_degree() const;

    void add_term(const MultiIndex& xe, const MultiIndex& ke, const RatC& c);

    PolySymbol operator+(const PolySymbol& o) const;
    PolySymbol operator-(const PolySymbol& o) const;
    PolySymbol operator*(const PolySymbol& o) const;
    PolySymbol operator-() const;
    PolySymbol scaled(const RatC& c) const;

    bool operator==(const PolySymbol& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const PolySymbol& o) const { return !(*this == o); }

    /// Plain partial derivative in xi (no i-factors).
    PolySymbol d_xi(const MultiIndex& k) const;
    /// Plain partial derivative in x.
    PolySymbol d_x(const MultiIndex& k) const;

    std::complex<double> eval(std::span<const double> x, std::span<const double> xi) const;

    /// Terms with |xi-exponent| == xi_degree(); errors on the zero symbol.
    PolySymbol leading() const;

    std::string str() const;

    /// Exact JSON round-trip: {"n":int,"terms":[{"x":[...],"xi":[...],"re":"p/q","im":"p/q"}]}
    std::string to_json() const;
    static PolySymbol from_json(const std::string& text);

private:
    int n_;
    std::map<Key, RatC> terms_;
};

struct ComposeResult {
    PolySymbol symbol;
    /// True when the truncation order covers every nonzero xi-derivative of
    /// the left factor, so the asymptotic sum is finite and exact.
    bool exact = false;
};

/// Symbol of the operator product: sum over |k| <= trunc of
/// i^{-|k|}/k! (d_xi^k sigma_a)(d_x^k sigma_b).
ComposeResult compose_symbols(const PolySymbol& sigma_a, const PolySymbol& sigma_b, int trunc);

}  // namespace psido
