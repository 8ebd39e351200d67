#include "psido/diff_operator.hpp"

namespace psido {

DiffOperator DiffOperator::flat_laplace_like(int n) {
    DiffOperator p(n);
    for (int i = 0; i < n; ++i) {
        MultiIndex a(n);
        a[i] = 2;
        p.add_term(a, PolySymbol::constant(n, RatC(-1)));
    }
    return p;
}

DiffOperator DiffOperator::identity(int n) {
    DiffOperator p(n);
    p.add_term(MultiIndex(n), PolySymbol::constant(n, RatC(1)));
    return p;
}

int DiffOperator::order() const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, a.order());
    return d;
}

void DiffOperator::add_term(const MultiIndex& alpha, const PolySymbol& coeff) {
    if (alpha.dim() != n_ || coeff.dim() != n_)
        throw std::invalid_argument("DiffOperator: dimension mismatch");
    if (coeff.xi_degree() > 0)
        throw std::invalid_argument("DiffOperator: coefficient depends on xi");
    if (coeff.is_zero()) return;
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        terms_.emplace(alpha, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
    if (n_ != o.n_) throw std::invalid_argument("DiffOperator: dimension mismatch");
    DiffOperator r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, c);
    return r;
}

PolySymbol op_to_symbol(const DiffOperator& p) {
    PolySymbol s(p.dim());
    for (const auto& [alpha, coeff] : p.terms()) {
        PolySymbol mono(p.dim());
        mono.add_term(MultiIndex(p.dim()), alpha, RatC(1));
        s = s + coeff * mono;
    }
    return s;
}

DiffOperator symbol_to_op(const PolySymbol& sigma) {
    DiffOperator p(sigma.dim());
    for (const auto& [key, c] : sigma.terms()) {
        PolySymbol coeff(sigma.dim());
        coeff.add_term(key.first, MultiIndex(sigma.dim()), c);
        p.add_term(key.second, coeff);
    }
    return p;
}

DiffOperator diff_op_compose(const DiffOperator& a, const DiffOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("diff_op_compose: dimension mismatch");
    const int n = a.dim();
    DiffOperator r(n);
    for (const auto& [alpha, ca] : a.terms()) {
        for (const auto& [beta, cb] : b.terms()) {
            // D^alpha (b_beta u) = sum_{gamma<=alpha} C(alpha,gamma) (-i)^{|gamma|}
            //                        (d^gamma b_beta) D^{alpha-gamma} u
            for (const MultiIndex& gamma : multi_indices_up_to(n, alpha.order())) {
                if (!gamma.leq(alpha)) continue;
                PolySymbol db = cb.d_x(gamma);
                if (db.is_zero()) continue;
                RatC factor =
                    RatC::i_power(-gamma.order()).times_int(multi_binomial(alpha, gamma));
                r.add_term(alpha.minus(gamma).plus(beta), (ca * db).scaled(factor));
            }
        }
    }
    return r;
}

}  // namespace psido
