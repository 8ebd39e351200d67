#include <doctest.h>

#include "oracles.hpp"
#include "psido/diff_operator.hpp"
#include "psido/poly_symbol.hpp"
#include "psido/symbol_class.hpp"

using namespace psido;

TEST_CASE("multi-index basics and graded-lex order") {
    MultiIndex a{2, 0, 1};
    CHECK(a.order() == 3);
    CHECK(a.factorial() == 2);
    CHECK(MultiIndex{1, 1} < MultiIndex{0, 3});   // lower modulus first
    CHECK(MultiIndex{0, 2} < MultiIndex{1, 1});   // same modulus, lex on entries
    CHECK_FALSE(MultiIndex{1, 1} < MultiIndex{1, 1});
    CHECK_THROWS(MultiIndex({-1, 0}));
    CHECK(multi_binomial(MultiIndex{3, 2}, MultiIndex{1, 2}) == 3);

    const auto all = multi_indices_up_to(2, 2);
    CHECK(all.size() == 6);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("symbol of the flat second-derivative operator") {
    // sum_k d^2/dx_k^2 in n=3 has symbol -(xi_1^2 + xi_2^2 + xi_3^2)
    DiffOperator tri = DiffOperator::flat_laplace_like(3);
    PolySymbol sigma = op_to_symbol(tri);
    CHECK(sigma == PolySymbol::minus_xi_norm2(3));

    CHECK(op_to_symbol(DiffOperator::identity(2)) == PolySymbol::constant(2, RatC(1)));

    // x1 D1 in n=1: apply to e^{i xi x} by hand gives x xi e^{i xi x}
    DiffOperator xd(1);
    xd.add_term(MultiIndex{1}, PolySymbol::x(1, 0));
    CHECK(op_to_symbol(xd) == PolySymbol::x(1, 0) * PolySymbol::xi(1, 0));
}

TEST_CASE("round trip symbol_to_op . op_to_symbol is the identity") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + (trial % 2);
        DiffOperator op = testing::random_diff_op(rng, n, 3, 2);
        CHECK(symbol_to_op(op_to_symbol(op)) == op);
    }
}

TEST_CASE("leading symbol") {
    PolySymbol s = PolySymbol::minus_xi_norm2(2) + PolySymbol::x(2, 0) * PolySymbol::xi(2, 0) +
                   PolySymbol::constant(2, RatC(5));
    CHECK(s.leading() == PolySymbol::minus_xi_norm2(2));

    PolySymbol t = PolySymbol::xi(2, 0) * PolySymbol::xi(2, 1) + PolySymbol::xi(2, 0);
    CHECK(t.leading() == PolySymbol::xi(2, 0) * PolySymbol::xi(2, 1));

    CHECK_THROWS_WITH(PolySymbol(2).leading(), "empty symbol");

    // wave-operator component: -box has symbol |k|^2, already homogeneous
    DiffOperator minus_box(4);
    for (int mu = 0; mu < 4; ++mu) {
        MultiIndex a(4);
        a[mu] = 2;
        minus_box.add_term(a, PolySymbol::constant(4, RatC(1)));
    }
    PolySymbol k2 = op_to_symbol(minus_box);
    CHECK(k2.leading() == k2);
    CHECK(k2 == -PolySymbol::minus_xi_norm2(4));
}

TEST_CASE("composition: worked examples") {
    // sigma(D1) o sigma(x1) with N=1: x1 xi1 - i
    auto r = compose_symbols(PolySymbol::xi(1, 0), PolySymbol::x(1, 0), 1);
    PolySymbol expected = PolySymbol::x(1, 0) * PolySymbol::xi(1, 0);
    expected.add_term(MultiIndex{0}, MultiIndex{0}, RatC(mpq_class(0), mpq_class(-1)));
    CHECK(r.symbol == expected);
    CHECK(r.exact);

    // constant left factor: c o sigma_B = c sigma_B for any truncation
    PolySymbol c = PolySymbol::constant(2, RatC(7, 2));
    PolySymbol b = PolySymbol::x(2, 1) * PolySymbol::xi(2, 0) + PolySymbol::minus_xi_norm2(2);
    CHECK(compose_symbols(c, b, 3).symbol == b.scaled(RatC(7, 2)));

    // composing the second-derivative sum with itself: |xi|^4
    DiffOperator tri = DiffOperator::flat_laplace_like(2);
    auto rr = compose_symbols(op_to_symbol(tri), op_to_symbol(tri), 2);
    CHECK(rr.exact);
    CHECK(rr.symbol == op_to_symbol(diff_op_compose(tri, tri)));
    CHECK(rr.symbol == PolySymbol::minus_xi_norm2(2) * PolySymbol::minus_xi_norm2(2));
}

TEST_CASE("composition equals the operator product exactly (random)") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + (trial % 2);
        DiffOperator a = testing::random_diff_op(rng, n, 3, 2);
        DiffOperator b = testing::random_diff_op(rng, n, 3, 2);
        auto composed = compose_symbols(op_to_symbol(a), op_to_symbol(b), a.order());
        CHECK(composed.exact);
        CHECK(composed.symbol == op_to_symbol(diff_op_compose(a, b)));
    }
}

TEST_CASE("leading-symbol multiplicativity and order additivity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + (trial % 2);
        DiffOperator a = testing::random_diff_op(rng, n, 3, 2);
        DiffOperator b = testing::random_diff_op(rng, n, 3, 2);
        PolySymbol sa = op_to_symbol(a), sb = op_to_symbol(b);
        auto comp = compose_symbols(sa, sb, a.order());
        if (comp.symbol.is_zero()) continue;
        CHECK(comp.symbol.xi_degree() <= sa.xi_degree() + sb.xi_degree());
        PolySymbol lead_prod = sa.leading() * sb.leading();
        if (!lead_prod.is_zero() &&
            lead_prod.xi_degree() == sa.xi_degree() + sb.xi_degree() &&
            comp.symbol.xi_degree() == lead_prod.xi_degree())
            CHECK(comp.symbol.leading() == lead_prod);
    }
}

TEST_CASE("composition rejects dimension mismatch") {
    CHECK_THROWS(compose_symbols(PolySymbol::xi(1, 0), PolySymbol::xi(2, 0), 1));
}

TEST_CASE("JSON serialization round-trips bit-exactly") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        DiffOperator op = testing::random_diff_op(rng, 2, 3, 2);
        PolySymbol s = op_to_symbol(op);
        const std::string text = s.to_json();
        PolySymbol back = PolySymbol::from_json(text);
        CHECK(back == s);
        CHECK(back.to_json() == text);
    }
    // exact rational strings survive
    PolySymbol s(1);
    s.add_term(MultiIndex{2}, MultiIndex{1}, RatC(mpq_class(-7, 3), mpq_class(1, 6)));
    PolySymbol t = PolySymbol::from_json(s.to_json());
    CHECK(t == s);
}

TEST_CASE("symbol class estimation") {
    const std::vector<std::array<double, 2>> box = {{-1.0, 1.0}, {-1.0, 1.0}};

    // |xi|^2 lies in S^2_1
    PolySymbol q = -PolySymbol::minus_xi_norm2(2);
    auto est = estimate_symbol_class(sampled_from_poly(q), 2, 1.0, MultiIndex{1, 1},
                                     MultiIndex{2, 2}, box);
    CHECK(est.omega == doctest::Approx(2.0).epsilon(0.05));

    // constants sit at order zero
    auto est0 = estimate_symbol_class(sampled_from_poly(PolySymbol::constant(2, RatC(1))), 2,
                                      1.0, MultiIndex{1, 1}, MultiIndex{1, 1}, box);
    CHECK(est0.omega == doctest::Approx(0.0).epsilon(0.05));

    CHECK_THROWS(estimate_symbol_class(sampled_from_poly(q), 2, 0.4, MultiIndex{1, 1},
                                       MultiIndex{1, 1}, box));
}
