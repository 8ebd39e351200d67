#include <doctest.h>

#include <random>

#include "psido/tensor_field.hpp"

using namespace psido;

namespace {

ChartConnection torsionful_const_chart() {
    // Gamma^1_{12} = 1 (0-based slot p=0,i=0,j=1), everything else zero
    std::vector<Polynomial> gam(8);
    gam[(0 * 2 + 0) * 2 + 1] = {{1.0, {0, 0}}};
    return ChartConnection::custom_polynomial(2, gam, {{-1.0, 1.0}, {-1.0, 1.0}}, {}, {},
                                              "torsionful-const");
}

ChartConnection torsionful_poly_chart(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-0.4, 0.4);
    std::vector<Polynomial> gam(8);
    for (auto& p : gam) {
        p = {{coef(rng), {0, 0}}, {coef(rng), {1, 0}}, {coef(rng), {0, 1}}, {coef(rng), {1, 1}}};
    }
    return ChartConnection::custom_polynomial(2, gam, {{-0.8, 0.8}, {-0.8, 0.8}}, {}, {},
                                              "torsionful-poly");
}

void sphere_metric(const Vec& x, std::vector<double>& g) {
    g.assign(4, 0.0);
    g[0] = 1.0;
    g[3] = std::sin(x[0]) * std::sin(x[0]);
}

}  // namespace

TEST_CASE("jet arithmetic: products truncate, partials shift") {
    Jet a(2, 3);
    std::vector<int> e = {1, 0};
    a.set_coeff(e, 2.0);  // 2 y1
    e = {0, 2};
    a.set_coeff(e, 1.0);  // + y2^2
    Jet b = Jet::constant(2, 3, 1.0) + a;

    Jet prod = a * b;  // 2y1 + y2^2 + (2y1 + y2^2)^2 truncated at order 3
    e = {1, 0};
    CHECK(prod.coeff(e) == 2.0);
    e = {2, 0};
    CHECK(prod.coeff(e) == 4.0);
    e = {1, 2};
    CHECK(prod.coeff(e) == 4.0);
    e = {0, 4};
    CHECK(prod.coeff(e) == 0.0);  // beyond truncation

    Jet da = a.partial(1);
    e = {0, 1};
    CHECK(da.coeff(e) == 2.0);
    e = {0, 0};
    CHECK(da.value() == 0.0);

    // evaluation agrees with the closed form inside the radius of validity
    const std::vector<double> y = {0.1, -0.2};
    CHECK(a.eval(y) == doctest::Approx(2 * 0.1 + 0.04));
}

TEST_CASE("polynomial re-expansion around a shifted base point") {
    // p(x) = x1^2 x2 - 3 x2  around x0 = (1, 2)
    Polynomial p = {{1.0, {2, 1}}, {-3.0, {0, 1}}};
    const Vec x0 = {1.0, 2.0};
    Jet j = poly_jet(p, x0, 3);
    CHECK(j.value() == doctest::Approx(1.0 * 2.0 - 6.0));
    // gradient: (2 x1 x2, x1^2 - 3) = (4, -2)
    std::vector<int> e = {1, 0};
    CHECK(j.coeff(e) == doctest::Approx(4.0));
    e = {0, 1};
    CHECK(j.coeff(e) == doctest::Approx(-2.0));
    // cross second derivative: d^2p/dx1dx2 = 2x1 = 2, coefficient = 2/1!1! = 2
    e = {1, 1};
    CHECK(j.coeff(e) == doctest::Approx(2.0));
    // evaluation matches the original polynomial
    const Vec x = {1.3, 1.7};
    const std::vector<double> y = {0.3, -0.3};
    CHECK(j.eval(y) == doctest::Approx(poly_eval(p, x)).epsilon(1e-12));
}

TEST_CASE("univariate series: cot matches derivatives of cos/sin") {
    const double t0 = 0.9;
    auto c = series::cot(t0, 4);
    CHECK(c[0] == doctest::Approx(std::cos(t0) / std::sin(t0)));
    // cot' = -1/sin^2
    CHECK(c[1] == doctest::Approx(-1.0 / (std::sin(t0) * std::sin(t0))));
    // cot'' = 2 cos / sin^3, coefficient is half of it
    CHECK(2.0 * c[2] ==
          doctest::Approx(2.0 * std::cos(t0) / std::pow(std::sin(t0), 3)));
    // series evaluation approximates cot near t0
    double acc = 0.0, dt = 0.05;
    for (int m = 4; m >= 0; --m) acc = acc * dt + c[static_cast<std::size_t>(m)];
    CHECK(acc == doctest::Approx(1.0 / std::tan(t0 + dt)).epsilon(1e-6));
}

TEST_CASE("flat chart: covariant derivative is the plain gradient") {
    ChartConnection flat = ChartConnection::flat(2);
    TensorField f = TensorField::scalar(2, [](const Vec& x) { return x[0] * x[0] * x[1]; });
    TensorField df = covariant_derivative(f, flat);
    const Vec x = {0.7, -0.3};
    auto v = df.eval(x);
    CHECK(v.comp[0] == doctest::Approx(2 * 0.7 * -0.3).epsilon(1e-10));
    CHECK(v.comp[1] == doctest::Approx(0.49).epsilon(1e-10));

    auto ct = curvature_torsion(flat, x);
    CHECK(ct.curvature.antisymmetry_defect() == 0.0);
    for (double c : ct.curvature.comp) CHECK(c == 0.0);
    for (double t : ct.torsion) CHECK(t == 0.0);
}

TEST_CASE("sphere chart: Levi-Civita compatibility and torsion-free") {
    ChartConnection s2 = ChartConnection::sphere2();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.5, 2.6), ph(0.2, 6.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = {th(rng), ph(rng)};
        CHECK(metric_compatibility_residual(s2, x) < 1e-8);
        for (double t : s2.torsion(x)) CHECK(t == 0.0);
    }
}

TEST_CASE("sphere scalar curvature equals 2, cross-checked by an FD metric chart") {
    ChartConnection s2 = ChartConnection::sphere2();
    ChartConnection s2fd = ChartConnection::levi_civita_fd(2, sphere_metric,
                                                           {{0.4, 2.7}, {0.0, 6.2}});
    for (const Vec x : {Vec{0.8, 1.0}, Vec{1.5, 3.0}, Vec{2.2, 5.5}}) {
        CHECK(scalar_curvature(s2, x) == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(scalar_curvature(s2fd, x) == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(curvature_tensor(s2, x).antisymmetry_defect() < 1e-14);
        // the two routes agree componentwise
        auto ra = curvature_tensor(s2, x);
        auto rb = curvature_tensor(s2fd, x);
        for (std::size_t i = 0; i < ra.comp.size(); ++i)
            CHECK(ra.comp[i] == doctest::Approx(rb.comp[i]).epsilon(1e-5));
    }
}

TEST_CASE("schwarzschild spatial slice: compatibility and vanishing Ricci scalar") {
    ChartConnection sch = ChartConnection::schwarzschild_spatial(1.0);
    for (const Vec x : {Vec{4.0, 1.2, 2.0}, Vec{7.0, 0.9, 4.0}}) {
        CHECK(metric_compatibility_residual(sch, x) < 1e-8);
        for (double t : sch.torsion(x)) CHECK(t == 0.0);
        CHECK(scalar_curvature(sch, x) == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(std::abs(scalar_curvature(sch, x)) < 1e-8);
    }
}

TEST_CASE("constant torsionful connection: antisymmetrization") {
    ChartConnection chart = torsionful_const_chart();
    const Vec x = {0.2, 0.1};
    auto T = chart.torsion(x);
    // T^1_{12} = Gamma^1_{12} - Gamma^1_{21} = 1
    CHECK(T[(0 * 2 + 0) * 2 + 1] == 1.0);
    CHECK(T[(0 * 2 + 1) * 2 + 0] == -1.0);
    CHECK(T[(1 * 2 + 0) * 2 + 1] == 0.0);
}

TEST_CASE("ricci identity: flat connection gives zero residual") {
    ChartConnection flat = ChartConnection::flat(2);
    TensorField tau = TensorField::covector(2, [](const Vec& x, std::vector<double>& c) {
        c[0] = std::sin(x[0]);
        c[1] = x[0] * x[1];
    });
    CHECK(ricci_identity_residual(tau, flat, {0.3, 0.4}) < 1e-9);
}

TEST_CASE("ricci identity on the sphere: rank 1 and rank 2") {
    ChartConnection s2 = ChartConnection::sphere2();
    TensorField dtheta = TensorField::covector(2, [](const Vec&, std::vector<double>& c) {
        c[0] = 1.0;
        c[1] = 0.0;
    });
    TensorField rank2 = TensorField::metric_of(s2);
    TensorField wavy = TensorField::covector(2, [](const Vec& x, std::vector<double>& c) {
        c[0] = std::cos(x[0]) * std::sin(x[1]);
        c[1] = x[0];
    });
    for (const Vec x : {Vec{0.9, 1.3}, Vec{1.7, 4.1}, Vec{2.3, 0.8}}) {
        CHECK(ricci_identity_residual(dtheta, s2, x) < 1e-6);
        CHECK(ricci_identity_residual(rank2, s2, x) < 1e-6);
        CHECK(ricci_identity_residual(wavy, s2, x) < 1e-6);
    }
}

TEST_CASE("scalar second covariant derivatives commute without torsion") {
    ChartConnection s2 = ChartConnection::sphere2();
    auto f = [](const Vec& x) { return std::cos(x[0]) * std::sin(0.5 * x[1]); };
    for (const Vec x : {Vec{0.9, 1.4}, Vec{1.8, 3.9}}) {
        auto d2 = iterated_scalar_derivative(f, s2, 2, x);
        CHECK(std::abs(d2.comp[0 * 2 + 1] - d2.comp[1 * 2 + 0]) < 1e-8);
    }
}

TEST_CASE("ricci identity with torsion: scalar commutator is -f_{;p} T^p_{jk}") {
    ChartConnection chart = torsionful_const_chart();
    auto f = [](const Vec& x) { return x[0] * x[0] * x[1] + 3.0 * x[0]; };
    const Vec x = {0.25, -0.15};

    // scalar residual through the library route
    TensorField fs = TensorField::scalar(2, f);
    CHECK(ricci_identity_residual(fs, chart, x) < 1e-9);

    // and by hand: f_{;1;2} - f_{;2;1} = -f_{;1} T^1_{12} with T^1_{12} = 1
    auto d2 = iterated_scalar_derivative(f, chart, 2, x);
    const double commutator =
        d2.comp[0 * 2 + 1] - d2.comp[1 * 2 + 0];
    const double grad0 = 2.0 * x[0] * x[1] + 3.0;
    CHECK(commutator == doctest::Approx(-grad0).epsilon(1e-9));
}

TEST_CASE("ricci identity on a random torsionful polynomial connection") {
    std::mt19937_64 rng(17);
    ChartConnection chart = torsionful_poly_chart(rng);
    TensorField tau = TensorField::covector(2, [](const Vec& x, std::vector<double>& c) {
        c[0] = x[0] * x[0] - x[1];
        c[1] = std::sin(x[0] + x[1]);
    });
    TensorField rank2;
    rank2.n = 2;
    rank2.cov = 2;
    rank2.eval = [](const Vec& x) {
        TensorFieldValue v(2, 0, 2);
        v.comp = {x[0], x[1] * x[1], std::cos(x[0]), x[0] * x[1]};
        return v;
    };
    for (const Vec x : {Vec{0.1, 0.2}, Vec{-0.3, 0.4}}) {
        CHECK(ricci_identity_residual(tau, chart, x) < 1e-6);
        CHECK(ricci_identity_residual(rank2, chart, x) < 1e-6);
    }
}

TEST_CASE("iterated scalar derivatives") {
    // flat: pure partials, symmetric at third order
    ChartConnection flat = ChartConnection::flat(2);
    auto f = [](const Vec& x) { return x[0] * x[0] * x[0] + x[0] * x[1] * x[1]; };
    const Vec x = {0.4, 0.6};
    auto d3 = iterated_scalar_derivative(f, flat, 3, x);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const double v = d3.comp[(i * 2 + j) * 2 + k];
                CHECK(v - d3.comp[(k * 2 + j) * 2 + i] == doctest::Approx(0.0).epsilon(1e-6));
                // d3f/dx1^3 = 6, mixed x1 y2^2 derivative = 2, others 0
                const double expect = (i + j + k == 0) ? 6.0 : ((i + j + k == 2) ? 2.0 : 0.0);
                CHECK(v == doctest::Approx(expect).epsilon(1e-4).scale(1.0));
            }

    // second derivative against the hand formula d2 - Gamma^p_{ij} d_p f
    ChartConnection chart = torsionful_const_chart();
    auto g = [](const Vec& x2) { return x2[0] * x2[1]; };
    auto d2 = iterated_scalar_derivative(g, chart, 2, {0.3, 0.5});
    // f_{;1;2} = d2f/dx2dx1 - Gamma^1_{12} f_{;1} = 1 - 0.5
    CHECK(d2.comp[0 * 2 + 1] == doctest::Approx(1.0 - 0.5).epsilon(1e-9));
    // f_{;2;1} = d2f/dx1dx2 - Gamma^1_{21} f_{;1} = 1
    CHECK(d2.comp[1 * 2 + 0] == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS(iterated_scalar_derivative(g, chart, 5, {0.0, 0.0}));
}

TEST_CASE("geometry JSON round trip") {
    ChartConnection c1 = ChartConnection::from_json(
        R"({"name":"flat3","n":3,"metric":"flat","box":[[-1,1],[-1,1],[-1,1]]})");
    CHECK(c1.dim() == 3);
    CHECK(c1.name() == "flat3");
    CHECK(c1.has_metric());

    ChartConnection c2 = ChartConnection::from_json(
        R"({"name":"s2","n":2,"metric":"sphere2","box":[[0.5,2.6],[0,6.2]]})");
    CHECK(c2.dim() == 2);
    CHECK(scalar_curvature(c2, {1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-9));

    ChartConnection c3 = ChartConnection::from_json(
        R"({"name":"tors","n":2,"metric":{"christoffel":[
            {"p":0,"i":0,"j":1,"poly":[{"c":1.0,"e":[0,0]}]}]},
            "box":[[-1,1],[-1,1]]})");
    CHECK(c3.torsion({0.0, 0.0})[(0 * 2 + 0) * 2 + 1] == 1.0);

    ChartConnection c4 = ChartConnection::from_json(
        R"({"name":"sch","n":3,"metric":"schwarzschild_spatial","mass":2.0,
            "box":[[5.0,24.0],[0.4,2.7],[0.0,6.2]]})");
    // horizon-scaled coefficients: Gamma^r_{theta theta} = -(r - 2m)
    CHECK(c4.gamma(0, 1, 1, {8.0, 1.0, 1.0}) == doctest::Approx(-(8.0 - 4.0)));

    CHECK_THROWS(ChartConnection::from_json(R"({"n":2,"metric":"nope"})"));
    CHECK_THROWS_WITH(ChartConnection::from_json_file("missing.json"),
                      "file not found: missing.json");
}
