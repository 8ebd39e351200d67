#include "psido/tensor_field.hpp"

#include <cmath>
#include <stdexcept>

namespace psido {

TensorFieldValue::TensorFieldValue(int n_, int contra_, int cov_)
    : n(n_), contra(contra_), cov(cov_) {
    std::size_t s = 1;
    for (int r = 0; r < rank(); ++r) s *= static_cast<std::size_t>(n);
    comp.assign(s, 0.0);
}

static std::size_t flat_index(int n, std::span<const int> idx) {
    std::size_t f = 0;
    for (int v : idx) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    return f;
}

double& TensorFieldValue::at(std::span<const int> idx) { return comp[flat_index(n, idx)]; }
double TensorFieldValue::at(std::span<const int> idx) const { return comp[flat_index(n, idx)]; }

double TensorFieldValue::max_abs() const {
    double m = 0.0;
    for (double v : comp) m = std::max(m, std::abs(v));
    return m;
}

TensorField TensorField::scalar(int n, std::function<double(const Vec&)> f) {
    TensorField t;
    t.n = n;
    t.eval = [n, f](const Vec& x) {
        TensorFieldValue v(n, 0, 0);
        v.comp[0] = f(x);
        return v;
    };
    return t;
}

TensorField TensorField::covector(int n,
                                  std::function<void(const Vec&, std::vector<double>&)> f) {
    TensorField t;
    t.n = n;
    t.cov = 1;
    t.eval = [n, f](const Vec& x) {
        TensorFieldValue v(n, 0, 1);
        f(x, v.comp);
        return v;
    };
    return t;
}

TensorField TensorField::metric_of(const ChartConnection& conn) {
    TensorField t;
    t.n = conn.dim();
    t.cov = 2;
    const ChartConnection* c = &conn;
    t.eval = [c](const Vec& x) {
        const int n = c->dim();
        TensorFieldValue v(n, 0, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                v.comp[static_cast<std::size_t>(i * n + j)] = c->metric(i, j, x);
        return v;
    };
    return t;
}

TensorField covariant_derivative(const TensorField& tau, const ChartConnection& conn) {
    if (tau.n != conn.dim())
        throw std::invalid_argument("covariant_derivative: dimension mismatch");
    const double h = std::max(1e-3 * conn.scale(), 1e-6);
    TensorField out;
    out.n = tau.n;
    out.contra = tau.contra;
    out.cov = tau.cov + 1;
    auto base = tau.eval;
    const int n = tau.n;
    const int contra = tau.contra;
    const int cov = tau.cov;
    const ChartConnection* c = &conn;

    out.eval = [base, n, contra, cov, c, h](const Vec& x) {
        if (!c->inside_box(x))
            throw std::domain_error("covariant_derivative: evaluation outside chart box");
        TensorFieldValue result(n, contra, cov + 1);
        // 4th-order centered partials of every component
        std::vector<TensorFieldValue> dpart(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            Vec xp = x, xm = x, xp2 = x, xm2 = x;
            xp[static_cast<std::size_t>(a)] += h;
            xm[static_cast<std::size_t>(a)] -= h;
            xp2[static_cast<std::size_t>(a)] += 2 * h;
            xm2[static_cast<std::size_t>(a)] -= 2 * h;
            const TensorFieldValue vp2 = base(xp2), vp = base(xp), vm = base(xm), vm2 = base(xm2);
            TensorFieldValue d(n, contra, cov);
            for (std::size_t i = 0; i < d.comp.size(); ++i)
                d.comp[i] = (-vp2.comp[i] + 8 * vp.comp[i] - 8 * vm.comp[i] + vm2.comp[i]) /
                            (12 * h);
            dpart[static_cast<std::size_t>(a)] = std::move(d);
        }
        const TensorFieldValue v0 = base(x);

        const int rank_in = contra + cov;
        std::vector<int> idx(static_cast<std::size_t>(rank_in + 1), 0);
        while (true) {
            const int deriv = idx[static_cast<std::size_t>(rank_in)];
            std::span<const int> inner(idx.data(), static_cast<std::size_t>(rank_in));
            double acc = dpart[static_cast<std::size_t>(deriv)].at(inner);
            std::vector<int> tmp(idx.begin(), idx.begin() + rank_in);
            for (int slot = 0; slot < rank_in; ++slot) {
                const int orig = tmp[static_cast<std::size_t>(slot)];
                for (int p = 0; p < n; ++p) {
                    tmp[static_cast<std::size_t>(slot)] = p;
                    const double tv = v0.at(tmp);
                    if (slot < contra) {
                        acc += c->gamma(orig, p, deriv, x) * tv;  // upper slot
                    } else {
                        acc -= c->gamma(p, orig, deriv, x) * tv;  // lower slot
                    }
                }
                tmp[static_cast<std::size_t>(slot)] = orig;
            }
            result.at(idx) = acc;

            int a = rank_in;
            for (; a >= 0; --a) {
                if (++idx[static_cast<std::size_t>(a)] < n) break;
                idx[static_cast<std::size_t>(a)] = 0;
            }
            if (a < 0) break;
        }
        return result;
    };
    return out;
}

TensorFieldValue iterated_scalar_derivative(const std::function<double(const Vec&)>& f,
                                            const ChartConnection& conn, int k, const Vec& x) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("iterated_scalar_derivative: order must be 1..4");
    TensorField t = TensorField::scalar(conn.dim(), f);
    for (int i = 0; i < k; ++i) t = covariant_derivative(t, conn);
    return t.eval(x);
}

double CurvatureValue::antisymmetry_defect() const {
    double m = 0.0;
    for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    m = std::max(m, std::abs(at(p, i, j, k) + at(p, i, k, j)));
    return m;
}

CurvatureValue curvature_tensor(const ChartConnection& conn, const Vec& x) {
    const int n = conn.dim();
    CurvatureValue r;
    r.n = n;
    r.comp.assign(static_cast<std::size_t>(n * n * n * n), 0.0);

    // coefficients and first derivatives from the order-1 jets
    std::vector<double> g(static_cast<std::size_t>(n * n * n));
    std::vector<double> dg(static_cast<std::size_t>(n * n * n * n));  // [p][i][j][axis]
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet jet = conn.gamma_jet(p, i, j, x, 1);
                g[static_cast<std::size_t>((p * n + i) * n + j)] = jet.value();
                for (int a = 0; a < n; ++a) {
                    std::fill(e.begin(), e.end(), 0);
                    e[static_cast<std::size_t>(a)] = 1;
                    dg[static_cast<std::size_t>(((p * n + i) * n + j) * n + a)] = jet.coeff(e);
                }
            }
    auto G = [&](int p, int i, int j) { return g[static_cast<std::size_t>((p * n + i) * n + j)]; };
    auto dG = [&](int p, int i, int j, int a) {
        return dg[static_cast<std::size_t>(((p * n + i) * n + j) * n + a)];
    };

    for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = dG(p, i, k, j) - dG(p, i, j, k);
                    for (int q = 0; q < n; ++q)
                        v += G(q, i, k) * G(p, q, j) - G(q, i, j) * G(p, q, k);
                    r.comp[static_cast<std::size_t>(((p * n + i) * n + j) * n + k)] = v;
                }
    return r;
}

CurvatureTorsion curvature_torsion(const ChartConnection& conn, const Vec& x) {
    return {curvature_tensor(conn, x), conn.torsion(x)};
}

double scalar_curvature(const ChartConnection& conn, const Vec& x) {
    if (!conn.has_metric())
        throw std::logic_error("scalar_curvature: chart has no metric");
    const int n = conn.dim();
    const CurvatureValue R = curvature_tensor(conn, x);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double ric = 0.0;
            for (int p = 0; p < n; ++p) ric += R.at(p, i, p, k);
            s += conn.inverse_metric(i, k, x) * ric;
        }
    return s;
}

double ricci_identity_residual(const TensorField& tau, const ChartConnection& conn,
                               const Vec& x) {
    const int n = conn.dim();
    if (tau.contra != 0)
        throw std::invalid_argument("ricci_identity_residual: covariant tensors only");
    const int m = tau.cov;

    TensorField d1 = covariant_derivative(tau, conn);
    TensorField d2 = covariant_derivative(d1, conn);
    const TensorFieldValue v0 = tau.eval(x);
    const TensorFieldValue v1 = d1.eval(x);
    const TensorFieldValue v2 = d2.eval(x);
    const CurvatureValue R = curvature_tensor(conn, x);
    const auto T = conn.torsion(x);

    double worst = 0.0;
    std::vector<int> base(static_cast<std::size_t>(m), 0);
    while (true) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                std::vector<int> jk(base);
                jk.push_back(j);
                jk.push_back(k);
                std::vector<int> kj(base);
                kj.push_back(k);
                kj.push_back(j);
                const double lhs = v2.at(jk) - v2.at(kj);

                double rhs = 0.0;
                std::vector<int> tmp = base;
                for (int nu = 0; nu < m; ++nu) {
                    const int orig = tmp[static_cast<std::size_t>(nu)];
                    for (int p = 0; p < n; ++p) {
                        tmp[static_cast<std::size_t>(nu)] = p;
                        rhs += v0.at(tmp) * R.at(p, orig, j, k);
                    }
                    tmp[static_cast<std::size_t>(nu)] = orig;
                }
                std::vector<int> wp(base);
                wp.push_back(0);
                for (int p = 0; p < n; ++p) {
                    wp[static_cast<std::size_t>(m)] = p;
                    rhs -= v1.at(wp) * T[static_cast<std::size_t>((p * n + j) * n + k)];
                }
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        int a = m - 1;
        for (; a >= 0; --a) {
            if (++base[static_cast<std::size_t>(a)] < n) break;
            base[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return worst;
}

double metric_compatibility_residual(const ChartConnection& conn, const Vec& x) {
    TensorField g = TensorField::metric_of(conn);
    return covariant_derivative(g, conn).eval(x).max_abs();
}

}  // namespace psido
