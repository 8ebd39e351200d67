#include "psido/fiber_symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace psido {

FiberSymbol metric_norm_symbol(const ChartConnection& conn) {
    if (!conn.has_metric())
        throw std::invalid_argument("metric_norm_symbol: chart has no metric");
    const ChartConnection* c = &conn;
    FiberSymbol s;
    s.max_fiber_order = 8;
    s.value = [c](const Vec& x, const Vec& w) {
        const int n = c->dim();
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                acc += c->inverse_metric(i, j, x) * w[static_cast<std::size_t>(i)] *
                       w[static_cast<std::size_t>(j)];
        return acc;
    };
    s.pullback = [c](const Vec& x0, const std::vector<Jet>& w, std::span<const int> widx,
                     int order) {
        const int n = c->dim();
        Jet acc = Jet::constant(n, order, 0.0);
        if (widx.size() == 0) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc = acc + c->inverse_metric_jet(i, j, x0, order) *
                                    w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
        } else if (widx.size() == 1) {
            const int i = widx[0];
            for (int j = 0; j < n; ++j)
                acc = acc + (c->inverse_metric_jet(i, j, x0, order) *
                             w[static_cast<std::size_t>(j)]).scaled(2.0);
        } else if (widx.size() == 2) {
            acc = c->inverse_metric_jet(widx[0], widx[1], x0, order).scaled(2.0);
        }
        return acc;  // third and higher fiber derivatives vanish
    };
    return s;
}

namespace {

double fd_fiber(const std::function<double(const Vec&, const Vec&)>& f, const Vec& x, Vec w,
                std::vector<int> widx, double h) {
    if (widx.empty()) return f(x, w);
    const int axis = widx.back();
    widx.pop_back();
    Vec wp = w, wm = w;
    wp[static_cast<std::size_t>(axis)] += h;
    wm[static_cast<std::size_t>(axis)] -= h;
    return (fd_fiber(f, x, wp, widx, h) - fd_fiber(f, x, wm, widx, h)) / (2.0 * h);
}

}  // namespace

FiberSymbol black_box_symbol(std::function<double(const Vec&, const Vec&)> f, int n) {
    FiberSymbol s;
    s.max_fiber_order = 2;
    s.value = f;
    s.pullback = [f, n](const Vec& x0, const std::vector<Jet>& w, std::span<const int> widx,
                        int order) {
        double wscale = 1.0;
        for (const auto& jw : w) wscale = std::max(wscale, std::abs(jw.value()));
        const double hw = 1e-4 * wscale;
        std::vector<int> idx(widx.begin(), widx.end());
        auto phi = [&](const Vec& x) {
            Vec y(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a)
                y[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] -
                                                 x0[static_cast<std::size_t>(a)];
            Vec wx(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) wx[static_cast<std::size_t>(a)] = w[static_cast<std::size_t>(a)].eval(y);
            return fd_fiber(f, x, wx, idx, hw);
        };
        return fd_scalar_jet(phi, x0, n, std::min(order, 2), 1e-3).extended(order);
    };
    return s;
}

TensorFieldValue fiber_derivative(const FiberSymbol& sigma, const CotangentPoint& v, int k) {
    const int n = static_cast<int>(v.x0.size());
    if (k < 0) throw std::invalid_argument("fiber_derivative: negative order");
    double vnorm = 0.0;
    for (double c : v.v) vnorm += c * c;
    const double h = 1e-3 * (1.0 + std::sqrt(vnorm));

    TensorFieldValue out(n, k, 0);
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        const double val = fd_fiber(sigma.value, v.x0, v.v, idx, h);
        if (!std::isfinite(val)) throw std::domain_error("fiber_derivative: non-finite symbol");
        out.at(idx) = val;
        if (k == 0) break;
        int a = k - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < n) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

TensorFieldValue symbol_covariant_derivative(const FiberSymbol& sigma, const CotangentPoint& v,
                                             const ChartConnection& conn, int k, int j) {
    const int n = conn.dim();
    if (k < 0 || k > 3)
        throw std::invalid_argument(
            "symbol_covariant_derivative: x-order must lie in 0..3 (jet order k+1 needed)");
    if (j < 0 || j > sigma.max_fiber_order)
        throw std::invalid_argument("symbol_covariant_derivative: fiber order unavailable");
    const int order = k + 1;

    // Linearization jets for the dual basis; w and M = dw/dv follow from
    // linearity of the jet in v.
    std::vector<Jet> lp;
    for (int p = 0; p < n; ++p) {
        CotangentPoint basis;
        basis.x0 = v.x0;
        basis.v.assign(static_cast<std::size_t>(n), 0.0);
        basis.v[static_cast<std::size_t>(p)] = 1.0;
        lp.push_back(build_l_jet(basis, conn, order).poly);
    }
    std::vector<Jet> w(static_cast<std::size_t>(n), Jet(n, order));
    std::vector<Jet> M(static_cast<std::size_t>(n * n), Jet(n, order));  // [i][p]
    for (int i = 0; i < n; ++i) {
        Jet acc(n, order);
        for (int p = 0; p < n; ++p) {
            Jet dlp = lp[static_cast<std::size_t>(p)].partial(i);
            M[static_cast<std::size_t>(i * n + p)] = dlp;
            acc = acc + dlp.scaled(v.v[static_cast<std::size_t>(p)]);
        }
        w[static_cast<std::size_t>(i)] = acc;
    }

    const GammaJets gamma = GammaJets::at(conn, v.x0, order);
    TensorFieldValue out(n, j, k);

    std::vector<int> upper(static_cast<std::size_t>(j), 0);
    while (true) {
        // G^{p...}(x) = sum_i pullback_{i...} * prod M_i^p, a scalar family
        Jet g(n, order);
        std::vector<int> widx(static_cast<std::size_t>(j), 0);
        if (j == 0) {
            g = sigma.pullback(v.x0, w, {}, order);
        } else {
            while (true) {
                Jet term = sigma.pullback(v.x0, w, widx, order);
                for (int a = 0; a < j; ++a)
                    term = term * M[static_cast<std::size_t>(
                        widx[static_cast<std::size_t>(a)] * n +
                        upper[static_cast<std::size_t>(a)])];
                g = g + term;
                int a = j - 1;
                for (; a >= 0; --a) {
                    if (++widx[static_cast<std::size_t>(a)] < n) break;
                    widx[static_cast<std::size_t>(a)] = 0;
                }
                if (a < 0) break;
            }
        }

        JetTensor d = JetTensor::scalar(g);
        for (int step = 0; step < k; ++step) d = jet_covariant_derivative(d, gamma);
        const TensorFieldValue vals = d.values();

        std::vector<int> lower(static_cast<std::size_t>(k), 0);
        std::vector<int> full(static_cast<std::size_t>(j + k));
        while (true) {
            for (int a = 0; a < j; ++a) full[static_cast<std::size_t>(a)] = upper[static_cast<std::size_t>(a)];
            for (int a = 0; a < k; ++a)
                full[static_cast<std::size_t>(j + a)] = lower[static_cast<std::size_t>(a)];
            out.at(full) = vals.at(lower);
            if (k == 0) break;
            int a = k - 1;
            for (; a >= 0; --a) {
                if (++lower[static_cast<std::size_t>(a)] < n) break;
                lower[static_cast<std::size_t>(a)] = 0;
            }
            if (a < 0) break;
        }

        if (j == 0) break;
        int a = j - 1;
        for (; a >= 0; --a) {
            if (++upper[static_cast<std::size_t>(a)] < n) break;
            upper[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

}  // namespace psido
