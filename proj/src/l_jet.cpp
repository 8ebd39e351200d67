#include "psido/l_jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psido {

JetTensor JetTensor::scalar(const Jet& j) {
    JetTensor t;
    t.n = j.dim();
    t.rank = 0;
    t.comp = {j};
    return t;
}

static std::size_t flat_index(int n, std::span<const int> idx) {
    std::size_t f = 0;
    for (int v : idx) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    return f;
}

Jet& JetTensor::at(std::span<const int> idx) { return comp[flat_index(n, idx)]; }
const Jet& JetTensor::at(std::span<const int> idx) const { return comp[flat_index(n, idx)]; }

TensorFieldValue JetTensor::values() const {
    TensorFieldValue v(n, 0, rank);
    for (std::size_t i = 0; i < comp.size(); ++i) v.comp[i] = comp[i].value();
    return v;
}

GammaJets GammaJets::at(const ChartConnection& conn, const Vec& x0, int order) {
    GammaJets g;
    g.n = conn.dim();
    g.order = order;
    g.g.reserve(static_cast<std::size_t>(g.n * g.n * g.n));
    for (int p = 0; p < g.n; ++p)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) g.g.push_back(conn.gamma_jet(p, i, j, x0, order));
    return g;
}

JetTensor jet_covariant_derivative(const JetTensor& tau, const GammaJets& gamma) {
    const int n = tau.n;
    JetTensor out;
    out.n = n;
    out.rank = tau.rank + 1;
    const int order = tau.comp.front().order();
    out.comp.assign(tau.comp.size() * static_cast<std::size_t>(n), Jet(n, order));

    std::vector<int> idx(static_cast<std::size_t>(out.rank), 0);
    while (true) {
        const int deriv = idx[static_cast<std::size_t>(tau.rank)];
        std::span<const int> inner(idx.data(), static_cast<std::size_t>(tau.rank));
        Jet acc = tau.at(inner).partial(deriv);
        std::vector<int> tmp(idx.begin(), idx.begin() + tau.rank);
        for (int nu = 0; nu < tau.rank; ++nu) {
            const int orig = tmp[static_cast<std::size_t>(nu)];
            for (int p = 0; p < n; ++p) {
                tmp[static_cast<std::size_t>(nu)] = p;
                acc = acc - gamma(p, orig, deriv) * tau.at(tmp);
            }
            tmp[static_cast<std::size_t>(nu)] = orig;
        }
        out.at(idx) = acc;

        int a = out.rank - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < n) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

namespace {

// Average of a rank-k all-covariant value over all index permutations.
double symmetrized_component(const TensorFieldValue& t, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    double acc = 0.0;
    std::size_t count = 0;
    do {
        acc += t.at(idx);
        ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc / static_cast<double>(count);
}

}  // namespace

LJet build_l_jet(const CotangentPoint& v, const ChartConnection& conn, int K) {
    if (K < 1 || K > 4) throw std::invalid_argument("build_l_jet: order must lie in 1..4");
    const int n = conn.dim();
    if (static_cast<int>(v.x0.size()) != n || static_cast<int>(v.v.size()) != n)
        throw std::invalid_argument("build_l_jet: point dimension mismatch");

    LJet jet;
    jet.base = v;
    jet.order = K;
    jet.poly = Jet::linear(n, K, v.v);
    const GammaJets gamma = GammaJets::at(conn, v.x0, K);

    std::vector<int> expo(static_cast<std::size_t>(n), 0);
    for (int k = 2; k <= K; ++k) {
        // Covariant derivative values of the partial jet: the order-k
        // coefficients are still zero, so what remains is exactly the
        // lower-order correction that the new coefficients must cancel.
        JetTensor d = JetTensor::scalar(jet.poly);
        for (int step = 0; step < k; ++step) d = jet_covariant_derivative(d, gamma);
        const TensorFieldValue w = d.values();

        // c_alpha = -Sym(W)_alpha / alpha!
        std::vector<int> seq(static_cast<std::size_t>(k), 0);
        // enumerate multisets via non-decreasing sequences
        while (true) {
            bool nondecreasing = true;
            for (int a = 1; a < k; ++a)
                if (seq[static_cast<std::size_t>(a)] < seq[static_cast<std::size_t>(a - 1)])
                    nondecreasing = false;
            if (nondecreasing) {
                const double sym = symmetrized_component(w, seq);
                std::fill(expo.begin(), expo.end(), 0);
                for (int a = 0; a < k; ++a) ++expo[static_cast<std::size_t>(seq[static_cast<std::size_t>(a)])];
                double fact = 1.0;
                for (int a = 0; a < n; ++a)
                    for (int m = 2; m <= expo[static_cast<std::size_t>(a)]; ++m) fact *= m;
                jet.poly.set_coeff(expo, -sym / fact);
            }
            int a = k - 1;
            for (; a >= 0; --a) {
                if (++seq[static_cast<std::size_t>(a)] < n) break;
                seq[static_cast<std::size_t>(a)] = 0;
            }
            if (a < 0) break;
        }
    }
    return jet;
}

TensorFieldValue nabla_l(const LJet& jet, const ChartConnection& conn, int k) {
    if (k < 1 || k > jet.order)
        throw std::invalid_argument("nabla_l: requested order exceeds the jet order");
    const GammaJets gamma = GammaJets::at(conn, jet.base.x0, jet.order);
    JetTensor d = JetTensor::scalar(jet.poly);
    for (int step = 0; step < k; ++step) d = jet_covariant_derivative(d, gamma);
    return d.values();
}

TensorFieldValue nabla_l(const CotangentPoint& v, const ChartConnection& conn, int k) {
    return nabla_l(build_l_jet(v, conn, k), conn, k);
}

double nabla_l_permutation_sum(const TensorFieldValue& nk) {
    const int n = nk.n;
    const int k = nk.cov;
    double worst = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        bool canonical = sorted == idx;
        if (canonical) {
            double acc = 0.0;
            do {
                acc += nk.at(sorted);
            } while (std::next_permutation(sorted.begin(), sorted.end()));
            worst = std::max(worst, std::abs(acc));
        }
        int a = k - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < n) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return worst;
}

TensorFieldValue symmetrized_cov_derivative(const Jet& f_jet, const ChartConnection& conn,
                                            const Vec& x0, int k) {
    const GammaJets gamma = GammaJets::at(conn, x0, f_jet.order());
    JetTensor d = JetTensor::scalar(f_jet);
    for (int step = 0; step < k; ++step) d = jet_covariant_derivative(d, gamma);
    const TensorFieldValue raw = d.values();

    TensorFieldValue out(raw.n, 0, k);
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        out.at(idx) = symmetrized_component(raw, idx);
        int a = k - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < raw.n) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

Jet covariant_taylor(const Jet& f_jet, const Vec& x0, const ChartConnection& conn, int N) {
    if (N < 0 || N > 4) throw std::invalid_argument("covariant_taylor: order must lie in 0..4");
    const int n = conn.dim();
    const int order = f_jet.order();
    const GammaJets gamma = GammaJets::at(conn, x0, order);

    // lambda^p(x) = l(e_p, x): the tangent-vector-valued linearization jets
    std::vector<Jet> lam;
    lam.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        CotangentPoint basis;
        basis.x0 = x0;
        basis.v.assign(static_cast<std::size_t>(n), 0.0);
        basis.v[static_cast<std::size_t>(p)] = 1.0;
        lam.push_back(build_l_jet(basis, conn, std::max(1, std::min(order, 4))).poly.extended(order));
    }

    Jet acc = Jet::constant(n, order, 0.0);
    JetTensor d = JetTensor::scalar(f_jet);
    double fact = 1.0;
    for (int m = 0; m <= N; ++m) {
        if (m > 0) {
            d = jet_covariant_derivative(d, gamma);
            fact *= m;
        }
        const TensorFieldValue grad = d.values();
        // contract with lambda^{i1} ... lambda^{im}
        std::vector<int> idx(static_cast<std::size_t>(m), 0);
        while (true) {
            const double g = grad.at(idx) / fact;
            if (g != 0.0) {
                Jet term = Jet::constant(n, order, g);
                for (int a = 0; a < m; ++a)
                    term = term * lam[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
                acc = acc + term;
            }
            if (m == 0) break;
            int a = m - 1;
            for (; a >= 0; --a) {
                if (++idx[static_cast<std::size_t>(a)] < n) break;
                idx[static_cast<std::size_t>(a)] = 0;
            }
            if (a < 0) break;
        }
    }
    return acc;
}

}  // namespace psido
