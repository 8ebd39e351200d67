#include "psido/parametrix.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psido {

void CutoffSpec::validate() const {
    if (!(r0 > 0.0) || !(r1 > r0))
        throw std::invalid_argument("CutoffSpec: need 0 < r0 < r1");
    if (smoothstep_degree != 1 && smoothstep_degree != 3 && smoothstep_degree != 5 &&
        smoothstep_degree != 7)
        throw std::invalid_argument("CutoffSpec: smoothstep degree must be 1, 3, 5 or 7");
}

double CutoffSpec::chi(double r) const {
    if (r <= r0) return 0.0;
    if (r >= r1) return 1.0;
    const double t = (r - r0) / (r1 - r0);
    switch (smoothstep_degree) {
        case 1: return t;
        case 3: return t * t * (3.0 - 2.0 * t);
        case 5: return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
        default: return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    }
}

double CutoffSpec::chi_at(std::span<const double> xi) const {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return chi(std::sqrt(s));
}

cplx RationalSymbol::eval(std::span<const double> x, std::span<const double> xi) const {
    cplx d = den_base.eval(x, xi);
    cplx dp = 1.0;
    for (int i = 0; i < den_pow; ++i) dp *= d;
    return num.eval(x, xi) / dp;
}

RationalSymbol RationalSymbol::d_x_axis(int axis) const {
    MultiIndex e(num.dim());
    e[axis] = 1;
    RationalSymbol r;
    r.den_base = den_base;
    if (den_pow == 0) {
        r.num = num.d_x(e);
        r.den_pow = 0;
        return r;
    }
    r.num = num.d_x(e) * den_base - (num * den_base.d_x(e)).scaled(RatC(den_pow));
    r.den_pow = den_pow + 1;
    return r;
}

RationalSymbol RationalSymbol::d_xi_axis(int axis) const {
    MultiIndex e(num.dim());
    e[axis] = 1;
    RationalSymbol r;
    r.den_base = den_base;
    if (den_pow == 0) {
        r.num = num.d_xi(e);
        r.den_pow = 0;
        return r;
    }
    r.num = num.d_xi(e) * den_base - (num * den_base.d_xi(e)).scaled(RatC(den_pow));
    r.den_pow = den_pow + 1;
    return r;
}

RationalSymbol RationalSymbol::d_x(const MultiIndex& k) const {
    RationalSymbol r = *this;
    for (int a = 0; a < k.dim(); ++a)
        for (int j = 0; j < k[a]; ++j) r = r.d_x_axis(a);
    return r;
}

RationalSymbol RationalSymbol::d_xi(const MultiIndex& k) const {
    RationalSymbol r = *this;
    for (int a = 0; a < k.dim(); ++a)
        for (int j = 0; j < k[a]; ++j) r = r.d_xi_axis(a);
    return r;
}

int RationalSymbol::nominal_order() const {
    return num.xi_degree() - den_pow * den_base.xi_degree();
}

namespace {

// Raise a rational symbol to the common denominator power e.
PolySymbol lift_num(const RationalSymbol& g, int e) {
    PolySymbol out = g.num;
    for (int i = g.den_pow; i < e; ++i) out = out * g.den_base;
    return out;
}

RationalSymbol rational_sum(const std::vector<RationalSymbol>& parts) {
    if (parts.empty()) throw std::invalid_argument("rational_sum: empty");
    int e = 0;
    for (const auto& p : parts) e = std::max(e, p.den_pow);
    RationalSymbol r;
    r.den_base = parts.front().den_base;
    r.den_pow = e;
    r.num = PolySymbol(parts.front().num.dim());
    for (const auto& p : parts) r.num = r.num + lift_num(p, e);
    return r;
}

std::vector<std::vector<double>> sphere_directions(int n) {
    std::vector<std::vector<double>> dirs;
    for (int a = 0; a < n; ++a) {
        for (int s : {+1, -1}) {
            std::vector<double> d(static_cast<std::size_t>(n), 0.0);
            d[static_cast<std::size_t>(a)] = s;
            dirs.push_back(d);
        }
    }
    if (n == 2) {
        for (int k = 0; k < 16; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / 16.0;
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
    } else if (n >= 3) {
        // fixed quasi-uniform sample, deterministic
        for (int k = 0; k < 32; ++k) {
            std::vector<double> d(static_cast<std::size_t>(n));
            double norm = 0.0;
            for (int a = 0; a < n; ++a) {
                d[static_cast<std::size_t>(a)] =
                    std::cos(2.399963229728653 * (k + 1) * (a + 1) + 0.7 * a);
                norm += d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)];
            }
            norm = std::sqrt(norm);
            for (auto& v : d) v /= norm;
            dirs.push_back(d);
        }
    }
    return dirs;
}

double symbol_scale(const PolySymbol& p) {
    double s = 0.0;
    for (const auto& [key, c] : p.terms()) s = std::max(s, std::abs(c.to_complex()));
    return s;
}

}  // namespace

ParametrixAmplitude ParametrixAmplitude::constant_coeff(PolySymbol p, CutoffSpec spec) {
    return ParametrixAmplitude(AmplitudeMode::ConstantCoeff, std::move(p), spec, {});
}
ParametrixAmplitude ParametrixAmplitude::frozen_coeff(PolySymbol p, CutoffSpec spec) {
    return ParametrixAmplitude(AmplitudeMode::FrozenCoeff, std::move(p), spec, {});
}
ParametrixAmplitude ParametrixAmplitude::iterative(PolySymbol p, CutoffSpec spec,
                                                   std::vector<ExpansionTerm> terms) {
    return ParametrixAmplitude(AmplitudeMode::Iterative, std::move(p), spec, std::move(terms));
}

bool ParametrixAmplitude::x_dependent() const {
    if (mode_ == AmplitudeMode::ConstantCoeff) return false;
    if (mode_ == AmplitudeMode::FrozenCoeff) return p_.x_degree() > 0;
    for (const auto& t : terms_)
        if (t.g.num.x_degree() > 0 || t.g.den_base.x_degree() > 0) return true;
    return false;
}

cplx ParametrixAmplitude::eval(std::span<const double> x, std::span<const double> xi) const {
    const double c = spec_.chi_at(xi);
    if (c == 0.0) return 0.0;
    if (mode_ == AmplitudeMode::Iterative) {
        cplx acc = 0.0;
        for (const auto& t : terms_) acc += t.g.eval(x, xi);
        return c * acc;
    }
    return c / p_.eval(x, xi);
}

ParametrixAmplitude cutoff_amplitude(const PolySymbol& p, const CutoffSpec& spec) {
    spec.validate();
    if (p.x_degree() > 0)
        throw std::invalid_argument("cutoff_amplitude: symbol must depend on xi only");
    if (p.is_zero()) throw std::invalid_argument("cutoff_amplitude: zero symbol");
    const int n = p.dim();
    const std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
    const double scale = symbol_scale(p);
    for (int e = 0; e <= 12; ++e) {
        const double r = spec.r0 * std::pow(2.0, e);
        for (const auto& d : sphere_directions(n)) {
            std::vector<double> xi(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) xi[static_cast<std::size_t>(a)] = r * d[static_cast<std::size_t>(a)];
            if (std::abs(p.eval(x0, xi)) <= 1e-12 * scale)
                throw std::domain_error(
                    "cutoff_amplitude: zero of the symbol inside the cutoff support at |xi|=" +
                    std::to_string(r));
        }
    }
    return ParametrixAmplitude::constant_coeff(p, spec);
}

ParametrixAmplitude frozen_amplitude(const PolySymbol& p, const CutoffSpec& spec) {
    spec.validate();
    if (p.is_zero()) throw std::invalid_argument("frozen_amplitude: zero symbol");
    return ParametrixAmplitude::frozen_coeff(p, spec);
}

GridFunction parametrix_apply(const ParametrixAmplitude& q, const GridFunction& f) {
    return apply_amplitude(
        [&q](std::span<const double> x, std::span<const double> xi) { return q.eval(x, xi); },
        q.x_dependent(), f);
}

RemainderReport remainder_report(const PolySymbol& p, const ParametrixAmplitude& q,
                                 const GridFunction& f) {
    GridFunction qf = parametrix_apply(q, f);
    GridFunction pqf = apply_symbol(p, qf);
    GridFunction rf = pqf;
    for (std::size_t i = 0; i < rf.size(); ++i) rf[i] -= f[i];

    GridFunction rhat = fft_forward(rf);
    GridFunction fhat = fft_forward(f);
    const double fmax = fhat.max_abs();
    const double fl2 = fhat.l2_norm();
    const double r1 = q.cutoff().r1;

    double highband = 0.0, tail2 = 0.0;
    for (std::size_t k = 0; k < rhat.size(); ++k) {
        auto idx = rhat.unflatten(k);
        double s = 0.0;
        for (int a = 0; a < rhat.dim(); ++a) {
            const double w = rhat.freq(a, idx[a]);
            s += w * w;
        }
        if (std::sqrt(s) >= r1) {
            highband = std::max(highband, std::abs(rhat[k]));
            tail2 += std::norm(rhat[k]);
        }
    }
    RemainderReport rep;
    rep.remainder = std::move(rf);
    rep.max_highband_residual = fmax > 0 ? highband / fmax : highband;
    rep.tail_norm = fl2 > 0 ? std::sqrt(tail2) / fl2 : std::sqrt(tail2);
    rep.cutoff = q.cutoff();
    return rep;
}

std::string RemainderReport::to_json() const {
    nlohmann::ordered_json j;
    j["tail_norm"] = tail_norm;
    j["max_highband_residual"] = max_highband_residual;
    j["cutoff"] = {{"r0", cutoff.r0}, {"r1", cutoff.r1}};
    return j.dump();
}

std::vector<ExpansionTerm> elliptic_parametrix_expansion(
    const PolySymbol& sigma_p, int order, const CutoffSpec& spec,
    const std::vector<std::array<double, 2>>& x_box) {
    spec.validate();
    if (order < 0) throw std::invalid_argument("elliptic_parametrix_expansion: negative order");
    const int n = sigma_p.dim();
    if (static_cast<int>(x_box.size()) != n)
        throw std::invalid_argument("elliptic_parametrix_expansion: box dimension mismatch");

    const PolySymbol p_lead = sigma_p.leading();
    const int d = sigma_p.xi_degree();

    // Ellipticity of the leading symbol on the unit sphere over the x box.
    {
        const double scale = symbol_scale(p_lead);
        const auto dirs = sphere_directions(n);
        const int per_axis = 5;
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) {
                const double lo = x_box[static_cast<std::size_t>(a)][0];
                const double hi = x_box[static_cast<std::size_t>(a)][1];
                x[static_cast<std::size_t>(a)] =
                    lo + (hi - lo) * (idx[static_cast<std::size_t>(a)] + 0.5) / per_axis;
            }
            for (const auto& dir : dirs) {
                if (std::abs(p_lead.eval(x, dir)) <= 1e-9 * std::max(scale, 1.0))
                    throw std::domain_error(
                        "elliptic_parametrix_expansion: leading symbol vanishes on |xi|=1");
            }
            int a = 0;
            for (; a < n; ++a) {
                if (++idx[static_cast<std::size_t>(a)] < per_axis) break;
                idx[static_cast<std::size_t>(a)] = 0;
            }
            if (a == n) break;
        }
    }

    // Split sigma_p by xi-homogeneity.
    std::vector<PolySymbol> p_h(static_cast<std::size_t>(d + 1), PolySymbol(n));
    for (const auto& [key, c] : sigma_p.terms())
        p_h[static_cast<std::size_t>(key.second.order())].add_term(key.first, key.second, c);

    std::vector<ExpansionTerm> terms;
    RationalSymbol g0;
    g0.num = PolySymbol::constant(n, RatC(1));
    g0.den_base = p_lead;
    g0.den_pow = 1;
    terms.push_back({g0, -d});

    for (int m = 1; m <= order; ++m) {
        std::vector<RationalSymbol> parts;
        for (int j = 0; j < m; ++j) {
            for (int h = 0; h <= d; ++h) {
                const int korder = m - j - (d - h);
                if (korder < 0 || (h == d && korder == 0)) continue;
                if (p_h[static_cast<std::size_t>(h)].is_zero()) continue;
                for (const MultiIndex& k : multi_indices_up_to(n, korder)) {
                    if (k.order() != korder) continue;
                    PolySymbol dp = p_h[static_cast<std::size_t>(h)].d_xi(k);
                    if (dp.is_zero()) continue;
                    RationalSymbol dg = terms[static_cast<std::size_t>(j)].g.d_x(k);
                    const RatC factor =
                        RatC::i_power(-k.order()).divided_by_int(k.factorial());
                    RationalSymbol part;
                    part.den_base = p_lead;
                    part.den_pow = dg.den_pow;
                    part.num = (dp * dg.num).scaled(factor);
                    parts.push_back(std::move(part));
                }
            }
        }
        RationalSymbol gm;
        if (parts.empty()) {
            gm.num = PolySymbol(n);
            gm.den_base = p_lead;
            gm.den_pow = 1;
        } else {
            RationalSymbol s = rational_sum(parts);
            gm.den_base = p_lead;
            gm.den_pow = s.den_pow + 1;
            gm.num = -s.num;
        }
        terms.push_back({gm, -d - m});
    }
    return terms;
}

RationalSymbol expansion_residual(const PolySymbol& sigma_p,
                                  const std::vector<ExpansionTerm>& terms) {
    const int n = sigma_p.dim();
    const int d = sigma_p.xi_degree();
    std::vector<RationalSymbol> parts;
    for (const MultiIndex& k : multi_indices_up_to(n, d)) {
        PolySymbol dp = sigma_p.d_xi(k);
        if (dp.is_zero()) continue;
        const RatC factor = RatC::i_power(-k.order()).divided_by_int(k.factorial());
        for (const auto& t : terms) {
            RationalSymbol dg = t.g.d_x(k);
            RationalSymbol part;
            part.den_base = t.g.den_base;
            part.den_pow = dg.den_pow;
            part.num = (dp * dg.num).scaled(factor);
            parts.push_back(std::move(part));
        }
    }
    RationalSymbol one;
    one.num = PolySymbol::constant(n, RatC(-1));
    one.den_base = terms.empty() ? sigma_p.leading() : terms.front().g.den_base;
    one.den_pow = 0;
    parts.push_back(one);
    return rational_sum(parts);
}

}  // namespace psido
