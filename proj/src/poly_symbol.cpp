#include "psido/poly_symbol.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace psido {

PolySymbol PolySymbol::constant(int n, RatC c) {
    PolySymbol s(n);
    s.add_term(MultiIndex(n), MultiIndex(n), c);
    return s;
}

PolySymbol PolySymbol::xi(int n, int axis) {
    PolySymbol s(n);
    MultiIndex k(n);
    k[axis] = 1;
    s.add_term(MultiIndex(n), k, RatC(1));
    return s;
}

PolySymbol PolySymbol::x(int n, int axis) {
    PolySymbol s(n);
    MultiIndex a(n);
    a[axis] = 1;
    s.add_term(a, MultiIndex(n), RatC(1));
    return s;
}

PolySymbol PolySymbol::minus_xi_norm2(int n) {
    PolySymbol s(n);
    for (int i = 0; i < n; ++i) {
        MultiIndex k(n);
        k[i] = 2;
        s.add_term(MultiIndex(n), k, RatC(-1));
    }
    return s;
}

int PolySymbol::xi_degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second.order());
    return d;
}

int PolySymbol::x_degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first.order());
    return d;
}

void PolySymbol::add_term(const MultiIndex& xe, const MultiIndex& ke, const RatC& c) {
    if (xe.dim() != n_ || ke.dim() != n_)
        throw std::invalid_argument("PolySymbol: exponent dimension mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find({xe, ke});
    if (it == terms_.end()) {
        terms_.emplace(Key{xe, ke}, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolySymbol PolySymbol::operator+(const PolySymbol& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolySymbol: dimension mismatch");
    PolySymbol r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
}

PolySymbol PolySymbol::operator-(const PolySymbol& o) const { return *this + (-o); }

PolySymbol PolySymbol::operator-() const {
    PolySymbol r(n_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

PolySymbol PolySymbol::scaled(const RatC& c) const {
    PolySymbol r(n_);
    if (c.is_zero()) return r;
    for (const auto& [key, v] : terms_) r.terms_.emplace(key, v * c);
    return r;
}

PolySymbol PolySymbol::operator*(const PolySymbol& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolySymbol: dimension mismatch");
    PolySymbol r(n_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term(ka.first.plus(kb.first), ka.second.plus(kb.second), ca * cb);
    return r;
}

PolySymbol PolySymbol::d_xi(const MultiIndex& k) const {
    PolySymbol r(n_);
    for (const auto& [key, c] : terms_) {
        if (!k.leq(key.second)) continue;
        std::int64_t fall = 1;  // falling factorial per axis
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < k[i]; ++j) fall *= key.second[i] - j;
        r.add_term(key.first, key.second.minus(k), c.times_int(fall));
    }
    return r;
}

PolySymbol PolySymbol::d_x(const MultiIndex& k) const {
    PolySymbol r(n_);
    for (const auto& [key, c] : terms_) {
        if (!k.leq(key.first)) continue;
        std::int64_t fall = 1;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < k[i]; ++j) fall *= key.first[i] - j;
        r.add_term(key.first.minus(k), key.second, c.times_int(fall));
    }
    return r;
}

std::complex<double> PolySymbol::eval(std::span<const double> x,
                                      std::span<const double> xi) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(xi.size()) != n_)
        throw std::invalid_argument("PolySymbol::eval: point dimension mismatch");
    std::complex<double> acc = 0.0;
    for (const auto& [key, c] : terms_) {
        double mono = 1.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < key.first[i]; ++j) mono *= x[i];
            for (int j = 0; j < key.second[i]; ++j) mono *= xi[i];
        }
        acc += c.to_complex() * mono;
    }
    return acc;
}

PolySymbol PolySymbol::leading() const {
    if (terms_.empty()) throw std::domain_error("empty symbol");
    const int d = xi_degree();
    PolySymbol r(n_);
    for (const auto& [key, c] : terms_)
        if (key.second.order() == d) r.terms_.emplace(key, c);
    return r;
}

std::string PolySymbol::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        for (int i = 0; i < n_; ++i) {
            if (key.first[i]) {
                s += "*x" + std::to_string(i + 1);
                if (key.first[i] > 1) s += "^" + std::to_string(key.first[i]);
            }
        }
        for (int i = 0; i < n_; ++i) {
            if (key.second[i]) {
                s += "*xi" + std::to_string(i + 1);
                if (key.second[i] > 1) s += "^" + std::to_string(key.second[i]);
            }
        }
    }
    return s;
}

std::string PolySymbol::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [key, c] : terms_) {
        nlohmann::ordered_json t;
        t["x"] = key.first.entries();
        t["xi"] = key.second.entries();
        t["re"] = c.re_str();
        t["im"] = c.im_str();
        j["terms"].push_back(t);
    }
    return j.dump();
}

PolySymbol PolySymbol::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PolySymbol s(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex xe(t.at("x").get<std::vector<int>>());
        MultiIndex ke(t.at("xi").get<std::vector<int>>());
        RatC c(RatC::parse_rational(t.at("re").get<std::string>()),
               RatC::parse_rational(t.at("im").get<std::string>()));
        s.add_term(xe, ke, c);
    }
    return s;
}

ComposeResult compose_symbols(const PolySymbol& sigma_a, const PolySymbol& sigma_b, int trunc) {
    if (sigma_a.dim() != sigma_b.dim())
        throw std::invalid_argument("compose_symbols: dimension mismatch");
    if (trunc < 0) throw std::invalid_argument("compose_symbols: negative truncation");
    const int n = sigma_a.dim();
    PolySymbol acc(n);
    for (const MultiIndex& k : multi_indices_up_to(n, trunc)) {
        PolySymbol da = sigma_a.d_xi(k);
        if (da.is_zero()) continue;
        PolySymbol db = sigma_b.d_x(k);
        if (db.is_zero()) continue;
        RatC factor = RatC::i_power(-k.order()).divided_by_int(k.factorial());
        acc = acc + (da * db).scaled(factor);
    }
    ComposeResult r;
    r.symbol = std::move(acc);
    r.exact = trunc >= sigma_a.xi_degree();
    return r;
}

}  // namespace psido
