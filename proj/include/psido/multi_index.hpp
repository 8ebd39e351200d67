#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace psido {

/// Tuple of non-negative integer exponents, used both for monomial powers
/// and for mixed-derivative orders.  Ordered graded-lexicographically.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : e_(static_cast<std::size_t>(n), 0) {
        if (n < 0) throw std::invalid_argument("MultiIndex: negative dimension");
    }
    MultiIndex(std::initializer_list<int> list) : e_(list) { validate(); }
    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) { validate(); }

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& entries() const { return e_; }

    /// |alpha| = sum of entries.
    int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    bool is_zero() const { return order() == 0; }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.e_[static_cast<std::size_t>(i)] += o[i];
        return r;
    }

    /// Componentwise difference; throws if any entry would go negative.
    MultiIndex minus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) {
            r.e_[static_cast<std::size_t>(i)] -= o[i];
            if (r.e_[static_cast<std::size_t>(i)] < 0)
                throw std::invalid_argument("MultiIndex: negative entry in difference");
        }
        return r;
    }

    bool leq(const MultiIndex& o) const {  // componentwise
        for (int i = 0; i < dim(); ++i)
            if (e_[static_cast<std::size_t>(i)] > o[i]) return false;
        return true;
    }

    /// alpha! = prod alpha_i!
    std::int64_t factorial() const {
        std::int64_t f = 1;
        for (int v : e_)
            for (int k = 2; k <= v; ++k) f *= k;
        return f;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

    /// Graded-lexicographic strict order: compare |alpha| first, then entries.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.dim() != b.dim())
            throw std::invalid_argument("MultiIndex: dimension mismatch in comparison");
        const int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        return a.e_ < b.e_;
    }

private:
    void validate() const {
        for (int v : e_)
            if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
    }

    std::vector<int> e_;
};

/// All multi-indices of dimension n with |alpha| <= max_order, graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

/// Componentwise binomial coefficient C(alpha, beta); beta <= alpha assumed.
std::int64_t multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace psido
