#include "psido/multi_index.hpp"

#include <algorithm>

namespace psido {

static void enumerate(int n, int axis, int remaining, MultiIndex& cur,
                      std::vector<MultiIndex>& out) {
    if (axis == n) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur[axis] = k;
        enumerate(n, axis + 1, remaining - k, cur, out);
    }
    cur[axis] = 0;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    enumerate(n, 0, max_order, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
    std::int64_t r = 1;
    for (int i = 0; i < alpha.dim(); ++i) {
        const int a = alpha[i], b = beta[i];
        std::int64_t c = 1;
        for (int k = 0; k < b; ++k) c = c * (a - k) / (k + 1);
        r *= c;
    }
    return r;
}

}  // namespace psido
