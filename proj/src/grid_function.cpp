#include "psido/grid_function.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace psido {

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(std::vector<int> shape, std::vector<double> extents, bool periodic)
    : shape_(std::move(shape)), extents_(std::move(extents)), periodic_(periodic) {
    if (shape_.empty() || shape_.size() != extents_.size())
        throw std::invalid_argument("GridFunction: shape/extent mismatch");
    std::size_t total = 1;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        if (!power_of_two(shape_[i]))
            throw std::invalid_argument("GridFunction: sample count must be a power of two");
        if (!(extents_[i] > 0.0))
            throw std::invalid_argument("GridFunction: extent must be positive");
        total *= static_cast<std::size_t>(shape_[i]);
    }
    data_.assign(total, cplx(0.0, 0.0));
}

GridFunction GridFunction::from_function(
    std::vector<int> shape, std::vector<double> extents,
    const std::function<cplx(std::span<const double>)>& f) {
    GridFunction g(std::move(shape), std::move(extents));
    const int n = g.dim();
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        auto idx = g.unflatten(flat);
        for (int a = 0; a < n; ++a) x[static_cast<std::size_t>(a)] = g.coord(a, idx[a]);
        g[flat] = f(x);
    }
    return g;
}

double GridFunction::freq(int axis, int idx) const {
    const int N = shape_[static_cast<std::size_t>(axis)];
    const int k = idx <= N / 2 ? idx : idx - N;
    return 2.0 * std::numbers::pi * k / extents_[static_cast<std::size_t>(axis)];
}

std::vector<int> GridFunction::unflatten(std::size_t flat) const {
    std::vector<int> idx(shape_.size());
    for (int a = dim() - 1; a >= 0; --a) {
        const auto N = static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
        idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % N);
        flat /= N;
    }
    return idx;
}

std::size_t GridFunction::flatten(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a)
        flat = flat * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(idx[a]);
    return flat;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::l2_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

void fft_inplace(std::vector<cplx>& data, const std::vector<int>& shape, int sign) {
    static std::mutex planner_mutex;  // FFTW planning is not thread-safe
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(),
                             reinterpret_cast<fftw_complex*>(data.data()),
                             reinterpret_cast<fftw_complex*>(data.data()),
                             sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

GridFunction fft_forward(const GridFunction& f) {
    GridFunction out = f;
    fft_inplace(out.data(), f.shape(), -1);
    return out;
}

GridFunction fft_backward(const GridFunction& fhat) {
    GridFunction out = fhat;
    fft_inplace(out.data(), fhat.shape(), +1);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out.data()) v *= scale;
    return out;
}

GridFunction apply_amplitude(
    const std::function<cplx(std::span<const double>, std::span<const double>)>& amp,
    bool x_dependent, const GridFunction& f) {
    if (!f.periodic()) throw std::invalid_argument("apply_amplitude: grid must be periodic");
    const int n = f.dim();
    GridFunction fhat = fft_forward(f);
    std::vector<double> xi(static_cast<std::size_t>(n));
    if (!x_dependent) {
        const std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
        for (std::size_t k = 0; k < fhat.size(); ++k) {
            auto idx = fhat.unflatten(k);
            for (int a = 0; a < n; ++a) xi[static_cast<std::size_t>(a)] = fhat.freq(a, idx[a]);
            cplx q = amp(x0, xi);
            if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
                throw std::domain_error("apply_amplitude: non-finite amplitude at grid frequency");
            fhat[k] *= q;
        }
        return fft_backward(fhat);
    }

    // x-dependent amplitude: per-sample inverse transform, O(M^2).
    // Per-axis twiddle tables keep the cost at polynomial evaluation.
    std::vector<std::vector<cplx>> twiddle(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        const int N = f.shape()[static_cast<std::size_t>(a)];
        twiddle[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(N) *
                                                    static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const double phase = 2.0 * std::numbers::pi * j * k / N;
                twiddle[static_cast<std::size_t>(a)][static_cast<std::size_t>(j) *
                                                         static_cast<std::size_t>(N) +
                                                     static_cast<std::size_t>(k)] =
                    cplx(std::cos(phase), std::sin(phase));
            }
    }

    GridFunction out(f.shape(), f.extents());
    std::vector<double> x(static_cast<std::size_t>(n));
    const double scale = 1.0 / static_cast<double>(f.size());
    for (std::size_t jf = 0; jf < f.size(); ++jf) {
        auto jidx = f.unflatten(jf);
        for (int a = 0; a < n; ++a) x[static_cast<std::size_t>(a)] = f.coord(a, jidx[a]);
        cplx acc = 0.0;
        for (std::size_t kf = 0; kf < f.size(); ++kf) {
            auto kidx = f.unflatten(kf);
            for (int a = 0; a < n; ++a) xi[static_cast<std::size_t>(a)] = f.freq(a, kidx[a]);
            cplx q = amp(x, xi);
            if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
                throw std::domain_error("apply_amplitude: non-finite amplitude at grid frequency");
            cplx w(1.0, 0.0);
            for (int a = 0; a < n; ++a) {
                const int N = f.shape()[static_cast<std::size_t>(a)];
                w *= twiddle[static_cast<std::size_t>(a)]
                            [static_cast<std::size_t>(jidx[a]) * static_cast<std::size_t>(N) +
                             static_cast<std::size_t>(kidx[a])];
            }
            acc += q * fhat[kf] * w;
        }
        out[jf] = acc * scale;
    }
    return out;
}

GridFunction apply_symbol(const PolySymbol& sigma, const GridFunction& f) {
    if (sigma.dim() != f.dim()) throw std::invalid_argument("apply_symbol: dimension mismatch");
    const bool xdep = sigma.x_degree() > 0;
    return apply_amplitude(
        [&sigma](std::span<const double> x, std::span<const double> xi) {
            return sigma.eval(x, xi);
        },
        xdep, f);
}

}  // namespace psido
