#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "psido/poly_symbol.hpp"

namespace psido {

using cplx = std::complex<double>;

/// Complex samples of a function on a periodic box [0,L_1) x ... x [0,L_n),
/// row-major, power-of-two points per axis.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<int> shape, std::vector<double> extents, bool periodic = true);

    static GridFunction from_function(std::vector<int> shape, std::vector<double> extents,
                                      const std::function<cplx(std::span<const double>)>& f);

    int dim() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    const std::vector<double>& extents() const { return extents_; }
    bool periodic() const { return periodic_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    /// Physical coordinate of sample `idx` along `axis`.
    double coord(int axis, int idx) const {
        return extents_[static_cast<std::size_t>(axis)] * idx /
               shape_[static_cast<std::size_t>(axis)];
    }
    /// Angular frequency of spectral bin `idx` along `axis` (FFT layout,
    /// bins above N/2 count negative).
    double freq(int axis, int idx) const;

    /// Multi-dimensional index from flat index.
    std::vector<int> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::vector<int>& idx) const;

    double max_abs() const;
    double l2_norm() const;

private:
    std::vector<int> shape_;
    std::vector<double> extents_;
    bool periodic_ = true;
    std::vector<cplx> data_;
};

/// In-place unnormalized DFT over all axes; sign=-1 forward, +1 backward.
void fft_inplace(std::vector<cplx>& data, const std::vector<int>& shape, int sign);

/// Forward transform (unnormalized sum with e^{-i xi.x} weights).
GridFunction fft_forward(const GridFunction& f);
/// Inverse of fft_forward (includes the 1/M factor).
GridFunction fft_backward(const GridFunction& fhat);

/// Discrete realization of the symbol action: transform, multiply the
/// spectrum by sigma(x, xi) (per output sample when sigma depends on x),
/// transform back.  Exact Fourier multiplication for x-independent sigma.
GridFunction apply_symbol(const PolySymbol& sigma, const GridFunction& f);

/// Same action for a black-box amplitude q(x, xi).
GridFunction apply_amplitude(
    const std::function<cplx(std::span<const double>, std::span<const double>)>& amp,
    bool x_dependent, const GridFunction& f);

}  // namespace psido
