#pragma once

#include "psido/grid_function.hpp"

namespace psido {

/// Kernel constant of the Newtonian fundamental solution,
/// -Gamma(n/2 - 1) / (4 pi^{n/2}), defined for n >= 3.
double greens_kernel_constant(int n);

/// Mean of |y|^{2-n} over the unit cube [-1/2,1/2]^n.  Closed form for n = 3,
/// geometric 3-adic subdivision for n >= 4.
double unit_cell_kernel_average(int n);

/// u(x) = c_n * sum_y f(y) / |x-y|^{n-2} * h^n by midpoint quadrature over the
/// sample box, with the singular self cell replaced by its exact cell average.
/// The sum is evaluated as a zero-padded FFT convolution (identical to the
/// direct sum up to round-off).  Requires n >= 3 and uniform grid spacing.
GridFunction greens_laplacian(const GridFunction& f);

/// Second-order centered discrete Laplacian with periodic wrap disabled:
/// boundary samples are left as zero.  Test/diagnostic helper.
GridFunction discrete_laplacian(const GridFunction& u);

}  // namespace psido
