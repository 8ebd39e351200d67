"""Pseudodifferential symbol calculus toolkit.

Thin wrapper around the compiled _psido extension; everything numerical
lives in C++.
"""

try:
    from . import _psido as _core  # installed layout: psido/_psido*.so
except ImportError:  # development layout: extension on sys.path
    import _psido as _core

Chart = _core.Chart
apply_symbol = _core.apply_symbol
asymptotic_spectrum = _core.asymptotic_spectrum
compose_symbols_json = _core.compose_symbols_json
euclidean_propagator = _core.euclidean_propagator
gauge_symbol = _core.gauge_symbol
greens_kernel_constant = _core.greens_kernel_constant
greens_laplacian = _core.greens_laplacian
hawking_density = _core.hawking_density
hurwitz_zeta = _core.hurwitz_zeta
invert_gauge_symbol = _core.invert_gauge_symbol
l_jet_coefficients = _core.l_jet_coefficients
leading_symbol_json = _core.leading_symbol_json
nabla_l = _core.nabla_l
radial_operator_coeffs = _core.radial_operator_coeffs
remainder_report = _core.remainder_report
solve_radial_eigenvalues = _core.solve_radial_eigenvalues
spectral_density = _core.spectral_density
spectral_zeta = _core.spectral_zeta
symbol_str = _core.symbol_str

__all__ = [
    "Chart",
    "apply_symbol",
    "asymptotic_spectrum",
    "compose_symbols_json",
    "euclidean_propagator",
    "gauge_symbol",
    "greens_kernel_constant",
    "greens_laplacian",
    "hawking_density",
    "hurwitz_zeta",
    "invert_gauge_symbol",
    "l_jet_coefficients",
    "leading_symbol_json",
    "nabla_l",
    "radial_operator_coeffs",
    "remainder_report",
    "solve_radial_eigenvalues",
    "spectral_density",
    "spectral_zeta",
    "symbol_str",
]
