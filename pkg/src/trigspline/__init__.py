"""Trigonometric interpolation splines from finite Fourier series with convergence factors."""

from .factors import FactorKind, alias_form, k1_k2, sigma
from .fourier import (FourierCoefficients, SampleSet, compute_coefficients,
                      eval_trig_polynomial)
from .grid import GridSpec, all_nodes, node, orthogonality_deviation
from .kernels import (DEFAULT_TRUNCATION, DegenerateNormalizerError, KernelParams,
                      TruncationPolicy, basis_value, kernel_cos, kernel_normalizers,
                      kernel_sin, kernel_values)
from .poly_oracle import (PeriodicPolySpline, build_cubic_periodic, build_linear_periodic,
                          compare, eval_poly, solve_cyclic_tridiagonal)
from .spline import (RuleReport, SplineParams, TrigSpline, build_spline, duality_deviation,
                     eval_derivative, eval_spline, probe_grid, rule_diagnostic)

__version__ = "0.1.0"
