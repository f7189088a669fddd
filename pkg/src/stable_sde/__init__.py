"""Numerical laboratory for SDEs driven by symmetric rotationally invariant
alpha-stable processes with time-singular Lebesgue-Holder drift.

Subpackage map:

- ``stable_noise``: exact and Levy-Ito samplers for the driving noise,
  fractional heat kernel, empirical characteristic functions.
- ``drift_space``: Lebesgue-Holder drift fields, norm estimators,
  criticality classification, mollifiers and Lipschitz envelopes.
- ``sde_sim``: Euler-type solvers along frozen noise paths, mollified
  convergence and coupled pathwise-gap statistics.
- ``kolmogorov_pde``: spectral mild solver for the fractional Kolmogorov
  equation, backward vector problem, gradient-decay diagnostics.
- ``nonuniqueness_lab``: the supercritical counterexample with maximum /
  minimum solutions and explicit envelopes.
- ``cli``: command line entry point (``stable-sde``).
"""

__version__ = "0.1.0"

from .errors import DomainError, ParameterError, PicardError, StableSdeError

__all__ = [
    "DomainError",
    "ParameterError",
    "PicardError",
    "StableSdeError",
    "__version__",
]
