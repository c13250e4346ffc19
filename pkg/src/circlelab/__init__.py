"""circlelab: a numerical laboratory for the circle lattice-point count.

Exact two-squares arithmetic, Bessel/Fresnel/exponential-integral kernels,
oscillatory series partial sums with closed-form checks, and reproducible
sweeps of the lattice error term.
"""

__version__ = "0.1.0"

from .errors import DomainError, KernelError, ResourceLimitError

__all__ = ["DomainError", "KernelError", "ResourceLimitError", "__version__"]
