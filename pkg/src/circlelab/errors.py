"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the validated domain of an operation."""


class ResourceLimitError(RuntimeError):
    """Request would exceed a configured memory or size budget."""


class KernelError(ArithmeticError):
    """A numerical kernel produced an untrustworthy value (non-finite,
    failed convergence, or a violated internal consistency check)."""
