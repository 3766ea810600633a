"""Exception types shared across the package.

The taxonomy is deliberately small: bad mathematical input is a
:class:`DomainError`, structurally incompatible series are an
:class:`OrderMismatchError`, a model whose callables cannot run on
truncated series raises :class:`JetEvaluationError`, and a numeric
routine that cannot certify the requested tolerance raises
:class:`QuadratureError` carrying its best estimate.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Mathematically invalid input (pole, negative leading term, off-level point)."""


class OrderMismatchError(ValueError):
    """Two truncated series of different orders were combined additively."""


class JetEvaluationError(TypeError):
    """A model callable could not be evaluated on truncated-series arguments."""


class QuadratureError(RuntimeError):
    """Requested tolerance not reached within budget.

    Attributes
    ----------
    estimate : float
        Best value obtained before giving up.
    error_bound : float
        Estimated absolute error of ``estimate``.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
