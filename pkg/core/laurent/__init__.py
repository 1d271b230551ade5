"""Exact Laurent polynomial arithmetic in v (q = v^2)."""

from .poly import (
    LaurentPoly, NonIntegralError,
    ZERO, ONE, V, Q, U, Q_PLUS_ONE,
)
from .pool import PolyPool

__all__ = [
    'LaurentPoly', 'NonIntegralError', 'PolyPool',
    'ZERO', 'ONE', 'V', 'Q', 'U', 'Q_PLUS_ONE',
]
