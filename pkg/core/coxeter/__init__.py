"""Finite Coxeter systems with a diagram involution."""

from .errors import CoxeterError, InfiniteTypeError, ElementCapExceeded
from .catalogue import TypeFactor, CatalogueEntry, catalogue, parse_label, coxeter_matrix, diagram_twist
from .classify import classify, validate_matrix
from .bruhat import BruhatOrder, iter_bits, bits_descending
from .system import (
    CoxeterSystem, Element, TwistedInvolution, Universe,
    build_system, enumerate_system, DEFAULT_ELEMENT_CAP,
)

__all__ = [
    'CoxeterError', 'InfiniteTypeError', 'ElementCapExceeded',
    'TypeFactor', 'CatalogueEntry', 'catalogue', 'parse_label', 'coxeter_matrix',
    'diagram_twist', 'classify', 'validate_matrix',
    'BruhatOrder', 'iter_bits', 'bits_descending',
    'CoxeterSystem', 'Element', 'TwistedInvolution', 'Universe',
    'build_system', 'enumerate_system', 'DEFAULT_ELEMENT_CAP',
]
