"""Hecke algebra and twisted-involution module actions."""

from .vector import HeckeVector, BASES, add_term, add_scaled
from .algebra import left_t, left_t_inverse, bar_t, bar_t_table
from .module import ModuleActionTable, action_table, module_action, bar_a, bar_a_vector

__all__ = [
    'HeckeVector', 'BASES', 'add_term', 'add_scaled',
    'left_t', 'left_t_inverse', 'bar_t', 'bar_t_table',
    'ModuleActionTable', 'action_table', 'module_action', 'bar_a', 'bar_a_vector',
]
