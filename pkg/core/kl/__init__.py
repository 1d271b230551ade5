"""Classical Kazhdan-Lusztig polynomials and KL-basis structure constants."""

from .classic import KLTable, KLComputationError, compute_kl, collect_mu_edges, mu
from .constants import ConstantsTable, FAMILY_NAMES, left_c, fill_slices, compute_h, compute_f

__all__ = [
    'KLTable', 'KLComputationError', 'compute_kl', 'collect_mu_edges', 'mu',
    'ConstantsTable', 'FAMILY_NAMES', 'left_c', 'fill_slices', 'compute_h', 'compute_f',
]
