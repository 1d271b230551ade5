"""Twisted KL polynomials, twisted structure constants and the split families."""

from .sigma import (
    SigmaTable, compute_psigma, collect_sigma_edges,
    mu_sigma, nu_sigma, mu_sigma_s, m_sigma,
)
from .constants import ModuleCAction, compute_hsigma, htilde_slice, iter_htilde_slices, compute_htilde
from .split import SplitTable, halves, split_polys, split_slice, iter_split_slices, split_constants

__all__ = [
    'SigmaTable', 'compute_psigma', 'collect_sigma_edges',
    'mu_sigma', 'nu_sigma', 'mu_sigma_s', 'm_sigma',
    'ModuleCAction', 'compute_hsigma', 'htilde_slice', 'iter_htilde_slices', 'compute_htilde',
    'SplitTable', 'halves', 'split_polys', 'split_slice', 'iter_split_slices', 'split_constants',
]
