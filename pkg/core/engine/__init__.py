"""Per-system computation pipeline."""

from .manager import ComputationManager, TABLE_KINDS, table_file_for

__all__ = ['ComputationManager', 'TABLE_KINDS', 'table_file_for']
