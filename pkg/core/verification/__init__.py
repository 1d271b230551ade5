"""Property checks, independent oracles and coefficient statistics."""

from .properties import (
    PropertyReport, PROPERTY_IDS, DESCRIPTIONS, reports_json, label_witness,
    CoefficientCheck, nonneg_check, unimodal_check, merge, skipped,
    check_A, check_B, check_C, check_D, lower_covers,
    ParityCheck, check_parity, IntegralityCheck, check_integrality,
)
from .oracles import (
    SelfDualityError, DEFAULT_MAX_ELEMENTS, solve_self_dual,
    bar_oracle_c, bar_oracle_A, bar_oracle, module_identity_oracle,
    factorization_oracle, product_case_oracle,
)
from .stats import (
    ZERO_FAMILY, POLY_COLUMNS, CONSTANT_COLUMNS, SETS, CoefficientRange, StatsRow,
    make_row, poly_stats, ConstantStatsAccumulator, constant_stats, format_rows,
)

__all__ = [
    'PropertyReport', 'PROPERTY_IDS', 'DESCRIPTIONS', 'reports_json', 'label_witness',
    'CoefficientCheck', 'nonneg_check', 'unimodal_check', 'merge', 'skipped',
    'check_A', 'check_B', 'check_C', 'check_D', 'lower_covers',
    'ParityCheck', 'check_parity', 'IntegralityCheck', 'check_integrality',
    'SelfDualityError', 'DEFAULT_MAX_ELEMENTS', 'solve_self_dual',
    'bar_oracle_c', 'bar_oracle_A', 'bar_oracle', 'module_identity_oracle',
    'factorization_oracle', 'product_case_oracle',
    'ZERO_FAMILY', 'POLY_COLUMNS', 'CONSTANT_COLUMNS', 'SETS', 'CoefficientRange', 'StatsRow',
    'make_row', 'poly_stats', 'ConstantStatsAccumulator', 'constant_stats', 'format_rows',
]
