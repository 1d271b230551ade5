#!/usr/bin/env python3
"""
KLV CLI

Command-line interface for the KLV table engine.
Entry point for the 'klv' command.

Usage:
    klv types
    klv compute --type H3 --table psigma --out h3.json
    klv compute --type 2A3 --table split-polys --out -
    klv verify --type BC3 --properties Ap,Bp
    klv verify --type A2 --oracle bar,module
    klv stats --type H3 --set polys --format csv
    klv stats --type A1 --type A2 --set constants --format text

Exit status: 0 success, 1 property or oracle failure, 2 usage error,
3 resource cap exceeded.
"""

import sys
import argparse
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

# Resolve symlink and add the package root to path
# When run as symlink from /usr/local/bin/klv, __file__ resolves to the target
script_path = Path(__file__).resolve()
klv_path = script_path.parent.parent  # cli/klv.py -> cli -> klv

# Fallback to /opt/klv if not found
if not (klv_path / 'core').exists():
    klv_path = Path('/opt/klv')

sys.path.insert(0, str(klv_path))

from core.config import KLVConfig, load_config, STORAGE_FORMATS
from core.coxeter import CoxeterError, ElementCapExceeded, build_system, catalogue
from core.engine import ComputationManager, TABLE_KINDS
from core.kl import KLComputationError
from core.laurent import NonIntegralError, ZERO
from core.storage import CacheManager, TableFileError, dumps
from core.verification import (
    ConstantStatsAccumulator, IntegralityCheck, ParityCheck, PropertyReport, PROPERTY_IDS,
    SETS, SelfDualityError, bar_oracle, check_A, check_B, check_C, check_D,
    check_integrality, check_parity, factorization_oracle, format_rows, label_witness,
    merge, module_identity_oracle, nonneg_check, poly_stats, product_case_oracle,
    reports_json, skipped, unimodal_check,
)

logger = logging.getLogger('klv')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ORACLES = ('bar', 'factorization', 'product', 'module', 'parity', 'integrality')
NAMED_TWISTS = ('identity', 'diagram', 'swap')


class UsageError(ValueError):
    """Flags that parse but do not make sense together."""


def setup_logging(verbose: bool = False):
    """Configure logging."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        format='%(levelname)s: %(message)s',
        level=level,
        stream=sys.stderr,
    )


# -- flag parsing -----------------------------------------------------------

def parse_matrix(text: str) -> List[List[int]]:
    """'1,3;3,1' -> [[1, 3], [3, 1]]."""
    try:
        return [[int(c) for c in row.split(',')] for row in text.split(';') if row.strip()]
    except ValueError:
        raise UsageError(f"matrix '{text}' must be rows of integers, e.g. '1,3;3,1'")


def parse_twist(text: Optional[str]):
    """Named twist, or a comma list of 1-based generator images."""
    if text is None or text in NAMED_TWISTS:
        return text
    try:
        images = [int(t) for t in text.split(',')]
    except ValueError:
        raise UsageError(f"twist must be one of {', '.join(NAMED_TWISTS)} "
                         f"or a comma list such as '3,2,1', got '{text}'")
    if any(i < 1 for i in images):
        raise UsageError("twist lists use 1-based generator labels")
    return [i - 1 for i in images]


def parse_list(text: Optional[str], allowed, what: str) -> List[str]:
    if not text:
        return []
    items = [t.strip() for t in text.split(',') if t.strip()]
    unknown = [t for t in items if t not in allowed]
    if unknown:
        raise UsageError(f"unknown {what} {', '.join(unknown)} (one of {', '.join(allowed)})")
    return items


def build_config(args) -> KLVConfig:
    """Loaded config with per-invocation overrides."""
    config = load_config(getattr(args, 'config', None))
    if getattr(args, 'cap', None) is not None:
        config.limits.element_cap = args.cap
    if getattr(args, 'threads', None) is not None:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        config.compute.threads = args.threads
    if getattr(args, 'cache', False):
        config.storage.use_cache = True
    return config


def open_manager(args, type_label: Optional[str], config: KLVConfig) -> ComputationManager:
    twist = parse_twist(args.twist)
    if args.matrix:
        if type_label:
            raise UsageError("give either --type or --matrix, not both")
        system = build_system(parse_matrix(args.matrix), twist, config.limits.element_cap)
    elif type_label:
        system = build_system(type_label, twist, config.limits.element_cap)
    else:
        raise UsageError("a system is required: --type LABEL or --matrix ROWS")
    cache = None
    if config.storage.use_cache:
        cache = CacheManager(config.storage.cache_dir, config.storage.format)
    return ComputationManager(system, config, cache)


# -- commands ---------------------------------------------------------------

def cmd_types(args):
    """List the irreducible types and their diagram involutions."""
    rows = []
    for entry in catalogue():
        twist = "none" if entry.twist is None else ",".join(str(t + 1) for t in entry.twist)
        twisted = "-" if entry.twist is None else "2" + entry.name
        rows.append((entry.name, str(entry.rank), twist, twisted, entry.description))
    header = ("type", "rank", "diagram involution", "twisted", "diagram")
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return EXIT_OK


def cmd_compute(args):
    """Compute a table and write it as a table file."""
    config = build_config(args)
    fmt = args.format or config.storage.format
    with open_manager(args, args.type, config) as manager:
        tf = manager.table_file(args.table)
        data = dumps(tf, fmt)
    if args.out == '-':
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out = Path(args.out)
        try:
            out.write_bytes(data)
        except OSError as e:
            raise UsageError(f"cannot write {out}: {e}")
        logger.info(f"Wrote {args.table} table of {manager.system.label} to {out} "
                    f"({len(data):,} bytes)")
    return EXIT_OK


def _feed_slice(check, x: int, sl) -> None:
    for y in sorted(sl):
        row = sl[y]
        for z in sorted(row):
            check.feed((x, y, z), row[z])


def _stream_constant_checks(manager: ComputationManager, wanted: List[str]) -> Dict[str, PropertyReport]:
    """
    C', D', the twisted parity rule and h-integrality in one pass over the
    h-tilde slice stream.
    """
    system = manager.system
    checks: Dict[str, List] = {}
    if 'Cp' in wanted:
        checks['Cp'] = [nonneg_check('Cp', 'h+'), nonneg_check('Cp', 'h-')]
    if 'Dp' in wanted:
        checks['Dp'] = [unimodal_check('Dp', 'h+'), unimodal_check('Dp', 'h-')]
    if 'parity' in wanted:
        checks['parity'] = [ParityCheck(system, 'htilde'), ParityCheck(system, 'hsigma'),
                            ParityCheck(system, 'h+'), ParityCheck(system, 'h-')]
    integrality = IntegralityCheck('h+-') if 'integrality' in wanted else None

    for x, tilde, sig, plus, minus in manager.constant_slices():
        for prop in ('Cp', 'Dp'):
            if prop in checks:
                _feed_slice(checks[prop][0], x, plus)
                _feed_slice(checks[prop][1], x, minus)
        if 'parity' in checks:
            for check, sl in zip(checks['parity'], (tilde, sig, plus, minus)):
                _feed_slice(check, x, sl)
        if integrality is not None:
            for y in sorted(set(tilde) | set(sig)):
                trow, srow = tilde.get(y, {}), sig.get(y, {})
                for z in sorted(set(trow) | set(srow)):
                    integrality.feed((x, y, z), trow.get(z, ZERO), srow.get(z, ZERO))

    reports = {prop: merge(prop, [c.report() for c in group]) for prop, group in checks.items()}
    if integrality is not None:
        reports['integrality'] = integrality.report()
    return reports


def run_checks(manager: ComputationManager, properties: List[str], oracles: List[str],
               type_label: Optional[str]) -> List[PropertyReport]:
    """Run the requested properties and oracles in a fixed order."""
    system = manager.system
    limit = manager.config.limits.oracle_max_elements
    streamed_wanted = [p for p in properties if p in ('Cp', 'Dp')]
    streamed_wanted += [o for o in oracles if o in ('parity', 'integrality')]
    streamed = _stream_constant_checks(manager, streamed_wanted) if streamed_wanted else {}

    reports: List[PropertyReport] = []
    for prop in PROPERTY_IDS:
        if prop not in properties:
            continue
        if prop == 'A':
            reports.append(check_A(manager.kl()))
        elif prop == 'B':
            reports.append(check_B(manager.kl()))
        elif prop == 'C':
            reports.append(check_C(manager.h()))
        elif prop == 'D':
            reports.append(check_D(manager.h()))
        elif prop == 'Ap':
            reports.append(check_A(manager.split_polys()))
        elif prop == 'Bp':
            reports.append(check_B(manager.split_polys()))
            reports.append(check_B(manager.split_polys(), restricted=True))
        else:
            reports.append(streamed[prop])

    checks: Dict[str, Callable[[], PropertyReport]] = {
        'bar': lambda: bar_oracle(system, manager.kl(), manager.sigma(), limit),
        'factorization': lambda: factorization_oracle(system),
        'product': lambda: (product_case_oracle(type_label) if type_label else
                            skipped('product', "the product case needs a type label")),
        'module': lambda: module_identity_oracle(system, manager.kl(), manager.sigma(),
                                                 manager.hsigma(), limit),
        'parity': lambda: merge('parity', [check_parity(manager.h()), streamed['parity']]),
        'integrality': lambda: merge('integrality', [
            check_integrality(manager.kl(), manager.sigma()), streamed['integrality']]),
    }
    for oracle in ORACLES:
        if oracle in oracles:
            reports.append(checks[oracle]())
    return [label_witness(r, system) for r in reports]


def cmd_verify(args):
    """Run property checks and oracles; exit 1 if any fails."""
    properties = parse_list(args.properties, PROPERTY_IDS, "property")
    oracles = parse_list(args.oracle, ORACLES, "oracle")
    if not properties and not oracles:
        raise UsageError("nothing to verify: give --properties and/or --oracle")
    config = build_config(args)
    with open_manager(args, args.type, config) as manager:
        reports = run_checks(manager, properties, oracles, args.type)
        label = manager.system.label

    if args.json:
        print(reports_json(reports))
    else:
        print(f"{label}:")
        for r in reports:
            print("  " + r.text().replace("\n", "\n  "))
    failed = [r for r in reports if not r.holds]
    if failed:
        logger.error(f"{label}: {', '.join(r.prop for r in failed)} failed")
        return EXIT_FAILED
    return EXIT_OK


def stats_row(manager: ComputationManager, set_name: str):
    if set_name == 'polys':
        return poly_stats(manager.kl(), manager.sigma(), manager.split_polys())
    acc = ConstantStatsAccumulator(manager.system.label)
    for _, tilde, sig, plus, minus in manager.constant_slices():
        acc.feed(tilde, sig, plus, minus)
    return acc.row()


def cmd_stats(args):
    """Print maximum nonzero coefficients, one row per type."""
    config = build_config(args)
    labels = args.type or [None]
    rows = []
    for label in labels:
        with open_manager(args, label, config) as manager:
            rows.append(stats_row(manager, args.set))
    sys.stdout.write(format_rows(rows, args.format, header=args.header))
    return EXIT_OK


# -- entry point ------------------------------------------------------------

def _add_system_flags(parser, multiple: bool = False):
    if multiple:
        parser.add_argument('--type', action='append',
                            help='Type label, e.g. H3, 2A3, I2(7), A1xA2 (repeatable)')
    else:
        parser.add_argument('--type', help='Type label, e.g. H3, 2A3, I2(7), A1xA2')
    parser.add_argument('--matrix', help="Explicit Coxeter matrix, rows ';'-separated: '1,3;3,1'")
    parser.add_argument('--twist',
                        help="identity, diagram, swap, or 1-based images such as '3,2,1'")
    parser.add_argument('--cap', type=int, help='Element cap for enumeration')
    parser.add_argument('--threads', type=int, help='Threads for the h-tilde contraction')
    parser.add_argument('--config', help='Path to config.yaml')
    parser.add_argument('--cache', action='store_true', help='Read and write the table cache')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='klv',
        description='Classical and twisted Kazhdan-Lusztig tables for finite Coxeter systems'
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Verbose output')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # types
    subparsers.add_parser('types', help='List irreducible types and diagram involutions')

    # compute
    compute_parser = subparsers.add_parser('compute', help='Compute and write a table')
    _add_system_flags(compute_parser)
    compute_parser.add_argument('--table', choices=TABLE_KINDS, default='psigma',
                                help='Table kind')
    compute_parser.add_argument('--out', default='-', help="Output file, '-' for stdout")
    compute_parser.add_argument('--format', choices=STORAGE_FORMATS, help='Table file format')

    # verify
    verify_parser = subparsers.add_parser('verify', help='Run property checks and oracles')
    _add_system_flags(verify_parser)
    verify_parser.add_argument('--properties', help=f"Comma list of {','.join(PROPERTY_IDS)}")
    verify_parser.add_argument('--oracle', help=f"Comma list of {','.join(ORACLES)}")
    verify_parser.add_argument('--json', action='store_true', help='JSON report')

    # stats
    stats_parser = subparsers.add_parser('stats', help='Maximum nonzero coefficients')
    _add_system_flags(stats_parser, multiple=True)
    stats_parser.add_argument('--set', choices=tuple(SETS), default='polys',
                              help='Polynomial or constants columns')
    stats_parser.add_argument('--format', choices=('csv', 'json', 'text'), default='csv',
                              help='Output format')
    stats_parser.add_argument('--header', action='store_true', help='Print a header row')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args.verbose)

    handlers = {
        'types': cmd_types,
        'compute': cmd_compute,
        'verify': cmd_verify,
        'stats': cmd_stats,
    }
    handler = handlers.get(args.command)
    if handler is None:
        parser.print_help()
        return EXIT_USAGE

    try:
        return handler(args)
    except (UsageError, CoxeterError, TableFileError, FileNotFoundError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except ValueError as e:
        # malformed configuration values
        logger.error(str(e))
        return EXIT_USAGE
    except (ElementCapExceeded, MemoryError) as e:
        logger.error(f"Resource limit: {e}")
        return EXIT_CAP
    except (KLComputationError, SelfDualityError, NonIntegralError) as e:
        logger.error(f"Computation failed: {e}")
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
