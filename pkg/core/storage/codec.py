"""
Table File Codec

A table file carries a header (format version, system, kind, element
dictionary, family sizes, checksum) and one or more named families of
(key tuple, Laurent polynomial) entries sorted by key.

Two containers:
    JSON    {"header": ..., "families": {name: [[k1, k2, {"exp": coeff}], ...]}}
    binary  b"KLVT" | version u8 | header length u32 | header JSON |
            per family: name | count u64 | entries | CRC-32 u32 trailer
"""

import json
import logging
import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import jsonschema

from core.laurent import LaurentPoly

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
MAGIC = b"KLVT"
SCHEMA_PATH = Path(__file__).resolve().parents[2] / "schemas" / "table-file.schema.json"

Entry = Tuple[Tuple[int, ...], LaurentPoly]
Families = Dict[str, List[Entry]]


class TableFileError(ValueError):
    """Base class for unreadable table files."""


class VersionMismatchError(TableFileError):
    pass


class ChecksumError(TableFileError):
    pass


class TruncatedFileError(TableFileError):
    pass


class TableFormatError(TableFileError):
    pass


@dataclass
class TableFile:
    """In-memory form of a table file."""
    kind: str
    system: Dict
    elements: List[List[int]]
    families: Families = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def sorted_families(self) -> Families:
        return {name: sorted(self.families[name], key=lambda e: e[0])
                for name in sorted(self.families)}


def _canonical_families(families: Families) -> bytes:
    doc = {name: [list(key) + [poly.to_json()] for key, poly in entries]
           for name, entries in families.items()}
    return json.dumps(doc, separators=(',', ':')).encode()


def checksum(families: Families) -> int:
    return zlib.crc32(_canonical_families(families)) & 0xFFFFFFFF


def _header(tf: TableFile, families: Families) -> Dict:
    return {
        'format_version': tf.format_version,
        'kind': tf.kind,
        'system': tf.system,
        'elements': tf.elements,
        'families': {name: len(entries) for name, entries in families.items()},
        'checksum': checksum(families),
    }


_schema_cache: Optional[Dict] = None


def validate_header(header: Dict) -> None:
    """Version check, then JSON-schema validation of the header."""
    global _schema_cache
    if not isinstance(header, dict):
        raise TableFormatError("table header is not an object")
    version = header.get('format_version')
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"table file format version {version}, this build reads {FORMAT_VERSION}")
    if _schema_cache is None:
        if not SCHEMA_PATH.exists():
            logger.warning(f"Schema not found at {SCHEMA_PATH}; header not validated")
            return
        with open(SCHEMA_PATH, 'r') as f:
            _schema_cache = json.load(f)
    try:
        jsonschema.validate(header, _schema_cache)
    except jsonschema.ValidationError as e:
        raise TableFormatError(f"invalid table header: {e.message}") from e


# -- JSON container ---------------------------------------------------------

def encode_json(tf: TableFile) -> bytes:
    families = tf.sorted_families()
    doc = {
        'header': _header(tf, families),
        'families': {name: [list(key) + [poly.to_json()] for key, poly in entries]
                     for name, entries in families.items()},
    }
    return json.dumps(doc, separators=(',', ':')).encode() + b"\n"


def decode_json(data: bytes) -> TableFile:
    try:
        doc = json.loads(data.decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise TruncatedFileError(f"table file is truncated or not JSON: {e}") from e
    if not isinstance(doc, dict) or 'header' not in doc or 'families' not in doc:
        raise TableFormatError("table file lacks header or families")
    header = doc['header']
    validate_header(header)
    families: Families = {}
    try:
        for name, rows in doc['families'].items():
            families[name] = [(tuple(int(k) for k in row[:-1]), LaurentPoly.from_json(row[-1]))
                              for row in rows]
    except (TypeError, ValueError, AttributeError, IndexError) as e:
        raise TableFormatError(f"malformed table entries: {e}") from e
    for name, count in header['families'].items():
        if len(families.get(name, ())) != count:
            raise TruncatedFileError(f"family '{name}' has {len(families.get(name, ()))} "
                                     f"entries, header announces {count}")
    if checksum(families) != header['checksum']:
        raise ChecksumError("table file checksum mismatch")
    return TableFile(kind=header['kind'], system=header['system'],
                     elements=header['elements'], families=families,
                     format_version=header['format_version'])


# -- binary container -------------------------------------------------------

def _pack_int(value: int) -> bytes:
    size = max(1, (value.bit_length() + 8) // 8)
    return struct.pack('<H', size) + value.to_bytes(size, 'little', signed=True)


def encode_entries(entries: List[Entry]) -> bytes:
    parts = [struct.pack('<Q', len(entries))]
    for key, poly in entries:
        parts.append(struct.pack('<B', len(key)))
        parts.append(struct.pack(f'<{len(key)}I', *key))
        parts.append(struct.pack('<iI', poly.offset, len(poly.coeffs)))
        for c in poly.coeffs:
            parts.append(_pack_int(c))
    return b"".join(parts)


class Reader:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, n: int) -> bytes:
        end = self.pos + n
        if end > len(self.data):
            raise TruncatedFileError(f"unexpected end of table file at byte {len(self.data)}")
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def decode_entries(reader: Reader) -> List[Entry]:
    (count,) = reader.unpack('<Q')
    entries: List[Entry] = []
    for _ in range(count):
        (arity,) = reader.unpack('<B')
        key = reader.unpack(f'<{arity}I')
        offset, ncoeffs = reader.unpack('<iI')
        coeffs = []
        for _ in range(ncoeffs):
            (size,) = reader.unpack('<H')
            coeffs.append(int.from_bytes(reader.take(size), 'little', signed=True))
        entries.append((tuple(key), LaurentPoly(coeffs, offset)))
    return entries


def encode_binary(tf: TableFile) -> bytes:
    families = tf.sorted_families()
    header = json.dumps(_header(tf, families), separators=(',', ':')).encode()
    parts = [MAGIC, struct.pack('<B', tf.format_version), struct.pack('<I', len(header)), header]
    for name, entries in families.items():
        raw = name.encode()
        parts.append(struct.pack('<H', len(raw)) + raw)
        parts.append(encode_entries(entries))
    body = b"".join(parts)
    return body + struct.pack('<I', zlib.crc32(body) & 0xFFFFFFFF)


def decode_binary(data: bytes) -> TableFile:
    reader = Reader(data)
    if reader.take(len(MAGIC)) != MAGIC:
        raise TableFormatError("not a binary klv table file")
    (version,) = reader.unpack('<B')
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"table file format version {version}, this build reads {FORMAT_VERSION}")
    (hlen,) = reader.unpack('<I')
    try:
        header = json.loads(reader.take(hlen).decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise TableFormatError(f"corrupt binary header: {e}") from e
    validate_header(header)
    families: Families = {}
    for _ in header['families']:
        (nlen,) = reader.unpack('<H')
        name = reader.take(nlen).decode()
        families[name] = decode_entries(reader)
    body_end = reader.pos
    (crc,) = reader.unpack('<I')
    if reader.pos != len(data):
        raise TableFormatError("trailing bytes after table file checksum")
    if zlib.crc32(data[:body_end]) & 0xFFFFFFFF != crc:
        raise ChecksumError("table file CRC mismatch")
    return TableFile(kind=header['kind'], system=header['system'],
                     elements=header['elements'], families=families,
                     format_version=version)


# -- files --------------------------------------------------------------------

def dumps(tf: TableFile, fmt: str = 'json') -> bytes:
    if fmt == 'json':
        return encode_json(tf)
    if fmt == 'binary':
        return encode_binary(tf)
    raise ValueError(f"unknown table format '{fmt}'")


def loads(data: bytes) -> TableFile:
    if data[:len(MAGIC)] == MAGIC:
        return decode_binary(data)
    return decode_json(data)


def cache_store(path, tf: TableFile, fmt: str = 'json') -> Path:
    """Write a table file; the container is chosen by `fmt`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, 'wb') as f:
        f.write(dumps(tf, fmt))
    tmp.replace(path)
    logger.debug(f"Wrote {tf.kind} table to {path}")
    return path


def cache_load(path) -> TableFile:
    """Read a table file of either container; raises TableFileError subclasses."""
    path = Path(path)
    with open(path, 'rb') as f:
        data = f.read()
    if not data:
        raise TruncatedFileError(f"{path} is empty")
    return loads(data)
