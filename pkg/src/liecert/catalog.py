"""The bundled orbit catalog: characteristics and expected invariants."""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Tuple, Union

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .rootsystem import SimpleType

SCHEMA_VERSION = 1
ORBIT_COUNTS = {"E6": 2, "E7": 5, "E8": 10, "F4": 3}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixCheck:
    m_i: int
    m_k: Optional[int]
    rows: int
    cols: Optional[int]
    num_params: int

    def as_dict(self) -> dict:
        return {"m_i": self.m_i, "m_k": self.m_k, "rows": self.rows,
                "cols": self.cols, "num_params": self.num_params}


@dataclass(frozen=True)
class Expected:
    dim_centralizer: int
    dim_centre: int
    centre_weights: Tuple[int, ...]
    m_r: int
    matrix_checks: Tuple[MatrixCheck, ...]
    verdict: str

    def as_dict(self) -> dict:
        return {
            "dim_centralizer": self.dim_centralizer,
            "dim_centre": self.dim_centre,
            "centre_weights": list(self.centre_weights),
            "m_r": self.m_r,
            "matrix_checks": [c.as_dict() for c in self.matrix_checks],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class OrbitRecord:
    algebra: str
    ordinal: int
    characteristic: Tuple[int, ...]
    expected: Expected

    @property
    def key(self) -> str:
        return f"{self.algebra}-{self.ordinal}"


Source = Union[bytes, str, io.IOBase]


def default_catalog_bytes() -> bytes:
    return resources.files("liecert").joinpath("data/catalog.toml").read_bytes()


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CatalogError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, where: str) -> Tuple[int, ...]:
    if not isinstance(value, list):
        raise CatalogError(f"{where}: expected an integer array")
    return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def _field(table: dict, key: str, where: str):
    if key not in table:
        raise CatalogError(f"{where}: missing field {key!r}")
    return table[key]


def _parse_check(t, where: str) -> MatrixCheck:
    if not isinstance(t, dict):
        raise CatalogError(f"{where}: expected a table")
    m_k = t.get("m_k")
    cols = t.get("cols")
    return MatrixCheck(
        m_i=_int(_field(t, "m_i", where), f"{where}.m_i"),
        m_k=None if m_k is None else _int(m_k, f"{where}.m_k"),
        rows=_int(_field(t, "rows", where), f"{where}.rows"),
        cols=None if cols is None else _int(cols, f"{where}.cols"),
        num_params=_int(_field(t, "num_params", where), f"{where}.num_params"),
    )


def _parse_orbit(t, where: str) -> OrbitRecord:
    if not isinstance(t, dict):
        raise CatalogError(f"{where}: expected a table")
    algebra = _field(t, "algebra", where)
    if algebra not in ORBIT_COUNTS:
        raise CatalogError(f"{where}.algebra: unsupported algebra {algebra!r}")
    ordinal = _int(_field(t, "ordinal", where), f"{where}.ordinal")
    where = f"{where} ({algebra}-{ordinal})"
    labels = _int_list(_field(t, "characteristic", where), f"{where}.characteristic")
    rank = SimpleType.parse(algebra).rank
    if len(labels) != rank:
        raise CatalogError(f"{where}.characteristic: expected {rank} labels, got {len(labels)}")
    if any(x not in (0, 2) for x in labels):
        raise CatalogError(f"{where}.characteristic: labels must be 0 or 2, got {list(labels)}")
    if all(x == 2 for x in labels):
        raise CatalogError(f"{where}.characteristic: the regular orbit is not catalogued")
    ex = _field(t, "expected", where)
    ew = f"{where}.expected"
    if not isinstance(ex, dict):
        raise CatalogError(f"{ew}: expected a table")
    weights = _int_list(_field(ex, "centre_weights", ew), f"{ew}.centre_weights")
    if weights.count(2) != 1:
        raise CatalogError(f"{ew}.centre_weights: weight 2 must occur exactly once")
    m_r = _int(_field(ex, "m_r", ew), f"{ew}.m_r")
    if m_r != max(weights):
        raise CatalogError(f"{ew}.m_r: {m_r} is not the largest centre weight")
    checks = _field(ex, "matrix_checks", ew)
    if not isinstance(checks, list):
        raise CatalogError(f"{ew}.matrix_checks: expected an array of tables")
    verdict = _field(ex, "verdict", ew)
    if verdict != "P_holds":
        raise CatalogError(f"{ew}.verdict: unknown verdict {verdict!r}")
    expected = Expected(
        dim_centralizer=_int(_field(ex, "dim_centralizer", ew), f"{ew}.dim_centralizer"),
        dim_centre=_int(_field(ex, "dim_centre", ew), f"{ew}.dim_centre"),
        centre_weights=weights,
        m_r=m_r,
        matrix_checks=tuple(_parse_check(c, f"{ew}.matrix_checks[{i}]")
                            for i, c in enumerate(checks)),
        verdict=verdict,
    )
    if expected.dim_centre != len(weights):
        raise CatalogError(f"{ew}: dim_centre disagrees with the number of centre weights")
    return OrbitRecord(algebra, ordinal, labels, expected)


def load_catalog(source: Optional[Source] = None, require_complete: bool = True) -> List[OrbitRecord]:
    """Parse and validate a catalog document (the bundled one by default)."""
    if source is None:
        source = default_catalog_bytes()
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CatalogError(f"catalog is not UTF-8: {exc}") from None
    if not source.strip():
        raise CatalogError("empty catalog document")
    try:
        doc = tomllib.loads(source)
    except tomllib.TOMLDecodeError as exc:
        raise CatalogError(f"catalog parse error: {exc}") from None
    version = doc.get("schema_version")
    if version is None:
        raise CatalogError("missing schema_version")
    if version != SCHEMA_VERSION:
        raise CatalogError(f"unsupported schema_version {version!r}")
    orbits = doc.get("orbit")
    if not isinstance(orbits, list) or not orbits:
        raise CatalogError("catalog has no [[orbit]] entries")
    records = [_parse_orbit(t, f"orbit[{i}]") for i, t in enumerate(orbits)]
    seen = set()
    for r in records:
        if (r.algebra, r.ordinal) in seen:
            raise CatalogError(f"duplicate orbit {r.key}")
        seen.add((r.algebra, r.ordinal))
    if require_complete:
        counts: Dict[str, int] = {}
        for r in records:
            counts[r.algebra] = counts.get(r.algebra, 0) + 1
        for alg, n in ORBIT_COUNTS.items():
            if counts.get(alg, 0) != n:
                raise CatalogError(f"expected {n} {alg} orbits, found {counts.get(alg, 0)}")
    return sorted(records, key=lambda r: (list(ORBIT_COUNTS).index(r.algebra), r.ordinal))


def expected_for(algebra: str, ordinal: int,
                 records: Optional[List[OrbitRecord]] = None) -> OrbitRecord:
    algebra = algebra.upper()
    for r in records if records is not None else load_catalog():
        if r.algebra == algebra and r.ordinal == ordinal:
            return r
    raise LookupError(f"no such orbit {algebra}-{ordinal}")


def diff_expected(record: OrbitRecord, computed: dict) -> List[str]:
    """Human-readable mismatches between a computed block and the catalog.

    A check's ``cols`` is compared only where the catalog records it.
    """
    ex = record.expected
    problems = []
    for key in ("dim_centralizer", "dim_centre", "m_r", "verdict"):
        if computed.get(key) != getattr(ex, key):
            problems.append(f"{key}: computed {computed.get(key)!r}, expected {getattr(ex, key)!r}")
    if sorted(computed.get("centre_weights", [])) != sorted(ex.centre_weights):
        problems.append(f"centre_weights: computed {computed.get('centre_weights')}, "
                        f"expected {list(ex.centre_weights)}")
    got = computed.get("matrix_checks", [])
    if len(got) != len(ex.matrix_checks):
        problems.append(f"matrix_checks: computed {len(got)} checks, expected {len(ex.matrix_checks)}")
    else:
        for i, (g, e) in enumerate(zip(got, ex.matrix_checks)):
            for key in ("m_i", "m_k", "rows", "cols", "num_params"):
                want = getattr(e, key)
                if key == "cols" and want is None:
                    continue
                if g.get(key) != want:
                    problems.append(f"matrix_checks[{i}].{key}: computed {g.get(key)!r}, expected {want!r}")
    return problems
