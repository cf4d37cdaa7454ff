"""Exact linear algebra over the rationals.

Matrices are dense row-major tuples of ``Fraction``; the elimination kernels
work on sparse rows (``dict`` column -> value) because every matrix built from
a Chevalley basis is overwhelmingly zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Rat = Fraction
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(as_rat(x) for x in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_sparse(cls, rows: Sequence[SparseRow], cols: int) -> "QMatrix":
        out = [ZERO] * (len(rows) * cols)
        for i, r in enumerate(rows):
            for j, v in r.items():
                out[i * cols + j] = v
        return cls(len(rows), cols, out)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> List[SparseRow]:
        c = self.cols
        out = []
        for i in range(self.rows):
            base = i * c
            out.append({j: v for j, v in enumerate(self.entries[base:base + c]) if v})
        return out

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def matvec(self, v: Sequence) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), ZERO)
                for i in range(self.rows)]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        right = other.sparse_rows()
        out = []
        for i in range(self.rows):
            acc: SparseRow = {}
            for k, a in enumerate(self.row(i)):
                if a:
                    for j, b in right[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return QMatrix.from_sparse(out, other.cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


# --------------------------------------------------------------------------
# sparse elimination kernels


def _axpy(target: SparseRow, coeff: Fraction, source: SparseRow) -> None:
    """target -= coeff * source, in place, dropping cancelled entries."""
    for j, v in source.items():
        w = target.get(j)
        if w is None:
            target[j] = -coeff * v
        else:
            w -= coeff * v
            if w:
                target[j] = w
            else:
                del target[j]


class Echelon:
    """Incrementally maintained reduced row echelon basis of sparse rows."""

    def __init__(self) -> None:
        self.pivots: Dict[int, SparseRow] = {}

    def reduce(self, row: SparseRow) -> SparseRow:
        r = dict(row)
        for pc in [c for c in r if c in self.pivots]:
            coeff = r.get(pc)
            if coeff:
                _axpy(r, coeff, self.pivots[pc])
        return r

    def add(self, row: SparseRow) -> bool:
        """Insert ``row``; return True when it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        if inv != 1:
            r = {j: v * inv for j, v in r.items()}
        for prow in self.pivots.values():
            coeff = prow.get(lead)
            if coeff:
                _axpy(prow, coeff, r)
        self.pivots[lead] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> List[SparseRow]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def pivot_cols(self) -> List[int]:
        return sorted(self.pivots)


def rref_sparse(rows: Iterable[SparseRow]) -> Tuple[List[SparseRow], List[int]]:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rows(), ech.pivot_cols()


def kernel_sparse(rows: Iterable[SparseRow], ncols: int) -> List[SparseRow]:
    """Basis of {v : row . v = 0 for every row}, one vector per free column."""
    reduced, pivots = rref_sparse(rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    # column -> list of (pivot col, entry) for the reduced rows touching it
    touching: Dict[int, List[Tuple[int, Fraction]]] = {}
    for pc, r in zip(pivots, reduced):
        for j, v in r.items():
            if j != pc:
                touching.setdefault(j, []).append((pc, v))
    basis = []
    for fcol in free:
        vec = {fcol: ONE}
        for pc, v in touching.get(fcol, ()):
            vec[pc] = -v
        basis.append(vec)
    return basis


# --------------------------------------------------------------------------
# public dense API


def rref(m: QMatrix) -> Tuple[QMatrix, List[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    reduced, pivots = rref_sparse(m.sparse_rows())
    padded = reduced + [{} for _ in range(m.rows - len(reduced))]
    return QMatrix.from_sparse(padded, m.cols), pivots, len(pivots)


def rank(m: QMatrix) -> int:
    ech = Echelon()
    for r in m.sparse_rows():
        ech.add(r)
    return ech.rank


def kernel_basis(m: QMatrix) -> "Subspace":
    return Subspace.from_sparse(kernel_sparse(m.sparse_rows(), m.cols), m.cols)


def solve_linear(a: QMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """One solution of a.x = b (free variables zero), or None if inconsistent."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length must equal row count")
    n = a.cols
    aug = []
    for r, rhs in zip(a.sparse_rows(), b):
        rhs = as_rat(rhs)
        if rhs:
            r[n] = rhs
        aug.append(r)
    reduced, pivots = rref_sparse(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for pc, r in zip(pivots, reduced):
        x[pc] = r.get(n, ZERO)
    return x


class Subspace:
    """A linear subspace of Q^n held by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "_rows")

    def __init__(self, ambient_dim: int, rows: Iterable[SparseRow] = ()):
        self.ambient_dim = ambient_dim
        reduced, _ = rref_sparse(rows)
        self._rows: Tuple[SparseRow, ...] = tuple(reduced)

    @classmethod
    def from_sparse(cls, rows: Iterable[SparseRow], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, rows)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ({j: as_rat(v) for j, v in enumerate(vec) if v} for vec in vectors))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ({i: ONE} for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> QMatrix:
        return QMatrix.from_sparse(self._rows, self.ambient_dim)

    def sparse_basis(self) -> List[SparseRow]:
        return [dict(r) for r in self._rows]

    def pivot_cols(self) -> List[int]:
        return [min(r) for r in self._rows]

    def contains(self, vec) -> bool:
        row = vec if isinstance(vec, dict) else {j: as_rat(v) for j, v in enumerate(vec) if v}
        r = dict(row)
        for prow in self._rows:
            pc = min(prow)
            coeff = r.get(pc)
            if coeff:
                _axpy(r, coeff, prow)
        return not r

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace(self.ambient_dim, list(self._rows) + list(other._rows))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus intersection: reduce [[a, a], [b, 0]] and keep rows with zero left half."""
    _check_ambient(a, b)
    n = a.ambient_dim
    rows = []
    for r in a.sparse_basis():
        block = dict(r)
        block.update({j + n: v for j, v in r.items()})
        rows.append(block)
    rows.extend(b.sparse_basis())
    reduced, _ = rref_sparse(rows)
    meet = [{j - n: v for j, v in r.items()} for r in reduced if min(r) >= n]
    return Subspace(n, meet)


def extend_basis(inner: Subspace, outer: Subspace) -> QMatrix:
    """Rows of ``outer``'s canonical basis that complete ``inner`` to a basis of ``outer``."""
    _check_ambient(inner, outer)
    if not inner.is_subspace_of(outer):
        raise ValueError("inner subspace is not contained in outer subspace")
    ech = Echelon()
    for r in inner.sparse_basis():
        ech.add(r)
    kept = [r for r in outer.sparse_basis() if ech.add(r)]
    return QMatrix.from_sparse(kept, outer.ambient_dim)
