"""Exact dense linear algebra over the rationals and prime fields.

Scalars are plain Python objects: ``fractions.Fraction`` for Q and ``int``
residues in ``[0, p)`` for F_p.  A :class:`FieldSpec` knows how to coerce,
format and parse them; a :class:`LinearMap` is an immutable dense matrix whose
columns are the images of the source basis vectors.

Tensor products use one global row-major convention: basis vector ``(i, j)``
of ``V (x) W`` has flat index ``i * dim(W) + j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Q",
    "FieldSpec",
    "LinearMap",
    "prime_field",
    "rref",
    "kernel_basis",
    "solve",
    "kronecker",
    "swap_map",
    "sparse_rref",
    "sparse_kernel",
    "sparse_solve",
]

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")
_RESIDUE_RE = re.compile(r"0|[1-9][0-9]*")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``kind`` is ``"rationals"`` or ``"prime-field"``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.modulus is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "prime-field":
            p = self.modulus
            if not isinstance(p, int) or p >= 2**31 or not _is_prime(p):
                raise ValueError(f"modulus must be a prime below 2**31, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def zero(self):
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self):
        return Fraction(1) if self.modulus is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        p = self.modulus
        if p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} into Q")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{p}")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return 1 / x
        return pow(x, -1, self.modulus)

    def contains(self, x) -> bool:
        if self.modulus is None:
            return type(x) is Fraction
        return type(x) is int and 0 <= x < self.modulus

    def format(self, x) -> str:
        """Canonical scalar text: ``"-3/7"`` for Q, the residue for F_p."""
        return str(x)

    def parse(self, text: str):
        """Inverse of :meth:`format`; rejects non-canonical spellings."""
        if self.modulus is None:
            if not _RATIONAL_RE.fullmatch(text) or text == "-0":
                raise ValueError(f"malformed rational {text!r}")
            value = Fraction(text)
            if str(value) != text:
                raise ValueError(f"rational {text!r} is not in lowest terms")
            return value
        if not _RESIDUE_RE.fullmatch(text):
            raise ValueError(f"malformed residue {text!r}")
        value = int(text)
        if value >= self.modulus:
            raise ValueError(f"residue {text} out of range for F_{self.modulus}")
        return value

    def tag(self) -> str:
        return "q" if self.modulus is None else f"fp:{self.modulus}"

    @classmethod
    def from_tag(cls, tag: str) -> FieldSpec:
        if tag == "q":
            return Q
        if tag.startswith("fp:") and tag[3:].isdigit():
            return prime_field(int(tag[3:]))
        raise ValueError(f"unknown field tag {tag!r}")

    def __str__(self):
        return "Q" if self.modulus is None else f"F_{self.modulus}"


Q = FieldSpec("rationals")


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


def _norm(field: FieldSpec):
    p = field.modulus
    if p is None:
        return lambda x: x
    return lambda x: x % p


class LinearMap:
    """An immutable ``rows x cols`` matrix over a field.

    Column ``j`` holds the image of source basis vector ``j``, so composition
    ``g o f`` is ``g @ f``.  The interface is that of a dense matrix; only the
    nonzero entries are stored, row by row in increasing column order.
    """

    __slots__ = ("rows", "cols", "field", "_sparse_rows", "__dict__")

    def __init__(self, rows: int, cols: int, entries: Iterable, field: FieldSpec):
        flat = [field(x) for x in entries]
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        self._set(rows, cols, tuple(tuple((j, x) for j, x in enumerate(flat[i * cols:(i + 1) * cols]) if x)
                                    for i in range(rows)), field)

    def _set(self, rows, cols, sparse_rows, field):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_sparse_rows", sparse_rows)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        if name in ("rows", "cols", "field", "_sparse_rows"):
            raise AttributeError("LinearMap is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def _trusted(cls, rows: int, cols: int, sparse_rows: tuple, field: FieldSpec) -> LinearMap:
        # rows of canonical nonzero (col, value) pairs sorted by col
        m = cls.__new__(cls)
        m._set(rows, cols, sparse_rows, field)
        return m

    @classmethod
    def _from_dense(cls, rows: int, cols: int, grid, field: FieldSpec) -> LinearMap:
        return cls._trusted(rows, cols, tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in grid), field)

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec, cols: int | None = None) -> LinearMap:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r), field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: FieldSpec, rows: int | None = None) -> LinearMap:
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], field, cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> LinearMap:
        return cls._trusted(rows, cols, ((),) * rows, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> LinearMap:
        o = field.one
        return cls._trusted(n, n, tuple(((i, o),) for i in range(n)), field)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items, field: FieldSpec) -> LinearMap:
        """Build from ``((i, j), value)`` pairs; repeated positions accumulate."""
        acc = [dict() for _ in range(rows)]
        for (i, j), v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            acc[i][j] = acc[i].get(j, 0) + v
        out = []
        for r in acc:
            out.append(tuple((j, x) for j, x in ((j, field(r[j])) for j in sorted(r)) if x))
        return cls._trusted(rows, cols, tuple(out), field)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_rows(self) -> tuple:
        """Dense tuple of row tuples."""
        z = self.field.zero
        out = []
        for r in self._sparse_rows:
            row = [z] * self.cols
            for j, x in r:
                row[j] = x
            out.append(tuple(row))
        return tuple(out)

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple of scalars."""
        return tuple(x for r in self.to_rows() for x in r)

    @cached_property
    def _row_dicts(self) -> tuple:
        return tuple(dict(r) for r in self._sparse_rows)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._row_dicts[i].get(j, self.field.zero)

    def row(self, i: int) -> tuple:
        row = [self.field.zero] * self.cols
        for j, x in self._sparse_rows[i]:
            row[j] = x
        return tuple(row)

    def column(self, j: int) -> tuple:
        col = [self.field.zero] * self.rows
        for i, x in self._sparse_cols[j]:
            col[i] = x
        return tuple(col)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @cached_property
    def _sparse_cols(self) -> tuple:
        cols = [[] for _ in range(self.cols)]
        for i, r in enumerate(self._sparse_rows):
            for j, x in r:
                cols[j].append((i, x))
        return tuple(map(tuple, cols))

    def nonzero(self):
        """Iterate ``((i, j), value)`` over the nonzero entries."""
        for i, r in enumerate(self._sparse_rows):
            for j, x in r:
                yield (i, j), x

    def is_zero(self) -> bool:
        return not any(self._sparse_rows)

    # arithmetic

    def _check(self, other: LinearMap):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: LinearMap) -> LinearMap:
        if not isinstance(other, LinearMap):
            return NotImplemented
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        p = self.field.modulus
        brows = other._sparse_rows
        out = []
        for arow in self._sparse_rows:
            if len(arow) <= 1:
                # over a field a product of nonzero scalars is nonzero, so no filtering is needed
                if not arow:
                    out.append(())
                    continue
                k, a = arow[0]
                if a == 1:
                    out.append(brows[k])
                elif p is None:
                    out.append(tuple((j, a * b) for j, b in brows[k]))
                else:
                    out.append(tuple((j, a * b % p) for j, b in brows[k]))
                continue
            acc = {}
            get = acc.get
            for k, a in arow:
                for j, b in brows[k]:
                    acc[j] = get(j, 0) + a * b
            if p is None:
                out.append(tuple((j, acc[j]) for j in sorted(acc) if acc[j]))
            else:
                out.append(tuple((j, v) for j in sorted(acc) for v in (acc[j] % p,) if v))
        return LinearMap._trusted(self.rows, other.cols, tuple(out), self.field)

    def apply(self, vector: Sequence) -> tuple:
        """Image of a coordinate vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match source dimension")
        norm = _norm(self.field)
        z = self.field.zero
        out = []
        for r in self._sparse_rows:
            s = 0
            for j, x in r:
                if vector[j]:
                    s += x * vector[j]
            out.append(norm(s) if s else z)
        return tuple(out)

    def _combine(self, other: LinearMap, sign: int) -> LinearMap:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        norm = _norm(self.field)
        out = []
        for r, s in zip(self._sparse_rows, other._sparse_rows):
            if not s:
                out.append(r)
                continue
            acc = dict(r)
            for j, x in s:
                acc[j] = acc.get(j, 0) + sign * x
            out.append(tuple((j, v) for j, v in ((j, norm(acc[j])) for j in sorted(acc)) if v))
        return LinearMap._trusted(self.rows, self.cols, tuple(out), self.field)

    def __add__(self, other: LinearMap) -> LinearMap:
        return self._combine(other, 1)

    def __sub__(self, other: LinearMap) -> LinearMap:
        return self._combine(other, -1)

    def __neg__(self) -> LinearMap:
        return self.scale(-1)

    def scale(self, c) -> LinearMap:
        c = self.field(c)
        if not c:
            return LinearMap.zeros(self.rows, self.cols, self.field)
        norm = _norm(self.field)
        return LinearMap._trusted(self.rows, self.cols,
                                  tuple(tuple((j, norm(c * x)) for j, x in r) for r in self._sparse_rows),
                                  self.field)

    @cached_property
    def T(self) -> LinearMap:
        return LinearMap._trusted(self.cols, self.rows, self._sparse_cols, self.field)

    def __pow__(self, n: int) -> LinearMap:
        if self.rows != self.cols or n < 0:
            raise ValueError("powers need a square matrix and n >= 0")
        out = LinearMap.identity(self.rows, self.field)
        for _ in range(n):
            out = out @ self
        return out

    def hstack(self, other: LinearMap) -> LinearMap:
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        c = self.cols
        return LinearMap._trusted(self.rows, c + other.cols,
                                  tuple(r + tuple((j + c, x) for j, x in s)
                                        for r, s in zip(self._sparse_rows, other._sparse_rows)), self.field)

    def vstack(self, other: LinearMap) -> LinearMap:
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return LinearMap._trusted(self.rows + other.rows, self.cols,
                                  self._sparse_rows + other._sparse_rows, self.field)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> LinearMap:
        where = {j: k for k, j in enumerate(cols)}
        out = []
        for i in rows:
            picked = sorted((where[j], x) for j, x in self._sparse_rows[i] if j in where)
            out.append(tuple(picked))
        return LinearMap._trusted(len(rows), len(cols), tuple(out), self.field)

    def rank(self) -> int:
        return len(sparse_rref(self._sparse_rows, self.cols, self.field)[1])

    def first_difference(self, other: LinearMap):
        """First ``(row, col)`` where the two matrices differ, or None."""
        for i, (r, s) in enumerate(zip(self._sparse_rows, other._sparse_rows)):
            if r != s:
                a, b = dict(r), dict(s)
                return i, min(j for j in a.keys() | b.keys() if a.get(j) != b.get(j))
        return None

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self._sparse_rows == other._sparse_rows

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.rows, self.cols, self.field, self._sparse_rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.to_rows())
        return f"LinearMap({self.rows}x{self.cols} over {self.field}: [{body}])"


# sparse elimination core


def sparse_rref(rows: Iterable, ncols: int, field: FieldSpec, stop_at: int | None = None):
    """Reduced row-echelon form of a sparse matrix.

    ``rows`` yields iterables of ``(col, value)`` pairs.  Returns ``(pivot_rows,
    pivots)`` where ``pivot_rows[c]`` is the reduced row (a dict) whose leading
    one sits in column ``c`` and ``pivots`` is the sorted list of pivot columns.

    If ``stop_at`` is given and a row reduces to one whose leading column is
    ``>= stop_at``, returns ``None`` (an inconsistent augmented system).

    Rows are absorbed one at a time and every pivot row is kept zero in all
    other pivot columns, so the final result is the unique RREF regardless of
    the order in which pivots were discovered.
    """
    norm = _norm(field)
    inv = field.inv
    piv: dict[int, dict] = {}
    # column -> pivot columns whose rows have a nonzero entry there
    occ: dict[int, set] = {}

    for raw in rows:
        r = {}
        for c, v in raw:
            if v:
                r[c] = r.get(c, 0) + v
        for c in [c for c in r if c in piv]:
            a = r.pop(c)
            for k, v in piv[c].items():
                if k == c:
                    continue
                x = norm(r.get(k, 0) - a * v)
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
        r = {c: v for c, v in ((c, norm(v)) for c, v in r.items()) if v}
        if not r:
            continue
        p = min(r)
        if stop_at is not None and p >= stop_at:
            return None
        s = inv(r[p])
        r = {c: norm(v * s) for c, v in r.items()}
        for q in occ.pop(p, ()):
            row_q = piv[q]
            a = row_q.pop(p)
            for k, v in r.items():
                if k == p:
                    continue
                x = norm(row_q.get(k, 0) - a * v)
                if x:
                    if k not in row_q:
                        occ.setdefault(k, set()).add(q)
                    row_q[k] = x
                elif k in row_q:
                    del row_q[k]
                    occ[k].discard(q)
        piv[p] = r
        for k in r:
            if k != p:
                occ.setdefault(k, set()).add(p)
    return piv, sorted(piv)


def sparse_kernel(rows: Iterable, ncols: int, field: FieldSpec) -> list[tuple]:
    """Canonical null-space basis: one vector per free column, in increasing order."""
    piv, pivots = sparse_rref(rows, ncols, field)
    pivset = set(pivots)
    norm = _norm(field)
    z, o = field.zero, field.one
    # free column -> [(pivot, coefficient)]
    deps: dict[int, list] = {}
    for p, r in piv.items():
        for c, v in r.items():
            if c != p:
                deps.setdefault(c, []).append((p, v))
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [z] * ncols
        vec[f] = o
        for p, v in deps.get(f, ()):
            vec[p] = norm(-v)
        basis.append(tuple(vec))
    return basis


def sparse_solve(rows: Iterable, ncols: int, rhs_cols: int, field: FieldSpec):
    """Solve an augmented sparse system ``[A | B]``; ``None`` when inconsistent.

    ``rows`` carry ``ncols + rhs_cols`` columns.  Returns the ``ncols x
    rhs_cols`` particular solution (free variables zero) as a list of rows.
    """
    out = sparse_rref(rows, ncols + rhs_cols, field, stop_at=ncols)
    if out is None:
        return None
    piv, _ = out
    z = field.zero
    sol = [[z] * rhs_cols for _ in range(ncols)]
    for p, r in piv.items():
        for c, v in r.items():
            if c >= ncols:
                sol[p][c - ncols] = v
    return sol


# public operations on LinearMap


def rref(m: LinearMap) -> tuple[LinearMap, list[int], int]:
    """Unique reduced row-echelon form, pivot columns and rank."""
    piv, pivots = sparse_rref(m._sparse_rows, m.cols, m.field)
    out = [tuple(sorted(piv[p].items())) for p in pivots]
    out.extend(() for _ in range(m.rows - len(pivots)))
    return LinearMap._trusted(m.rows, m.cols, tuple(out), m.field), pivots, len(pivots)


def kernel_basis(m: LinearMap) -> list[tuple]:
    return sparse_kernel(m._sparse_rows, m.cols, m.field)


def solve(m: LinearMap, targets: LinearMap) -> LinearMap | None:
    """Particular solution ``X`` of ``m @ X == targets``, or None if there is none."""
    m._check(targets)
    if m.rows != targets.rows:
        raise ValueError("m and targets must have the same number of rows")
    n = m.cols
    rows = (r + tuple((n + j, x) for j, x in t) for r, t in zip(m._sparse_rows, targets._sparse_rows))
    sol = sparse_solve(rows, n, targets.cols, m.field)
    if sol is None:
        return None
    return LinearMap._from_dense(n, targets.cols, sol, m.field)


def kronecker(a: LinearMap, b: LinearMap, *more: LinearMap) -> LinearMap:
    """Tensor product of linear maps, row-major flat indexing."""
    if more:
        return kronecker(kronecker(a, b), *more)
    a._check(b)
    p = a.field.modulus
    bc = b.cols
    out = []
    for ar in a._sparse_rows:
        for br in b._sparse_rows:
            if p is None:
                out.append(tuple((j * bc + l, x * y) for j, x in ar for l, y in br))
            else:
                out.append(tuple((j * bc + l, x * y % p) for j, x in ar for l, y in br))
    return LinearMap._trusted(a.rows * b.rows, a.cols * bc, tuple(out), a.field)


def swap_map(dim_a: int, dim_b: int, field: FieldSpec) -> LinearMap:
    """The flip ``A (x) B -> B (x) A``."""
    n = dim_a * dim_b
    return LinearMap.from_sparse(n, n, (((j * dim_a + i, i * dim_b + j), 1)
                                        for i in range(dim_a) for j in range(dim_b)), field)
