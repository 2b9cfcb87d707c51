"""Algebras, coalgebras and bialgebras as structure-constant matrices.

``mul`` is the ``dim x dim**2`` matrix of the product, so column ``a*dim + b``
holds ``b_a * b_b``.  ``comul`` is the ``dim**2 x dim`` matrix of the
coproduct.  Duality is then plain transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import FieldSpec, LinearMap, kronecker, swap_map
from .reports import ValidationReport, compare

__all__ = [
    "InvalidInput",
    "Algebra",
    "Coalgebra",
    "Bialgebra",
    "check_algebra",
    "check_coalgebra",
    "check_bialgebra",
    "is_commutative",
    "is_cocommutative",
    "dual_algebra",
    "dual_coalgebra",
    "dual_bialgebra",
    "dual_label",
]


class InvalidInput(ValueError):
    """A structure failed the axioms an operation requires."""


def _default_labels(labels, dim):
    if labels is None:
        return tuple(f"b{i}" for i in range(dim))
    labels = tuple(labels)
    if len(labels) != dim:
        raise ValueError(f"{len(labels)} labels for dimension {dim}")
    return labels


def dual_label(label: str) -> str:
    # the double dual is identified with the original basis
    return label[:-1] if label.endswith("*") else label + "*"


def _expect_shape(name, m: LinearMap, shape, field):
    if m.shape != shape:
        raise ValueError(f"{name} has shape {m.shape}, expected {shape}")
    if m.field != field:
        raise ValueError(f"{name} is over {m.field}, expected {field}")


@dataclass(frozen=True)
class Algebra:
    mul: LinearMap
    unit: LinearMap
    labels: tuple[str, ...] = None

    def __post_init__(self):
        dim = self.unit.rows
        if dim < 1:
            raise ValueError("algebras have dimension at least 1")
        _expect_shape("unit", self.unit, (dim, 1), self.unit.field)
        _expect_shape("mul", self.mul, (dim, dim * dim), self.unit.field)
        object.__setattr__(self, "labels", _default_labels(self.labels, dim))

    @property
    def dim(self) -> int:
        return self.unit.rows

    @property
    def field(self) -> FieldSpec:
        return self.unit.field

    def one(self) -> tuple:
        return self.unit.column(0)

    def multiply(self, x, y) -> tuple:
        """Product of two coordinate vectors."""
        d, F = self.dim, self.field
        z = F.zero
        acc = [0] * d
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for i, v in self.mul._sparse_cols[a * d + b]:
                    acc[i] += xa * yb * v
        return tuple(F(v) if v else z for v in acc)

    def same_constants(self, other: Algebra) -> bool:
        return self.mul == other.mul and self.unit == other.unit


@dataclass(frozen=True)
class Coalgebra:
    comul: LinearMap
    counit: LinearMap
    labels: tuple[str, ...] = None

    def __post_init__(self):
        dim = self.counit.cols
        if dim < 1:
            raise ValueError("coalgebras have dimension at least 1")
        _expect_shape("counit", self.counit, (1, dim), self.counit.field)
        _expect_shape("comul", self.comul, (dim * dim, dim), self.counit.field)
        object.__setattr__(self, "labels", _default_labels(self.labels, dim))

    @property
    def dim(self) -> int:
        return self.counit.cols

    @property
    def field(self) -> FieldSpec:
        return self.counit.field

    def same_constants(self, other: Coalgebra) -> bool:
        return self.comul == other.comul and self.counit == other.counit


@dataclass(frozen=True)
class Bialgebra:
    alg: Algebra
    coalg: Coalgebra
    antipode: LinearMap | None = None

    def __post_init__(self):
        if self.alg.dim != self.coalg.dim or self.alg.field != self.coalg.field:
            raise ValueError("algebra and coalgebra parts must share dimension and field")
        if self.alg.labels != self.coalg.labels:
            raise ValueError("algebra and coalgebra parts must share basis labels")
        if self.antipode is not None:
            _expect_shape("antipode", self.antipode, (self.dim, self.dim), self.field)

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def field(self) -> FieldSpec:
        return self.alg.field

    @property
    def labels(self):
        return self.alg.labels


def check_coalgebra(c: Coalgebra) -> ValidationReport:
    F, d = c.field, c.dim
    I = LinearMap.identity(d, F)
    D, e = c.comul, c.counit
    return ValidationReport("coalgebra", (
        compare("coassociativity", kronecker(D, I) @ D, kronecker(I, D) @ D, c.labels),
        compare("left counit", kronecker(e, I) @ D, I, c.labels),
        compare("right counit", kronecker(I, e) @ D, I, c.labels),
    ))


def check_algebra(a: Algebra) -> ValidationReport:
    F, d = a.field, a.dim
    I = LinearMap.identity(d, F)
    m, u = a.mul, a.unit
    # witnesses for associativity index basis triples a*d*d + b*d + c
    return ValidationReport("algebra", (
        compare("associativity", m @ kronecker(m, I), m @ kronecker(I, m)),
        compare("left unit", m @ kronecker(u, I), I, a.labels),
        compare("right unit", m @ kronecker(I, u), I, a.labels),
    ))


def check_bialgebra(h: Bialgebra) -> ValidationReport:
    F, d = h.field, h.dim
    I = LinearMap.identity(d, F)
    m, u = h.alg.mul, h.alg.unit
    D, e = h.coalg.comul, h.coalg.counit
    one = LinearMap.identity(1, F)
    middle = kronecker(I, swap_map(d, d, F), I)
    checks = list(check_algebra(h.alg).checks) + list(check_coalgebra(h.coalg).checks)
    checks += [
        compare("comultiplication multiplicative", D @ m, kronecker(m, m) @ middle @ kronecker(D, D)),
        compare("comultiplication unital", D @ u, kronecker(u, u)),
        compare("counit multiplicative", e @ m, kronecker(e, e)),
        compare("counit unital", e @ u, one),
    ]
    if h.antipode is not None:
        S = h.antipode
        ue = u @ e
        checks += [
            compare("antipode (id x S)", m @ kronecker(I, S) @ D, ue, h.labels),
            compare("antipode (S x id)", m @ kronecker(S, I) @ D, ue, h.labels),
        ]
    return ValidationReport("bialgebra", tuple(checks))


def is_cocommutative(c: Coalgebra) -> bool:
    return swap_map(c.dim, c.dim, c.field) @ c.comul == c.comul


def is_commutative(a: Algebra) -> bool:
    return a.mul @ swap_map(a.dim, a.dim, a.field) == a.mul


def _require(report: ValidationReport, what: str):
    if not report.ok:
        bad = ", ".join(c.name for c in report.failures())
        raise InvalidInput(f"{what} fails: {bad}")


def dual_algebra(c: Coalgebra) -> Algebra:
    """The convolution algebra on the dual basis."""
    _require(check_coalgebra(c), "coalgebra")
    return Algebra(c.comul.T, c.counit.T, tuple(map(dual_label, c.labels)))


def dual_coalgebra(a: Algebra) -> Coalgebra:
    """The linear dual of a finite-dimensional algebra."""
    _require(check_algebra(a), "algebra")
    return Coalgebra(a.mul.T, a.unit.T, tuple(map(dual_label, a.labels)))


def dual_bialgebra(h: Bialgebra) -> Bialgebra:
    S = None if h.antipode is None else h.antipode.T
    return Bialgebra(dual_algebra(h.coalg), dual_coalgebra(h.alg), S)
