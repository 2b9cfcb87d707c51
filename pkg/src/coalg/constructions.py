"""Generators for the example zoo: monoid and function bialgebras, divided
powers, comatrix coalgebras and the standard (co)modules over them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Sequence

from .comodmod import Comodule, Module, cofree_coaction
from .exactla import FieldSpec, LinearMap, Q
from .structures import Algebra, Bialgebra, Coalgebra

__all__ = [
    "FiniteMonoidTable",
    "NotNilpotentEnough",
    "cyclic_group",
    "klein_four",
    "symmetric_group",
    "dihedral_group",
    "group_from_permutations",
    "multiplicative_monoid",
    "monoid_bialgebra",
    "function_bialgebra",
    "divided_power_truncation",
    "truncated_polynomial_algebra",
    "matrix_algebra",
    "comatrix_coalgebra",
    "regular_comodule",
    "regular_left_comodule",
    "cofree_comodule",
    "zero_comodule",
    "trivial_comodule",
    "trivial_module",
    "regular_module",
    "grouplike_comodule",
    "permutation_comodule",
    "permutation_matrix",
    "nilpotent_comodule",
]


class NotNilpotentEnough(ValueError):
    """``phi**(N+1) != 0``: the coaction would not fit in the truncation."""


@dataclass(frozen=True)
class FiniteMonoidTable:
    mul: tuple[tuple[int, ...], ...]
    identity: int
    labels: tuple[str, ...] = None

    def __post_init__(self):
        n = len(self.mul)
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        if n == 0 or any(len(r) != n for r in self.mul):
            raise ValueError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in self.mul for x in r):
            raise ValueError("table entries out of range")
        e = self.identity
        if any(self.mul[e][g] != g or self.mul[g][e] != g for g in range(n)):
            raise ValueError(f"element {e} is not a two-sided identity")
        m = self.mul
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise ValueError(f"table not associative at ({a}, {b}, {c})")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(n)))
        elif len(self.labels) != n:
            raise ValueError("one label per element")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.mul)

    @property
    def is_group(self) -> bool:
        n = self.size
        return all(sorted(r) == list(range(n)) for r in self.mul)

    def inverse(self, g: int) -> int:
        for h in range(self.size):
            if self.mul[g][h] == self.identity and self.mul[h][g] == self.identity:
                return h
        raise ValueError(f"element {g} has no inverse")


def cyclic_group(n: int) -> FiniteMonoidTable:
    return FiniteMonoidTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0,
                             tuple("e" if a == 0 else f"g{a}" for a in range(n)))


def klein_four() -> FiniteMonoidTable:
    return FiniteMonoidTable(tuple(tuple(a ^ b for b in range(4)) for a in range(4)), 0,
                             ("e", "a", "b", "ab"))


def group_from_permutations(generators: Sequence[Sequence[int]]) -> FiniteMonoidTable:
    """Closure of the generators; elements sorted, composition ``(pq)(i) = p(q(i))``."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    new.append(q)
        frontier = new
    elems = sorted(elems)
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(degree))] for q in elems) for p in elems)
    labels = tuple("".join(str(x + 1) for x in p) for p in elems)
    return FiniteMonoidTable(table, index[ident], labels)


def symmetric_group(n: int) -> FiniteMonoidTable:
    return group_from_permutations(list(permutations(range(n))))


def dihedral_group(n: int) -> FiniteMonoidTable:
    """Symmetries of the regular n-gon acting on its vertices."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return group_from_permutations([rotation, reflection])


def multiplicative_monoid(n: int) -> FiniteMonoidTable:
    """``(Z/n, *)``: a commutative monoid that is not a group for n > 1."""
    return FiniteMonoidTable(tuple(tuple(a * b % n for b in range(n)) for a in range(n)), 1 % n,
                             tuple(str(a) for a in range(n)))


def monoid_bialgebra(t: FiniteMonoidTable, field: FieldSpec = Q) -> Bialgebra:
    """``k Gamma`` with grouplike coproduct; antipode ``g -> g^-1`` for groups."""
    n = t.size
    mul = LinearMap.from_sparse(n, n * n, (((t.mul[a][b], a * n + b), 1) for a in range(n) for b in range(n)), field)
    unit = LinearMap.from_sparse(n, 1, [((t.identity, 0), 1)], field)
    comul = LinearMap.from_sparse(n * n, n, (((g * n + g, g), 1) for g in range(n)), field)
    counit = LinearMap.from_rows([[1] * n], field)
    S = None
    if t.is_group:
        S = LinearMap.from_sparse(n, n, (((t.inverse(g), g), 1) for g in range(n)), field)
    return Bialgebra(Algebra(mul, unit, t.labels), Coalgebra(comul, counit, t.labels), S)


def function_bialgebra(t: FiniteMonoidTable, field: FieldSpec = Q) -> Bialgebra:
    """``Map(Gamma, k)`` on the delta basis: pointwise product, ``Delta f(g, h) = f(gh)``."""
    n = t.size
    labels = tuple(f"{g}*" for g in t.labels)
    mul = LinearMap.from_sparse(n, n * n, (((g, g * n + g), 1) for g in range(n)), field)
    unit = LinearMap.from_rows([[1] for _ in range(n)], field)
    comul = LinearMap.from_sparse(n * n, n, (((a * n + b, t.mul[a][b]), 1) for a in range(n) for b in range(n)),
                                  field)
    counit = LinearMap.from_sparse(1, n, [((0, t.identity), 1)], field)
    S = None
    if t.is_group:
        S = LinearMap.from_sparse(n, n, (((t.inverse(g), g), 1) for g in range(n)), field)
    return Bialgebra(Algebra(mul, unit, labels), Coalgebra(comul, counit, labels), S)


@lru_cache(maxsize=64)
def divided_power_truncation(N: int, field: FieldSpec = Q) -> Bialgebra:
    """Span of ``X^[0..N]`` with the divided-power product cut off above degree N.

    The coproduct never raises degree, so this is always a subcoalgebra.  The
    product discards terms above degree N; the result satisfies the bialgebra
    axioms only when ``N + 1`` is a power of the characteristic.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    d = N + 1
    labels = tuple(f"X[{i}]" for i in range(d))
    mul = LinearMap.from_sparse(d, d * d, (((i + j, i * d + j), comb(i + j, i))
                                           for i in range(d) for j in range(d) if i + j <= N), field)
    unit = LinearMap.from_sparse(d, 1, [((0, 0), 1)], field)
    comul = LinearMap.from_sparse(d * d, d, (((i * d + (n - i), n), 1) for n in range(d) for i in range(n + 1)),
                                  field)
    counit = LinearMap.from_sparse(1, d, [((0, 0), 1)], field)
    S = LinearMap.from_sparse(d, d, (((n, n), (-1) ** n) for n in range(d)), field)
    return Bialgebra(Algebra(mul, unit, labels), Coalgebra(comul, counit, labels), S)


def truncated_polynomial_algebra(N: int, field: FieldSpec = Q) -> Algebra:
    """``k[y] / (y^(N+1))`` in the basis ``1, y, ..., y^N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    d = N + 1
    labels = tuple("1" if i == 0 else "y" if i == 1 else f"y^{i}" for i in range(d))
    mul = LinearMap.from_sparse(d, d * d, (((i + j, i * d + j), 1)
                                           for i in range(d) for j in range(d) if i + j <= N), field)
    return Algebra(mul, LinearMap.from_sparse(d, 1, [((0, 0), 1)], field), labels)


def _unit_index(n, i, j):
    return i * n + j


def matrix_algebra(n: int, field: FieldSpec = Q) -> Algebra:
    """``M_n(k)`` on matrix units ``e_ij`` (index ``i*n + j``)."""
    d = n * n
    items = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                items.append(((_unit_index(n, i, k), _unit_index(n, i, j) * d + _unit_index(n, j, k)), 1))
    unit = LinearMap.from_sparse(d, 1, [((_unit_index(n, i, i), 0), 1) for i in range(n)], field)
    labels = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return Algebra(LinearMap.from_sparse(d, d * d, items, field), unit, labels)


def comatrix_coalgebra(n: int, field: FieldSpec = Q) -> Coalgebra:
    """``Delta e_ij = sum_k e_ik (x) e_kj``, ``eps(e_ij) = delta_ij``."""
    if n < 1:
        raise ValueError("n must be positive")
    d = n * n
    items = [((_unit_index(n, i, k) * d + _unit_index(n, k, j), _unit_index(n, i, j)), 1)
             for i in range(n) for j in range(n) for k in range(n)]
    counit = LinearMap.from_sparse(1, d, [((0, _unit_index(n, i, i)), 1) for i in range(n)], field)
    labels = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return Coalgebra(LinearMap.from_sparse(d * d, d, items, field), counit, labels)


def regular_comodule(c: Coalgebra) -> Comodule:
    return Comodule(c.comul, c, "right")


def regular_left_comodule(c: Coalgebra) -> Comodule:
    return Comodule(c.comul, c, "left")


def cofree_comodule(c: Coalgebra, n: int) -> Comodule:
    return Comodule(cofree_coaction(c, n), c, "right")


def zero_comodule(c: Coalgebra, side: str = "right") -> Comodule:
    return Comodule(LinearMap.zeros(0, 0, c.field), c, side)


def trivial_comodule(h: Bialgebra) -> Comodule:
    """``k`` with ``v -> v (x) 1_H``."""
    return Comodule(h.alg.unit, h.coalg, "right")


def trivial_module(h: Bialgebra) -> Module:
    """``k`` with ``h . v = eps(h) v``."""
    return Module(h.coalg.counit, h.alg, "left")


def regular_module(a: Algebra) -> Module:
    return Module(a.mul, a, "left")


def grouplike_comodule(h: Bialgebra, g: int) -> Comodule:
    """One-dimensional comodule ``v -> v (x) b_g`` (needs ``b_g`` grouplike)."""
    col = [0] * h.dim
    col[g] = 1
    return Comodule(LinearMap.from_columns([col], h.field), h.coalg, "right")


def permutation_matrix(p: Sequence[int], field: FieldSpec = Q) -> LinearMap:
    """Matrix sending ``e_i`` to ``e_p(i)``."""
    n = len(p)
    return LinearMap.from_sparse(n, n, (((p[i], i), 1) for i in range(n)), field)


def permutation_comodule(t: FiniteMonoidTable, action: Sequence, field: FieldSpec = Q,
                         h: Bialgebra | None = None) -> Comodule:
    """Comodule over ``Map(Gamma, k)`` from a representation, ``e_i -> sum_j e_j (x) rho_ji``.

    ``action[g]`` is either a permutation (sequence of ints) or a LinearMap.
    """
    if len(action) != t.size:
        raise ValueError("one matrix per monoid element")
    mats = [a if isinstance(a, LinearMap) else permutation_matrix(a, field) for a in action]
    dim = mats[0].rows
    if any(m.shape != (dim, dim) or m.field != field for m in mats):
        raise ValueError("representation matrices must be square, equal size, same field")
    if mats[t.identity] != LinearMap.identity(dim, field):
        raise ValueError("identity element must act trivially")
    for a in range(t.size):
        for b in range(t.size):
            if mats[a] @ mats[b] != mats[t.mul[a][b]]:
                raise ValueError(f"action does not respect the table at ({a}, {b})")
    h = function_bialgebra(t, field) if h is None else h
    n = t.size
    items = (((j * n + g, i), mats[g][j, i]) for g in range(n) for j in range(dim) for i in range(dim))
    return Comodule(LinearMap.from_sparse(dim * n, dim, items, field), h.coalg, "right")


def nilpotent_comodule(phi: LinearMap, N: int, field: FieldSpec | None = None) -> Comodule:
    """``m -> sum_n phi^n(m) (x) X^[n]`` over the degree-N divided powers."""
    field = phi.field if field is None else field
    if phi.field != field or phi.rows != phi.cols:
        raise ValueError("phi must be a square matrix over the given field")
    if not (phi ** (N + 1)).is_zero():
        raise NotNilpotentEnough(f"phi^{N + 1} is nonzero")
    c = divided_power_truncation(N, field).coalg
    d, n = phi.rows, N + 1
    items = []
    power = LinearMap.identity(d, field)
    for k in range(n):
        items.extend(((i * n + k, m), x) for (i, m), x in power.nonzero())
        power = power @ phi
    return Comodule(LinearMap.from_sparse(d * n, d, items, field), c, "right")
