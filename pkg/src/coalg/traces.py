"""Degree-zero (co)Hochschild homology, traces, cotraces and characters.

Functionals on ``coHH_0(C)`` are stored by their values on the computed kernel
basis, which is the same thing as coordinates in the dual basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .comodmod import (
    ColinearIdempotent,
    Comodule,
    Module,
    SideMismatch,
    _require_comodule,
    action_matrix,
    comodule_to_module,
    tensor_comodules,
)
from .exactla import LinearMap, kernel_basis, rref, swap_map
from .reports import DiagramReport
from .structures import Algebra, Bialgebra, Coalgebra, InvalidInput, check_algebra, check_coalgebra, dual_algebra

__all__ = [
    "NotIdempotent",
    "InvalidIdempotent",
    "QuotientPresentation",
    "SubspacePresentation",
    "hh0",
    "cohh0",
    "algebra_matmul",
    "hattori_stallings",
    "cotrace",
    "cotrace_representative",
    "dual_idempotent",
    "comparison_pairing",
    "character_module",
    "colinear_character",
    "verify_trace_square",
    "verify_character_triangle",
    "verify_character_multiplicativity",
]


class NotIdempotent(ValueError):
    pass


class InvalidIdempotent(ValueError):
    pass


@dataclass(frozen=True)
class QuotientPresentation:
    """``A / [A, A]`` with projection and the RREF-complement section."""

    ambient_dim: int
    projection: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return self.projection.rows

    def project(self, x: Sequence) -> tuple:
        return self.projection.apply(tuple(x))


@dataclass(frozen=True)
class SubspacePresentation:
    ambient_dim: int
    inclusion: LinearMap

    @property
    def dim(self) -> int:
        return self.inclusion.cols

    def restrict(self, functional: Sequence) -> tuple:
        """Values of an ambient functional on the basis vectors."""
        return self.inclusion.T.apply(tuple(functional))


@lru_cache(maxsize=None)
def hh0(a: Algebra) -> QuotientPresentation:
    if not check_algebra(a).ok:
        raise InvalidInput("algebra fails its axioms")
    F, d = a.field, a.dim
    commutators = a.mul - a.mul @ swap_map(d, d, F)
    red, pivots, rank = rref(commutators.T)
    pivset = set(pivots)
    free = [j for j in range(d) if j not in pivset]
    # e_j for a free column is its own class; e_p for a pivot p is minus the rest of its RREF row
    items = [((k, f), 1) for k, f in enumerate(free)]
    for r, p in enumerate(pivots):
        for k, f in enumerate(free):
            v = red[r, f]
            if v:
                items.append(((k, p), -v))
    projection = LinearMap.from_sparse(len(free), d, items, F)
    section = LinearMap.from_sparse(d, len(free), (((f, k), 1) for k, f in enumerate(free)), F)
    return QuotientPresentation(d, projection, section)


@lru_cache(maxsize=None)
def cohh0(c: Coalgebra) -> SubspacePresentation:
    if not check_coalgebra(c).ok:
        raise InvalidInput("coalgebra fails its axioms")
    F, d = c.field, c.dim
    diff = c.comul - swap_map(d, d, F) @ c.comul
    basis = kernel_basis(diff)
    return SubspacePresentation(d, LinearMap.from_columns(basis, F, rows=d))


def algebra_matmul(a: Algebra, X, Y):
    """Product of square matrices whose entries are coordinate vectors in ``a``."""
    n = len(X)
    zero = (a.field.zero,) * a.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = [0] * a.dim
            for k in range(n):
                p = a.multiply(X[i][k], Y[k][j])
                for t, v in enumerate(p):
                    acc[t] += v
            row.append(tuple(a.field(v) for v in acc) if any(acc) else zero)
        out.append(tuple(row))
    return tuple(out)


def _as_elements(a: Algebra, E):
    return tuple(tuple(tuple(a.field(x) for x in entry) for entry in row) for row in E)


def hattori_stallings(a: Algebra, E) -> tuple:
    """Class of ``sum_i E_ii`` in ``HH_0(a)``, as quotient coordinates."""
    E = _as_elements(a, E)
    if any(len(row) != len(E) for row in E):
        raise ValueError("idempotent must be square")
    if algebra_matmul(a, E, E) != E:
        raise NotIdempotent("E @ E != E over the algebra")
    diag = [0] * a.dim
    for i in range(len(E)):
        for t, v in enumerate(E[i][i]):
            diag[t] += v
    return hh0(a).project(tuple(a.field(v) for v in diag))


def _require_idempotent(e: ColinearIdempotent):
    if not check_coalgebra(e.over).ok:
        raise InvalidInput("coalgebra fails its axioms")
    if not e.validate().ok:
        raise InvalidIdempotent("endomorphism is not a colinear idempotent")


def cotrace_representative(c: Coalgebra, e: ColinearIdempotent) -> tuple:
    """``sum_i eps o e_ii`` as an element of ``C*`` (dual-basis coordinates)."""
    d = c.dim
    eps = c.counit
    acc = [0] * d
    for i in range(e.n):
        row = (eps @ e.block(i, i)).row(0)
        for t in range(d):
            acc[t] += row[t]
    return tuple(c.field(v) for v in acc)


def cotrace(c: Coalgebra, e: ColinearIdempotent) -> tuple:
    """The cotrace functional on ``coHH_0(c)`` of the image of ``e``."""
    if not e.over.same_constants(c):
        raise ValueError("idempotent is over a different coalgebra")
    _require_idempotent(e)
    return cohh0(c).restrict(cotrace_representative(c, e))


def dual_idempotent(c: Coalgebra, e: ColinearIdempotent):
    """``E_ij = eps o e_ji``: the idempotent over ``C*`` cutting out the dual module."""
    eps = c.counit
    return tuple(tuple((eps @ e.block(j, i)).row(0) for j in range(e.n)) for i in range(e.n))


@lru_cache(maxsize=None)
def comparison_pairing(c: Coalgebra) -> LinearMap:
    """``HH_0(C*) -> coHH_0(C)*``: evaluate a representative on the cocommuting subspace."""
    q = hh0(dual_algebra(c))
    sub = cohh0(c)
    return sub.inclusion.T @ q.section


def character_module(m: Module) -> tuple:
    """``j -> trace`` of the operator by basis element ``j``."""
    F = m.field
    out = []
    for j in range(m.over.dim):
        A = action_matrix(m, j)
        out.append(F(sum(A[i, i] for i in range(m.dim))) if m.dim else F.zero)
    return tuple(out)


def colinear_character(v: Comodule) -> tuple:
    """``sum_i sum e_i*(e_i(0)) e_i(1)`` as a coordinate vector in ``C``."""
    if v.side != "right":
        raise SideMismatch("colinear characters are computed for right comodules")
    _require_comodule(v)
    n, F = v.over.dim, v.field
    acc = [0] * n
    for (row, col), x in v.coaction.nonzero():
        i, j = divmod(row, n)
        if i == col:
            acc[j] += x
    return tuple(F(x) for x in acc)


def verify_trace_square(c: Coalgebra, e: ColinearIdempotent) -> DiagramReport:
    """Cotrace of ``M`` against the Hattori-Stallings trace of ``M*`` pushed to ``coHH_0(C)*``."""
    _require_idempotent(e)
    Cs = dual_algebra(c)
    E = dual_idempotent(c, e)
    notes = []
    if algebra_matmul(Cs, E, E) != E:
        return DiagramReport("trace square", ("dual idempotent fails E^2 = E",), (), ("E^2 != E",))
    hs = hattori_stallings(Cs, E)
    lhs = comparison_pairing(c).apply(hs)
    rhs = cotrace(c, e)
    rep = cotrace_representative(c, e)
    fmt = c.field.format
    notes.append("HH_0 class " + "(" + ", ".join(map(fmt, hs)) + ")")
    notes.append("ambient representative in C* (" + ", ".join(map(fmt, rep)) + ")")
    return DiagramReport("trace square", lhs, rhs, tuple(notes))


def verify_character_triangle(c: Coalgebra, v: Comodule) -> DiagramReport:
    """``f(chi^c(V)) == chi(V as a C*-module)(f)`` for every dual basis element ``f``."""
    if not v.over.same_constants(c):
        raise ValueError("comodule is over a different coalgebra")
    # pairing the dual basis element c_j* with chi^c(V) reads off coordinate j
    lhs = colinear_character(v)
    rhs = character_module(comodule_to_module(v))
    return DiagramReport("character triangle", lhs, rhs)


def verify_character_multiplicativity(h: Bialgebra, v: Comodule, w: Comodule) -> DiagramReport:
    """``chi^c(V (x) W) == chi^c(V) * chi^c(W)`` with the product of ``h``."""
    lhs = colinear_character(tensor_comodules(v, w, h))
    rhs = h.alg.multiply(colinear_character(v), colinear_character(w))
    return DiagramReport("character multiplicativity", lhs, rhs)
