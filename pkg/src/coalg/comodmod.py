"""Comodules and modules, the functors between them, and colinear maps.

A right comodule ``M`` over ``C`` is a coaction matrix with rows indexed by
``m*dim(C) + c`` (``M (x) C``); a left one uses ``c*dim(M) + m`` (``C (x) M``).
A left module over ``A`` is an action matrix with columns indexed by
``a*dim(M) + m``; a right one uses ``m*dim(A) + a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .exactla import LinearMap, kronecker, sparse_kernel, sparse_solve, swap_map, solve
from .reports import ValidationReport, compare
from .structures import (
    Algebra,
    Bialgebra,
    Coalgebra,
    InvalidInput,
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    dual_algebra,
    is_cocommutative,
)

__all__ = [
    "Comodule",
    "Module",
    "ColinearIdempotent",
    "CotensorProduct",
    "SideMismatch",
    "NotRational",
    "NotABialgebra",
    "check_comodule",
    "check_module",
    "comodule_to_module",
    "module_to_comodule",
    "dual_comodule",
    "cotensor",
    "tensor_comodules",
    "tensor_modules",
    "cofree_coaction",
    "cofree_embedding",
    "colinear_maps",
    "module_maps",
    "is_colinear",
    "injective_retract",
    "find_isomorphism",
    "direct_sum",
    "action_matrix",
]


class SideMismatch(ValueError):
    pass


class NotRational(ValueError):
    """A C*-module whose reconstructed coaction is not coassociative/counital."""


class NotABialgebra(ValueError):
    pass


def _check_side(side):
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class Comodule:
    coaction: LinearMap
    over: Coalgebra
    side: str = "right"

    def __post_init__(self):
        _check_side(self.side)
        if self.coaction.field != self.over.field:
            raise ValueError("coaction and coalgebra live over different fields")
        if self.coaction.rows != self.coaction.cols * self.over.dim:
            raise ValueError(f"coaction of shape {self.coaction.shape} does not fit "
                             f"a {self.coaction.cols}-dim comodule over a {self.over.dim}-dim coalgebra")

    @property
    def dim(self) -> int:
        return self.coaction.cols

    @property
    def field(self):
        return self.over.field


@dataclass(frozen=True)
class Module:
    action: LinearMap
    over: Algebra
    side: str = "left"

    def __post_init__(self):
        _check_side(self.side)
        if self.action.field != self.over.field:
            raise ValueError("action and algebra live over different fields")
        if self.action.cols != self.action.rows * self.over.dim:
            raise ValueError(f"action of shape {self.action.shape} does not fit "
                             f"a {self.action.rows}-dim module over a {self.over.dim}-dim algebra")

    @property
    def dim(self) -> int:
        return self.action.rows

    @property
    def field(self):
        return self.over.field


@lru_cache(maxsize=None)
def _coalgebra_ok(c: Coalgebra) -> bool:
    return check_coalgebra(c).ok


@lru_cache(maxsize=None)
def _algebra_ok(a: Algebra) -> bool:
    return check_algebra(a).ok


@lru_cache(maxsize=None)
def _bialgebra_ok(h: Bialgebra) -> bool:
    return check_bialgebra(h).ok


@lru_cache(maxsize=None)
def _dual(c: Coalgebra) -> Algebra:
    return dual_algebra(c)


def check_comodule(m: Comodule) -> ValidationReport:
    F, d, C = m.field, m.dim, m.over
    I_M = LinearMap.identity(d, F)
    I_C = LinearMap.identity(C.dim, F)
    rho = m.coaction
    if m.side == "right":
        checks = (
            compare("coassociativity", kronecker(I_M, C.comul) @ rho, kronecker(rho, I_C) @ rho),
            compare("counit", kronecker(I_M, C.counit) @ rho, I_M),
        )
    else:
        checks = (
            compare("coassociativity", kronecker(C.comul, I_M) @ rho, kronecker(I_C, rho) @ rho),
            compare("counit", kronecker(C.counit, I_M) @ rho, I_M),
        )
    return ValidationReport(f"{m.side} comodule", checks)


def check_module(m: Module) -> ValidationReport:
    F, d, A = m.field, m.dim, m.over
    I_M = LinearMap.identity(d, F)
    I_A = LinearMap.identity(A.dim, F)
    lam = m.action
    if m.side == "left":
        checks = (
            compare("associativity", lam @ kronecker(A.mul, I_M), lam @ kronecker(I_A, lam)),
            compare("unit", lam @ kronecker(A.unit, I_M), I_M),
        )
    else:
        checks = (
            compare("associativity", lam @ kronecker(I_M, A.mul), lam @ kronecker(lam, I_A)),
            compare("unit", lam @ kronecker(I_M, A.unit), I_M),
        )
    return ValidationReport(f"{m.side} module", checks)


def _require_comodule(m: Comodule):
    if not _coalgebra_ok(m.over):
        raise InvalidInput("the underlying coalgebra fails its axioms")
    report = check_comodule(m)
    if not report.ok:
        raise InvalidInput("comodule fails: " + ", ".join(c.name for c in report.failures()))


def action_matrix(m: Module, j: int) -> LinearMap:
    """Matrix of the operator ``v -> b_j . v`` (or ``v . b_j`` for right modules)."""
    d, n = m.dim, m.over.dim
    if m.side == "left":
        cols = range(j * d, (j + 1) * d)
    else:
        cols = range(j, d * n, n)
    return m.action.submatrix(range(d), list(cols))


def comodule_to_module(m: Comodule) -> Module:
    """The left C*-module with ``f . v = sum f(v_(1)) v_(0)``."""
    if m.side != "right":
        raise SideMismatch("only right comodules induce left C*-modules here")
    _require_comodule(m)
    d, n = m.dim, m.over.dim
    items = (((i, j * d + v), x) for (row, v), x in m.coaction.nonzero() for i, j in [divmod(row, n)])
    action = LinearMap.from_sparse(d, n * d, items, m.field)
    return Module(action, _dual(m.over), "left")


def module_to_comodule(m: Module, c: Coalgebra) -> Comodule:
    """Recover the coaction ``v -> sum_i (c_i* . v) (x) c_i`` of a rational module."""
    if m.side != "left":
        raise SideMismatch("expected a left module over the dual algebra")
    if not _coalgebra_ok(c):
        raise InvalidInput("coalgebra fails its axioms")
    if not m.over.same_constants(_dual(c)):
        raise InvalidInput("module is not over the dual algebra of the given coalgebra")
    report = check_module(m)
    if not report.ok:
        raise InvalidInput("module fails: " + ", ".join(x.name for x in report.failures()))
    d, n = m.dim, c.dim
    items = (((i * n + j, v), x) for (i, col), x in m.action.nonzero() for j, v in [divmod(col, d)])
    comod = Comodule(LinearMap.from_sparse(d * n, d, items, m.field), c, "right")
    if not check_comodule(comod).ok:
        raise NotRational("reconstructed coaction is not a comodule structure")
    return comod


def dual_comodule(m: Comodule) -> Module:
    """The right C*-module on ``M*`` with ``(f . a)(v) = sum f(v_(0)) a(v_(1))``."""
    if m.side != "right":
        raise SideMismatch("dualization is defined here for right comodules")
    _require_comodule(m)
    return Module(m.coaction.T, _dual(m.over), "right")


@dataclass(frozen=True)
class CotensorProduct:
    dim: int
    inclusion: LinearMap  # into M (x) N
    comodule: Comodule | None = None  # right comodule structure when C is cocommutative


def cotensor(m: Comodule, n: Comodule) -> CotensorProduct:
    """The equalizer of ``rho (x) 1`` and ``1 (x) lambda`` inside ``M (x) N``."""
    if m.side != "right" or n.side != "left":
        raise SideMismatch("cotensor takes a right comodule and a left comodule")
    if not m.over.same_constants(n.over):
        raise ValueError("comodules over different coalgebras")
    _require_comodule(m)
    _require_comodule(n)
    F, C = m.field, m.over
    I_M = LinearMap.identity(m.dim, F)
    I_N = LinearMap.identity(n.dim, F)
    diff = kronecker(m.coaction, I_N) - kronecker(I_M, n.coaction)
    basis = sparse_kernel(diff._sparse_rows, diff.cols, F)
    incl = LinearMap.from_columns(basis, F, rows=m.dim * n.dim)
    comod = None
    if basis and is_cocommutative(C):
        # coact on the M leg: m (x) n -> m0 (x) n (x) m1
        full = kronecker(I_M, swap_map(C.dim, n.dim, F)) @ kronecker(m.coaction, I_N)
        I_C = LinearMap.identity(C.dim, F)
        coaction = solve(kronecker(incl, I_C), full @ incl)
        if coaction is None:
            raise ArithmeticError("cotensor product is not a subcomodule")
        comod = Comodule(coaction, C, "right")
        _require_comodule(comod)
    return CotensorProduct(len(basis), incl, comod)


def _require_bialgebra(h: Bialgebra, *comods: Comodule):
    if not _bialgebra_ok(h):
        raise NotABialgebra("structure fails the bialgebra axioms")
    for c in comods:
        over = c.over
        if isinstance(over, Coalgebra) and not over.same_constants(h.coalg):
            raise ValueError("comodule is not over the given bialgebra")
        if isinstance(over, Algebra) and not over.same_constants(h.alg):
            raise ValueError("module is not over the given bialgebra")


def tensor_comodules(m: Comodule, n: Comodule, h: Bialgebra) -> Comodule:
    """``M (x) N`` with coaction ``(1 (x) 1 (x) mu)(1 (x) tau (x) 1)(rho_M (x) rho_N)``."""
    if m.side != "right" or n.side != "right":
        raise SideMismatch("tensor_comodules takes right comodules")
    _require_bialgebra(h, m, n)
    F, H = h.field, h.dim
    I_M = LinearMap.identity(m.dim, F)
    I_H = LinearMap.identity(H, F)
    I_MN = LinearMap.identity(m.dim * n.dim, F)
    coaction = (kronecker(I_MN, h.alg.mul)
                @ kronecker(I_M, swap_map(H, n.dim, F), I_H)
                @ kronecker(m.coaction, n.coaction))
    out = Comodule(coaction, h.coalg, "right")
    _require_comodule(out)
    return out


def tensor_modules(m: Module, n: Module, h: Bialgebra) -> Module:
    """``M (x) N`` with action ``(lam_M (x) lam_N)(1 (x) tau (x) 1)(Delta (x) 1 (x) 1)``."""
    if m.side != "left" or n.side != "left":
        raise SideMismatch("tensor_modules takes left modules")
    _require_bialgebra(h, m, n)
    F, H = h.field, h.dim
    I_N = LinearMap.identity(n.dim, F)
    I_H = LinearMap.identity(H, F)
    I_MN = LinearMap.identity(m.dim * n.dim, F)
    action = (kronecker(m.action, n.action)
              @ kronecker(I_H, swap_map(H, m.dim, F), I_N)
              @ kronecker(h.coalg.comul, I_MN))
    out = Module(action, h.alg, "left")
    if not check_module(out).ok:
        raise InvalidInput("tensor product action fails the module axioms")
    return out


def cofree_coaction(c: Coalgebra, n: int) -> LinearMap:
    """Coaction ``id (x) Delta`` on ``C^(+n) = k^n (x) C``."""
    return kronecker(LinearMap.identity(n, c.field), c.comul)


def cofree_embedding(m: Comodule) -> LinearMap:
    """The coaction itself, read as a colinear mono ``M -> C^(+dim M)``."""
    if m.side != "right":
        raise SideMismatch("cofree embeddings are built for right comodules")
    _require_comodule(m)
    return m.coaction


def _hom_equations(src: LinearMap, tgt: LinearMap, d_src: int, d_tgt: int, n: int, side: str):
    """Sparse rows of the colinearity system for ``f: src -> tgt`` (unknown ``f[r, s]`` at ``r*d_src + s``)."""
    eqs: dict[tuple[int, int], dict[int, object]] = {}
    for (row, r), v in tgt.nonzero():
        for s in range(d_src):
            e = eqs.setdefault((row, s), {})
            k = r * d_src + s
            e[k] = e.get(k, 0) + v
    for (row, s), v in src.nonzero():
        if side == "right":
            sp, c = divmod(row, n)
            for rp in range(d_tgt):
                e = eqs.setdefault((rp * n + c, s), {})
                k = rp * d_src + sp
                e[k] = e.get(k, 0) - v
        else:
            c, sp = divmod(row, d_src)
            for rp in range(d_tgt):
                e = eqs.setdefault((c * d_tgt + rp, s), {})
                k = rp * d_src + sp
                e[k] = e.get(k, 0) - v
    return [list(e.items()) for _, e in sorted(eqs.items())]


def _as_maps(vectors, rows, cols, field) -> list[LinearMap]:
    return [LinearMap._from_dense(rows, cols, [v[i * cols:(i + 1) * cols] for i in range(rows)], field)
            for v in vectors]


def colinear_maps(m: Comodule, n: Comodule) -> list[LinearMap]:
    """Basis of ``{f : rho_N f = (f (x) id) rho_M}``."""
    if m.side != n.side:
        raise SideMismatch("comodules on different sides")
    if not m.over.same_constants(n.over):
        raise ValueError("comodules over different coalgebras")
    eqs = _hom_equations(m.coaction, n.coaction, m.dim, n.dim, m.over.dim, m.side)
    return _as_maps(sparse_kernel(eqs, m.dim * n.dim, m.field), n.dim, m.dim, m.field)


def is_colinear(f: LinearMap, m: Comodule, n: Comodule) -> bool:
    I_C = LinearMap.identity(m.over.dim, m.field)
    if m.side == "right":
        return n.coaction @ f == kronecker(f, I_C) @ m.coaction
    return n.coaction @ f == kronecker(I_C, f) @ m.coaction


def module_maps(m: Module, n: Module) -> list[LinearMap]:
    """Basis of the module homomorphisms ``M -> N``."""
    if m.side != n.side:
        raise SideMismatch("modules on different sides")
    if not m.over.same_constants(n.over):
        raise ValueError("modules over different algebras")
    dm, dn = m.dim, n.dim
    eqs = []
    for j in range(m.over.dim):
        A, B = action_matrix(m, j), action_matrix(n, j)
        acc: dict[tuple[int, int], dict] = {}
        for (sp, s), v in A.nonzero():
            for r in range(dn):
                e = acc.setdefault((r, s), {})
                e[r * dm + sp] = e.get(r * dm + sp, 0) + v
        for (r, rp), v in B.nonzero():
            for s in range(dm):
                e = acc.setdefault((r, s), {})
                e[rp * dm + s] = e.get(rp * dm + s, 0) - v
        eqs.extend(list(e.items()) for _, e in sorted(acc.items()))
    return _as_maps(sparse_kernel(eqs, dm * dn, m.field), dn, dm, m.field)


def direct_sum(*comods: Comodule) -> Comodule:
    """Block-diagonal coaction on ``M_1 (+) ... (+) M_k``."""
    first = comods[0]
    C, F = first.over, first.field
    n = C.dim
    total = sum(c.dim for c in comods)
    items, off = [], 0
    for c in comods:
        if c.side != first.side or not c.over.same_constants(C):
            raise ValueError("summands must share side and coalgebra")
        for (row, v), x in c.coaction.nonzero():
            if c.side == "right":
                i, j = divmod(row, n)
                items.append((((i + off) * n + j, v + off), x))
            else:
                j, i = divmod(row, c.dim)
                items.append(((j * total + i + off, v + off), x))
        off += c.dim
    return Comodule(LinearMap.from_sparse(total * n, total, items, F), C, first.side)


@dataclass(frozen=True)
class ColinearIdempotent:
    """A colinear projection ``e`` of ``C^(+n)``; its image is an injective comodule."""

    n: int
    endo: LinearMap
    over: Coalgebra

    def __post_init__(self):
        size = self.n * self.over.dim
        if self.endo.shape != (size, size):
            raise ValueError(f"endomorphism has shape {self.endo.shape}, expected {(size, size)}")

    def block(self, i: int, j: int) -> LinearMap:
        d = self.over.dim
        return self.endo.submatrix(range(i * d, (i + 1) * d), range(j * d, (j + 1) * d))

    def validate(self) -> ValidationReport:
        e = self.endo
        rho = cofree_coaction(self.over, self.n)
        I_C = LinearMap.identity(self.over.dim, self.over.field)
        return ValidationReport("colinear idempotent", (
            compare("idempotent", e @ e, e),
            compare("colinear", rho @ e, kronecker(e, I_C) @ rho),
        ))

    def image(self) -> Comodule:
        """The image subcomodule, in the basis of the nonzero column-echelon vectors of ``e``."""
        from .exactla import rref
        red, pivots, rank = rref(self.endo.T)
        basis = LinearMap.from_rows(red.to_rows()[:rank], self.over.field, cols=self.endo.rows).T \
            if rank else LinearMap.zeros(self.endo.rows, 0, self.over.field)
        I_C = LinearMap.identity(self.over.dim, self.over.field)
        coaction = solve(kronecker(basis, I_C), cofree_coaction(self.over, self.n) @ basis)
        return Comodule(coaction, self.over, "right")

    @classmethod
    def identity(cls, c: Coalgebra, n: int) -> ColinearIdempotent:
        return cls(n, LinearMap.identity(n * c.dim, c.field), c)

    @classmethod
    def zero(cls, c: Coalgebra, n: int) -> ColinearIdempotent:
        return cls(n, LinearMap.zeros(n * c.dim, n * c.dim, c.field), c)


def injective_retract(m: Comodule, embedding: LinearMap | None = None) -> ColinearIdempotent | None:
    """Split a colinear mono ``M -> C^(+n)``; None when ``M`` is not injective.

    A comodule whose coaction literally is ``id (x) Delta`` is returned as the
    identity on its summands.  Otherwise ``embedding`` (default: the coaction)
    is split by solving for a colinear retraction.
    """
    if m.side != "right":
        raise SideMismatch("injectivity is decided for right comodules")
    _require_comodule(m)
    C, F, d = m.over, m.field, m.dim
    if d % C.dim == 0 and m.coaction == cofree_coaction(C, d // C.dim):
        return ColinearIdempotent.identity(C, d // C.dim)
    iota = cofree_embedding(m) if embedding is None else embedding
    if iota.rows % C.dim or iota.cols != d:
        raise ValueError("embedding must map M into a cofree comodule")
    n = iota.rows // C.dim
    rho_free = cofree_coaction(C, n)
    if rho_free @ iota != kronecker(iota, LinearMap.identity(C.dim, F)) @ m.coaction or iota.rank() != d:
        raise ValueError("embedding is not a colinear monomorphism")
    size = n * C.dim
    # unknown r: C^(+n) -> M at index row*size + col; rhs column is index d*size
    rows = _hom_equations(rho_free, m.coaction, size, d, C.dim, "right")
    rhs = d * size
    cols_of_iota = iota._sparse_cols
    for r in range(d):
        for s in range(d):
            eq = [(r * size + t, v) for t, v in cols_of_iota[s]]
            if r == s:
                eq.append((rhs, F.one))
            rows.append(eq)
    sol = sparse_solve(rows, d * size, 1, F)
    if sol is None:
        return None
    retraction = LinearMap._from_dense(d, size, [[sol[r * size + t][0] for t in range(size)]
                                                 for r in range(d)], F)
    return ColinearIdempotent(n, iota @ retraction, C)


def _small_field_sweep(basis, p, limit):
    k = len(basis)
    if p ** k > limit:
        raise ValueError(f"isomorphism search space {p}^{k} exceeds {limit}")
    for coeffs in product(range(p), repeat=k):
        yield coeffs


def _rational_sweep(k, n, limit):
    # x_i = t^((n+1)^i) sends distinct monomials of degree <= n per variable to distinct powers of t
    degree = n * sum((n + 1) ** i for i in range(k))
    if degree + 1 > limit:
        raise ValueError(f"isomorphism sweep of {degree + 1} points exceeds {limit}")
    for t in range(1, degree + 2):
        yield tuple(t ** ((n + 1) ** i) for i in range(k))


def find_isomorphism(m: Comodule, n: Comodule, limit: int = 1 << 16) -> LinearMap | None:
    """An invertible colinear map ``M -> N``, or None if the comodules are not isomorphic."""
    if m.dim != n.dim:
        return None
    basis = colinear_maps(m, n)
    d, F = m.dim, m.field
    if d == 0:
        return LinearMap.zeros(0, 0, F)
    if not basis:
        return None
    zero = LinearMap.zeros(d, d, F)

    def combo(coeffs):
        out = zero
        for c, b in zip(coeffs, basis):
            if c:
                out = out + b.scale(c)
        return out

    for b in basis:
        if b.rank() == d:
            return b
    if F.is_rational:
        sweep = _rational_sweep(len(basis), d, limit)
    else:
        sweep = _small_field_sweep(basis, F.modulus, limit)
    for coeffs in sweep:
        f = combo(coeffs)
        if f.rank() == d:
            return f
    return None
