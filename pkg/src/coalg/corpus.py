"""The bundled example corpus, generated in code.

Every entry has a stable name, a document kind and a zero-argument factory.
Names are what ``coalg examples emit`` writes to disk (with a kind-specific
extension), so they double as golden-fixture filenames.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .comodmod import ColinearIdempotent, Comodule, direct_sum, injective_retract
from .constructions import (
    comatrix_coalgebra,
    cyclic_group,
    dihedral_group,
    divided_power_truncation,
    function_bialgebra,
    grouplike_comodule,
    klein_four,
    matrix_algebra,
    monoid_bialgebra,
    multiplicative_monoid,
    nilpotent_comodule,
    permutation_comodule,
    regular_comodule,
    symmetric_group,
    trivial_comodule,
    truncated_polynomial_algebra,
    zero_comodule,
)
from .document import MatrixIdempotent
from .exactla import FieldSpec, LinearMap, Q, prime_field
from .structures import Algebra, Coalgebra

__all__ = [
    "EXTENSIONS",
    "CorpusEntry",
    "corpus",
    "entry",
    "build",
    "group_tables",
    "divpow_fields",
    "mutation_fixtures",
    "standard_representation_s3",
    "sign_representation",
]

EXTENSIONS = {
    "algebra": ".alg",
    "coalgebra": ".coalg",
    "bialgebra": ".bialg",
    "comodule": ".comod",
    "module": ".mod",
    "idempotent": ".idem",
}

F2, F3 = prime_field(2), prime_field(3)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    factory: Callable[[], object]
    tags: frozenset = frozenset()

    def build(self):
        return _build(self.name)


def group_tables() -> dict:
    """Named finite groups and one non-group monoid."""
    return {
        "c2": cyclic_group(2),
        "c3": cyclic_group(3),
        "c4": cyclic_group(4),
        "v4": klein_four(),
        "s3": symmetric_group(3),
        "d4": dihedral_group(4),
        "mult2": multiplicative_monoid(2),
    }


def divpow_fields() -> dict:
    return {"": Q, "-f2": F2, "-f3": F3}


def sign_representation(t, field: FieldSpec = Q) -> list:
    """1x1 matrices of the sign of each permutation-labelled element."""
    out = []
    for label in t.labels:
        p = [int(ch) - 1 for ch in label]
        inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        out.append(LinearMap.from_rows([[(-1) ** inversions]], field))
    return out


def standard_representation_s3(t, field: FieldSpec = Q) -> list:
    """The permutation action on ``{x : x1 + x2 + x3 = 0}`` in the basis ``e1 - e2, e2 - e3``."""
    basis = [(1, -1, 0), (0, 1, -1)]
    out = []
    for label in t.labels:
        p = [int(ch) - 1 for ch in label]
        cols = []
        for v in basis:
            w = [0, 0, 0]
            for i in range(3):
                w[p[i]] += v[i]
            # w = a (e1 - e2) + b (e2 - e3): a = w1, b = w1 + w2
            cols.append((w[0], w[0] + w[1]))
        out.append(LinearMap.from_columns(cols, field))
    return out


def _c2_sign(t, field):
    return [LinearMap.from_rows([[1 if g == t.identity else -1]], field) for g in range(t.size)]


def _regular_action(t):
    return [tuple(t.mul[g][x] for x in range(t.size)) for g in range(t.size)]


def _jordan(n: int, field: FieldSpec) -> LinearMap:
    return LinearMap.from_sparse(n, n, (((i, i + 1), 1) for i in range(n - 1)), field)


def _mutate(m: LinearMap, i: int, j: int) -> LinearMap:
    items = list(m.nonzero()) + [((i, j), 1)]
    return LinearMap.from_sparse(m.rows, m.cols, items, m.field)


def _coalgebra_mutant(c: Coalgebra, a: int, b: int, j: int) -> Coalgebra:
    return Coalgebra(_mutate(c.comul, a * c.dim + b, j), c.counit, c.labels)


def _algebra_mutant(x: Algebra, i: int, a: int, b: int) -> Algebra:
    return Algebra(_mutate(x.mul, i, a * x.dim + b), x.unit, x.labels)


def mutation_fixtures() -> dict:
    """Twenty ``name -> (kind, factory)`` structures, each one structure constant off a valid one.

    ``broken-coassoc`` adds ``X[1] (x) X[2]`` to ``Delta(X[2])``; neither leg
    has nonzero counit, so both counit laws survive and only coassociativity breaks.
    """
    out = {}
    tables = group_tables()
    out["broken-coassoc"] = ("coalgebra", lambda: _coalgebra_mutant(divided_power_truncation(2).coalg, 1, 2, 2))
    specs = [
        ("group-c2", lambda: monoid_bialgebra(tables["c2"]).coalg, (0, 0, 1)),
        ("group-c3", lambda: monoid_bialgebra(tables["c3"]).coalg, (1, 2, 0)),
        ("group-s3", lambda: monoid_bialgebra(tables["s3"]).coalg, (3, 3, 4)),
        ("fun-c2", lambda: function_bialgebra(tables["c2"]).coalg, (0, 1, 0)),
        ("fun-s3", lambda: function_bialgebra(tables["s3"]).coalg, (0, 5, 2)),
        ("fun-d4", lambda: function_bialgebra(tables["d4"]).coalg, (7, 0, 3)),
        ("divpow3", lambda: divided_power_truncation(3).coalg, (0, 3, 2)),
        ("divpow4-f2", lambda: divided_power_truncation(4, F2).coalg, (2, 0, 4)),
        ("divpow2-f3", lambda: divided_power_truncation(2, F3).coalg, (0, 0, 0)),
        ("comatrix2", lambda: comatrix_coalgebra(2), (0, 3, 1)),
        ("comatrix3", lambda: comatrix_coalgebra(3), (4, 0, 8)),
    ]
    for k, (base, make, (a, b, j)) in enumerate(specs, start=1):
        out[f"mutant-{k:02d}-{base}"] = ("coalgebra",
                                         lambda make=make, a=a, b=b, j=j: _coalgebra_mutant(make(), a, b, j))
    alg_specs = [
        ("group-c2-alg", lambda: monoid_bialgebra(tables["c2"]).alg, (1, 0, 0)),
        ("group-s3-alg", lambda: monoid_bialgebra(tables["s3"]).alg, (2, 0, 4)),
        ("fun-c3-alg", lambda: function_bialgebra(tables["c3"]).alg, (1, 0, 2)),
        ("poly2", lambda: truncated_polynomial_algebra(2), (2, 0, 1)),
        ("poly3-f2", lambda: truncated_polynomial_algebra(3, F2), (0, 0, 3)),
        ("matrix2", lambda: matrix_algebra(2), (1, 0, 3)),
        ("matrix3", lambda: matrix_algebra(3), (0, 4, 4)),
        ("poly1-f3", lambda: truncated_polynomial_algebra(1, F3), (1, 1, 0)),
    ]
    for k, (base, make, (i, a, b)) in enumerate(alg_specs, start=len(specs) + 1):
        out[f"mutant-{k:02d}-{base}"] = ("algebra",
                                         lambda make=make, i=i, a=a, b=b: _algebra_mutant(make(), i, a, b))
    return out


def _entries() -> list[CorpusEntry]:
    E = CorpusEntry
    out: list[CorpusEntry] = []
    tables = group_tables()

    def add(name, kind, factory, *tags):
        out.append(E(name, kind, factory, frozenset(tags)))

    for key, t in tables.items():
        for prefix, make in (("group", monoid_bialgebra), ("fun", function_bialgebra)):
            base = f"{prefix}-{key}"
            add(f"{base}-bialg", "bialgebra", lambda make=make, t=t: make(t), "bialgebra", "valid-bialgebra")
            add(base, "coalgebra", lambda base=base: build(f"{base}-bialg").coalg, "coalgebra")
            add(f"{base}-alg", "algebra", lambda base=base: build(f"{base}-bialg").alg, "algebra")
            add(f"{base}-reg", "comodule", lambda base=base: regular_comodule(build(base)), "comodule")
            add(f"{base}-triv", "comodule", lambda base=base: trivial_comodule(build(f"{base}-bialg")),
                "comodule")
        if t.is_group:
            add(f"fun-{key}-regrep", "comodule",
                lambda t=t, key=key: permutation_comodule(t, _regular_action(t), Q, build(f"fun-{key}-bialg")),
                "comodule")
        for g in range(t.size):
            add(f"group-{key}-g{g}", "comodule",
                lambda key=key, g=g: grouplike_comodule(build(f"group-{key}-bialg"), g), "comodule")

    add("fun-c2-sign", "comodule",
        lambda: permutation_comodule(tables["c2"], _c2_sign(tables["c2"], Q), Q, build("fun-c2-bialg")), "comodule")
    s3 = tables["s3"]
    add("fun-s3-perm", "comodule",
        lambda: permutation_comodule(s3, [tuple(int(ch) - 1 for ch in lab) for lab in s3.labels], Q,
                                     build("fun-s3-bialg")), "comodule")
    add("fun-s3-std", "comodule",
        lambda: permutation_comodule(s3, standard_representation_s3(s3), Q, build("fun-s3-bialg")), "comodule")
    add("fun-s3-sign", "comodule",
        lambda: permutation_comodule(s3, sign_representation(s3), Q, build("fun-s3-bialg")), "comodule")

    for N in range(9):
        for suffix, F in divpow_fields().items():
            base = f"divpow{N}{suffix}"
            add(f"{base}-bialg", "bialgebra", lambda N=N, F=F: divided_power_truncation(N, F), "bialgebra")
            add(base, "coalgebra", lambda base=base: build(f"{base}-bialg").coalg, "coalgebra")
            add(f"{base}-alg", "algebra", lambda base=base: build(f"{base}-bialg").alg, "algebra")
            add(f"poly{N}{suffix}", "algebra", lambda N=N, F=F: truncated_polynomial_algebra(N, F), "algebra")
            if N <= 3:
                add(f"{base}-reg", "comodule", lambda base=base: regular_comodule(build(base)), "comodule")
                add(f"{base}-nil0", "comodule",
                    lambda N=N, F=F: nilpotent_comodule(LinearMap.zeros(1, 1, F), N, F), "comodule")
            if 1 <= N <= 3:
                add(f"{base}-nil-j{N + 1}", "comodule",
                    lambda N=N, F=F: nilpotent_comodule(_jordan(N + 1, F), N, F), "comodule")

    for n in (1, 2, 3):
        add(f"comatrix{n}", "coalgebra", lambda n=n: comatrix_coalgebra(n), "coalgebra")
        add(f"matrix{n}", "algebra", lambda n=n: matrix_algebra(n), "algebra")
        add(f"comatrix{n}-reg", "comodule", lambda n=n: regular_comodule(build(f"comatrix{n}")), "comodule")
    add("comatrix2-row", "comodule", lambda: _comatrix_row(build("comatrix2")), "comodule")

    add("fun-s3-cofree2", "comodule", lambda: direct_sum(regular_comodule(build("fun-s3")),
                                                          regular_comodule(build("fun-s3"))), "comodule")
    add("divpow2-cofree2", "comodule", lambda: direct_sum(regular_comodule(build("divpow2")),
                                                           regular_comodule(build("divpow2"))), "comodule")
    add("divpow2-zero", "comodule", lambda: zero_comodule(build("divpow2")), "comodule")
    add("fun-s3-zero", "comodule", lambda: zero_comodule(build("fun-s3")), "comodule")

    # idempotents over the cli fixtures; the rest are generated by the acceptance runner
    for base in ("divpow2", "fun-s3", "comatrix2", "group-c2"):
        for n, suffix in ((1, "id"), (2, "id2"), (3, "id3")):
            add(f"{base}-{suffix}", "idempotent",
                lambda base=base, n=n: ColinearIdempotent.identity(build(base), n), "idempotent")
        add(f"{base}-zero-idem", "idempotent", lambda base=base: ColinearIdempotent.zero(build(base), 1),
            "idempotent")
    for name in ("fun-s3-std", "fun-s3-perm", "fun-c2-sign", "comatrix2-row"):
        add(f"{name}-retract", "idempotent", lambda name=name: injective_retract(build(name)), "idempotent")

    def half_sum():
        # e = (1 + g)/2 in the group algebra of C2, placed as diag(e, 0)
        F = Q
        e, z = (F(1) / 2, F(1) / 2), (F.zero, F.zero)
        return MatrixIdempotent(((e, z), (z, z)), F)

    add("group-c2-alg-half", "idempotent", half_sum, "idempotent", "matrix-idempotent")
    add("matrix2-e11", "idempotent",
        lambda: MatrixIdempotent((((Q.one, Q.zero, Q.zero, Q.zero),),), Q), "idempotent", "matrix-idempotent")
    add("poly2-id2", "idempotent", lambda: _identity_matrix(build("poly2"), 2), "idempotent", "matrix-idempotent")

    for name, (kind, make) in mutation_fixtures().items():
        add(name, kind, make, "mutant")
    return sorted(out, key=lambda e: e.name)


def _identity_matrix(a: Algebra, n: int) -> MatrixIdempotent:
    one = a.one()
    zero = tuple(a.field.zero for _ in one)
    return MatrixIdempotent(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), a.field)


def _comatrix_row(c: Coalgebra) -> Comodule:
    """The span of ``e_11, e_12``: a right subcomodule of the comatrix coalgebra of size 2."""
    # Delta e_1j = e_11 (x) e_1j + e_12 (x) e_2j; in M (x) C with M = span(e_11, e_12)
    n = 2
    items = []
    for j in range(n):
        for k in range(n):
            items.append(((k * 4 + (k * n + j), j), 1))
    return Comodule(LinearMap.from_sparse(n * 4, n, items, c.field), c, "right")


@lru_cache(maxsize=None)
def corpus() -> dict[str, CorpusEntry]:
    return {e.name: e for e in _entries()}


def entry(name: str) -> CorpusEntry:
    try:
        return corpus()[name]
    except KeyError:
        raise KeyError(f"no corpus entry named {name!r}") from None


@lru_cache(maxsize=None)
def _build(name: str):
    return entry(name).factory()


def build(name: str):
    """Construct (and memoize) a corpus object by name."""
    return _build(name)
