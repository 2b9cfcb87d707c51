"""The acceptance criteria, evaluated over the bundled corpus.

Each criterion is a function returning a :class:`CriterionResult`; ``coalg
report`` prints them as a table and the test suite asserts on them.  Output
is a pure function of the corpus, so two runs print identical text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .comodmod import (
    ColinearIdempotent,
    Comodule,
    action_matrix,
    check_comodule,
    comodule_to_module,
    cotensor,
    injective_retract,
    is_colinear,
    module_to_comodule,
    tensor_comodules,
)
from .constructions import (
    divided_power_truncation,
    nilpotent_comodule,
    regular_left_comodule,
    trivial_comodule,
    truncated_polynomial_algebra,
)
from .corpus import build, corpus, divpow_fields, group_tables
from .exactla import Q, LinearMap, kronecker, prime_field, solve, swap_map
from .structures import (
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    dual_algebra,
    dual_bialgebra,
    dual_coalgebra,
    is_cocommutative,
)
from .traces import (
    cohh0,
    colinear_character,
    comparison_pairing,
    cotrace,
    hattori_stallings,
    hh0,
    verify_character_multiplicativity,
    verify_character_triangle,
    verify_trace_square,
)

__all__ = [
    "CriterionResult",
    "CRITERIA",
    "run_all",
    "format_table",
    "conjugacy_classes",
    "nilpotent_matrices_f2",
    "rational_nilpotent_samples",
]


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: str):
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _names(tag: str, kind: str | None = None) -> list[str]:
    return [n for n, e in corpus().items() if tag in e.tags and (kind is None or e.kind == kind)]


def _comodules_over(c) -> list[str]:
    out = []
    for n in _names("comodule"):
        m = build(n)
        if m.side == "right" and m.over.same_constants(c):
            out.append(n)
    return out


# brute-force oracles

def conjugacy_classes(t) -> list[list[int]]:
    """Orbits of ``g -> h g h^-1``, listed by smallest member."""
    seen, classes = set(), []
    for g in range(t.size):
        if g in seen:
            continue
        orbit = sorted({t.mul[t.mul[h][g]][t.inverse(h)] for h in range(t.size)})
        seen.update(orbit)
        classes.append(orbit)
    return classes


def _nilpotency_index(phi: LinearMap) -> int:
    k, power = 0, LinearMap.identity(phi.rows, phi.field)
    while not power.is_zero():
        power = power @ phi
        k += 1
        if k > phi.rows:
            raise ValueError("not nilpotent")
    return k


def _f2_product(a, b, n):
    # rows as bitmasks: row i of a*b is the xor of the rows of b picked by row i of a
    out = []
    for row in a:
        acc = 0
        for k in range(n):
            if row >> k & 1:
                acc ^= b[k]
        out.append(acc)
    return out


def nilpotent_matrices_f2(n: int):
    """Every nilpotent ``n x n`` matrix over F_2, by exhaustive enumeration on bitmasks."""
    F = prime_field(2)
    mask = (1 << n) - 1
    for bits in range(1 << (n * n)):
        rows = [(bits >> (i * n)) & mask for i in range(n)]
        power = rows
        for _ in range(n - 1):
            power = _f2_product(power, rows, n)
        if not any(power):
            yield LinearMap.from_rows([[r >> j & 1 for j in range(n)] for r in rows], F)


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def rational_nilpotent_samples(n: int, per_type: int = 4, seed: int = 0):
    """Conjugates ``P J P^-1`` of every nilpotent Jordan type of size ``n`` over Q."""
    rng = random.Random(seed * 1000 + n)
    I = LinearMap.identity(n, Q)
    for shape in _partitions(n):
        J = [[0] * n for _ in range(n)]
        pos = 0
        for size in shape:
            for i in range(size - 1):
                J[pos + i][pos + i + 1] = 1
            pos += size
        J = LinearMap.from_rows(J, Q)
        yield J
        produced = 0
        while produced < per_type:
            P = LinearMap.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], Q)
            if P.rank() < n:
                continue
            Pinv = solve(P, I)
            yield P @ J @ Pinv
            produced += 1


# criteria

def criterion_axioms() -> CriterionResult:
    r = CriterionResult(1, "axiom soundness")
    for n in _names("coalgebra"):
        rep = check_coalgebra(build(n))
        r.expect(rep.ok, f"{n}: " + ", ".join(c.name for c in rep.failures()))
    for n in _names("algebra"):
        rep = check_algebra(build(n))
        r.expect(rep.ok, f"{n}: " + ", ".join(c.name for c in rep.failures()))
    for n in _names("bialgebra"):
        rep = check_bialgebra(build(n))
        bad = ", ".join(f"{c.name} (witness {c.witness})" for c in rep.failures())
        r.expect(rep.ok, f"{n}: {bad}")
    for n in _names("comodule"):
        rep = check_comodule(build(n))
        r.expect(rep.ok, f"{n}: " + ", ".join(c.name for c in rep.failures()))
    mutants = _names("mutant")
    r.expect(len(mutants) == 20, f"expected 20 mutation fixtures, found {len(mutants)}")
    for n in mutants:
        e = corpus()[n]
        rep = (check_coalgebra if e.kind == "coalgebra" else check_algebra)(build(n))
        witnessed = [c for c in rep.failures() if c.witness is not None]
        r.expect(bool(witnessed), f"mutant {n} was not rejected with a witness")
    return r


def criterion_duality() -> CriterionResult:
    r = CriterionResult(2, "duality involution")
    for n in _names("coalgebra"):
        c = build(n)
        r.expect(dual_coalgebra(dual_algebra(c)) == c, f"{n}: C** != C")
    for n in _names("algebra"):
        a = build(n)
        r.expect(dual_algebra(dual_coalgebra(a)) == a, f"{n}: A** != A")
    for n in _names("valid-bialgebra"):
        h = build(n)
        r.expect(dual_bialgebra(dual_bialgebra(h)) == h, f"{n}: H** != H")
    return r


def criterion_homology() -> CriterionResult:
    r = CriterionResult(3, "coHH0 / HH0 dimension law")
    for n in _names("coalgebra"):
        c = build(n)
        k, q = cohh0(c).dim, hh0(dual_algebra(c)).dim
        r.expect(k == q, f"{n}: dim coHH0 = {k}, dim HH0(C*) = {q}")
        r.expect(comparison_pairing(c).rank() == k, f"{n}: comparison pairing is not invertible")
    for key, t in group_tables().items():
        if not t.is_group:
            continue
        classes = len(conjugacy_classes(t))
        k = cohh0(build(f"fun-{key}")).dim
        q = hh0(build(f"group-{key}-alg")).dim
        r.expect(k == classes == q, f"{key}: {classes} classes, coHH0 {k}, HH0(kG) {q}")
        r.notes.append(f"{key}: {classes} conjugacy classes = dim coHH0(Map) = dim HH0(kG)")
    return r


def _retracts_over(c, names) -> list[tuple[str, ColinearIdempotent]]:
    out = []
    for m in names:
        e = injective_retract(build(m))
        if e is not None:
            out.append((f"retract({m})", e))
    return out


def criterion_trace_square() -> CriterionResult:
    r = CriterionResult(4, "trace square")
    retracts = 0
    for n in _names("coalgebra"):
        c = build(n)
        idems = [(f"id^{k}", ColinearIdempotent.identity(c, k)) for k in (1, 2, 3)]
        idems.append(("zero", ColinearIdempotent.zero(c, 1)))
        found = _retracts_over(c, _comodules_over(c))
        retracts += len(found)
        for label, e in idems + found:
            rep = verify_trace_square(c, e)
            r.expect(rep.ok, f"{n} {label}: lhs {rep.lhs} rhs {rep.rhs}")
    r.notes.append(f"{retracts} idempotents came from injective_retract")
    return r


def _class_values(chi, t, classes):
    return tuple(chi[cls[0]] for cls in classes)


def criterion_character_triangle() -> CriterionResult:
    r = CriterionResult(5, "character triangle")
    for n in _names("comodule"):
        v = build(n)
        if v.side != "right":
            continue
        rep = verify_character_triangle(v.over, v)
        r.expect(rep.ok, f"{n}: {rep.lhs} vs {rep.rhs}")
        chi = colinear_character(v)
        inc = cohh0(v.over).inclusion
        r.expect(solve(inc, LinearMap.from_columns([chi], v.field, rows=v.over.dim)) is not None,
                 f"{n}: colinear character is not cocommutative")
    s3 = group_tables()["s3"]
    classes = sorted(conjugacy_classes(s3), key=len)
    # classes by size: {e}, 3-cycles (2), transpositions (3); reorder to e, transpositions, 3-cycles
    classes = [classes[0], classes[2], classes[1]]
    perms = [tuple(int(ch) - 1 for ch in lab) for lab in s3.labels]
    fixed = [sum(1 for i in range(3) if p[i] == i) for p in perms]
    for name, oracle, expected in (("fun-s3-perm", fixed, (3, 1, 0)),
                                   ("fun-s3-std", [f - 1 for f in fixed], (2, 0, -1))):
        chi = colinear_character(build(name))
        r.expect(tuple(chi) == tuple(oracle), f"{name}: {chi} differs from permutation traces {oracle}")
        got = _class_values(chi, s3, classes)
        r.expect(got == expected, f"{name}: class values {got}, expected {expected}")
        r.notes.append(f"{name}: class values " + ", ".join(str(x) for x in got))
    return r


def _roundtrip(phi: LinearMap, N: int) -> str | None:
    m = nilpotent_comodule(phi, N)
    mod = comodule_to_module(m)
    back = module_to_comodule(mod, m.over)
    if back.coaction != m.coaction:
        return "coaction changed"
    if N >= 1 and action_matrix(mod, 1) != phi:
        return "y does not act as phi"
    if N == 0 and not phi.is_zero():
        return "nonzero phi in degree-0 truncation"
    return None


def criterion_nilpotent_roundtrip() -> CriterionResult:
    r = CriterionResult(6, "nilpotent comodule round trip")
    count = {"F_2": 0, "Q": 0}
    for n in range(1, 5):
        for phi in nilpotent_matrices_f2(n):
            k = _nilpotency_index(phi)
            for N in sorted({k - 1, 3}):
                bad = _roundtrip(phi, N)
                count["F_2"] += 1
                r.expect(bad is None, f"F_2 phi={phi.to_rows()} N={N}: {bad}")
        for phi in rational_nilpotent_samples(n):
            k = _nilpotency_index(phi)
            for N in sorted({k - 1, 3}):
                bad = _roundtrip(phi, N)
                count["Q"] += 1
                r.expect(bad is None, f"Q phi={phi.to_rows()} N={N}: {bad}")
    r.notes.append(f"F_2: all nilpotent matrices of size <= 4, {count['F_2']} cases")
    r.notes.append(f"Q: every Jordan type of size <= 4 and seeded conjugates, {count['Q']} cases")
    return r


def criterion_power_series() -> CriterionResult:
    r = CriterionResult(7, "truncated power-series duality")
    for N in range(9):
        for suffix, F in divpow_fields().items():
            c = divided_power_truncation(N, F).coalg
            r.expect(dual_algebra(c).same_constants(truncated_polynomial_algebra(N, F)),
                     f"N={N} over {F}: dual algebra is not k[y]/(y^{N + 1})")
            pairing = comparison_pairing(c)
            Cs = dual_algebra(c)
            for k in (1, 2, 3):
                one = Cs.one()
                zero = tuple(F.zero for _ in one)
                I = tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))
                lhs = pairing.apply(hattori_stallings(Cs, I))
                rhs = cotrace(c, ColinearIdempotent.identity(c, k))
                r.expect(lhs == rhs, f"N={N} over {F}, n={k}: {lhs} vs {rhs}")
    return r


def criterion_monoidal() -> CriterionResult:
    r = CriterionResult(8, "monoidal laws")
    for hname in _names("valid-bialgebra"):
        h = build(hname)
        unit = trivial_comodule(h)
        names = _comodules_over(h.coalg)
        for n in names:
            m = build(n)
            r.expect(tensor_comodules(unit, m, h).coaction == m.coaction, f"{hname}: k (x) {n} != {n}")
            r.expect(tensor_comodules(m, unit, h).coaction == m.coaction, f"{hname}: {n} (x) k != {n}")
        small = [n for n in names if build(n).dim <= 3][:4]
        for a, b, c in product(small, repeat=3):
            A, B, C = build(a), build(b), build(c)
            left = tensor_comodules(tensor_comodules(A, B, h), C, h)
            right = tensor_comodules(A, tensor_comodules(B, C, h), h)
            r.expect(left.coaction == right.coaction, f"{hname}: ({a} {b}) {c} != {a} ({b} {c})")
    for key in ("c2", "s3"):
        h = build(f"fun-{key}-bialg")
        pool = [n for n in _comodules_over(h.coalg) if build(n).dim in (1, 2)]
        for a, b in product(pool, repeat=2):
            rep = verify_character_multiplicativity(h, build(a), build(b))
            r.expect(rep.ok, f"fun-{key}: chi({a} (x) {b}) = {rep.lhs}, product {rep.rhs}")
        r.notes.append(f"fun-{key}: multiplicativity over {len(pool) ** 2} ordered pairs")
    return r


def criterion_cotensor_unit() -> CriterionResult:
    r = CriterionResult(9, "cotensor unit")
    for n in _names("comodule"):
        m = build(n)
        if m.side != "right":
            continue
        C = m.over
        P = cotensor(m, regular_left_comodule(C))
        r.expect(P.dim == m.dim, f"{n}: M cotensor C has dim {P.dim}, expected {m.dim}")
        collapse = kronecker(LinearMap.identity(m.dim, m.field), C.counit) @ P.inclusion
        r.expect(collapse.rank() == m.dim, f"{n}: (id (x) eps) is not an isomorphism")
        if P.comodule is not None:
            r.expect(is_colinear(collapse, P.comodule, m), f"{n}: collapse map is not colinear")
        if is_cocommutative(C):
            # C cotensor M, with M made a left comodule by flipping its coaction
            left = Comodule(swap_map(m.dim, C.dim, m.field) @ m.coaction, C, "left")
            P = cotensor(Comodule(C.comul, C, "right"), left)
            r.expect(P.dim == m.dim, f"{n}: C cotensor M has dim {P.dim}, expected {m.dim}")
            collapse = kronecker(C.counit, LinearMap.identity(m.dim, m.field)) @ P.inclusion
            r.expect(collapse.rank() == m.dim, f"{n}: (eps (x) id) is not an isomorphism")
    return r


CRITERIA = (
    criterion_axioms,
    criterion_duality,
    criterion_homology,
    criterion_trace_square,
    criterion_character_triangle,
    criterion_nilpotent_roundtrip,
    criterion_power_series,
    criterion_monoidal,
    criterion_cotensor_unit,
)


def run_all() -> list[CriterionResult]:
    return [f() for f in CRITERIA]


def format_table(results, max_failures: int = 12) -> str:
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{res.number:>2}  {status}  {res.title:<34} {res.checks - len(res.failures)}/{res.checks} checks")
        for note in res.notes:
            lines.append(f"      {note}")
        for msg in res.failures[:max_failures]:
            lines.append(f"      ! {msg}")
        if len(res.failures) > max_failures:
            lines.append(f"      ! ... and {len(res.failures) - max_failures} more")
    passed = sum(res.passed for res in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
