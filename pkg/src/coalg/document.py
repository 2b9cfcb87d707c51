"""The JSON interchange format: one object per file, emitted canonically.

A document has four top-level keys, always emitted in this order::

    {
      "schema_version": "1",
      "field": "q",
      "kind": "coalgebra",
      "payload": {...}
    }

Scalars are strings in canonical form (``"-3/7"`` over Q, ``"4"`` over F_5),
matrices are arrays of row arrays, one row per line.  ``emit(parse(text))``
reproduces ``text`` byte for byte whenever ``text`` is itself canonical.
"""

from __future__ import annotations

import json
import json.decoder
import json.scanner
from dataclasses import dataclass
from pathlib import Path

from .comodmod import ColinearIdempotent, Comodule, Module
from .exactla import FieldSpec, LinearMap
from .structures import Algebra, Bialgebra, Coalgebra

__all__ = [
    "SCHEMA_VERSION",
    "KINDS",
    "ParseError",
    "SchemaError",
    "Document",
    "IdempotentData",
    "MatrixIdempotent",
    "emit",
    "parse",
    "load",
    "dump",
    "kind_of",
    "change_field",
]

SCHEMA_VERSION = "1"
KINDS = ("algebra", "coalgebra", "bialgebra", "comodule", "module", "idempotent")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class IdempotentData:
    """A colinear idempotent read from disk, not yet attached to its coalgebra."""

    n: int
    endo: LinearMap

    def bind(self, c: Coalgebra) -> ColinearIdempotent:
        return ColinearIdempotent(self.n, self.endo, c)


@dataclass(frozen=True)
class MatrixIdempotent:
    """An ``n x n`` matrix whose entries are coordinate vectors in some algebra."""

    entries: tuple
    field: FieldSpec

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Document:
    kind: str
    field: FieldSpec
    obj: object

    @property
    def schema_version(self) -> str:
        return SCHEMA_VERSION


def kind_of(obj) -> str:
    for cls, kind in ((Bialgebra, "bialgebra"), (Algebra, "algebra"), (Coalgebra, "coalgebra"),
                      (Comodule, "comodule"), (Module, "module"), (ColinearIdempotent, "idempotent"),
                      (IdempotentData, "idempotent"), (MatrixIdempotent, "idempotent")):
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _field_of(obj) -> FieldSpec:
    if isinstance(obj, (ColinearIdempotent,)):
        return obj.over.field
    if isinstance(obj, IdempotentData):
        return obj.endo.field
    return obj.field


# emission

def _q(text: str) -> str:
    return json.dumps(text, ensure_ascii=True)


def _row(values, fmt) -> str:
    return "[" + ", ".join(_q(fmt(x)) for x in values) + "]"


def _matrix(m: LinearMap, indent: str) -> str:
    if m.rows == 0:
        return "[]"
    fmt = m.field.format
    inner = indent + "  "
    return "[\n" + ",\n".join(inner + _row(r, fmt) for r in m.to_rows()) + "\n" + indent + "]"


def _obj(pairs, indent: str) -> str:
    inner = indent + "  "
    body = ",\n".join(f"{inner}{_q(k)}: {v}" for k, v in pairs)
    return "{\n" + body + "\n" + indent + "}"


def _labels(labels) -> str:
    return "[" + ", ".join(_q(x) for x in labels) + "]"


def _payload_pairs(obj, indent: str) -> list:
    inner = indent + "  "
    if isinstance(obj, Bialgebra):
        S = "null" if obj.antipode is None else _matrix(obj.antipode, inner)
        return [("labels", _labels(obj.labels)), ("mul", _matrix(obj.alg.mul, inner)),
                ("unit", _matrix(obj.alg.unit, inner)), ("comul", _matrix(obj.coalg.comul, inner)),
                ("counit", _matrix(obj.coalg.counit, inner)), ("antipode", S)]
    if isinstance(obj, Algebra):
        return [("labels", _labels(obj.labels)), ("mul", _matrix(obj.mul, inner)),
                ("unit", _matrix(obj.unit, inner))]
    if isinstance(obj, Coalgebra):
        return [("labels", _labels(obj.labels)), ("comul", _matrix(obj.comul, inner)),
                ("counit", _matrix(obj.counit, inner))]
    if isinstance(obj, Comodule):
        return [("side", _q(obj.side)), ("dim", str(obj.dim)), ("coaction", _matrix(obj.coaction, inner)),
                ("coalgebra", _obj(_payload_pairs(obj.over, inner), inner))]
    if isinstance(obj, Module):
        return [("side", _q(obj.side)), ("dim", str(obj.dim)), ("action", _matrix(obj.action, inner)),
                ("algebra", _obj(_payload_pairs(obj.over, inner), inner))]
    if isinstance(obj, (ColinearIdempotent, IdempotentData)):
        return [("variant", _q("colinear")), ("n", str(obj.n)), ("endo", _matrix(obj.endo, inner))]
    if isinstance(obj, MatrixIdempotent):
        fmt = obj.field.format
        if obj.n == 0:
            rows = "[]"
        else:
            rows = "[\n" + ",\n".join(inner + "  [" + ", ".join(_row(e, fmt) for e in r) + "]"
                                      for r in obj.entries) + "\n" + inner + "]"
        return [("variant", _q("matrix")), ("n", str(obj.n)), ("entries", rows)]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(obj) -> str:
    """Canonical text of a structure, ending in a newline."""
    if isinstance(obj, Document):
        obj = obj.obj
    kind = kind_of(obj)
    pairs = [("schema_version", _q(SCHEMA_VERSION)), ("field", _q(_field_of(obj).tag())), ("kind", _q(kind)),
             ("payload", _obj(_payload_pairs(obj, "  "), "  "))]
    return _obj(pairs, "") + "\n"


# parsing

class _Str(str):
    pos = 0


class _List(list):
    pos = 0


class _Dict(dict):
    pos = 0


def _reject_number(text):
    raise ValueError(f"non-integer number {text!r}")


def _decoder(text: str) -> json.JSONDecoder:
    dec = json.JSONDecoder(object_pairs_hook=lambda pairs: pairs, parse_float=_reject_number,
                           parse_constant=_reject_number)

    def parse_string(s, idx, strict):
        value, end = json.decoder.scanstring(s, idx, strict)
        out = _Str(value)
        out.pos = idx - 1
        return out, end

    def parse_array(state, scan_once):
        value, end = json.decoder.JSONArray(state, scan_once)
        out = _List(value)
        out.pos = state[1] - 1
        return out, end

    def parse_object(state, strict, scan_once, object_hook, object_pairs_hook, memo=None):
        pairs, end = json.decoder.JSONObject(state, strict, scan_once, object_hook, object_pairs_hook, memo)
        out = _Dict()
        out.pos = state[1] - 1
        for k, v in pairs:
            if k in out:
                raise ParseError(f"duplicate key {k!r}", *_where(text, out.pos))
            out[k] = v
        return out, end

    dec.parse_string = parse_string
    dec.parse_array = parse_array
    dec.parse_object = parse_object
    dec.scan_once = json.scanner.py_make_scanner(dec)
    return dec


def _where(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Reader:
    def __init__(self, text: str, field: FieldSpec | None = None):
        self.text, self.field = text, field

    def fail(self, node, message):
        pos = getattr(node, "pos", None)
        if pos is None:
            raise ParseError(message)
        raise ParseError(message, *_where(self.text, pos))

    def obj(self, node, keys, what):
        if not isinstance(node, dict):
            self.fail(node, f"{what} must be an object")
        missing = [k for k in keys if k not in node]
        extra = sorted(set(node) - set(keys))
        if missing:
            self.fail(node, f"{what} is missing {', '.join(missing)}")
        if extra:
            self.fail(node, f"{what} has unknown key {extra[0]!r}")
        return node

    def string(self, node, what):
        if not isinstance(node, str):
            self.fail(node, f"{what} must be a string")
        return str(node)

    def count(self, node, what):
        if type(node) is not int or node < 0:
            self.fail(node, f"{what} must be a nonnegative integer")
        return node

    def scalar(self, node, what):
        if not isinstance(node, str):
            self.fail(node, f"{what}: scalars are written as strings")
        try:
            return self.field.parse(str(node))
        except ValueError as exc:
            self.fail(node, f"{what}: {exc}")

    def vector(self, node, length, what):
        if not isinstance(node, list):
            self.fail(node, f"{what} must be an array")
        if length is not None and len(node) != length:
            self.fail(node, f"{what} has {len(node)} entries, expected {length}")
        return [self.scalar(x, what) for x in node]

    def matrix(self, node, rows, cols, what) -> LinearMap:
        if not isinstance(node, list):
            self.fail(node, f"{what} must be an array of rows")
        if len(node) != rows:
            self.fail(node, f"{what} has {len(node)} rows, expected {rows}")
        grid = [self.vector(r, cols, f"{what} row {i}") for i, r in enumerate(node)]
        return LinearMap._from_dense(rows, cols, grid, self.field)

    def labels(self, node):
        if not isinstance(node, list) or not node:
            self.fail(node, "labels must be a nonempty array of strings")
        return tuple(self.string(x, "label") for x in node)

    def structure(self, node, kind):
        fields = {
            "algebra": ("labels", "mul", "unit"),
            "coalgebra": ("labels", "comul", "counit"),
            "bialgebra": ("labels", "mul", "unit", "comul", "counit", "antipode"),
        }[kind]
        p = self.obj(node, fields, kind)
        labels = self.labels(p["labels"])
        d = len(labels)
        try:
            alg = coalg = None
            if "mul" in p:
                alg = Algebra(self.matrix(p["mul"], d, d * d, "mul"), self.matrix(p["unit"], d, 1, "unit"), labels)
            if "comul" in p:
                coalg = Coalgebra(self.matrix(p["comul"], d * d, d, "comul"),
                                  self.matrix(p["counit"], 1, d, "counit"), labels)
            if kind == "algebra":
                return alg
            if kind == "coalgebra":
                return coalg
            S = None if p["antipode"] is None else self.matrix(p["antipode"], d, d, "antipode")
            return Bialgebra(alg, coalg, S)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            self.fail(node, str(exc))

    def payload(self, node, kind):
        if kind in ("algebra", "coalgebra", "bialgebra"):
            return self.structure(node, kind)
        if kind == "comodule":
            p = self.obj(node, ("side", "dim", "coaction", "coalgebra"), "comodule")
            side, dim = self.side(p["side"]), self.count(p["dim"], "dim")
            c = self.structure(p["coalgebra"], "coalgebra")
            return Comodule(self.matrix(p["coaction"], dim * c.dim, dim, "coaction"), c, side)
        if kind == "module":
            p = self.obj(node, ("side", "dim", "action", "algebra"), "module")
            side, dim = self.side(p["side"]), self.count(p["dim"], "dim")
            a = self.structure(p["algebra"], "algebra")
            return Module(self.matrix(p["action"], dim, dim * a.dim, "action"), a, side)
        if not isinstance(node, dict) or "variant" not in node:
            self.fail(node, "idempotent payload needs a variant")
        variant = self.string(node["variant"], "variant")
        if variant == "colinear":
            p = self.obj(node, ("variant", "n", "endo"), "idempotent")
            n = self.count(p["n"], "n")
            endo = p["endo"]
            size = len(endo) if isinstance(endo, list) else 0
            if n == 0 and size:
                self.fail(endo, "endo must be empty when n is 0")
            if n and size % n:
                self.fail(endo, f"endo has {size} rows, not a multiple of n = {n}")
            return IdempotentData(n, self.matrix(endo, size, size, "endo"))
        if variant == "matrix":
            p = self.obj(node, ("variant", "n", "entries"), "idempotent")
            n = self.count(p["n"], "n")
            rows = p["entries"]
            if not isinstance(rows, list) or len(rows) != n:
                self.fail(rows, f"entries must have {n} rows")
            out, width = [], None
            for r in rows:
                if not isinstance(r, list) or len(r) != n:
                    self.fail(r, f"each row of entries must have {n} elements")
                row = []
                for e in r:
                    v = self.vector(e, width, "algebra element")
                    width = len(v)
                    row.append(tuple(v))
                out.append(tuple(row))
            return MatrixIdempotent(tuple(out), self.field)
        self.fail(node["variant"], f"unknown idempotent variant {variant!r}")

    def side(self, node):
        side = self.string(node, "side")
        if side not in ("left", "right"):
            self.fail(node, f"side must be left or right, got {side!r}")
        return side


def parse(text: str) -> Document:
    try:
        root = _decoder(text).decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    r = _Reader(text)
    r.obj(root, ("schema_version", "field", "kind", "payload"), "document")
    version = r.string(root["schema_version"], "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}; this reader handles {SCHEMA_VERSION!r}")
    kind = r.string(root["kind"], "kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    try:
        r.field = FieldSpec.from_tag(r.string(root["field"], "field"))
    except ValueError as exc:
        r.fail(root["field"], str(exc))
    return Document(kind, r.field, r.payload(root["payload"], kind))


def load(path) -> Document:
    return parse(Path(path).read_text(encoding="utf-8"))


def dump(obj, path) -> None:
    Path(path).write_text(emit(obj), encoding="utf-8")


# field change

def _lm(m: LinearMap, F: FieldSpec) -> LinearMap:
    return LinearMap.from_sparse(m.rows, m.cols, m.nonzero(), F)


def change_field(obj, F: FieldSpec):
    """Reduce rational structure constants into ``F``; any object already over ``F`` is returned as is."""
    src = _field_of(obj)
    if src == F:
        return obj
    if not src.is_rational:
        raise ValueError(f"cannot move data from {src} to {F}")
    if isinstance(obj, Bialgebra):
        S = None if obj.antipode is None else _lm(obj.antipode, F)
        return Bialgebra(change_field(obj.alg, F), change_field(obj.coalg, F), S)
    if isinstance(obj, Algebra):
        return Algebra(_lm(obj.mul, F), _lm(obj.unit, F), obj.labels)
    if isinstance(obj, Coalgebra):
        return Coalgebra(_lm(obj.comul, F), _lm(obj.counit, F), obj.labels)
    if isinstance(obj, Comodule):
        return Comodule(_lm(obj.coaction, F), change_field(obj.over, F), obj.side)
    if isinstance(obj, Module):
        return Module(_lm(obj.action, F), change_field(obj.over, F), obj.side)
    if isinstance(obj, ColinearIdempotent):
        return ColinearIdempotent(obj.n, _lm(obj.endo, F), change_field(obj.over, F))
    if isinstance(obj, IdempotentData):
        return IdempotentData(obj.n, _lm(obj.endo, F))
    if isinstance(obj, MatrixIdempotent):
        return MatrixIdempotent(tuple(tuple(tuple(F(x) for x in e) for e in r) for r in obj.entries), F)
    raise TypeError(f"cannot change the field of {type(obj).__name__}")
