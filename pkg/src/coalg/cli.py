"""Command-line interface: ``coalg <subcommand> [args] [--field q|fp:<p>] [--out <path>]``.

Exit codes: 0 on success (or a commuting diagram), 1 when a validation or a
diagram fails, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .comodmod import (
    Comodule,
    InvalidInput,
    Module,
    check_comodule,
    check_module,
    dual_comodule,
)
from .document import (
    Document,
    IdempotentData,
    MatrixIdempotent,
    ParseError,
    SchemaError,
    change_field,
    emit,
    load,
)
from .exactla import FieldSpec
from .structures import (
    Algebra,
    Bialgebra,
    Coalgebra,
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    dual_algebra,
    dual_bialgebra,
    dual_coalgebra,
)
from .traces import (
    InvalidIdempotent,
    NotIdempotent,
    character_module,
    cohh0,
    colinear_character,
    cotrace,
    cotrace_representative,
    hattori_stallings,
    hh0,
    verify_character_multiplicativity,
    verify_character_triangle,
    verify_trace_square,
)

__all__ = ["main", "build_parser", "UsageError"]


class UsageError(Exception):
    """Wrong kind of input, unreadable file, or an unsupported request (exit 2)."""


class _Failed(Exception):
    """A validation or diagram failed (exit 1); the message has been printed already."""


def _vec(v, field: FieldSpec) -> str:
    return "(" + ", ".join(field.format(x) for x in v) + ")"


class _Session:
    def __init__(self, args):
        self.field = None
        if args.field is not None:
            try:
                self.field = FieldSpec.from_tag(args.field)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        self.lines: list[str] = []

    def say(self, text: str = ""):
        self.lines.append(text)

    def load(self, path, *kinds) -> Document:
        try:
            doc = load(path)
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror or exc}") from None
        except (ParseError, SchemaError) as exc:
            raise UsageError(f"{path}: {exc}") from None
        if kinds and doc.kind not in kinds:
            raise UsageError(f"{path}: expected {' or '.join(kinds)}, found {doc.kind}")
        if self.field is not None and doc.field != self.field:
            try:
                doc = Document(doc.kind, self.field, change_field(doc.obj, self.field))
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"{path}: {exc}") from None
        return doc

    def coalgebra(self, path) -> Coalgebra:
        obj = self.load(path, "coalgebra", "bialgebra").obj
        return obj.coalg if isinstance(obj, Bialgebra) else obj

    def algebra(self, path) -> Algebra:
        obj = self.load(path, "algebra", "bialgebra").obj
        return obj.alg if isinstance(obj, Bialgebra) else obj


# subcommands

def _report(s: _Session, report) -> None:
    s.say(report.format())
    if not report.ok:
        raise _Failed()


def cmd_check(s: _Session, args):
    doc = s.load(args.file)
    obj = doc.obj
    if isinstance(obj, Bialgebra):
        _report(s, check_bialgebra(obj))
    elif isinstance(obj, Algebra):
        _report(s, check_algebra(obj))
    elif isinstance(obj, Coalgebra):
        _report(s, check_coalgebra(obj))
    elif isinstance(obj, Comodule):
        base = check_coalgebra(obj.over)
        if not base.ok:
            _report(s, base)
        _report(s, check_comodule(obj))
    elif isinstance(obj, Module):
        base = check_algebra(obj.over)
        if not base.ok:
            _report(s, base)
        _report(s, check_module(obj))
    elif isinstance(obj, IdempotentData):
        if args.over is None:
            raise UsageError("checking a colinear idempotent needs --over COALGEBRA")
        c = s.coalgebra(args.over)
        try:
            e = obj.bind(c)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _report(s, e.validate())
    else:
        raise UsageError("matrix idempotents are checked by the trace subcommand")


def cmd_dualize(s: _Session, args):
    obj = s.load(args.file).obj
    try:
        if isinstance(obj, Bialgebra):
            out = dual_bialgebra(obj)
        elif isinstance(obj, Algebra):
            out = dual_coalgebra(obj)
        elif isinstance(obj, Coalgebra):
            out = dual_algebra(obj)
        elif isinstance(obj, Comodule):
            out = dual_comodule(obj)
        else:
            raise UsageError("dualize accepts algebras, coalgebras, bialgebras and right comodules")
    except InvalidInput as exc:
        s.say(f"cannot dualize: {exc}")
        raise _Failed() from None
    s.say(emit(out).rstrip("\n"))


def cmd_cohh0(s: _Session, args):
    c = s.coalgebra(args.file)
    try:
        sub = cohh0(c)
    except InvalidInput as exc:
        s.say(str(exc))
        raise _Failed() from None
    s.say(f"dim {sub.dim}")
    s.say("basis (ambient coordinates in " + ", ".join(c.labels) + "):")
    for col in sub.inclusion.columns():
        s.say("  " + _vec(col, c.field))


def cmd_hh0(s: _Session, args):
    a = s.algebra(args.file)
    try:
        q = hh0(a)
    except InvalidInput as exc:
        s.say(str(exc))
        raise _Failed() from None
    s.say(f"dim {q.dim}")
    s.say("representatives (ambient coordinates in " + ", ".join(a.labels) + "):")
    for col in q.section.columns():
        s.say("  " + _vec(col, a.field))


def cmd_cotrace(s: _Session, args):
    c = s.coalgebra(args.coalgebra)
    data = s.load(args.idempotent, "idempotent").obj
    if not isinstance(data, IdempotentData):
        raise UsageError("cotrace needs a colinear idempotent")
    try:
        e = data.bind(c)
        value = cotrace(c, e)
    except (InvalidIdempotent, InvalidInput) as exc:
        s.say(f"invalid idempotent: {exc}")
        raise _Failed() from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    s.say("cotrace on the coHH0 basis " + _vec(value, c.field))
    s.say("ambient functional in C* " + _vec(cotrace_representative(c, e), c.field))


def cmd_trace(s: _Session, args):
    a = s.algebra(args.algebra)
    data = s.load(args.idempotent, "idempotent").obj
    if not isinstance(data, MatrixIdempotent):
        raise UsageError("trace needs an idempotent matrix over the algebra")
    if any(len(x) != a.dim for row in data.entries for x in row):
        raise UsageError(f"idempotent entries must be vectors of length {a.dim}")
    try:
        value = hattori_stallings(a, data.entries)
    except NotIdempotent as exc:
        s.say(f"not idempotent: {exc}")
        raise _Failed() from None
    s.say("HH0 class " + _vec(value, a.field))
    s.say("representative in A " + _vec(hh0(a).section.apply(value), a.field))


def cmd_character(s: _Session, args):
    obj = s.load(args.file, "comodule", "module").obj
    try:
        if isinstance(obj, Comodule):
            s.say("colinear character " + _vec(colinear_character(obj), obj.field))
        else:
            _report_if_bad(s, check_module(obj))
            s.say("character " + _vec(character_module(obj), obj.field))
    except (InvalidInput, ValueError) as exc:
        s.say(str(exc))
        raise _Failed() from None


def _report_if_bad(s, report):
    if not report.ok:
        _report(s, report)


def cmd_verify(s: _Session, args):
    files = args.files
    expected = {"square": 2, "triangle": 1, "multiplicativity": 3}[args.diagram]
    if len(files) != expected:
        raise UsageError(f"verify {args.diagram} takes {expected} file(s), got {len(files)}")
    try:
        if args.diagram == "square":
            c = s.coalgebra(files[0])
            data = s.load(files[1], "idempotent").obj
            if not isinstance(data, IdempotentData):
                raise UsageError("verify square needs a colinear idempotent")
            report = verify_trace_square(c, data.bind(c))
            fmt = c.field.format
        elif args.diagram == "triangle":
            v = s.load(files[0], "comodule").obj
            report = verify_character_triangle(v.over, v)
            fmt = v.field.format
        else:
            h = s.load(files[0], "bialgebra").obj
            v = s.load(files[1], "comodule").obj
            w = s.load(files[2], "comodule").obj
            report = verify_character_multiplicativity(h, v, w)
            fmt = h.field.format
    except UsageError:
        raise
    except (InvalidIdempotent, InvalidInput, ValueError) as exc:
        s.say(f"cannot evaluate the diagram: {exc}")
        raise _Failed() from None
    s.say(report.format(fmt))
    if not report.ok:
        raise _Failed()


def cmd_examples(s: _Session, args):
    from .corpus import EXTENSIONS, corpus

    entries = corpus()
    if args.action == "list":
        if args.name is not None or args.dir is not None:
            raise UsageError("examples list takes no arguments")
        for name, e in entries.items():
            s.say(f"{name:<28} {e.kind:<11} {name}{EXTENSIONS[e.kind]}")
        return
    if args.name is None or args.dir is None:
        raise UsageError("usage: examples emit NAME|all DIR")
    names = list(entries) if args.name == "all" else [args.name]
    for name in names:
        if name not in entries:
            raise UsageError(f"no example named {name!r}")
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        e = entries[name]
        obj = e.build()
        if obj is None:
            continue
        if s.field is not None:
            try:
                obj = change_field(obj, s.field)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"{name}: {exc}") from None
        path = out_dir / f"{name}{EXTENSIONS[e.kind]}"
        path.write_text(emit(obj), encoding="utf-8")
        s.say(str(path))


def cmd_report(s: _Session, args):
    from .acceptance import format_table, run_all

    results = run_all()
    s.say(format_table(results))
    if not all(r.passed for r in results):
        raise _Failed()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", metavar="q|fp:<p>", help="reduce inputs (and emitted examples) into this field")
    common.add_argument("--out", metavar="PATH", help="write the output here instead of stdout")

    parser = argparse.ArgumentParser(prog="coalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="<subcommand>")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate the axioms of a document")
    p.add_argument("file")
    p.add_argument("--over", metavar="COALGEBRA", help="coalgebra for a colinear idempotent")
    add("dualize", cmd_dualize, "emit the linear dual").add_argument("file")
    add("cohh0", cmd_cohh0, "cocommuting subspace of a coalgebra").add_argument("file")
    add("hh0", cmd_hh0, "commutator quotient of an algebra").add_argument("file")
    p = add("cotrace", cmd_cotrace, "cotrace of a colinear idempotent")
    p.add_argument("coalgebra")
    p.add_argument("idempotent")
    p = add("trace", cmd_trace, "Hattori-Stallings trace of an idempotent matrix")
    p.add_argument("algebra")
    p.add_argument("idempotent")
    add("character", cmd_character, "character of a comodule or module").add_argument("file")
    p = add("verify", cmd_verify, "check that a diagram commutes")
    p.add_argument("diagram", choices=("square", "triangle", "multiplicativity"))
    p.add_argument("files", nargs="+")
    p = add("examples", cmd_examples, "list or write the bundled corpus")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("dir", nargs="?")
    add("report", cmd_report, "run the acceptance suite over the corpus")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        session = _Session(args)
    except UsageError as exc:
        print(f"coalg: error: {exc}", file=sys.stderr)
        return 2
    code = 0
    try:
        args.func(session, args)
    except UsageError as exc:
        print(f"coalg: error: {exc}", file=sys.stderr)
        return 2
    except _Failed:
        code = 1
    text = "\n".join(session.lines) + ("\n" if session.lines else "")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
