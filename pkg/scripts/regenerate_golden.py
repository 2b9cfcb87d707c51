"""Rewrite tests/golden from the corpus and the current CLI.

Fixture documents are emitted from the corpus; each command in COMMANDS is run
in-process with the golden directory as working directory and its stdout and
exit code are stored next to it.  Review the diff before committing.
"""

import contextlib
import io
import os
import sys
from pathlib import Path

from coalg.cli import main
from coalg.corpus import EXTENSIONS, build, entry
from coalg.document import emit

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

FIXTURES = [
    "divpow2", "divpow2-id", "fun-s3", "broken-coassoc", "fun-s3-bialg", "fun-s3-std", "fun-s3-sign",
    "fun-s3-perm", "group-c2-alg", "group-c2-alg-half", "matrix2", "fun-s3-std-retract", "divpow1-nil-j2",
    "divpow2-bialg", "group-s3-alg", "comatrix2", "matrix2-e11", "poly2",
]

COMMANDS = [
    ("check-divpow2", "check divpow2.coalg"),
    ("check-broken", "check broken-coassoc.coalg"),
    ("check-fun-s3-bialg", "check fun-s3-bialg.bialg"),
    ("check-divpow2-bialg", "check divpow2-bialg.bialg"),
    ("check-jordan", "check divpow1-nil-j2.comod"),
    ("check-idem", "check fun-s3-std-retract.idem --over fun-s3.coalg"),
    ("dualize-divpow2", "dualize divpow2.coalg"),
    ("dualize-matrix2", "dualize matrix2.alg"),
    ("dualize-std", "dualize fun-s3-std.comod"),
    ("cohh0-fun-s3", "cohh0 fun-s3.coalg"),
    ("cohh0-comatrix2", "cohh0 comatrix2.coalg"),
    ("hh0-matrix2", "hh0 matrix2.alg"),
    ("hh0-group-s3", "hh0 group-s3-alg.alg"),
    ("cotrace-std", "cotrace fun-s3.coalg fun-s3-std-retract.idem"),
    ("cotrace-divpow2-id", "cotrace divpow2.coalg divpow2-id.idem"),
    ("trace-half", "trace group-c2-alg.alg group-c2-alg-half.idem"),
    ("trace-e11", "trace matrix2.alg matrix2-e11.idem"),
    ("character-std", "character fun-s3-std.comod"),
    ("character-perm-f2", "character fun-s3-perm.comod --field fp:2"),
    ("verify-square", "verify square divpow2.coalg divpow2-id.idem"),
    ("verify-square-std", "verify square fun-s3.coalg fun-s3-std-retract.idem"),
    ("verify-triangle", "verify triangle fun-s3-std.comod"),
    ("verify-mult", "verify multiplicativity fun-s3-bialg.bialg fun-s3-std.comod fun-s3-sign.comod"),
    ("examples-list", "examples list"),
]

# slow; compared by the acceptance suite rather than the CLI tests
SLOW_COMMANDS = [("report", "report")]


def run(args: str) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(args.split())
    return code, buf.getvalue()


def regenerate() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name in FIXTURES:
        (GOLDEN / f"{name}{EXTENSIONS[entry(name).kind]}").write_text(emit(build(name)), encoding="utf-8")
    out_dir = GOLDEN / "stdout"
    out_dir.mkdir(exist_ok=True)
    lines = []
    cwd = os.getcwd()
    os.chdir(GOLDEN)
    try:
        for name, args in COMMANDS + SLOW_COMMANDS:
            code, text = run(args)
            (out_dir / f"{name}.txt").write_text(text, encoding="utf-8")
            if (name, args) in COMMANDS:
                lines.append(f"{name}\t{code}\t{args}")
            print(f"{code}  {args}", file=sys.stderr)
    finally:
        os.chdir(cwd)
    (GOLDEN / "commands.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    regenerate()
