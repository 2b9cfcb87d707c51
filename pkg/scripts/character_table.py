"""Print class values of the colinear characters of comodules over Map(G, Q).

    python scripts/character_table.py s3
    python scripts/character_table.py d4 --field fp:3
"""

import argparse
from dataclasses import dataclass

from coalg import FieldSpec, colinear_character
from coalg.acceptance import conjugacy_classes
from coalg.corpus import build, corpus, group_tables
from coalg.document import change_field


@dataclass(frozen=True)
class TableConfig:
    group: str = "s3"
    field: str = "q"


def character_table(cfg: TableConfig) -> list[str]:
    t = group_tables()[cfg.group]
    F = FieldSpec.from_tag(cfg.field)
    coalg = build(f"fun-{cfg.group}")
    classes = conjugacy_classes(t)
    header = ["comodule".ljust(22)] + [t.labels[c[0]].rjust(6) for c in classes]
    rows = ["".join(header)]
    for name, e in corpus().items():
        if e.kind != "comodule":
            continue
        m = build(name)
        if m.side != "right" or not m.over.same_constants(coalg):
            continue
        chi = colinear_character(change_field(m, F))
        # a class function: read one representative per class
        rows.append(name.ljust(22) + "".join(F.format(chi[c[0]]).rjust(6) for c in classes))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("group", nargs="?", default="s3", choices=sorted(group_tables()))
    p.add_argument("--field", default="q")
    args = p.parse_args()
    print("\n".join(character_table(TableConfig(args.group, args.field))))


if __name__ == "__main__":
    main()
