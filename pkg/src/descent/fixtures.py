"""Reference quiver files: header lines ``key value`` followed by ``<a, b, c>`` triples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .quivers import Quiver, find_isomorphism

TRIPLE = re.compile(r"<\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*>")


@dataclass
class Fixture:
    family: str
    rank: int
    p: str
    check: list
    source: str
    vertices: int
    arrows: int
    triples: list = field(default_factory=list)
    name: str = ""

    @property
    def quiver(self) -> Quiver:
        return Quiver.from_triples(self.vertices, self.triples)

    @property
    def triple_total(self) -> int:
        return sum(c for _, _, c in self.triples)


def parse_fixture(text: str, name: str = "") -> Fixture:
    head, triples = {}, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = TRIPLE.fullmatch(line)
        if m:
            a, b, c = map(int, m.groups())
            triples.append((a, b, c))
            continue
        key, _, value = line.partition(" ")
        head[key] = value.strip()
    fx = Fixture(
        family=head["family"], rank=int(head["rank"]), p=head["p"],
        check=[int(x) for x in head["check"].split()], source=head.get("source", ""),
        vertices=int(head["vertices"]), arrows=int(head["arrows"]), triples=triples, name=name)
    for a, b, c in triples:
        if not (1 <= a <= fx.vertices and 1 <= b <= fx.vertices and c > 0):
            raise ValueError(f"{name}: bad triple <{a}, {b}, {c}>")
    return fx


def load_fixture(path) -> Fixture:
    path = Path(path)
    return parse_fixture(path.read_text(encoding="utf-8"), path.stem)


def shipped_fixtures() -> list:
    root = resources.files("descent") / "data" / "fixtures"
    out = [parse_fixture(f.read_text(encoding="utf-8"), f.name.rsplit(".", 1)[0])
           for f in root.iterdir() if f.name.endswith(".txt")]
    return sorted(out, key=lambda fx: fx.name)


def match_quiver(computed: Quiver, fx: Fixture):
    """
    Orientation under which the computed quiver is isomorphic to the
    fixture: "as-is", "reversed", or None.
    """
    target = fx.quiver
    if find_isomorphism(computed, target) is not None:
        return "as-is"
    if find_isomorphism(computed.reversed(), target) is not None:
        return "reversed"
    return None
