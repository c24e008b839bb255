"""
The bundled 64-entry list of rank-2 pre-shrinkable surfaces.

The data file is the single source of the entries; set ``SHRINKCY_DATA`` to
point at a replacement file.  Figure triangulations live next to it under
``triangulations/<name>.txt``.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .snc import SncSurface, rank2
from .toric import FanSection, fan_to_snc, load_edges, section

DATA_ENV = "SHRINKCY_DATA"

_TRIANGULATION_SHAPES = {
    "fig1": ((0, 0), (0, 1), (2, 2), (3, 2), (3, 1), (1, 0)),
    "P124": ((0, 1), (1, 0), (-2, -4)),
    "P126": ((0, 1), (2, 0), (-1, -3)),
    "P134": ((0, 1), (1, 0), (-3, -4)),
}


class TableDataError(ValueError):
    pass


@dataclass(frozen=True)
class TableEntry:
    id: int
    table: int
    c1: str
    c2: str
    glue1: str
    glue2: str
    note: str = ""
    expected_comment: str = ""
    expected_shrinkable_note: str = ""
    hw_partner: str = ""
    toric: str = ""
    flags: tuple[str, ...] = ()

    @property
    def title(self) -> str:
        return f"{self.c1} u {self.c2} ({self.glue1}~{self.glue2})"

    def surface(self) -> SncSurface:
        """The snc surface; toric entries come from their fan section."""
        if self.toric:
            fs = figure_section(self.toric)
            s, _ = fan_to_snc(fs, label=f"{self.title} [toric {self.toric}]")
            return s
        return rank2(self.c1, self.c2, self.glue1, self.glue2, label=self.title)


_FIELDS = {"entry", "table", "c1", "c2", "glue", "note", "comment", "status", "hw", "toric", "flag"}


def parse_tables(text: str) -> list[TableEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rec: dict[str, list[str]] = {}
        for part in line.split("|"):
            part = part.strip()
            key, _, value = part.partition(" ")
            if key not in _FIELDS or not value.strip():
                raise TableDataError(f"line {lineno}: bad field {part!r}")
            rec.setdefault(key, []).append(value.strip())
        for req in ("entry", "table", "c1", "c2", "glue"):
            if req not in rec:
                raise TableDataError(f"line {lineno}: missing field {req!r}")
        glue = rec["glue"][0]
        if glue.count("=") != 1:
            raise TableDataError(f"line {lineno}: glue must be '<expr>=<expr>'")
        g1, g2 = (x.strip() for x in glue.split("="))
        try:
            eid, table = int(rec["entry"][0]), int(rec["table"][0])
        except ValueError:
            raise TableDataError(f"line {lineno}: entry and table must be integers") from None
        if table not in (1, 2):
            raise TableDataError(f"line {lineno}: table must be 1 or 2")
        entries.append(TableEntry(
            id=eid, table=table, c1=rec["c1"][0], c2=rec["c2"][0], glue1=g1, glue2=g2,
            note=rec.get("note", [""])[0], expected_comment=rec.get("comment", [""])[0],
            expected_shrinkable_note=rec.get("status", [""])[0], hw_partner=rec.get("hw", [""])[0],
            toric=rec.get("toric", [""])[0], flags=tuple(rec.get("flag", ())),
        ))
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise TableDataError("duplicate entry ids")
    return sorted(entries, key=lambda e: e.id)


def data_path() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("shrinkcy") / "data" / "tables.txt"))


@lru_cache(maxsize=8)
def _load(path: str) -> tuple[TableEntry, ...]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TableDataError(f"cannot read table data {path}: {exc}") from None
    return tuple(parse_tables(text))


def load_tables(path: str | Path | None = None) -> tuple[TableEntry, ...]:
    return _load(str(path or data_path()))


def select(selector: str, entries=None) -> list[TableEntry]:
    """``all``, ``table1``, ``table2`` or a numeric id."""
    entries = load_tables() if entries is None else entries
    if selector == "all":
        return list(entries)
    if selector in ("table1", "table2"):
        t = int(selector[-1])
        return [e for e in entries if e.table == t]
    try:
        eid = int(selector)
    except ValueError:
        raise TableDataError(f"unknown selector {selector!r}") from None
    hits = [e for e in entries if e.id == eid]
    if not hits:
        raise TableDataError(f"no entry with id {eid}")
    return hits


def triangulation_path(name: str) -> Path:
    return Path(str(resources.files("shrinkcy") / "data" / "triangulations" / f"{name}.txt"))


def figure_edges(name: str):
    return load_edges(triangulation_path(name))


@lru_cache(maxsize=None)
def figure_section(name: str) -> FanSection:
    """A fan section triangulated exactly as in the corresponding figure."""
    if name not in _TRIANGULATION_SHAPES:
        raise TableDataError(f"unknown figure triangulation {name!r}")
    from .toric import StackyTriangle

    verts = _TRIANGULATION_SHAPES[name]
    shape = StackyTriangle.from_vertices(verts) if len(verts) == 3 else verts
    return section(shape, figure_edges(name))


_HW_RE = re.compile(r"^(\S+) u (\S+) \((.+)~(.+)\)$")


def _same_rank2(s: SncSurface, c1: str, c2: str, g1: str, g2: str) -> bool:
    if s.rank != 2 or len(s.gluings) != 1:
        return False
    g = s.gluings[0]
    for (a, ga), (b, gb) in (((c1, g1), (c2, g2)), ((c2, g2), (c1, g1))):
        sa, sb = s.component(g.i), s.component(g.j)
        if (sa.name, sb.name) != (a, b):
            continue
        try:
            if g.class_in_i == sa.curve(ga) and g.class_in_j == sb.curve(gb):
                return True
        except ValueError:
            continue
    return False


def hw_partner_for(s: SncSurface, entries=None) -> str:
    """HW-transition partner of ``s`` from the table metadata, in either direction."""
    entries = load_tables() if entries is None else entries
    for e in entries:
        if not e.hw_partner or e.toric:
            continue
        if _same_rank2(s, e.c1, e.c2, e.glue1, e.glue2):
            return e.hw_partner
        m = _HW_RE.match(e.hw_partner)
        if m and _same_rank2(s, *m.groups()):
            return e.title
    return ""
