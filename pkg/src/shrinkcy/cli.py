"""Command-line front end: ``shrinkcy check|table|fan|embed|hj``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .planner import (UNKNOWN, PlannerError, classify_quotient, plan_embeddings, recount,
                      verify_recipe)
from .shrink import (DEFAULT_A_MAX, INCONCLUSIVE, NOT_PRE_SHRINKABLE, PRE_SHRINKABLE, decide)
from .snc import SncError, cy_check, load_snc, rank2
from .surfaces import MORI_GENERATOR, NUMERICAL_CANDIDATE, CurveSyntaxError, NamedCurve, SurfaceError
from .tables import TableDataError, figure_section, hw_partner_for, select
from .toric import (StackyTriangle, ToricError, detect_flops, hj_chain_points, hj_resolve,
                    load_edges, quotient_to_triangle, render_svg, section, weights_to_triangle)

EXIT_CODES = {PRE_SHRINKABLE: 0, NOT_PRE_SHRINKABLE: 1, INCONCLUSIVE: 2}
EXIT_INPUT = 3


class InputError(Exception):
    pass


# -- input helpers -------------------------------------------------------------

def _surface_from_args(args):
    if getattr(args, "entry", None) is not None:
        (entry,) = select(str(args.entry))
        return entry.surface(), entry
    if args.input:
        return load_snc(args.input), None
    if args.c1 and args.c2 and args.glue:
        if args.glue.count("=") != 1:
            raise InputError("--glue must look like 'expr1=expr2'")
        left, right = (x.strip() for x in args.glue.split("="))
        return rank2(args.c1, args.c2, left, right), None
    raise InputError("give an SNC file, --entry ID, or --c1/--c2/--glue")


def parse_catalog(text: str, surface) -> dict[int, list[NamedCurve]]:
    """Lines ``<component>: <curve-expr> [candidate]``; ``#`` comments."""
    out: dict[int, list[NamedCurve]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        idx, sep, rest = line.partition(":")
        if not sep or not idx.strip().isdigit():
            raise InputError(f"catalog line {lineno}: expected '<component>: <curve>'")
        i = int(idx)
        if not 1 <= i <= surface.rank:
            raise InputError(f"catalog line {lineno}: no component {i}")
        words = rest.split()
        role = MORI_GENERATOR
        if words and words[-1] == "candidate":
            role = NUMERICAL_CANDIDATE
            words = words[:-1]
        expr = "".join(words)
        try:
            cls = surface.component(i).curve(expr)
        except CurveSyntaxError as exc:
            raise InputError(f"catalog line {lineno}, column {exc.position + 1}: {exc}") from None
        out.setdefault(i, []).append(NamedCurve(cls, expr, role))
    return out


def _write_json(path: str | None, payload) -> None:
    if not path:
        return
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _fmt_t(x) -> str:
    from .lattice import format_rational
    return "inf" if x is None else format_rational(x)


# -- commands ------------------------------------------------------------------

def cmd_check(args) -> int:
    s, _ = _surface_from_args(args)
    catalogs = parse_catalog(Path(args.catalog).read_text(encoding="utf-8"), s) if args.catalog else None
    report = decide(s, catalogs, a_max=args.a_max)
    cy = cy_check(s)
    print(f"surface      {report.surface}")
    for r in cy.records:
        mark = "ok" if r.passed else "FAIL"
        print(f"CY S{r.i}.S{r.j}    {r.lhs} = {r.rhs}  {mark}")
    print(f"status       {report.status}")
    if report.certificate is not None:
        print(f"certificate  a = {report.certificate}   J^2 S_i = {report.j_squared}")
    if report.ray_interval is not None:
        lo, hi = report.ray_interval
        print(f"rays a2/a1   [{_fmt_t(lo)}, {_fmt_t(hi)}]")
    if report.witness:
        print(f"witness      {report.witness}")
    for line in report.catalog_provenance:
        print(f"catalog      {line}")
    for note in report.notes:
        print(f"note         {note}")
    _write_json(args.json, report.to_dict())
    return EXIT_CODES[report.status]


def _entry_row(entry) -> dict:
    s = entry.surface()
    cy = cy_check(s).passed
    rep = decide(s)
    recipes = plan_embeddings(s, toric_figure=entry.toric or None, hw_partner=entry.hw_partner)
    return {
        "id": entry.id,
        "table": entry.table,
        "surface": entry.title,
        "cy": cy,
        "status": rep.status,
        "certificate": list(rep.certificate) if rep.certificate else None,
        "recipes": [r.kind for r in recipes],
        "recipes_verified": all(verify_recipe(s, r) for r in recipes),
        "comment": entry.expected_comment,
        "paper_status": entry.expected_shrinkable_note,
        "hw_partner": entry.hw_partner or None,
        "flags": list(entry.flags),
        "report": rep.to_dict(),
    }


def cmd_table(args) -> int:
    entries = select(args.selector)
    rows = [_entry_row(e) for e in entries]
    print(f"{'id':>3} {'tbl':>3}  {'surface':<38} {'CY':<4} {'status':<17} {'cert':<8} recipes")
    for r in rows:
        cert = ",".join(map(str, r["certificate"])) if r["certificate"] else "-"
        extra = ""
        if r["paper_status"]:
            extra += f"  [{r['paper_status']}]"
        if r["flags"]:
            extra += f"  [{', '.join(r['flags'])}]"
        print(f"{r['id']:>3} {r['table']:>3}  {r['surface']:<38} {'ok' if r['cy'] else 'FAIL':<4} "
              f"{r['status']:<17} {cert:<8} {'+'.join(r['recipes'])}{extra}")
    n = len(rows)
    summary = {
        "entries": n,
        "cy_pass": sum(r["cy"] for r in rows),
        "pre_shrinkable": sum(r["status"] == PRE_SHRINKABLE for r in rows),
        "only_unknown": [r["id"] for r in rows if r["recipes"] == [UNKNOWN]],
    }
    print(f"\nCY pass {summary['cy_pass']}/{n}, PreShrinkable {summary['pre_shrinkable']}/{n}, "
          f"only Unknown recipe: {summary['only_unknown']}")
    rc = recount(entries)
    for line in rc.lines():
        print(line)
    summary["recount"] = rc.lines()
    _write_json(args.json, {"entries": rows, "summary": summary})
    bad = n - summary["pre_shrinkable"]
    return 0 if bad == 0 else 1


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None


def cmd_fan(args) -> int:
    edges = load_edges(args.triangulation) if args.triangulation else None
    if args.figure:
        fs = figure_section(args.figure)
        title = f"figure {args.figure}"
    elif args.weights:
        w = _parse_ints(args.weights, "--weights")
        if len(w) != 3:
            raise InputError("--weights needs three integers")
        fs = section(weights_to_triangle(*w), edges)
        title = f"local P({','.join(map(str, w))})"
    elif args.quotient:
        n, sep, rest = args.quotient.partition(":")
        if not sep:
            raise InputError("--quotient must look like n:a,b,c")
        w = _parse_ints(rest, "--quotient")
        fs = section(quotient_to_triangle(int(n), w), edges)
        title = f"C^3/mu_{n} weights {tuple(w)}"
    elif args.polygon:
        verts = [tuple(_parse_ints(v, "--polygon")) for v in args.polygon.split()]
        if any(len(v) != 2 for v in verts):
            raise InputError("--polygon takes points like '0,1 1,0 -2,-4'")
        shape = StackyTriangle.from_vertices(verts) if len(verts) == 3 else verts
        fs = section(shape, edges)
        title = f"polygon {verts}"
    else:
        raise InputError("give --weights, --quotient, --polygon or --figure")
    print(title)
    print(f"polygon      {list(fs.polygon)}")
    print(f"interior     {list(fs.interior)}")
    print(f"boundary     {list(fs.boundary_nonvertex)}   (non-compact, non-vertex)")
    stars = fs.interior_stars
    for p in fs.interior:
        sid = stars[p]
        print(f"star {str(p):<8} {sid.display:<6} rays={sid.ray_count} selfints={list(sid.selfints)}")
    flops = detect_flops(fs)
    print(f"flops        {len(flops)}")
    for f in flops:
        print(f"  square {list(f.quad)} diagonal {list(f.diagonal)}")
    if args.svg:
        render_svg(fs, args.svg)
        print(f"svg          {args.svg}")
    _write_json(args.json, {
        "polygon": [list(p) for p in fs.polygon],
        "points": [{"point": list(lp.point), "kind": lp.kind} for lp in fs.points],
        "triangles": [[list(p) for p in t] for t in fs.triangles],
        "stars": {f"{p[0]},{p[1]}": stars[p].display for p in fs.interior},
        "flops": [[list(p) for p in f.quad] for f in flops],
    })
    return 0


def cmd_embed(args) -> int:
    s, entry = _surface_from_args(args)
    if s.rank != 2:
        raise InputError("embedding recipes are planned for rank 2 only")
    if not cy_check(s).passed:
        print("Calabi-Yau condition fails; no recipe")
        _write_json(args.json, {"surface": s.describe(), "cy": False, "recipes": []})
        return 1
    hw = entry.hw_partner if entry else hw_partner_for(s)
    toric = entry.toric if entry else None
    recipes = plan_embeddings(s, toric_figure=toric or None, hw_partner=hw)
    print(f"surface      {s.describe()}")
    for r in recipes:
        params = ", ".join(f"{k}={v}" for k, v in r.parameters.items())
        notes = f"  [{', '.join(r.notes)}]" if r.notes else ""
        print(f"{r.kind:<26} {params}{notes}")
    if hw:
        print(f"hw partner   {hw}")
    _write_json(args.json, {"surface": s.describe(), "cy": True, "hw_partner": hw or None,
                            "recipes": [r.to_dict() for r in recipes]})
    return 0 if recipes[0].kind != UNKNOWN else 2


def cmd_hj(args) -> int:
    rq = _parse_ints(args.sing, "--sing")
    if len(rq) != 2:
        raise InputError("--sing needs r,q")
    r, q = rq
    chain = hj_resolve(r, q)
    print(f"(1/{r})(1,{q})  chain {list(chain)}")
    print(f"cone points  {hj_chain_points(r, q)}")
    try:
        qc = classify_quotient(r, q)
        print(f"local CY     {qc.outcome}: {qc.description}")
        outcome = qc.outcome
    except PlannerError as exc:
        outcome = None
        print(f"local CY     {exc}")
    _write_json(args.json, {"r": r, "q": q, "chain": list(chain), "outcome": outcome})
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")

    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("input", nargs="?", help="SNC surface file")
    surf.add_argument("--c1", help="first component, e.g. P2, F3, dP2, Bl3F3")
    surf.add_argument("--c2", help="second component")
    surf.add_argument("--glue", help="double curve as 'expr1=expr2'")
    surf.add_argument("--entry", type=int, help="use a bundled table entry")

    p = argparse.ArgumentParser(prog="shrinkcy", description="Pre-shrinkability of snc surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common, surf], help="CY condition and pre-shrinkability")
    c.add_argument("--catalog", metavar="FILE", help="override curve catalogs")
    c.add_argument("--a-max", type=int, default=DEFAULT_A_MAX, help="search bound for rank >= 3")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("table", parents=[common], help="reproduce the bundled tables")
    t.add_argument("selector", nargs="?", default="all", help="all | table1 | table2 | <id>")
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("fan", parents=[common], help="toric fan sections")
    f.add_argument("--weights", help="a,b,c for local P(a,b,c)")
    f.add_argument("--quotient", help="n:a,b,c for C^3/mu_n")
    f.add_argument("--polygon", metavar="POINTS", help="explicit vertices, e.g. '0,1 1,0 -2,-4'")
    f.add_argument("--figure", help="bundled figure triangulation: fig1, P124, P126, P134")
    f.add_argument("--triangulation", metavar="FILE", help="edge list replacing the default")
    f.add_argument("--svg", metavar="PATH", help="write an SVG drawing")
    f.set_defaults(func=cmd_fan)

    e = sub.add_parser("embed", parents=[common, surf], help="embedding recipes")
    e.set_defaults(func=cmd_embed)

    h = sub.add_parser("hj", parents=[common], help="Hirzebruch-Jung resolution")
    h.add_argument("--sing", required=True, metavar="R,Q", help="singularity (1/r)(1,q)")
    h.set_defaults(func=cmd_hj)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SncError, SurfaceError, ToricError, TableDataError, PlannerError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
