"""Command-line front end.

Exit codes: 0 success or witness found, 1 negative verdict, 2 usage, input or
format error, 3 search guard hit before exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import io
from .errors import PlaneforgeError
from .field import agl1, make_field_for_order
from .graph import cycle_cover, pair_group, plane_to_packing
from .group import find_regular_normal
from .mols import are_orthogonal, latin_violations, mols_from_group
from .plane import build_plane, bruck_ryser_excluded, extract_permutations, verify_plane
from .report import RunReport
from .search import search_mols_pair, search_sharp2t_sets, search_transitive_subgroups
from .sharp import check_cycle_conditions, check_observations, check_sharp2t, normalize_coset

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PLANEFORGE_WORKERS", "1")))
    except ValueError:
        return 1


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ handlers

def cmd_plane_build(args, rep):
    p = build_plane(args.n)
    rep.verdicts["lines"] = len(p.lines)
    rep.witnesses = [list(l) for l in p.lines]
    if not args.json:
        _write(io.format_plane(p), args.output)
    elif args.output:
        Path(args.output).write_text(io.format_plane(p))
    return EXIT_OK


def cmd_plane_verify(args, rep):
    p = io.parse_plane(_read(args.file, rep))
    r = verify_plane(p)
    rep.verdicts.update(r.to_dict())
    if not args.json:
        print(f"order {r.order}: {r.num_lines} lines, {r.num_points} points")
        for ax in ("i", "ii", "iii", "iv"):
            print(f"axiom ({ax}): {'pass' if r.axioms[ax] else 'FAIL'}")
            for wit in r.witnesses.get(ax, [])[:5]:
                print(f"  witness {wit}")
        print("PASS" if r.passed else "FAIL")
    return EXIT_OK if r.passed else EXIT_NEGATIVE


def cmd_plane_extract(args, rep):
    p = io.parse_plane(_read(args.file, rep))
    s = extract_permutations(p)
    rep.verdicts["size"] = len(s)
    rep.witnesses = [q.row() for q in s.elements]
    if not args.json:
        _write(io.format_permset(s), args.output)
    return EXIT_OK


def cmd_mols_build(args, rep):
    spec = make_field_for_order(args.n)
    m = mols_from_group(agl1(spec).elements)
    rep.verdicts["squares"] = len(m)
    rep.witnesses = [[list(r) for r in sq.grid] for sq in m.squares]
    if not args.json:
        _write(io.format_mols(m), args.output)
    return EXIT_OK


def cmd_mols_verify(args, rep):
    n, grids = io.read_grids(_read(args.file, rep))
    latin = {i: latin_violations(g) for i, g in enumerate(grids)}
    bad_latin = [i for i, v in latin.items() if v]
    non_orth = []
    for a in range(len(grids)):
        for b in range(a + 1, len(grids)):
            if not are_orthogonal(grids[a], grids[b]):
                non_orth.append([a + 1, b + 1])
    ok = not bad_latin and not non_orth
    rep.verdicts.update(order=n, squares=len(grids), latin=not bad_latin,
                        non_latin=[i + 1 for i in bad_latin], non_orthogonal_pairs=non_orth,
                        complete=ok and len(grids) == n - 1, passed=ok)
    if not args.json:
        for i in bad_latin:
            print(f"square {i + 1}: " + "; ".join(latin[i]))
        for a, b in non_orth:
            print(f"squares {a} and {b} are not orthogonal")
        status = "PASS" if ok else "FAIL"
        extra = " (complete set)" if ok and len(grids) == n - 1 else ""
        print(f"{len(grids)} square(s) of order {n}: {status}{extra}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_group_agl(args, rep):
    g = agl1(make_field_for_order(args.q)).elements
    rows = [{"cycles": p.cycle_str(), "row": p.row()} for p in g.elements]
    rep.verdicts["order"] = len(g)
    rep.witnesses = rows
    if not args.json:
        width = max(len(r["cycles"]) for r in rows)
        print(f"{'Permutation(disjoint cycle form)':<{width}}\tTransformed row")
        for r in rows:
            print(f"{r['cycles']:<{width}}\t{r['row']}")
    return EXIT_OK


def cmd_group_check(args, rep):
    s = io.parse_permset(_read(args.file, rep))
    sharp = check_sharp2t(s)
    diags = check_cycle_conditions(s)
    normal = find_regular_normal(s)
    v = rep.verdicts
    v.update(degree=s.degree, size=len(s), is_group=s.is_group, is_transitive=s.is_transitive,
             contains_identity=s.contains_identity, s1_pass=sharp.s1_pass, fpf_count=sharp.fpf_count,
             s2_diagnostics=[str(d) for d in diags],
             regular_normal_subgroup=None if normal is None else [p.row() for p in normal.elements])
    ok = sharp.s1_pass
    if args.observations:
        if not sharp.s1_pass or not sharp.contains_identity:
            v["observations"] = "skipped: needs S1 and identity"
            ok = False
        else:
            check_observations(s, sharp)
            v["observations"] = {o.name: o.passed for o in sharp.observation_results}
            ok = ok and sharp.observations_pass
    v["passed"] = ok
    if not args.json:
        print(f"degree {s.degree}, {len(s)} permutations")
        print(f"is_group: {s.is_group}")
        print(f"is_transitive: {s.is_transitive}")
        print(f"S1 (sharply 2-transitive): {'pass' if sharp.s1_pass else 'FAIL'}")
        for viol in sharp.s1_violations[:5]:
            print(f"  columns {viol[0]} values {viol[1]} count {viol[2]}")
        print(f"S2 diagnostics: {len(diags)}")
        for d in diags[:10]:
            print(f"  {d}")
        if normal is not None:
            print("regular normal subgroup: " + ", ".join(p.cycle_str() for p in normal.elements))
        else:
            print("regular normal subgroup: none")
        if args.observations:
            obs = v["observations"]
            if isinstance(obs, str):
                print(f"observations {obs}")
            else:
                for o in sharp.observation_results:
                    print(f"observation ({o.name}): {'pass' if o.passed else 'FAIL'}  {o.detail}")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_group_normalize(args, rep):
    s = io.parse_permset(_read(args.file, rep))
    t = normalize_coset(s, args.pick)
    rep.witnesses = [p.row() for p in t.elements]
    rep.verdicts.update(is_group=t.is_group, pick=args.pick)
    if not args.json:
        _write(io.format_permset(t), args.output)
    return EXIT_OK


def _search_report(out, rep, args, render):
    rep.verdicts.update(target=out.target, found=len(out.found), exhausted=out.exhausted,
                        nodes_visited=out.nodes_visited, guard_hit=out.guard_hit)
    rep.witnesses = [render(w) for w in out.found]
    if out.details:
        rep.verdicts["details"] = out.details
    if not args.json:
        print(out.target)
        for k, w in enumerate(rep.witnesses, 1):
            print(f"witness {k}:")
            print(w if isinstance(w, str) else json.dumps(w))
            if out.details:
                print(f"  {out.details[k - 1]}")
        state = "exhausted" if out.exhausted else f"not exhausted (guard: {out.guard_hit or 'max-found'})"
        print(f"{state}, {len(out.found)} found, {out.nodes_visited} nodes")
        if out.nonexistence_certified:
            print("exhausted, none found")
    return out.exit_code


def _guards(args):
    return dict(max_nodes=args.max_nodes, time_limit=args.time_limit, workers=args.workers)


def _max_found(args, default):
    # 0 on the command line means "no limit"
    if args.max_found is None:
        return default
    return args.max_found or None


def cmd_search_sharp2t(args, rep):
    out = search_sharp2t_sets(args.n, _max_found(args, None), **_guards(args))
    return _search_report(out, rep, args, lambda s: io.format_permset(s).rstrip())


def cmd_search_mols_pair(args, rep):
    out = search_mols_pair(args.n, _max_found(args, 1), **_guards(args))
    return _search_report(out, rep, args, lambda ab: f"mols {args.n} 2\n{ab[0]}\n\n{ab[1]}")


def cmd_search_subgroups(args, rep):
    out = search_transitive_subgroups(args.n, args.order, _max_found(args, None), **_guards(args))
    return _search_report(out, rep, args, lambda s: io.format_permset(s).rstrip())


def cmd_graph_pack(args, rep):
    p = io.parse_plane(_read(args.file, rep))
    pk = plane_to_packing(p)
    rep.verdicts.update(vertices=pk.num_vertices, blocks=len(pk.blocks), tight=pk.tight,
                        edges_covered=pk.edges_covered, repeated_edges=[list(e) for e in pk.repeated_edges[:20]],
                        missing_edges=[list(e) for e in pk.missing_edges[:20]])
    rep.witnesses = [{"color": c, "vertices": list(b)} for c, b in pk.blocks]
    if not args.json:
        print(f"{len(pk.blocks)} cliques K_{p.order + 1} in K_{pk.num_vertices}, "
              f"{pk.edges_covered} of {pk.num_vertices * (pk.num_vertices - 1) // 2} edges")
        print("tight" if pk.tight else
              f"not tight: {len(pk.repeated_edges)} repeated, {len(pk.missing_edges)} missing edges")
    return EXIT_OK if pk.tight else EXIT_NEGATIVE


def cmd_graph_pair_group(args, rep):
    s = io.parse_permset(_read(args.file, rep))
    pg = pair_group(s)
    rep.verdicts.update(degree=pg.degree, size=len(pg))
    rep.witnesses = [{"source": a.cycle_str(), "pair": b.cycle_str(), "row": b.row()}
                     for a, b in zip(s.elements, pg.elements)]
    if not args.json:
        _write(io.format_permset(pg), args.output)
    return EXIT_OK


def cmd_graph_cycle_cover(args, rep):
    s = io.parse_permset(_read(args.file, rep))
    if args.lift:
        s = pair_group(s)
    cc = cycle_cover(s)
    m = cc.num_vertices
    rep.verdicts.update(vertices=m, arcs=m * (m - 1), arcs_covered=cc.arcs_covered, complete=cc.complete)
    rep.witnesses = [[list(c) for c in cs] for cs in cc.cycles]
    if not args.json:
        for cs in cc.cycles:
            if cs:
                print(", ".join(" -> ".join(map(str, c + (c[0],))) for c in cs))
        state = "complete" if cc.complete else "not complete"
        print(f"{state}: {cc.arcs_covered} arc incidences for {m * (m - 1)} arcs")
    return EXIT_OK if cc.complete else EXIT_NEGATIVE


def cmd_sieve(args, rep):
    if args.lo < 2 or args.hi < args.lo:
        raise PlaneforgeError("need 2 <= lo <= hi")
    flagged = [n for n in range(args.lo, args.hi + 1) if bruck_ryser_excluded(n)]
    rep.verdicts.update(lo=args.lo, hi=args.hi, excluded=flagged)
    if not args.json:
        print(" ".join(map(str, flagged)) if flagged else "none excluded")
    return EXIT_OK if flagged else EXIT_NEGATIVE


def _read(path, rep):
    rep.add_input(path)
    return Path(path).read_text()


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")

    parser = _Parser(prog="planeforge", description="Projective planes from sharply 2-transitive groups.")
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sub(group, name, func, help):
        p = group.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    plane = top.add_parser("plane", help="build, verify or extract planes").add_subparsers(dest="sub", required=True)
    p = sub(plane, "build", cmd_plane_build, "construct the plane of prime-power order n")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p = sub(plane, "verify", cmd_plane_verify, "check the incidence axioms of a plane file")
    p.add_argument("file")
    p = sub(plane, "extract", cmd_plane_extract, "recover the permutations of a canonical plane")
    p.add_argument("file")
    p.add_argument("-o", "--output")

    mols = top.add_parser("mols", help="MOLS construction and checks").add_subparsers(dest="sub", required=True)
    p = sub(mols, "build", cmd_mols_build, "complete MOLS set of prime-power order n")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p = sub(mols, "verify", cmd_mols_verify, "check a MOLS file")
    p.add_argument("file")

    group = top.add_parser("group", help="permutation group tools").add_subparsers(dest="sub", required=True)
    p = sub(group, "agl", cmd_group_agl, "table of the affine group of GF(q)")
    p.add_argument("q", type=int)
    p = sub(group, "check", cmd_group_check, "check a permutation set")
    p.add_argument("file")
    p.add_argument("--observations", action="store_true")
    p = sub(group, "normalize", cmd_group_normalize, "translate a set so it contains identity")
    p.add_argument("file")
    p.add_argument("--pick", type=int, default=0)
    p.add_argument("-o", "--output")

    search = top.add_parser("search", help="exhaustive searches").add_subparsers(dest="sub", required=True)
    guards = argparse.ArgumentParser(add_help=False)
    guards.add_argument("--max-found", type=int, default=None,
                        help="stop after this many witnesses; 0 for no limit (mols-pair defaults to 1)")
    guards.add_argument("--workers", type=int, default=_default_workers())
    guards.add_argument("--max-nodes", type=int, default=None, help="node budget per top-level branch")
    guards.add_argument("--time-limit", type=float, default=None, help="seconds")
    p = search.add_parser("sharp2t", parents=[common, guards])
    p.set_defaults(func=cmd_search_sharp2t)
    p.add_argument("n", type=int)
    p = search.add_parser("mols-pair", parents=[common, guards])
    p.set_defaults(func=cmd_search_mols_pair)
    p.add_argument("n", type=int)
    p = search.add_parser("subgroups", parents=[common, guards])
    p.set_defaults(func=cmd_search_subgroups)
    p.add_argument("n", type=int)
    p.add_argument("order", type=int)

    graph = top.add_parser("graph", help="graph equivalents").add_subparsers(dest="sub", required=True)
    p = sub(graph, "pack", cmd_graph_pack, "clique packing of a plane")
    p.add_argument("file")
    p = sub(graph, "pair-group", cmd_graph_pair_group, "induced action on ordered pairs")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p = sub(graph, "cycle-cover", cmd_graph_cycle_cover, "directed cycle cover of a permutation set")
    p.add_argument("file")
    p.add_argument("--lift", action="store_true", help="take the pair group of the set first")

    sieve = top.add_parser("sieve", help="number-theoretic exclusions").add_subparsers(dest="sub", required=True)
    p = sub(sieve, "bruck-ryser", cmd_sieve, "orders excluded by the Bruck-Ryser theorem")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = RunReport(command=["planeforge", *argv])
    t0 = time.monotonic()
    try:
        code = args.func(args, rep)
    except (PlaneforgeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.verdicts["error"] = str(exc)
        code = EXIT_ERROR
    rep.timing = round(time.monotonic() - t0, 6)
    rep.exit_code = code
    if getattr(args, "json", False):
        print(rep.to_json())
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
