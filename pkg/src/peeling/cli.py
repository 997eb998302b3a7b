"""
Command-line front end.

    peeling [--json] [--cap N] [--seed S] <command> <family> [options]

Families: type-a, type-b, affine-a, flag, downset, upset, raw.
Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 enumeration cap reached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import flag, lattice, posets, quasisym, weak_a, weak_affine, weak_b
from .digraph import NotInitialSection, ValuedDigraph, is_initial_section, iter_peeling_sequences, to_mask
from .lattice import CapExceeded, JoinUnavailable, _format_label, element_label
from .vdgio import VdgParseError, load_vdg

FAMILIES = ("type-a", "type-b", "affine-a", "flag", "downset", "upset", "raw")
EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Family:
    """A digraph together with the family-specific way of naming its elements."""
    kind: str
    graph: ValuedDigraph
    parse_perm: Callable[[str], int] | None = None
    name_of: Callable[[int], str] | None = None
    poset: posets.FinitePoset | None = None
    depth: int | None = None

    def element(self, text: str) -> int:
        """Initial section named by a group element (``--perm``)."""
        if self.parse_perm is None:
            raise UsageError(f"--perm is not available for {self.kind}; use --element")
        try:
            return self.parse_perm(text)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"cannot read {text!r}: {exc}") from None

    def labels(self, text: str) -> int:
        """Initial section given as whitespace-separated vertex labels (``--element``)."""
        by_name = {_format_label(self.graph.label(v)): v for v in range(self.graph.n)}
        m = 0
        for tok in text.split():
            if tok not in by_name:
                raise UsageError(f"unknown vertex label {tok!r}")
            m |= 1 << by_name[tok]
        if not is_initial_section(self.graph, m):
            raise UsageError(f"{{{text}}} is not an initial section")
        return m

    def describe(self, mask: int) -> str:
        return self.name_of(mask) if self.name_of else element_label(self.graph, mask)


def _family(args, elements_hint: list[str] = ()) -> Family:
    kind = args.family
    need = {"type-a": ("n",), "type-b": ("n",), "affine-a": ("n",), "flag": ("r", "n"),
            "raw": ("file",)}
    for opt in need.get(kind, ()):
        if getattr(args, opt) is None:
            raise UsageError(f"{kind} needs --{opt}")
    if kind == "type-a":
        n = args.n
        g = weak_a.build_a(n)
        return Family(kind, g,
                      lambda t: to_mask(g.vertices_of(weak_a.inversion_set(_sized(weak_a.Permutation.parse(t), n)))),
                      lambda m: str(weak_a.permutation_from_inversions(g.labels_of(m), n)))
    if kind == "type-b":
        n = args.n
        g = weak_b.build_b(n)
        return Family(kind, g,
                      lambda t: to_mask(g.vertices_of(weak_b.inv_b_set(_sized(weak_b.SignedPermutation.parse(t), n)))),
                      lambda m: str(weak_b.signed_perm_from_inversions(g.labels_of(m), n)))
    if kind == "affine-a":
        n = args.n
        if n < 2:
            raise UsageError("affine-a needs --n >= 2")
        depth = args.depth or 1
        if args.max_rank is not None:
            depth = max(depth, weak_affine.depth_for_rank(args.max_rank, n))
        for text in elements_hint:
            p = _sized(weak_affine.AffinePermutation.parse(text), n)
            depth = max(depth, weak_affine.sufficient_depth(weak_affine.inv_affine(p), n))
        g = weak_affine.build_affine(n, depth)

        def parse(t):
            inv = weak_affine.inv_affine(_sized(weak_affine.AffinePermutation.parse(t), n))
            return to_mask(g.vertices_of(inv))

        return Family(kind, g, parse,
                      lambda m: str(weak_affine.affine_perm_from_inversions(g.labels_of(m), n)),
                      depth=depth)
    if kind == "flag":
        r, n = args.r, args.n
        if r < 2:
            raise UsageError("flag needs --r >= 2 (r = 1 is the type-a family)")
        g = flag.build_flag(r, n)

        def parse(t):
            p = flag.ColoredPermutation.parse(t, r)
            if p.n != n:
                raise ValueError(f"expected {n} entries")
            return to_mask(flag.psi_inverse(g, p))

        return Family(kind, g, parse, lambda m: str(flag.psi(g, m, r)))
    if kind in ("downset", "upset"):
        if args.file:
            p = posets.parse_poset(Path(args.file).read_text(), covers=args.covers)
        elif args.random is not None:
            p = posets.random_poset(args.random, random.Random(args.seed))
        else:
            raise UsageError(f"{kind} needs --file or --random")
        g = posets.build_downset(p) if kind == "downset" else posets.build_upset(p)
        return Family(kind, g, poset=p)
    if kind == "raw":
        return Family(kind, load_vdg(args.file))
    raise UsageError(f"unknown family {kind}")


def _sized(p, n):
    if p.n != n:
        raise ValueError(f"expected {n} entries, got {p.n}")
    return p


def _elements(args, fam: Family) -> list[int]:
    out = [fam.element(t) for t in (args.perm or [])]
    out += [fam.labels(t) for t in (args.element or [])]
    return out


def _lattice(args, fam: Family) -> lattice.ISLattice:
    max_rank = args.max_rank
    if fam.kind == "affine-a" and max_rank is None:
        raise UsageError("affine-a lattices are infinite; pass --max-rank")
    return lattice.build(fam.graph, max_rank=max_rank, cap=args.cap)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj):
    _emit(json.dumps(obj, sort_keys=True, indent=1))


# -- commands ---------------------------------------------------------------

def cmd_build(args) -> int:
    fam = _family(args)
    lat = _lattice(args, fam)
    if args.dot:
        _emit(lattice.to_dot(lat, label=fam.describe))
    elif args.json:
        data = lattice.to_json(lat)
        data["names"] = [fam.describe(e) for e in lat.elements]
        _emit_json(data)
    else:
        lines = [f"elements {len(lat)}", f"bounded {str(lat.bounded).lower()}",
                 "rank_sizes " + " ".join(map(str, lat.rank_sizes()))]
        for k, r in enumerate(lat.ranks):
            for i in r:
                lines.append(f"{k}\t{fam.describe(lat.elements[i])}")
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    args.dot = True
    return cmd_build(args)


def cmd_moebius(args) -> int:
    fam = _family(args, args.perm or [])
    g = fam.graph
    if args.all:
        lat = _lattice(args, fam)
        targets = lat.elements
        oracle = dict(zip(lat.elements, lattice.moebius_table_oracle(lat))) if args.verify else {}
    else:
        targets = _elements(args, fam)
        if not targets:
            raise UsageError("moebius needs --all, --perm or --element")
        oracle = {m: lattice.moebius_oracle(g, m, cap=args.cap) for m in targets} if args.verify else {}
    rows = []
    bad = 0
    for m in targets:
        mu = lattice.moebius(g, m)
        row = {"rank": m.bit_count(), "element": fam.describe(m), "mu": mu}
        if args.verify:
            row["mu_oracle"] = oracle[m]
            bad += oracle[m] != mu
        rows.append(row)
    if args.json:
        _emit_json({"rows": rows, "mismatches": bad})
    else:
        buf = io.StringIO()
        cols = ["rank", "element", "mu"] + (["mu_oracle"] if args.verify else [])
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue())
    if bad:
        print(f"{bad} Möbius mismatches", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _meet_join(args, op: str) -> int:
    fam = _family(args, args.perm or [])
    elems = _elements(args, fam)
    if len(elems) < 2:
        raise UsageError(f"{op} needs at least two elements")
    if op == "meet":
        res = lattice.meet(fam.graph, elems).mask
    else:
        lat = _lattice(args, fam) if fam.kind == "affine-a" else None
        res = lattice.join(fam.graph, elems, lattice=lat, cap=args.cap).mask
    if args.json:
        _emit_json({"result": fam.describe(res), "vertices": [_format_label(l) for l in fam.graph.labels_of(res)]})
    else:
        _emit(fam.describe(res))
    return EXIT_OK


def cmd_meet(args) -> int:
    return _meet_join(args, "meet")


def cmd_join(args) -> int:
    return _meet_join(args, "join")


def cmd_chains(args) -> int:
    fam = _family(args, args.perm or [])
    elems = _elements(args, fam)
    if not elems:
        if fam.kind == "affine-a":
            raise UsageError("affine-a needs an element")
        elems = [fam.graph.full_mask]
        if not is_initial_section(fam.graph, elems[0]):
            raise UsageError("the full vertex set is not an initial section; pass an element")
    rows = [(fam.describe(m), lattice.maximal_chain_count(fam.graph, m, cap=args.cap)) for m in elems]
    if args.json:
        _emit_json([{"element": e, "chains": c} for e, c in rows])
    else:
        _emit("\n".join(f"{e}\t{c}" for e, c in rows))
    return EXIT_OK


def parse_columns(text: str, g: ValuedDigraph) -> quasisym.GeneralizedColumns:
    """Lines ``col <vertex> <member> <member> ...`` naming vertices by label."""
    by_name = {_format_label(g.label(v)): g.label(v) for v in range(g.n)}
    sets = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "col" or len(parts) < 2:
            raise UsageError(f"line {lineno}: expected 'col <vertex> <members...>'")
        for tok in parts[1:]:
            if tok not in by_name:
                raise UsageError(f"line {lineno}: unknown vertex label {tok!r}")
        sets[by_name[parts[1]]] = frozenset(by_name[t] for t in parts[2:])
    return quasisym.GeneralizedColumns(sets)


def cmd_symfun(args) -> int:
    fam = _family(args, args.perm or [])
    g = fam.graph
    if args.columns:
        cols = parse_columns(Path(args.columns).read_text(), g)
    elif fam.kind == "type-a":
        cols = quasisym.columns_a(args.n)
    elif fam.kind == "affine-a":
        cols = quasisym.columns_affine(args.n, fam.depth)
    else:
        raise UsageError(f"{fam.kind} has no canonical generalized columns; pass --columns FILE")
    elems = _elements(args, fam)
    if len(elems) != 1:
        raise UsageError("symfun needs exactly one element (--perm or --element)")
    a = elems[0]
    results = {}
    if args.method in ("gamma", "both"):
        results["gamma"] = quasisym.gamma(g, a, cols, args.m, cap=args.cap)
    if args.method in ("oracle", "both"):
        if fam.kind == "type-a" and not args.columns:
            results["oracle"] = quasisym.stanley(weak_a.Permutation.parse(args.perm[0]) if args.perm
                                                 else weak_a.permutation_from_inversions(g.labels_of(a), args.n), args.m)
        elif fam.kind == "affine-a" and not args.columns:
            p = weak_affine.affine_perm_from_inversions(g.labels_of(a), args.n)
            results["oracle"] = quasisym.affine_stanley(p, args.m, cap=args.cap)
        else:
            results["oracle"] = quasisym.gamma_oracle(g, a, cols, args.m)
    verdict = None
    if len(results) == 2:
        verdict = "EQUAL" if results["gamma"] == results["oracle"] else "DIFFER"
    if args.json:
        out = {k: v.to_json() for k, v in results.items()}
        if verdict:
            out["verdict"] = verdict
        _emit_json(out)
    else:
        if verdict == "DIFFER":
            lines = [f"gamma: {results['gamma']}", f"oracle: {results['oracle']}"]
        else:
            lines = [str(next(iter(results.values())))]
        if verdict:
            lines.append(verdict)
        _emit("\n".join(lines))
    return EXIT_VERIFY if verdict == "DIFFER" else EXIT_OK


def _verify_group(kind, args, lat: lattice.ISLattice, fam: Family) -> list[str]:
    """Compare the built lattice with the generator-search oracle for the family."""
    g = lat.graph
    problems = []
    if kind == "type-a":
        oracle = weak_a.weak_order_covers(args.n)
        key = lambda m: weak_a.permutation_from_inversions(g.labels_of(m), args.n).window
    elif kind == "type-b":
        oracle = weak_b.weak_order_covers_b(args.n)
        key = lambda m: weak_b.signed_perm_from_inversions(g.labels_of(m), args.n).window
    elif kind == "flag":
        oracle = flag.flag_order_covers(args.r, args.n)
        key = lambda m: flag.psi(g, m, args.r).key()
    elif kind == "affine-a":
        k = args.max_rank
        census = weak_affine.affine_length_census(args.n, k)
        if lat.rank_sizes()[:k + 1] != census:
            problems.append(f"rank sizes {lat.rank_sizes()} differ from census {census}")
        return problems
    else:
        p = fam.poset
        want = posets.lower_sets(p) if kind == "downset" else posets.upper_sets(p)
        got = {frozenset(g.labels_of(e)) for e in lat.elements}
        if got != set(want):
            problems.append("initial sections differ from brute-force order ideals")
        seqs = {tuple(g.label(v) for v in s.order) for s in iter_peeling_sequences(g)}
        if kind == "downset" and seqs != set(posets.linear_extensions(p)):
            problems.append("peeling sequences differ from linear extensions")
        return problems
    mine = {}
    for i, e in enumerate(lat.elements):
        mine[key(e)] = {key(lat.elements[j]) for j in lat.covers[i]}
    if mine != {k: set(v) for k, v in oracle.items()}:
        problems.append("cover relation differs from the generator oracle")
    return problems


def cmd_verify_iso(args) -> int:
    if args.family == "affine-a" and args.max_rank is None:
        args.max_rank = 6
    fam = _family(args)
    if fam.kind == "raw":
        raise UsageError("raw digraphs have no reference order to compare with")
    lat = _lattice(args, fam)
    problems = _verify_group(fam.kind, args, lat, fam)
    if args.json:
        _emit_json({"elements": len(lat), "ok": not problems, "problems": problems})
    else:
        _emit("\n".join(problems) if problems else f"OK {len(lat)} elements")
    return EXIT_VERIFY if problems else EXIT_OK


COMMANDS = {
    "build": cmd_build, "moebius": cmd_moebius, "meet": cmd_meet, "join": cmd_join,
    "chains": cmd_chains, "symfun": cmd_symfun, "verify-iso": cmd_verify_iso,
    "export-dot": cmd_export_dot,
}


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="peeling", description="Initial-section lattices of valued digraphs.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--cap", type=int, default=lattice.DEFAULT_CAP,
                        help="maximum number of enumerated elements")
    parser.add_argument("--seed", type=int, default=0, help="seed for --random posets")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("family", choices=FAMILIES)
        p.add_argument("--n", type=int)
        p.add_argument("--r", type=int)
        p.add_argument("--depth", type=int, help="affine window depth")
        p.add_argument("--file", help="poset file (downset/upset) or digraph file (raw)")
        p.add_argument("--covers", action="store_true", help="close poset relations transitively")
        p.add_argument("--random", type=int, metavar="K", help="random poset on K elements")
        p.add_argument("--max-rank", type=int)
        p.add_argument("--perm", action="append", help="group element, e.g. 3,1,2 or '1,0 | 2,1'")
        p.add_argument("--element", action="append", help="initial section as vertex labels")
        if name == "build":
            p.add_argument("--dot", action="store_true")
        if name == "moebius":
            p.add_argument("--all", action="store_true")
            p.add_argument("--verify", action="store_true")
        if name == "symfun":
            p.add_argument("--m", type=int, default=3)
            p.add_argument("--method", choices=("gamma", "oracle", "both"), default="gamma")
            p.add_argument("--columns", help="generalized columns file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    args.dot = getattr(args, "dot", False)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"peeling: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, quasisym.EnumerationCap) as exc:
        print(f"peeling: cap reached: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (VdgParseError, posets.PosetParseError, NotInitialSection, JoinUnavailable,
            OSError, ValueError) as exc:
        print(f"peeling: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
