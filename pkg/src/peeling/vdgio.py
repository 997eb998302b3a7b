"""
Reading and writing valued digraphs.

Text format, one digraph per file::

    vdg 3
    vertex 0 1 c
    vertex 1 0 a
    vertex 2 0 b
    arc 0 1
    arc 0 2

Blank lines and ``#`` comments are ignored.  The JSON mirror is
``{"n": 3, "vertices": [{"id": 0, "theta": 1, "label": "c"}, ...], "arcs": [[0, 1], ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .digraph import ValuedDigraph, validate
from .lattice import _format_label

__all__ = ["VdgParseError", "parse_vdg", "format_vdg", "vdg_to_json", "vdg_from_json", "load_vdg"]


class VdgParseError(ValueError):
    pass


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise VdgParseError(f"line {lineno}: {what} must be an integer, got {tok!r}") from None


def parse_vdg(text: str) -> ValuedDigraph:
    n = None
    theta: dict[int, int] = {}
    labels: dict[int, str] = {}
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if n is None:
            if kind != "vdg" or len(parts) != 2:
                raise VdgParseError(f"line {lineno}: expected header 'vdg <n>'")
            n = _int(parts[1], lineno, "vertex count")
            if n < 0:
                raise VdgParseError(f"line {lineno}: negative vertex count")
        elif kind == "vertex":
            if len(parts) not in (3, 4):
                raise VdgParseError(f"line {lineno}: expected 'vertex <id> <theta> [label]'")
            v = _int(parts[1], lineno, "vertex id")
            if not 0 <= v < n:
                raise VdgParseError(f"line {lineno}: vertex id {v} outside 0..{n - 1}")
            if v in theta:
                raise VdgParseError(f"line {lineno}: vertex {v} declared twice")
            theta[v] = _int(parts[2], lineno, "theta")
            if len(parts) == 4:
                labels[v] = parts[3]
        elif kind == "arc":
            if len(parts) != 3:
                raise VdgParseError(f"line {lineno}: expected 'arc <src> <dst>'")
            s, t = _int(parts[1], lineno, "arc source"), _int(parts[2], lineno, "arc target")
            for v in (s, t):
                if not 0 <= v < n:
                    raise VdgParseError(f"line {lineno}: arc endpoint {v} outside 0..{n - 1}")
            arcs.append((s, t))
        else:
            raise VdgParseError(f"line {lineno}: unknown directive {kind!r}")
    if n is None:
        raise VdgParseError("line 1: missing header 'vdg <n>'")
    missing = [v for v in range(n) if v not in theta]
    if missing:
        raise VdgParseError(f"vertices never declared: {missing}")
    lab = None
    if labels:
        lab = [labels.get(v, str(v)) for v in range(n)]
        if len(set(lab)) != n:
            raise VdgParseError("vertex labels must be distinct")
    g = ValuedDigraph.from_arcs([theta[v] for v in range(n)], arcs, lab)
    report = validate(g)
    if not report.valid:
        raise VdgParseError("invalid valued digraph: " + "; ".join(report.problems))
    return g


def format_vdg(g: ValuedDigraph) -> str:
    lines = [f"vdg {g.n}"]
    for v in range(g.n):
        suffix = "" if g.labels is None else " " + _format_label(g.labels[v])
        lines.append(f"vertex {v} {g.theta[v]}{suffix}")
    lines += [f"arc {s} {t}" for s, t in sorted(dict.fromkeys(g.arcs))]
    return "\n".join(lines) + "\n"


def vdg_to_json(g: ValuedDigraph) -> dict:
    verts = []
    for v in range(g.n):
        d = {"id": v, "theta": g.theta[v]}
        if g.labels is not None:
            d["label"] = _format_label(g.labels[v])
        verts.append(d)
    return {"n": g.n, "vertices": verts, "arcs": [list(a) for a in sorted(dict.fromkeys(g.arcs))]}


def vdg_from_json(data: dict) -> ValuedDigraph:
    try:
        n = int(data["n"])
        verts = sorted(data["vertices"], key=lambda d: d["id"])
        if [d["id"] for d in verts] != list(range(n)):
            raise VdgParseError("vertex ids must be exactly 0..n-1")
        labels = [d["label"] for d in verts] if any("label" in d for d in verts) else None
        if labels is not None and None in labels:
            raise VdgParseError("either every vertex has a label or none does")
        g = ValuedDigraph.from_arcs([int(d["theta"]) for d in verts],
                                    [tuple(a) for a in data["arcs"]], labels)
    except (KeyError, TypeError) as exc:
        raise VdgParseError(f"malformed JSON digraph: {exc}") from None
    report = validate(g)
    if not report.valid:
        raise VdgParseError("invalid valued digraph: " + "; ".join(report.problems))
    return g


def load_vdg(path: str | Path) -> ValuedDigraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return vdg_from_json(json.loads(text))
    return parse_vdg(text)
