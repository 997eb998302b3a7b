"""
The poset of initial sections ordered by inclusion: construction by rank,
meet/join, Möbius function and maximal-chain counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from collections.abc import Callable, Sequence

from .digraph import (
    InitialSection, NotInitialSection, ValuedDigraph, erasable_in_residual,
    from_mask, is_initial_section, to_mask,
)

__all__ = [
    "ISLattice", "MoebiusWitness", "CapExceeded", "JoinUnavailable",
    "DEFAULT_CAP", "build", "meet", "meet_brute_force", "join", "moebius",
    "moebius_witness", "moebius_oracle", "moebius_table_oracle", "moebius_interval",
    "maximal_chain_count", "interval_masks", "element_label", "to_dot", "to_json", "dumps",
]

DEFAULT_CAP = 200_000


class CapExceeded(RuntimeError):
    pass


class JoinUnavailable(ValueError):
    pass


@dataclass
class ISLattice:
    graph: ValuedDigraph
    elements: list[int]                 # bitmasks, grouped by rank
    ranks: list[list[int]]              # element indices per rank
    covers: list[list[int]]             # covers[i]: indices j with elements[j] covering elements[i]
    bounded: bool                       # True when built in full (finite, untruncated)
    index: dict[int, int] = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s) -> bool:
        return to_mask(s) in self.index

    def section(self, i: int) -> InitialSection:
        return InitialSection.from_mask(self.elements[i], self.graph)

    def sections(self) -> list[InitialSection]:
        return [self.section(i) for i in range(len(self.elements))]

    def rank_sizes(self) -> list[int]:
        return [len(r) for r in self.ranks]

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, cs in enumerate(self.covers) for j in cs]

    @property
    def top(self) -> int | None:
        if self.bounded and len(self.ranks[-1]) == 1:
            return self.ranks[-1][0]
        return None


def build(g: ValuedDigraph, max_rank: int | None = None, cap: int = DEFAULT_CAP) -> ISLattice:
    """
    Enumerate IS(g) rank by rank starting from the empty set; each layer adds
    one erasable vertex of the residual to an element of the previous layer.
    """
    elements = [0]
    index = {0: 0}
    ranks = [[0]]
    covers: list[list[int]] = [[]]
    frontier = [0]
    k = 0
    while frontier and (max_rank is None or k < max_rank):
        nxt = {}
        for i in frontier:
            m = elements[i]
            for x in erasable_in_residual(g, m):
                nm = m | 1 << x
                nxt.setdefault(nm, []).append(i)
        # canonical order inside a rank: sorted member tuples
        layer = sorted(nxt, key=from_mask)
        if len(elements) + len(layer) > cap:
            raise CapExceeded(f"more than {cap} lattice elements")
        new_frontier = []
        for nm in layer:
            j = len(elements)
            elements.append(nm)
            index[nm] = j
            covers.append([])
            for i in nxt[nm]:
                covers[i].append(j)
            new_frontier.append(j)
        for i in frontier:
            covers[i].sort()
        k += 1
        if new_frontier:
            ranks.append(new_frontier)
        frontier = new_frontier
    bounded = not frontier
    return ISLattice(g, elements, ranks, covers, bounded, index)


def _residual_values(g: ValuedDigraph, removed: int) -> list[int]:
    return [g.theta[x] - (g.out_masks[x] & removed).bit_count() for x in range(g.n)]


def meet(g: ValuedDigraph, sections: Sequence) -> InitialSection:
    """
    Greatest lower bound: intersect the members, then peel erasable vertices
    lying in the intersection for as long as one exists.
    """
    if not sections:
        raise ValueError("meet of an empty family")
    masks = [to_mask(s) for s in sections]
    for m in masks:
        if not is_initial_section(g, m):
            raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    x = masks[0]
    for m in masks[1:]:
        x &= m
    c = 0
    while True:
        found = erasable_in_residual(g, c, within=x & ~c)
        if not found:
            break
        c |= 1 << found[0]
    return InitialSection.from_mask(c, g)


def meet_brute_force(lat: ISLattice, sections: Sequence) -> int:
    """Largest common lower bound found by scanning every element of ``lat``."""
    masks = [to_mask(s) for s in sections]
    lower = [e for e in lat.elements if all(e & ~m == 0 for m in masks)]
    best = max(lower, key=lambda e: e.bit_count())
    for e in lower:
        if e & ~best:
            raise AssertionError("common lower bounds have no maximum")
    return best


def join(g: ValuedDigraph, sections: Sequence, lattice: ISLattice | None = None,
         cap: int = DEFAULT_CAP) -> InitialSection:
    """Meet of all common upper bounds (needs the full lattice)."""
    if not sections:
        raise ValueError("join of an empty family")
    masks = [to_mask(s) for s in sections]
    for m in masks:
        if not is_initial_section(g, m):
            raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    lat = lattice if lattice is not None else build(g, cap=cap)
    union = 0
    for m in masks:
        union |= m
    upper = [e for e in lat.elements if union & ~e == 0]
    if not upper:
        raise JoinUnavailable("no common upper bound in the materialised lattice")
    if not lat.bounded:
        # least element among materialised upper bounds may not be the join
        best = min(upper, key=lambda e: e.bit_count())
        if any(best & ~e for e in upper):
            raise JoinUnavailable("truncated lattice: join not determined")
    return meet(g, upper)


@dataclass(frozen=True)
class MoebiusWitness:
    n_set: tuple[int, ...]
    f_set: tuple[int, ...]

    @property
    def value(self) -> int:
        if self.n_set == self.f_set:
            return -1 if len(self.n_set) % 2 else 1
        return 0


def moebius_witness(g: ValuedDigraph, a) -> MoebiusWitness:
    m = to_mask(a)
    if not is_initial_section(g, m):
        raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    members = from_mask(m)
    n_set = tuple(x for x in members if g.theta[x] == 0)
    f_set = tuple(x for x in members if is_initial_section(g, m & ~(1 << x)))
    return MoebiusWitness(n_set, f_set)


def moebius(g: ValuedDigraph, a, b=None) -> int:
    """
    mu(b, a) via the zero-value / removable-vertex criterion; ``b`` defaults to
    the empty set.  A nonempty ``b`` is handled by peeling it first and applying
    the criterion in the residual digraph.
    """
    if b is None or to_mask(b) == 0:
        return moebius_witness(g, a).value
    am, bm = to_mask(a), to_mask(b)
    if bm & ~am:
        return 0
    if not is_initial_section(g, bm):
        raise NotInitialSection(f"{from_mask(bm)} is not an initial section")
    rest = am & ~bm
    th = _residual_values(g, bm)
    members = from_mask(rest)
    n_set = tuple(x for x in members if th[x] == 0)
    f_set = tuple(x for x in members if is_initial_section(g, am & ~(1 << x)))
    return MoebiusWitness(n_set, f_set).value


def interval_masks(g: ValuedDigraph, a, b=0, cap: int = DEFAULT_CAP) -> list[int]:
    """Elements of IS(g) between ``b`` and ``a``, reached by peeling inside ``a``."""
    am, bm = to_mask(a), to_mask(b)
    for m in (am, bm):
        if not is_initial_section(g, m):
            raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    if bm & ~am:
        return []
    seen = {bm}
    layer = [bm]
    out = [bm]
    while layer:
        nxt = []
        for m in layer:
            for x in erasable_in_residual(g, m, within=am):
                nm = m | 1 << x
                if nm not in seen:
                    seen.add(nm)
                    nxt.append(nm)
        if len(seen) > cap:
            raise CapExceeded(f"interval larger than {cap}")
        nxt.sort(key=from_mask)
        out.extend(nxt)
        layer = nxt
    return out


def moebius_interval(elements: list[int], bottom: int) -> dict[int, int]:
    """Recursive definition of mu(bottom, .) over a rank-sorted element list."""
    mu = {}
    seen = []
    for e in sorted(elements, key=lambda e: e.bit_count()):
        if e & bottom != bottom:
            continue
        if e == bottom:
            mu[e] = 1
        else:
            mu[e] = -sum(mu[f] for f in seen if f & ~e == 0)
        seen.append(e)
    return mu


def moebius_oracle(g: ValuedDigraph, a, cap: int = DEFAULT_CAP) -> int:
    am = to_mask(a)
    return moebius_interval(interval_masks(g, am, cap=cap), 0)[am]


def moebius_table_oracle(lat: ISLattice) -> list[int]:
    """mu(empty, A) for every element of a built lattice, by the recursive definition."""
    mu = moebius_interval(lat.elements, 0)
    return [mu[e] for e in lat.elements]


def maximal_chain_count(g: ValuedDigraph, a, cap: int = DEFAULT_CAP) -> int:
    """Number of maximal chains from the empty set to ``a`` (= peeling orders of ``a``)."""
    am = to_mask(a)
    if not is_initial_section(g, am):
        raise NotInitialSection(f"{from_mask(am)} is not an initial section")
    memo = {0: 1}
    stack = [am]
    while stack:
        m = stack[-1]
        if m in memo:
            stack.pop()
            continue
        below = [m & ~(1 << x) for x in from_mask(m)
                 if is_initial_section(g, m & ~(1 << x))]
        pending = [b for b in below if b not in memo]
        if pending:
            stack.extend(pending)
            if len(memo) + len(stack) > cap:
                raise CapExceeded(f"more than {cap} interval elements")
            continue
        memo[m] = sum(memo[b] for b in below)
        stack.pop()
    return memo[am]


def _format_label(lab) -> str:
    if isinstance(lab, tuple):
        return "(" + ",".join(map(str, lab)) + ")"
    return str(lab)


def element_label(g: ValuedDigraph, mask: int) -> str:
    return "{" + ", ".join(_format_label(l) for l in g.labels_of(mask)) + "}"


def to_dot(lat: ISLattice, name: str = "IS",
           label: Callable[[int], str] | None = None) -> str:
    """Hasse diagram in DOT; each rank is placed on its own level."""
    label = label or (lambda m: element_label(lat.graph, m))
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, e in enumerate(lat.elements):
        text = label(e).replace('"', '\\"')
        lines.append(f'  n{i} [label="{text}"];')
    for k, r in enumerate(lat.ranks):
        lines.append("  { rank=same; " + " ".join(f"n{i};" for i in r) + " }" + f"  // rank {k}")
    for i, j in lat.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(lat: ISLattice, with_moebius: bool = True) -> dict:
    g = lat.graph
    out = {
        "elements": [[_jsonable(l) for l in g.labels_of(e)] for e in lat.elements],
        "covers": [[i, j] for i, j in lat.cover_pairs()],
        "bounded": lat.bounded,
    }
    if with_moebius:
        out["moebius"] = [moebius(g, e) for e in lat.elements]
    return out


def _jsonable(lab):
    if isinstance(lab, tuple):
        return list(lab)
    return lab


def dumps(lat: ISLattice) -> str:
    return json.dumps(to_json(lat), sort_keys=True)
