"""
Valued digraphs and the peeling process.

A valued digraph is a simple acyclic digraph on vertices ``0..n-1`` together
with a valuation ``theta`` satisfying ``0 <= theta[x] <= outdeg(x)``.  A vertex
is *erasable* when its value is zero and every in-neighbour has a nonzero
value; peeling it removes the vertex and decrements the value of each of its
in-neighbours.

Vertex sets are handled internally as integer bitmasks (bit ``x`` set when
vertex ``x`` is a member).

>>> g = ValuedDigraph.from_arcs([1, 0], [(0, 1)])
>>> is_erasable(g, 1), is_erasable(g, 0)
(True, False)
>>> [seq.order for seq in peeling_sequences(g, [0, 1])]
[(1, 0)]
"""

from __future__ import annotations

import random
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

__all__ = [
    "ValuedDigraph", "InitialSection", "PeelingSequence", "ValidationReport",
    "NotInitialSection", "NotErasable",
    "to_mask", "from_mask", "validate", "out_degree", "is_erasable", "peel",
    "residual", "residual_theta", "is_initial_section", "initial_section",
    "erasable_in_residual", "peeling_sequences", "iter_peeling_sequences",
    "random_valued_digraph",
]


class NotInitialSection(ValueError):
    pass


class NotErasable(ValueError):
    pass


def to_mask(vertices: Iterable[int] | InitialSection | int) -> int:
    if isinstance(vertices, int):
        return vertices
    if isinstance(vertices, InitialSection):
        return vertices.mask
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class ValuedDigraph:
    """
    Immutable valued digraph.  ``arcs`` keeps the order (and any duplicates)
    it was built with so that `validate` can report them; adjacency lookups
    use the derived neighbour tuples and bitmasks.
    """
    theta: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    labels: tuple[Hashable, ...] | None = None

    out_nbrs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_nbrs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _label_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.theta)
        if self.labels is not None and len(self.labels) != n:
            raise ValueError(f"got {len(self.labels)} labels for {n} vertices")
        outs = [set() for _ in range(n)]
        ins = [set() for _ in range(n)]
        for s, t in self.arcs:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"arc ({s}, {t}) references an unknown vertex")
            outs[s].add(t)
            ins[t].add(s)
        set_ = object.__setattr__
        set_(self, "out_nbrs", tuple(tuple(sorted(o)) for o in outs))
        set_(self, "in_nbrs", tuple(tuple(sorted(i)) for i in ins))
        set_(self, "out_masks", tuple(to_mask(o) for o in outs))
        set_(self, "in_masks", tuple(to_mask(i) for i in ins))
        index = {} if self.labels is None else {lab: v for v, lab in enumerate(self.labels)}
        set_(self, "_label_index", index)

    @classmethod
    def from_arcs(cls, theta: Sequence[int], arcs: Iterable[tuple[int, int]],
                  labels: Sequence[Hashable] | None = None) -> ValuedDigraph:
        return cls(tuple(theta), tuple((int(s), int(t)) for s, t in arcs),
                   None if labels is None else tuple(labels))

    @property
    def n(self) -> int:
        return len(self.theta)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> Hashable:
        return v if self.labels is None else self.labels[v]

    def vertex(self, label: Hashable) -> int:
        """Vertex id carrying ``label`` (ids are their own labels when unlabelled)."""
        if self.labels is None:
            if isinstance(label, int) and 0 <= label < self.n:
                return label
            raise KeyError(label)
        return self._label_index[label]

    def vertices_of(self, labels: Iterable[Hashable]) -> tuple[int, ...]:
        return tuple(sorted(self.vertex(lab) for lab in labels))

    def labels_of(self, vertices: Iterable[int] | InitialSection | int) -> tuple:
        return tuple(self.label(v) for v in from_mask(to_mask(vertices)))

    def _check(self, v: int):
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex {v}")


@dataclass(frozen=True)
class InitialSection:
    """Canonical (sorted) member tuple of an element of IS(g)."""
    members: tuple[int, ...]
    owner: ValuedDigraph | None = field(default=None, compare=False, repr=False)

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v):
        return v in self.members

    def __le__(self, other: InitialSection):
        return self.mask & ~other.mask == 0

    def __lt__(self, other: InitialSection):
        return self <= other and self.mask != other.mask

    @classmethod
    def from_mask(cls, mask: int, owner: ValuedDigraph | None = None) -> InitialSection:
        return cls(from_mask(mask), owner)


@dataclass(frozen=True)
class PeelingSequence:
    order: tuple[int, ...]

    def __len__(self):
        return len(self.order)

    def prefix_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.order[:k]) for k in range(len(self.order) + 1)]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    problems: tuple[str, ...]
    topological_order: tuple[int, ...] | None

    def __bool__(self):
        return self.valid


def validate(g: ValuedDigraph) -> ValidationReport:
    problems = []
    seen = set()
    for s, t in g.arcs:
        if s == t:
            problems.append(f"self-loop at {s}")
        elif (s, t) in seen:
            problems.append(f"duplicate arc ({s}, {t})")
        seen.add((s, t))
    for v, th in enumerate(g.theta):
        d = len(g.out_nbrs[v])
        if th < 0:
            problems.append(f"theta({v})={th} is negative")
        elif th > d:
            problems.append(f"theta({v})={th} exceeds out-degree {d}")
    order = None
    if not any(s == t for s, t in g.arcs):
        ts = TopologicalSorter({v: g.out_nbrs[v] for v in range(g.n)})
        try:
            # sinks first: reversed gives sources first
            order = tuple(reversed(tuple(ts.static_order())))
        except CycleError as exc:
            problems.append("cycle " + " -> ".join(map(str, exc.args[1])))
    return ValidationReport(not problems, tuple(problems), order if not problems else None)


def out_degree(g: ValuedDigraph, v: int) -> int:
    g._check(v)
    return len(g.out_nbrs[v])


def is_erasable(g: ValuedDigraph, v: int) -> bool:
    g._check(v)
    return g.theta[v] == 0 and all(g.theta[z] != 0 for z in g.in_nbrs[v])


def peel(g: ValuedDigraph, v: int) -> ValuedDigraph:
    """Remove the erasable vertex ``v``; surviving vertices are renumbered densely."""
    if not is_erasable(g, v):
        raise NotErasable(f"vertex {v} is not erasable")
    keep = [x for x in range(g.n) if x != v]
    new_id = {x: i for i, x in enumerate(keep)}
    theta = [g.theta[x] - (1 if v in g.out_nbrs[x] else 0) for x in keep]
    arcs = [(new_id[s], new_id[t]) for s, t in dict.fromkeys(g.arcs) if v not in (s, t)]
    labels = None if g.labels is None else [g.labels[x] for x in keep]
    if labels is None:
        labels = keep  # keep track of original ids
    return ValuedDigraph.from_arcs(theta, arcs, labels)


def residual_theta(g: ValuedDigraph, a) -> dict[int, int]:
    """theta_A on the vertices outside ``a``, computed as theta(x) - |A & out(x)|."""
    m = to_mask(a)
    return {x: g.theta[x] - (g.out_masks[x] & m).bit_count()
            for x in range(g.n) if not m >> x & 1}


def residual(g: ValuedDigraph, a) -> ValuedDigraph:
    """The valued digraph left after peeling the initial section ``a``."""
    m = to_mask(a)
    if not is_initial_section(g, m):
        raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    th = residual_theta(g, m)
    keep = sorted(th)
    new_id = {x: i for i, x in enumerate(keep)}
    arcs = [(new_id[s], new_id[t]) for s, t in dict.fromkeys(g.arcs)
            if s in new_id and t in new_id]
    labels = keep if g.labels is None else [g.labels[x] for x in keep]
    return ValuedDigraph.from_arcs([th[x] for x in keep], arcs, labels)


def is_initial_section(g: ValuedDigraph, s) -> bool:
    """Intrinsic membership test: values bounded above on ``s``, below off ``s``."""
    m = to_mask(s)
    if m >> g.n:
        return False
    for x in range(g.n):
        k = (g.out_masks[x] & m).bit_count()
        if m >> x & 1:
            if g.theta[x] > k:
                return False
        elif g.theta[x] < k:
            return False
    return True


def initial_section(g: ValuedDigraph, s) -> InitialSection:
    m = to_mask(s)
    if not is_initial_section(g, m):
        raise NotInitialSection(f"{from_mask(m)} is not an initial section")
    return InitialSection.from_mask(m, g)


def erasable_in_residual(g: ValuedDigraph, a, within: int | None = None) -> list[int]:
    """Vertices erasable after peeling ``a`` (optionally restricted to the mask ``within``)."""
    m = to_mask(a)
    th = g.theta
    outm = g.out_masks
    res = []
    cand = g.full_mask & ~m
    if within is not None:
        cand &= within
    for x in from_mask(cand):
        if th[x] - (outm[x] & m).bit_count():
            continue
        if all(th[z] - (outm[z] & m).bit_count() for z in g.in_nbrs[x] if not m >> z & 1):
            res.append(x)
    return res


def iter_peeling_sequences(g: ValuedDigraph, a=None):
    """
    Depth-first enumeration of the orderings of ``a`` realisable by peeling
    (all complete peeling sequences when ``a`` is None).  Erasable vertices
    are tried in ascending id order.
    """
    target = g.full_mask if a is None else to_mask(a)
    if a is not None and not is_initial_section(g, target):
        raise NotInitialSection(f"{from_mask(target)} is not an initial section")
    seq = []

    def rec(done):
        if done == target:
            yield PeelingSequence(tuple(seq))
            return
        for x in erasable_in_residual(g, done, within=target):
            seq.append(x)
            yield from rec(done | 1 << x)
            seq.pop()

    yield from rec(0)


def peeling_sequences(g: ValuedDigraph, a=None) -> list[PeelingSequence]:
    return list(iter_peeling_sequences(g, a))


def random_valued_digraph(k: int, rng: random.Random, density: float = 0.4) -> ValuedDigraph:
    """Random simple DAG on ``k`` vertices (hidden random order), values uniform in ``[0, outdeg]``."""
    order = list(range(k))
    rng.shuffle(order)
    arcs = [(order[i], order[j]) for i in range(k) for j in range(i + 1, k)
            if rng.random() < density]
    outdeg = [0] * k
    for s, _ in arcs:
        outdeg[s] += 1
    return ValuedDigraph.from_arcs([rng.randint(0, d) for d in outdeg], sorted(arcs))
