"""
Down-set and up-set lattices of finite posets, seen as valued digraphs.

The digraph has an arc ``x -> y`` whenever ``x < y``.  With every value set to
zero its initial sections are the lower sets and its peeling sequences are the
linear extensions; valuing each vertex by its out-degree gives the upper sets.
"""

from __future__ import annotations

import random
from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from itertools import combinations, permutations

from .digraph import ValuedDigraph

__all__ = [
    "FinitePoset", "PosetParseError", "build_downset", "build_upset",
    "linear_extensions", "lower_sets", "upper_sets", "random_poset",
    "parse_poset", "format_poset",
]


class PosetParseError(ValueError):
    pass


@dataclass(frozen=True)
class FinitePoset:
    """
    ``relation`` holds the strict pairs ``(x, y)`` with ``x < y``; reflexive
    pairs are implied and dropped on construction.
    """
    elements: tuple[Hashable, ...]
    relation: frozenset[tuple[Hashable, Hashable]]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        rel = frozenset((x, y) for x, y in self.relation if x != y)
        object.__setattr__(self, "relation", rel)
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("duplicate poset element")
        for x, y in rel:
            if x not in elems or y not in elems:
                raise ValueError(f"relation ({x}, {y}) uses an unknown element")
            if (y, x) in rel:
                raise ValueError(f"antisymmetry fails for {x} and {y}")
        for x, y in rel:
            for u, z in rel:
                if u == y and (x, z) not in rel:
                    raise ValueError(f"not transitive: {x} < {y} < {z}")

    @classmethod
    def from_covers(cls, elements: Iterable[Hashable],
                    covers: Iterable[tuple[Hashable, Hashable]]) -> FinitePoset:
        """Transitive closure of a cover (or any acyclic) relation."""
        elements = tuple(elements)
        up = {e: set() for e in elements}
        for x, y in covers:
            if x not in up or y not in up:
                raise ValueError(f"relation ({x}, {y}) uses an unknown element")
            up[x].add(y)
        closure = set()
        for e in elements:
            stack = list(up[e])
            seen = set()
            while stack:
                z = stack.pop()
                if z in seen:
                    continue
                seen.add(z)
                stack.extend(up[z])
            if e in seen:
                raise ValueError(f"cycle through {e}")
            closure.update((e, z) for z in seen)
        return cls(elements, frozenset(closure))

    def less(self, x, y) -> bool:
        return (x, y) in self.relation

    def __len__(self):
        return len(self.elements)


def _digraph(p: FinitePoset, theta) -> ValuedDigraph:
    idx = {e: i for i, e in enumerate(p.elements)}
    arcs = sorted((idx[x], idx[y]) for x, y in p.relation)
    return ValuedDigraph.from_arcs(theta, arcs, p.elements)


def build_downset(p: FinitePoset) -> ValuedDigraph:
    return _digraph(p, [0] * len(p))


def build_upset(p: FinitePoset) -> ValuedDigraph:
    theta = [sum(1 for y in p.elements if p.less(x, y)) for x in p.elements]
    return _digraph(p, theta)


def linear_extensions(p: FinitePoset) -> list[tuple]:
    """All orderings compatible with the order, by filtering every permutation."""
    out = []
    for order in permutations(p.elements):
        rank = {e: i for i, e in enumerate(order)}
        if all(rank[x] < rank[y] for x, y in p.relation):
            out.append(order)
    return out


def lower_sets(p: FinitePoset) -> list[frozenset]:
    out = []
    for k in range(len(p) + 1):
        for sub in combinations(p.elements, k):
            s = set(sub)
            if all(x in s for x, y in p.relation if y in s):
                out.append(frozenset(sub))
    return out


def upper_sets(p: FinitePoset) -> list[frozenset]:
    full = frozenset(p.elements)
    return [full - s for s in lower_sets(p)]


def random_poset(k: int, rng: random.Random, density: float = 0.3) -> FinitePoset:
    """Random poset on ``0..k-1``: random arcs compatible with a shuffled order, then closed."""
    order = list(range(k))
    rng.shuffle(order)
    covers = [(order[i], order[j]) for i in range(k) for j in range(i + 1, k)
              if rng.random() < density]
    return FinitePoset.from_covers(range(k), covers)


def parse_poset(text: str, covers: bool = False) -> FinitePoset:
    """
    Parse the text poset format::

        poset 3
        x
        y
        z
        rel z x
        rel z y

    With ``covers`` set the ``rel`` lines are closed transitively; otherwise
    they must already form a partial order.
    """
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise PosetParseError("line 1: empty poset file")
    i, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "poset" or not parts[1].isdigit():
        raise PosetParseError(f"line {i}: expected 'poset <k>'")
    k = int(parts[1])
    elements, rels = [], []
    for i, ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "rel":
            if len(parts) != 3:
                raise PosetParseError(f"line {i}: expected 'rel <x> <y>'")
            for e in parts[1:]:
                if e not in elements:
                    raise PosetParseError(f"line {i}: unknown element {e!r}")
            rels.append((parts[1], parts[2]))
        else:
            if len(parts) != 1:
                raise PosetParseError(f"line {i}: element names may not contain spaces")
            if rels:
                raise PosetParseError(f"line {i}: element listed after a rel line")
            if parts[0] in elements:
                raise PosetParseError(f"line {i}: duplicate element {parts[0]!r}")
            elements.append(parts[0])
    if len(elements) != k:
        raise PosetParseError(f"line {lines[0][0]}: header announces {k} elements, found {len(elements)}")
    try:
        if covers:
            return FinitePoset.from_covers(elements, rels)
        return FinitePoset(tuple(elements), frozenset(rels))
    except ValueError as exc:
        raise PosetParseError(str(exc)) from None


def format_poset(p: FinitePoset) -> str:
    lines = [f"poset {len(p)}"] + [str(e) for e in p.elements]
    lines += [f"rel {x} {y}" for x, y in sorted(p.relation, key=lambda xy: (str(xy[0]), str(xy[1])))]
    return "\n".join(lines) + "\n"
