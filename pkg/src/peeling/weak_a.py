"""
Staircase valued digraph for the right weak order on the symmetric group.

Boxes are pairs ``(a, b)`` with ``1 <= a < b <= n``; the hook of ``(a, b)``
points to ``(a, k)`` and ``(k, b)`` for every ``a < k < b`` and the valuation
is ``b - a - 1`` (half the out-degree).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import permutations

from .digraph import NotInitialSection, ValuedDigraph, is_initial_section, out_degree

__all__ = [
    "Permutation", "staircase_boxes", "build_a", "inversion_set",
    "permutation_from_inversions", "d_sigma", "adjacent", "weak_order_covers",
    "all_permutations",
]

Box = tuple[int, int]


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..n`` in one-line (window) notation."""
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{len(w)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1]

    def __str__(self):
        return ",".join(map(str, self.window))

    def position(self, value: int) -> int:
        """sigma^{-1}(value), 1-based."""
        return self.window.index(value) + 1

    def positions(self) -> list[int]:
        pos = [0] * (self.n + 1)
        for i, v in enumerate(self.window, 1):
            pos[v] = i
        return pos

    def inverse(self) -> Permutation:
        return Permutation(tuple(self.positions()[1:]))

    def right_mul(self, i: int) -> Permutation:
        """sigma * s_i: swap the entries in positions i and i+1."""
        w = list(self.window)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def length(self) -> int:
        w = self.window
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def descents(self) -> list[int]:
        return [i for i in range(1, self.n) if self(i) > self(i + 1)]


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def staircase_boxes(n: int) -> list[Box]:
    """Boxes of the staircase in row-major order of (b - a, a)."""
    return sorted(((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)),
                  key=lambda ab: (ab[1] - ab[0], ab[0]))


@lru_cache(maxsize=None)
def build_a(n: int) -> ValuedDigraph:
    if n < 1:
        raise ValueError("n must be positive")
    boxes = staircase_boxes(n)
    idx = {box: i for i, box in enumerate(boxes)}
    arcs = []
    for a, b in boxes:
        for k in range(a + 1, b):
            arcs.append((idx[a, b], idx[a, k]))
            arcs.append((idx[a, b], idx[k, b]))
    theta = [b - a - 1 for a, b in boxes]
    g = ValuedDigraph.from_arcs(theta, arcs, boxes)
    for v, th in enumerate(theta):
        assert 2 * th == out_degree(g, v)
    return g


def inversion_set(p: Permutation) -> frozenset[Box]:
    pos = p.positions()
    n = p.n
    return frozenset((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                     if pos[a] > pos[b])


def permutation_from_inversions(s: Iterable[Box], n: int) -> Permutation:
    """The permutation whose inversion set is ``s``."""
    s = frozenset(s)
    g = build_a(n)
    try:
        ids = [g.vertex(box) for box in s]
    except KeyError as exc:
        raise NotInitialSection(f"not an inversion set: bad box {exc.args[0]}") from None
    if not is_initial_section(g, ids):
        raise NotInitialSection("not an inversion set")

    def before(x, y):
        # value x precedes y unless the pair is inverted
        if x == y:
            return 0
        if x < y:
            return 1 if (x, y) in s else -1
        return -1 if (y, x) in s else 1

    return Permutation(tuple(sorted(range(1, n + 1), key=cmp_to_key(before))))


def d_sigma(p: Permutation, box: Box) -> int:
    a, b = box
    pos = p.positions()
    if pos[a] > pos[b]:
        raise ValueError(f"{box} is an inversion of {p}")
    return sum(1 for k in range(a + 1, b) if pos[a] < pos[k] < pos[b])


def adjacent(p: Permutation, a: int, b: int) -> bool:
    pos = p.positions()
    return pos[b] == pos[a] + 1


def weak_order_covers(n: int) -> dict[tuple[int, ...], set[tuple[int, ...]]]:
    """
    Right weak order on S_n from first principles: breadth-first search from
    the identity, multiplying on the right by s_i whenever sigma(i) < sigma(i+1)
    (a length increase).  Keys and values are windows.
    """
    start = tuple(range(1, n + 1))
    covers = {start: set()}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(n - 1):
            if w[i] < w[i + 1]:
                u = list(w)
                u[i], u[i + 1] = u[i + 1], u[i]
                u = tuple(u)
                covers[w].add(u)
                if u not in covers:
                    covers[u] = set()
                    queue.append(u)
    return covers
