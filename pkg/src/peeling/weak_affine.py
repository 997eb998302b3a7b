"""
Cylindrical valued digraph for the right weak order on the affine symmetric
group with generators ``s_1..s_n`` (period n).

The digraph is infinite, so it is only ever materialised through a finite
window of some depth D: the boxes ``(a, b)`` with ``1 <= a <= n``,
``a < b <= a + D*n`` and ``b`` not congruent to ``a`` mod n.  Arcs only go to
boxes with a smaller ``b - a``, so a window is closed under out-arcs.  A box
outside the window has value at least ``D*(n-1)``; it can neither block an
erasure nor break the membership test for a set smaller than that.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache

from .digraph import (
    NotInitialSection, ValuedDigraph, is_initial_section, iter_peeling_sequences,
)

__all__ = [
    "AffinePermutation", "cyl_boxes", "is_cyl_box", "cyl_hook", "build_affine",
    "inv_affine", "affine_perm_from_inversions", "d_sigma_affine", "affine_adjacent",
    "sufficient_depth", "depth_for_rank", "affine_elements", "affine_length_census",
    "weak_order_covers_affine",
]

Box = tuple[int, int]


@dataclass(frozen=True)
class AffinePermutation:
    """
    Affine permutation stored by its base window ``sigma(1), ..., sigma(n)``.

    >>> s1 = AffinePermutation((2, 1, 3))
    >>> s1(4), s1(5), s1.position(5)
    (5, 4, 4)
    """
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if n < 1 or sorted(x % n for x in w) != list(range(n)):
            raise ValueError(f"{w}: entries must be distinct modulo {n}")
        if sum(w) != n * (n + 1) // 2:
            raise ValueError(f"{w}: window must sum to {n * (n + 1) // 2}")

    @classmethod
    def identity(cls, n: int) -> AffinePermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> AffinePermutation:
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        k, q = divmod(i - 1, self.n)
        return self.window[q] + k * self.n

    def __str__(self):
        return ",".join(map(str, self.window))

    def position(self, v: int) -> int:
        """sigma^{-1}(v)."""
        n = self.n
        for q, x in enumerate(self.window, 1):
            if (v - x) % n == 0:
                return q + (v - x)
        raise AssertionError("unreachable")

    def inverse(self) -> AffinePermutation:
        return AffinePermutation(tuple(self.position(v) for v in range(1, self.n + 1)))

    def __mul__(self, other: AffinePermutation) -> AffinePermutation:
        """(self * other)(i) = self(other(i))."""
        return AffinePermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def right_mul(self, i: int) -> AffinePermutation:
        """sigma * s_i, which swaps the values in positions i and i+1 (mod n)."""
        n = self.n
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        w = list(self.window)
        if i < n:
            w[i - 1], w[i] = w[i], w[i - 1]
        else:
            w[0], w[n - 1] = w[n - 1] - n, w[0] + n
        return AffinePermutation(tuple(w))

    def ascends_at(self, i: int) -> bool:
        """True when sigma * s_i is longer than sigma."""
        return self(i) < self(i + 1)

    def length(self) -> int:
        w, n = self.window, self.n
        return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))


def is_cyl_box(box: Box, n: int) -> bool:
    a, b = box
    return 1 <= a <= n and b > a and (b - a) % n != 0


def cyl_boxes(n: int, depth: int) -> list[Box]:
    """Window boxes ordered by (b - a, a)."""
    return sorted(((a, b) for a in range(1, n + 1) for b in range(a + 1, a + depth * n + 1)
                   if (b - a) % n),
                  key=lambda ab: (ab[1] - ab[0], ab[0]))


def cyl_hook(box: Box, n: int) -> set[Box]:
    """
    Hook of ``box`` without the box itself: the column boxes ``(a, k)`` below
    it, and the row boxes ``(c, b)`` for ``a < c < b`` translated by a multiple
    of n so that the first coordinate lands in ``[n]``.
    """
    a, b = box
    out = set()
    for k in range(a + 1, b):
        if (k - a) % n:
            out.add((a, k))
        if (b - k) % n:
            j = (k - 1) // n
            out.add((k - j * n, b - j * n))
    out.discard(box)
    return out


def _theta(box: Box, n: int) -> int:
    a, b = box
    return sum(1 for k in range(a + 1, b) if (k - a) % n)


@lru_cache(maxsize=None)
def build_affine(n: int, depth: int) -> ValuedDigraph:
    if n < 2 or depth < 1:
        raise ValueError("need n >= 2 and depth >= 1")
    boxes = cyl_boxes(n, depth)
    idx = {box: i for i, box in enumerate(boxes)}
    arcs = [(idx[box], idx[d]) for box in boxes for d in sorted(cyl_hook(box, n))]
    return ValuedDigraph.from_arcs([_theta(box, n) for box in boxes], arcs, boxes)


def inv_affine(p: AffinePermutation) -> frozenset[Box]:
    n = p.n
    reach = max(p(q) - q for q in range(1, n + 1))
    out = set()
    for a in range(1, n + 1):
        pa = p.position(a)
        for b in range(a + 1, pa + reach + 1):
            if p.position(b) < pa:
                out.add((a, b))
    return frozenset(out)


def sufficient_depth(s: Iterable[Box], n: int) -> int:
    """
    A window depth in which questions about the finite set ``s`` (membership,
    erasability, peeling) get the same answers as in the infinite digraph.
    """
    s = list(s)
    if not s:
        return 1
    max_b = max(b for _, b in s)
    return -(-(max_b - 1) // n) + len(s) + 1


def depth_for_rank(k: int, n: int) -> int:
    """Smallest depth whose outside boxes all have value above ``k``."""
    return k // (n - 1) + 1


def affine_perm_from_inversions(s: Iterable[Box], n: int) -> AffinePermutation:
    s = frozenset(s)
    for box in s:
        if not is_cyl_box(box, n):
            raise NotInitialSection(f"{box} is not a cylindrical box for n={n}")
    g = build_affine(n, sufficient_depth(s, n))
    ids = [g.vertex(box) for box in s]
    if not is_initial_section(g, ids):
        raise NotInitialSection("not an affine inversion set")
    order = next(iter_peeling_sequences(g, ids)).order
    p = AffinePermutation.identity(n)
    for v in order:
        a, b = g.label(v)
        pa = p.position(a)
        assert p.position(b) == pa + 1, "peeled box is not an adjacent pair"
        p = p.right_mul((pa - 1) % n + 1)
    assert inv_affine(p) == s
    return p


def d_sigma_affine(p: AffinePermutation, box: Box) -> int:
    a, b = box
    n = p.n
    pa, pb = p.position(a), p.position(b)
    if pa > pb:
        raise ValueError(f"{box} is an inversion of {p}")
    return sum(1 for k in range(a + 1, b) if (k - a) % n and pa < p.position(k) < pb)


def affine_adjacent(p: AffinePermutation, a: int, b: int) -> bool:
    return p.position(b) == p.position(a) + 1


def _bfs(n: int, max_len: int):
    start = AffinePermutation.identity(n)
    level = {start: 0}
    covers = {start: set()}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        if level[p] == max_len:
            continue
        for i in range(1, n + 1):
            if p.ascends_at(i):
                q = p.right_mul(i)
                covers[p].add(q)
                if q not in level:
                    level[q] = level[p] + 1
                    covers[q] = set()
                    queue.append(q)
    return level, covers


def affine_elements(n: int, max_len: int) -> dict[int, list[AffinePermutation]]:
    """Affine permutations grouped by length, found by search over generators."""
    level, _ = _bfs(n, max_len)
    out: dict[int, list[AffinePermutation]] = {k: [] for k in range(max_len + 1)}
    for p, k in level.items():
        out[k].append(p)
    for k in out:
        out[k].sort(key=lambda p: p.window)
    return out


def affine_length_census(n: int, max_len: int) -> list[int]:
    """Number of affine permutations of each length 0..max_len."""
    return [len(v) for _, v in sorted(affine_elements(n, max_len).items())]


def weak_order_covers_affine(n: int, max_len: int) -> dict[AffinePermutation, set[AffinePermutation]]:
    return _bfs(n, max_len)[1]
