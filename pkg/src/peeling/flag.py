"""
Valued digraph for the flag weak order on colored permutations ``G(r, n)``.

Vertices come in two regions.  The A-region is the staircase (pairs
``1 <= a < b <= n``) with its usual hooks.  The B-region holds boxes ``(a, b)``
with ``b`` in ``[n]`` and ``-b(r-1) <= a <= -1``; a B-box points to every box
``(x, b)`` of the same row with ``x > a``.  Values are ``b - a - 1`` on the
A-region and ``b + floor(a / (r-1))`` on the B-region.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .digraph import NotInitialSection, ValuedDigraph, is_initial_section, to_mask
from .weak_a import Permutation, inversion_set, permutation_from_inversions

__all__ = [
    "ColoredPermutation", "flag_boxes", "build_flag", "finv", "psi", "psi_inverse",
    "is_flag_cover", "generator", "all_colored_permutations", "flag_order_covers",
]

Box = tuple[int, int]


@dataclass(frozen=True)
class ColoredPermutation:
    """
    ``((c_1, ..., c_n), sigma)`` with colors in ``0..r-1``.

    >>> str(ColoredPermutation((1, 0), Permutation((2, 1)), 2))
    '1,0 | 2,1'
    """
    colors: tuple[int, ...]
    perm: Permutation
    r: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if not isinstance(self.perm, Permutation):
            object.__setattr__(self, "perm", Permutation(tuple(self.perm)))
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if len(self.colors) != self.perm.n:
            raise ValueError("one color per position is required")
        if any(not 0 <= c < self.r for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.r - 1}")

    @classmethod
    def identity(cls, r: int, n: int) -> ColoredPermutation:
        return cls((0,) * n, Permutation.identity(n), r)

    @classmethod
    def parse(cls, text: str, r: int) -> ColoredPermutation:
        colors, _, perm = text.partition("|")
        if not perm:
            raise ValueError("expected 'c1,...,cn | w1,...,wn'")
        return cls(tuple(int(t) for t in colors.replace(" ", "").split(",") if t),
                   Permutation.parse(perm), r)

    @property
    def n(self) -> int:
        return self.perm.n

    def __str__(self):
        return ",".join(map(str, self.colors)) + " | " + str(self.perm)

    def key(self) -> tuple:
        return self.colors, self.perm.window

    def __mul__(self, other: ColoredPermutation) -> ColoredPermutation:
        """((c), sigma) * ((d), omega) = ((c_{omega(i)} + d_i mod r), sigma omega)."""
        if other.r != self.r or other.n != self.n:
            raise ValueError("factors live in different groups")
        om = other.perm
        colors = tuple((self.colors[om(i) - 1] + other.colors[i - 1]) % self.r
                       for i in range(1, self.n + 1))
        return ColoredPermutation(colors, self.perm * om, self.r)


def generator(kind: str, i: int, r: int, n: int) -> ColoredPermutation:
    """``a_i`` (color 1 at i together with s_i) or ``b_i`` (color 1 at i)."""
    if kind == "b":
        if not 1 <= i <= n:
            raise IndexError(f"b_{i} out of range 1..{n}")
        perm = Permutation.identity(n)
    elif kind == "a":
        if not 1 <= i <= n - 1:
            raise IndexError(f"a_{i} out of range 1..{n - 1}")
        perm = Permutation.identity(n).right_mul(i)
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    colors = tuple(1 if j == i else 0 for j in range(1, n + 1))
    return ColoredPermutation(colors, perm, r)


def all_colored_permutations(r: int, n: int) -> list[ColoredPermutation]:
    return [ColoredPermutation(c, Permutation(p), r)
            for p in permutations(range(1, n + 1))
            for c in product(range(r), repeat=n)]


def flag_boxes(r: int, n: int) -> list[Box]:
    """A-region boxes first (staircase order), then B-region rows left to right."""
    a_region = sorted(((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)),
                      key=lambda ab: (ab[1] - ab[0], ab[0]))
    b_region = [(a, b) for b in range(1, n + 1) for a in range(-b * (r - 1), 0)]
    return a_region + b_region


@lru_cache(maxsize=None)
def build_flag(r: int, n: int) -> ValuedDigraph:
    if r < 2:
        raise ValueError("r must be at least 2 (use the symmetric group digraph for r=1)")
    if n < 1:
        raise ValueError("n must be positive")
    boxes = flag_boxes(r, n)
    idx = {box: i for i, box in enumerate(boxes)}
    arcs = []
    theta = []
    for a, b in boxes:
        if a > 0:
            for k in range(a + 1, b):
                arcs.append((idx[a, b], idx[a, k]))
                arcs.append((idx[a, b], idx[k, b]))
            theta.append(b - a - 1)
        else:
            for x in range(a + 1, b):
                if x != 0:
                    arcs.append((idx[a, b], idx[x, b]))
            theta.append(b + a // (r - 1))
    return ValuedDigraph.from_arcs(theta, arcs, boxes)


def finv(p: ColoredPermutation) -> int:
    return p.r * p.perm.length() + sum(p.colors)


def psi(g: ValuedDigraph, u, r: int) -> ColoredPermutation:
    """Colored permutation attached to an initial section ``u`` of ``build_flag(r, n)``."""
    m = to_mask(u)
    if not is_initial_section(g, m):
        raise NotInitialSection("not an initial section of the flag digraph")
    boxes = g.labels_of(m)
    n = max((b for _, b in g.labels), default=0)
    sigma = permutation_from_inversions([box for box in boxes if box[0] > 0], n)
    pos = sigma.positions()
    colors = [0] * n
    for i in range(1, n + 1):
        left = sum(1 for a, b in boxes if b == i and a < 0)
        right = sum(1 for a, b in boxes if b == i and a > 0)
        colors[pos[i] - 1] = left - (r - 1) * right
    return ColoredPermutation(tuple(colors), sigma, r)


def psi_inverse(g: ValuedDigraph, p: ColoredPermutation) -> tuple[int, ...]:
    """Initial section (sorted vertex ids) mapped to ``p`` by `psi`."""
    r, n = p.r, p.n
    inv = inversion_set(p.perm)
    pos = p.perm.positions()
    boxes = set(inv)
    for i in range(1, n + 1):
        right = sum(1 for _, b in inv if b == i)
        hi = -(i - right) * (r - 1) + p.colors[pos[i] - 1]
        boxes.update((x, i) for x in range(-i * (r - 1), hi))
    return g.vertices_of(boxes)


def is_flag_cover(p: ColoredPermutation, gen: tuple[str, int]) -> bool:
    """Whether ``p * gen`` covers ``p``; ``gen`` is ``("a", i)`` or ``("b", i)``."""
    kind, i = gen
    n, c = p.n, p.colors
    if kind == "b":
        if not 1 <= i <= n:
            raise IndexError(f"b_{i} out of range 1..{n}")
        return c[i - 1] != p.r - 1
    if kind == "a":
        if not 1 <= i <= n - 1:
            raise IndexError(f"a_{i} out of range 1..{n - 1}")
        return c[i] == p.r - 1 and p.perm(i) < p.perm(i + 1)
    raise ValueError(f"unknown generator kind {kind!r}")


def flag_order_covers(r: int, n: int) -> dict[tuple, set[tuple]]:
    """
    Flag weak order from the group side: search from the identity, multiplying
    on the right by a generator whenever the cover rule allows it.  Keys are
    ``ColoredPermutation.key()`` tuples.
    """
    gens = [("b", i) for i in range(1, n + 1)] + [("a", i) for i in range(1, n)]
    gen_elems = {g: generator(g[0], g[1], r, n) for g in gens}
    start = ColoredPermutation.identity(r, n)
    covers = {start.key(): set()}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for gname in gens:
            if is_flag_cover(p, gname):
                q = p * gen_elems[gname]
                covers[p.key()].add(q.key())
                if q.key() not in covers:
                    covers[q.key()] = set()
                    queue.append(q)
    return covers
