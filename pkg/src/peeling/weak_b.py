"""
Shifted-diagram valued digraph for the right weak order on the hyperoctahedral
group B_n.

The diagram holds the n^2 boxes ``(a, b)`` with ``b`` in ``[n]``, ``a`` a nonzero
integer, ``a < b`` and ``|a| <= b`` (diagonal boxes ``(-b, b)`` included).  The
shifted hook of ``(a, b)`` collects the valid boxes ``(k, b)``, ``(a, k)`` and
``(-k, -a)`` over integers ``a < k < b``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import permutations, product

from .digraph import NotInitialSection, ValuedDigraph, is_initial_section

__all__ = [
    "SignedPermutation", "shifted_boxes", "is_shifted_box", "shifted_hook", "build_b",
    "inv_b_set", "inv_b", "signed_perm_from_inversions", "d_omega", "b_adjacent",
    "weak_order_covers_b", "all_signed_permutations",
]

Box = tuple[int, int]


@dataclass(frozen=True)
class SignedPermutation:
    """Signed permutation given by its values on 1..n (negative entries carry the sign)."""
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a signed permutation")

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> SignedPermutation:
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __str__(self):
        return ",".join(map(str, self.window))

    def full_window(self) -> tuple[int, ...]:
        """[w(-n), ..., w(-1), w(1), ..., w(n)]."""
        return tuple(-x for x in reversed(self.window)) + self.window

    def positions(self) -> dict[int, int]:
        """w^{-1} on [+-n]."""
        pos = {}
        for i in range(1, self.n + 1):
            v = self.window[i - 1]
            pos[v] = i
            pos[-v] = -i
        return pos

    def right_mul(self, i: int) -> SignedPermutation:
        """w * s_i; s_0 negates w(1), s_i swaps positions i and i+1."""
        w = list(self.window)
        if i == 0:
            w[0] = -w[0]
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return SignedPermutation(tuple(w))


def all_signed_permutations(n: int) -> list[SignedPermutation]:
    return [SignedPermutation(tuple(s * x for s, x in zip(signs, p)))
            for p in permutations(range(1, n + 1))
            for signs in product((1, -1), repeat=n)]


def is_shifted_box(box: Box, n: int) -> bool:
    a, b = box
    return 1 <= b <= n and a != 0 and a < b and abs(a) <= b


def shifted_boxes(n: int) -> list[Box]:
    return sorted(((a, b) for b in range(1, n + 1) for a in range(-b, b) if a != 0),
                  key=lambda ab: (ab[1], ab[0]))


def shifted_hook(box: Box, n: int) -> set[Box]:
    """Shifted hook of ``box`` without the box itself."""
    a, b = box
    out = set()
    for k in range(a + 1, b):
        for cand in ((k, b), (a, k), (-k, -a)):
            if cand != box and is_shifted_box(cand, n):
                out.add(cand)
    return out


@lru_cache(maxsize=None)
def build_b(n: int) -> ValuedDigraph:
    if n < 1:
        raise ValueError("n must be positive")
    boxes = shifted_boxes(n)
    idx = {box: i for i, box in enumerate(boxes)}
    arcs = []
    theta = []
    for box in boxes:
        hook = sorted(shifted_hook(box, n))
        if len(hook) % 2:
            raise AssertionError(f"odd out-degree {len(hook)} at {box}")
        arcs.extend((idx[box], idx[d]) for d in hook)
        theta.append(len(hook) // 2)
    return ValuedDigraph.from_arcs(theta, arcs, boxes)


def inv_b_set(w: SignedPermutation) -> frozenset[Box]:
    pos = w.positions()
    return frozenset(box for box in shifted_boxes(w.n) if pos[box[0]] > pos[box[1]])


def inv_b(w: SignedPermutation) -> int:
    """Coxeter length of w in B_n, counted from pairs of positions in [n]."""
    n = w.n
    return (sum(1 for a in range(1, n + 1) for b in range(a + 1, n + 1) if w(a) > w(b))
            + sum(1 for a in range(1, n + 1) for b in range(a, n + 1) if w(-a) > w(b)))


def signed_perm_from_inversions(s: Iterable[Box], n: int) -> SignedPermutation:
    s = frozenset(s)
    g = build_b(n)
    try:
        ids = [g.vertex(box) for box in s]
    except KeyError as exc:
        raise NotInitialSection(f"not a B-inversion set: bad box {exc.args[0]}") from None
    if not is_initial_section(g, ids):
        raise NotInitialSection("not a B-inversion set")

    def inverted(x, y):
        # x < y; pairs outside the diagram are read through the symmetry (x,y) ~ (-y,-x)
        return (x, y) in s if abs(x) <= y else (-y, -x) in s

    def before(x, y):
        if x == y:
            return 0
        if x < y:
            return 1 if inverted(x, y) else -1
        return -1 if inverted(y, x) else 1

    values = [v for v in range(-n, n + 1) if v != 0]
    full = sorted(values, key=cmp_to_key(before))
    w = SignedPermutation(tuple(full[n:]))
    if w.full_window() != tuple(full):
        raise NotInitialSection("inversions do not describe a signed permutation")
    return w


def d_omega(w: SignedPermutation, box: Box) -> int:
    a, b = box
    pos = w.positions()
    if pos[a] > pos[b]:
        raise ValueError(f"{box} is a B-inversion of {w}")
    if b == -a:
        ks = range(1, -a)
    else:
        ks = (k for k in range(a + 1, b) if k != 0)
    return sum(1 for k in ks if pos[a] < pos[k] < pos[b])


def b_adjacent(w: SignedPermutation, a: int, b: int) -> bool:
    if not (a < b and abs(a) <= b):
        return False
    pos = w.positions()
    pa, pb = pos[a], pos[b]
    # the full window skips position 0
    return pb == pa + 1 or (pa == -1 and pb == 1)


def weak_order_covers_b(n: int) -> dict[tuple[int, ...], set[tuple[int, ...]]]:
    """
    Right weak order on B_n by breadth-first search over s_0..s_{n-1}, using
    the length rule: w s_i goes up iff w(i) < w(i+1), and w s_0 goes up iff
    w(1) > 0.
    """
    start = tuple(range(1, n + 1))
    covers = {start: set()}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        ups = []
        if w[0] > 0:
            ups.append((-w[0],) + w[1:])
        for i in range(n - 1):
            if w[i] < w[i + 1]:
                u = list(w)
                u[i], u[i + 1] = u[i + 1], u[i]
                ups.append(tuple(u))
        for u in ups:
            covers[w].add(u)
            if u not in covers:
                covers[u] = set()
                queue.append(u)
    return covers
