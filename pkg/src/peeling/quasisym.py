"""
Quasi-symmetric series truncated to ``m`` variables.

The central object is Gamma(A, U): given an initial section ``A`` and a family
of generalized columns ``U``, sum ``x_{f(z_1)} ... x_{f(z_k)}`` over the
semi-standard functions ``f`` on ``A``.  ``f`` is semi-standard when some
peeling sequence ``[z_1, ..., z_k]`` of ``A`` makes it weakly increasing, with
``f(z_i) < f(z_j)`` whenever ``i < j`` and ``z_j`` lies in ``U[z_i]``.

Also here: the fundamental basis, P-partition series, Stanley and affine
Stanley symmetric functions computed from reduced words and factorizations,
and the type A bijection between semi-standard functions and weighted
reduced words.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product

from .digraph import (
    NotInitialSection, ValuedDigraph, erasable_in_residual, from_mask, is_initial_section,
    iter_peeling_sequences, to_mask,
)
from .posets import FinitePoset, build_downset, linear_extensions
from .weak_a import Permutation, build_a, inversion_set
from .weak_affine import AffinePermutation, build_affine, inv_affine, sufficient_depth

__all__ = [
    "TruncatedPolynomial", "GeneralizedColumns", "EnumerationCap", "fundamental",
    "gamma", "gamma_oracle", "gamma_descent", "semistandard_functions", "is_semistandard",
    "compatible_sequences", "gamma_p_partition", "p_partition_columns",
    "stanley", "affine_stanley", "reduced_words", "is_cyclically_decreasing",
    "cyclically_decreasing_elements", "affine_factorizations", "columns_a", "columns_affine",
    "leading_cell", "psi_a", "psi_a_inverse", "affine_factorization",
    "gamma_type_a", "gamma_affine",
]

DEFAULT_CAP = 2_000_000


class EnumerationCap(RuntimeError):
    pass


@dataclass(frozen=True)
class TruncatedPolynomial:
    """
    Polynomial in ``x_1..x_m`` with integer coefficients; exponent vectors are
    dense tuples of length ``m``.

    >>> p = TruncatedPolynomial.monomial((1, 0), 2) + TruncatedPolynomial.monomial((0, 1))
    >>> str(p)
    '2*x1 + x2'
    """
    m: int
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.m or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for m={self.m}")
            if c:
                clean[exps] = clean.get(exps, 0) + int(c)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def zero(cls, m: int) -> TruncatedPolynomial:
        return cls(m, {})

    @classmethod
    def one(cls, m: int) -> TruncatedPolynomial:
        return cls(m, {(0,) * m: 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], coef: int = 1) -> TruncatedPolynomial:
        exps = tuple(exps)
        return cls(len(exps), {exps: coef})

    @classmethod
    def from_values(cls, values: Iterable[int], m: int) -> TruncatedPolynomial:
        """The monomial x_{v_1} x_{v_2} ... for 1-based variable indices."""
        exps = [0] * m
        for v in values:
            exps[v - 1] += 1
        return cls(m, {tuple(exps): 1})

    def __eq__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        self._same_m(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TruncatedPolynomial(self.m, out)

    def __sub__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        return self + other.scale(-1)

    def __mul__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        self._same_m(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncatedPolynomial(self.m, out)

    def scale(self, k: int) -> TruncatedPolynomial:
        return TruncatedPolynomial(self.m, {e: k * c for e, c in self.terms.items()})

    def _same_m(self, other):
        if self.m != other.m:
            raise ValueError(f"variable counts differ: {self.m} vs {other.m}")

    def coefficient(self, exps: Iterable[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def ordered_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Graded lexicographic order: higher total degree first, then lex descending."""
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.ordered_terms():
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps, 1) if e]
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"m": self.m,
                "terms": [{"exps": list(e), "coef": c} for e, c in self.ordered_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> TruncatedPolynomial:
        return cls(int(data["m"]), {tuple(t["exps"]): int(t["coef"]) for t in data["terms"]})

    def shift_violations(self) -> list[tuple[tuple[int, ...], int]]:
        """
        Quasi-symmetry in ``m`` variables: moving a nonzero exponent into an
        empty neighbouring slot must not change the coefficient.  Returns the
        offending (exponent vector, variable index) pairs.
        """
        bad = []
        for exps, c in self.terms.items():
            for i in range(self.m - 1):
                if (exps[i] == 0) != (exps[i + 1] == 0):
                    moved = list(exps)
                    moved[i], moved[i + 1] = moved[i + 1], moved[i]
                    if self.coefficient(moved) != c:
                        bad.append((exps, i + 1))
        return bad

    def is_quasisymmetric(self) -> bool:
        return not self.shift_violations()

    def is_symmetric(self) -> bool:
        for exps, c in self.terms.items():
            for i in range(self.m - 1):
                swapped = list(exps)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.coefficient(swapped) != c:
                    return False
        return True


@dataclass(frozen=True)
class GeneralizedColumns:
    """``sets[z]`` is the strictness set of vertex label ``z`` (missing labels map to the empty set)."""
    sets: Mapping[Hashable, frozenset]

    def __getitem__(self, z) -> frozenset:
        return self.sets.get(z, frozenset())

    def masks(self, g: ValuedDigraph) -> list[int]:
        """Per-vertex bitmask form; labels absent from ``g`` are ignored."""
        out = []
        for v in range(g.n):
            m = 0
            for lab in self[g.label(v)]:
                try:
                    m |= 1 << g.vertex(lab)
                except KeyError:
                    pass
            out.append(m)
        return out


def fundamental(x_set: Iterable[int], n: int, m: int) -> TruncatedPolynomial:
    """
    G_X in m variables: weakly increasing sequences of length n, strictly
    increasing at the positions in X.

    >>> str(fundamental([], 2, 2))
    'x1^2 + x1*x2 + x2^2'
    """
    x_set = set(x_set)
    if any(not 1 <= j <= n - 1 for j in x_set):
        raise ValueError(f"descent positions must lie in 1..{n - 1}")
    out: dict = {}
    for seq in combinations_with_replacement(range(m), n):
        if all(seq[j - 1] < seq[j] for j in x_set):
            exps = [0] * m
            for v in seq:
                exps[v] += 1
            out[tuple(exps)] = out.get(tuple(exps), 0) + 1
    return TruncatedPolynomial(m, out)


def _check_section(g, a) -> int:
    am = to_mask(a)
    if not is_initial_section(g, am):
        raise NotInitialSection(f"{g.labels_of(am)} is not an initial section")
    return am


def semistandard_functions(g: ValuedDigraph, a, u: GeneralizedColumns, m: int,
                           cap: int = DEFAULT_CAP) -> set[tuple[int, ...]]:
    """
    Semi-standard functions on ``a`` with values in ``1..m``, as value tuples
    aligned with the sorted member ids of ``a``.  Searches over pairs (peeling
    sequence, labelling) and keeps each function once.
    """
    am = _check_section(g, a)
    members = from_mask(am)
    slot = {v: i for i, v in enumerate(members)}
    umask = u.masks(g)
    found: set[tuple[int, ...]] = set()
    values = [0] * len(members)
    steps = 0

    def rec(done: int, last: int, block: int):
        nonlocal steps
        steps += 1
        if steps > cap:
            raise EnumerationCap(f"more than {cap} search steps")
        if done == am:
            found.add(tuple(values))
            return
        for x in erasable_in_residual(g, done, within=am):
            # equal value allowed only when x is outside every column of the current block
            blocked = any(umask[z] >> x & 1 for z in from_mask(block))
            lo = last + 1 if blocked or last == 0 else last
            for w in range(lo, m + 1):
                values[slot[x]] = w
                rec(done | 1 << x, w, (block if w == last else 0) | 1 << x)
            values[slot[x]] = 0

    rec(0, 0, 0)
    return found


def _poly_from_functions(funcs: Iterable[tuple[int, ...]], m: int) -> TruncatedPolynomial:
    out: dict = {}
    for f in funcs:
        exps = [0] * m
        for v in f:
            exps[v - 1] += 1
        out[tuple(exps)] = out.get(tuple(exps), 0) + 1
    return TruncatedPolynomial(m, out)


def gamma(g: ValuedDigraph, a, u: GeneralizedColumns, m: int,
          cap: int = DEFAULT_CAP) -> TruncatedPolynomial:
    return _poly_from_functions(semistandard_functions(g, a, u, m, cap), m)


def _compatible(seq: tuple[int, ...], f: Mapping[int, int], umask: list[int]) -> bool:
    for i, z in enumerate(seq):
        for y in seq[i + 1:]:
            if f[z] > f[y] or (f[z] == f[y] and umask[z] >> y & 1):
                return False
    return True


def compatible_sequences(g: ValuedDigraph, a, u: GeneralizedColumns,
                         f: Mapping[int, int]) -> list[tuple[int, ...]]:
    """Peeling sequences of ``a`` along which ``f`` (vertex id -> value) is semi-standard."""
    am = _check_section(g, a)
    umask = u.masks(g)
    return [s.order for s in iter_peeling_sequences(g, am) if _compatible(s.order, f, umask)]


def is_semistandard(g: ValuedDigraph, a, u: GeneralizedColumns, f: Mapping[int, int]) -> bool:
    am = _check_section(g, a)
    if set(f) != set(from_mask(am)):
        return False
    umask = u.masks(g)
    return any(_compatible(s.order, f, umask) for s in iter_peeling_sequences(g, am))


def gamma_oracle(g: ValuedDigraph, a, u: GeneralizedColumns, m: int) -> TruncatedPolynomial:
    """Slow reference: try every function a -> [m] against every peeling sequence."""
    am = _check_section(g, a)
    members = from_mask(am)
    umask = u.masks(g)
    seqs = [s.order for s in iter_peeling_sequences(g, am)]
    funcs = []
    for vals in product(range(1, m + 1), repeat=len(members)):
        f = dict(zip(members, vals))
        if any(_compatible(s, f, umask) for s in seqs):
            funcs.append(vals)
    return _poly_from_functions(funcs, m)


def gamma_descent(g: ValuedDigraph, a, u: GeneralizedColumns, m: int) -> TruncatedPolynomial:
    """
    Experimental variant: sum of G_{D(L)} over the peeling sequences L of
    ``a``, where j is in D(L) when ``z_{j+1}`` lies in the column of ``z_j``.
    No equality with `gamma` is claimed in general.
    """
    am = _check_section(g, a)
    umask = u.masks(g)
    k = am.bit_count()
    total = TruncatedPolynomial.zero(m)
    for s in iter_peeling_sequences(g, am):
        o = s.order
        desc = [j for j in range(1, k) if umask[o[j - 1]] >> o[j] & 1]
        total = total + fundamental(desc, k, m)
    return total


def p_partition_columns(p: FinitePoset, labeling: Mapping) -> GeneralizedColumns:
    """U_z = {y : labeling(z) > labeling(y)}."""
    return GeneralizedColumns({z: frozenset(y for y in p.elements if labeling[z] > labeling[y])
                               for z in p.elements})


def gamma_p_partition(p: FinitePoset, labeling: Mapping, m: int,
                      method: str = "both") -> TruncatedPolynomial:
    """
    Series of the P-partition ``(p, labeling)``.  ``method`` picks the
    descent sum over linear extensions, the semi-standard function count on
    the down-set digraph, or both (which must agree).
    """
    if sorted(labeling[z] for z in p.elements) != list(range(1, len(p) + 1)):
        raise ValueError("labeling must be a bijection onto 1..|P|")
    k = len(p)
    results = []
    if method in ("descent", "both"):
        total = TruncatedPolynomial.zero(m)
        for ext in linear_extensions(p):
            desc = [j for j in range(1, k) if labeling[ext[j - 1]] > labeling[ext[j]]]
            total = total + fundamental(desc, k, m)
        results.append(total)
    if method in ("columns", "both"):
        g = build_downset(p)
        results.append(gamma(g, g.full_mask, p_partition_columns(p, labeling), m))
    if not results:
        raise ValueError(f"unknown method {method!r}")
    if len(results) == 2 and results[0] != results[1]:
        raise AssertionError("descent sum and semi-standard count disagree")
    return results[0]


# -- reduced words and Stanley symmetric functions ---------------------------

def _descents(p) -> list[int]:
    n = p.n
    top = n if isinstance(p, AffinePermutation) else n - 1
    return [i for i in range(1, top + 1) if p(i) > p(i + 1)]


def reduced_words(p, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All reduced words of a (possibly affine) permutation, sorted lexicographically."""

    @lru_cache(maxsize=None)
    def words(q) -> tuple[tuple[int, ...], ...]:
        ds = _descents(q)
        if not ds:
            return ((),)
        out = []
        for i in ds:
            out.extend(w + (i,) for w in words(q.right_mul(i)))
            if len(out) > cap:
                raise EnumerationCap(f"more than {cap} reduced words")
        return tuple(out)

    return sorted(words(p))


def stanley(p: Permutation, m: int) -> TruncatedPolynomial:
    """
    F_p from reduced words: each word contributes G_X with X its ascent set.

    >>> str(stanley(Permutation((3, 2, 1)), 2))
    'x1^2*x2 + x1*x2^2'
    """
    total = TruncatedPolynomial.zero(m)
    for w in reduced_words(p):
        asc = [j for j in range(1, len(w)) if w[j - 1] < w[j]]
        total = total + fundamental(asc, len(w), m)
    return total


def is_cyclically_decreasing(word: Iterable[int], n: int) -> bool:
    """Letters distinct, and j+1 (mod n) comes before j whenever both occur."""
    word = list(word)
    if len(set(word)) != len(word):
        return False
    where = {x: i for i, x in enumerate(word)}
    for j in word:
        nxt = j % n + 1
        if nxt in where and where[nxt] > where[j]:
            return False
    return True


@lru_cache(maxsize=None)
def cyclically_decreasing_elements(n: int) -> tuple[tuple[AffinePermutation, int], ...]:
    """Every cyclically decreasing element with its length, one per proper subset of letters."""
    out = []
    for k in range(n):
        for letters in combinations(range(1, n + 1), k):
            word = next(w for w in permutations(letters) if is_cyclically_decreasing(w, n))
            p = AffinePermutation.identity(n)
            for i in word:
                p = p.right_mul(i)
            out.append((p, k))
    return tuple(out)


def affine_factorizations(p: AffinePermutation, m: int,
                          cap: int = DEFAULT_CAP) -> list[tuple[AffinePermutation, ...]]:
    """
    Factorizations ``p = v_1 ... v_m`` into cyclically decreasing factors
    (identity allowed) whose lengths add up to the length of ``p``.
    """
    n = p.n
    elems = cyclically_decreasing_elements(n)
    out: list[tuple[AffinePermutation, ...]] = []

    def rec(q: AffinePermutation, k: int, acc: tuple):
        if k == 0:
            if q == AffinePermutation.identity(n):
                out.append(acc)
                if len(out) > cap:
                    raise EnumerationCap(f"more than {cap} factorizations")
            return
        lq = q.length()
        for v, lv in elems:
            if lv > lq:
                continue
            rest = v.inverse() * q
            if rest.length() == lq - lv:
                rec(rest, k - 1, acc + (v,))

    rec(p, m, ())
    return out


def affine_stanley(p: AffinePermutation, m: int, cap: int = DEFAULT_CAP) -> TruncatedPolynomial:
    out: dict = {}
    for fac in affine_factorizations(p, m, cap):
        exps = tuple(v.length() for v in fac)
        out[exps] = out.get(exps, 0) + 1
    return TruncatedPolynomial(m, out)


# -- canonical columns and the type A / affine wrappers -----------------------

def columns_a(n: int) -> GeneralizedColumns:
    return GeneralizedColumns({(a, b): frozenset((a, k) for k in range(a + 1, n + 1))
                               for a in range(1, n + 1) for b in range(a + 1, n + 1)})


def columns_affine(n: int, depth: int) -> GeneralizedColumns:
    def column(a):
        return frozenset((a, k) for k in range(a + 1, a + depth * n + 1) if (k - a) % n)

    cols = {a: column(a) for a in range(1, n + 1)}
    return GeneralizedColumns({(a, b): cols[a] for a in range(1, n + 1)
                               for b in range(a + 1, a + depth * n + 1) if (b - a) % n})


def gamma_type_a(p: Permutation, m: int, cap: int = DEFAULT_CAP) -> TruncatedPolynomial:
    g = build_a(p.n)
    return gamma(g, g.vertices_of(inversion_set(p)), columns_a(p.n), m, cap)


def gamma_affine(p: AffinePermutation, m: int, cap: int = DEFAULT_CAP) -> TruncatedPolynomial:
    inv = inv_affine(p)
    depth = sufficient_depth(inv, p.n)
    g = build_affine(p.n, depth)
    return gamma(g, g.vertices_of(inv), columns_affine(p.n, depth), m, cap)


def leading_cell(f: Mapping[tuple[int, int], int], p: Permutation) -> tuple[int, int]:
    """Cell of maximal value; ties broken by the smallest position of its first coordinate."""
    if not f:
        raise ValueError("empty function has no leading cell")
    pos = p.positions()
    top = max(f.values())
    return min((box for box, v in f.items() if v == top), key=lambda ab: pos[ab[0]])


def _check_type_a(f: Mapping, p: Permutation):
    g = build_a(p.n)
    inv = inversion_set(p)
    if set(f) != inv:
        raise ValueError("function domain is not the inversion set")
    fid = {g.vertex(box): v for box, v in f.items()}
    if not is_semistandard(g, g.vertices_of(inv), columns_a(p.n), fid):
        raise ValueError("function is not semi-standard")


def psi_a(f: Mapping[tuple[int, int], int], p: Permutation,
          check: bool = True) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Peel leading cells from the top down.  Returns a reduced word of ``p`` and
    weakly increasing weights (strict at every ascent of the word).
    """
    if check:
        _check_type_a(f, p)
    f = dict(f)
    word, weights = [], []
    while f:
        a, b = leading_cell(f, p)
        i = p.position(b)
        assert p.position(a) == i + 1, "leading cell is not an adjacent pair"
        word.append(i)
        weights.append(f.pop((a, b)))
        p = p.right_mul(i)
    return tuple(reversed(word)), tuple(reversed(weights))


def psi_a_inverse(word: Iterable[int], weights: Iterable[int], n: int) -> dict[tuple[int, int], int]:
    p = Permutation.identity(n)
    f = {}
    for i, w in zip(word, weights, strict=True):
        x, y = p(i), p(i + 1)
        if x > y:
            raise ValueError("word is not reduced")
        f[(x, y)] = w
        p = p.right_mul(i)
    return f


def affine_factorization(g: ValuedDigraph, f: Mapping[int, int], seq: Iterable[int],
                         n: int, m: int) -> tuple[AffinePermutation, ...]:
    """
    Factorization read off an ``f``-compatible peeling sequence of an affine
    window digraph: the boxes with value ``i`` form a run of the sequence, and
    the generators they contribute multiply to ``v_i``.
    """
    p = AffinePermutation.identity(n)
    factors = [AffinePermutation.identity(n) for _ in range(m)]
    for v in seq:
        a, b = g.label(v)
        pa = p.position(a)
        if p.position(b) != pa + 1:
            raise ValueError("sequence does not peel adjacent pairs")
        i = (pa - 1) % n + 1
        p = p.right_mul(i)
        factors[f[v] - 1] = factors[f[v] - 1].right_mul(i)
    return tuple(factors)
