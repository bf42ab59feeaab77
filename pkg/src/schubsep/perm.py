"""Permutations on integer windows ``[a, b]``.

A :class:`Permutation` stores its one-line notation together with the first
index of its window, so ``Permutation(-2, (...))`` is a bijection of
``{-2, ..., -2 + len - 1}``.  Operations mixing two windows embed both into the
smallest common window, fixing every point outside the original one.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "MalformedPermutation",
    "Permutation",
    "make_perm",
    "identity",
    "length",
    "descents",
    "has_separated_descents",
    "compose",
    "inverse",
    "mul_simple",
    "simple_reflection",
    "word_product",
    "is_reduced",
    "reduced_words",
    "lehmer_code",
    "perm_from_code",
    "right_weak_prefixes",
    "parse_perm",
    "format_perm",
    "all_perms",
]


class MalformedPermutation(ValueError):
    """Raised when values do not form a rearrangement of the window."""


class Permutation:
    __slots__ = ("start", "values", "_hash")

    def __init__(self, start: int, values: Iterable[int]):
        values = tuple(int(v) for v in values)
        n = len(values)
        if sorted(values) != list(range(start, start + n)):
            raise MalformedPermutation(
                f"{list(values)} is not a rearrangement of [{start}, {start + n - 1}]"
            )
        self.start = int(start)
        self.values = values
        self._hash = hash((self.start, values))

    # -- basic protocol -------------------------------------------------
    @property
    def stop(self) -> int:
        """Last index of the window (inclusive)."""
        return self.start + len(self.values) - 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.start, self.stop)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if self.start <= i <= self.stop:
            return self.values[i - self.start]
        return i

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.start == other.start and self.values == other.values

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return (self.start, self.values) < (other.start, other.values)

    def __repr__(self) -> str:
        return f"Permutation({self.start}, {list(self.values)})"

    def __str__(self) -> str:
        return format_perm(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    # -- derived data ---------------------------------------------------
    def embed(self, start: int, stop: int) -> "Permutation":
        """Extend to the window ``[start, stop]`` by fixing the new points."""
        if start > self.start or stop < self.stop:
            raise ValueError(f"window [{start}, {stop}] does not contain {self.window}")
        return Permutation(start, (self(i) for i in range(start, stop + 1)))

    def restrict(self, start: int, stop: int) -> "Permutation":
        """Cut the window down to ``[start, stop]``; dropped points must be fixed."""
        for i in range(self.start, self.stop + 1):
            if not start <= i <= stop and self(i) != i:
                raise ValueError(f"{self} moves {i}, outside [{start}, {stop}]")
        return Permutation(start, (self(i) for i in range(start, stop + 1)))

    def support(self) -> tuple[int, int] | None:
        """Smallest window containing every non-fixed point, or None for the identity."""
        moved = [i for i in range(self.start, self.stop + 1) if self(i) != i]
        if not moved:
            return None
        return min(moved), max(moved)

    def normalized(self) -> "Permutation":
        """Report on ``[1, m]`` with ``m`` the last moved point (identity -> ``[1]``).

        Points below 1 must be fixed.
        """
        sup = self.support()
        if sup is None:
            return Permutation(1, (1,))
        if sup[0] < 1:
            raise ValueError(f"{self} moves non-positive points")
        return self.restrict(1, sup[1]) if self.start <= 1 else self.embed(1, sup[1]).restrict(1, sup[1])

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.values, self.start))


def make_perm(window_start: int, values: Sequence[int]) -> Permutation:
    return Permutation(window_start, values)


def identity(start: int, stop: int) -> Permutation:
    return Permutation(start, range(start, stop + 1))


def _common(p: Permutation, q: Permutation) -> tuple[Permutation, Permutation]:
    if p.window == q.window:
        return p, q
    lo, hi = min(p.start, q.start), max(p.stop, q.stop)
    return p.embed(lo, hi), q.embed(lo, hi)


def length(p: Permutation) -> int:
    v = p.values
    n = len(v)
    return sum(1 for i in range(n) for j in range(i + 1, n) if v[i] > v[j])


def descents(p: Permutation) -> set[int]:
    v = p.values
    return {p.start + i for i in range(len(v) - 1) if v[i] > v[i + 1]}


def has_separated_descents(pi: Permutation, rho: Permutation, k: int) -> bool:
    """True when ``pi`` has no descent before ``k`` and ``rho`` none after ``k``."""
    if pi.window != rho.window:
        raise ValueError(f"window mismatch: {pi.window} vs {rho.window}")
    return all(d >= k for d in descents(pi)) and all(d <= k for d in descents(rho))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``(p o q)(x) = p(q(x))``."""
    p, q = _common(p, q)
    return Permutation(p.start, (p(v) for v in q.values))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p.values, p.start):
        inv[v - p.start] = i
    return Permutation(p.start, inv)


def simple_reflection(i: int, start: int, stop: int) -> Permutation:
    if not start <= i < stop:
        raise ValueError(f"s_{i} does not live in [{start}, {stop}]")
    vals = list(range(start, stop + 1))
    vals[i - start], vals[i + 1 - start] = vals[i + 1 - start], vals[i - start]
    return Permutation(start, vals)


def mul_simple(p: Permutation, i: int, side: str = "right") -> Permutation:
    """``p * s_i`` (swap positions) or ``s_i * p`` (swap values)."""
    lo, hi = min(p.start, i), max(p.stop, i + 1)
    if (lo, hi) != p.window:
        p = p.embed(lo, hi)
    vals = list(p.values)
    if side == "right":
        a = i - p.start
        vals[a], vals[a + 1] = vals[a + 1], vals[a]
    elif side == "left":
        a, b = vals.index(i), vals.index(i + 1)
        vals[a], vals[b] = i + 1, i
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return Permutation(p.start, vals)


def word_product(word: Sequence[int], start: int, stop: int) -> Permutation:
    """``s_{w_1} s_{w_2} ... s_{w_l}`` on the window ``[start, stop]``."""
    p = identity(start, stop)
    for letter in reversed(word):
        p = mul_simple(p, letter, "left")
    return p


def is_reduced(word: Sequence[int]) -> bool:
    if not word:
        return True
    lo, hi = min(word), max(word) + 1
    vals = list(range(lo, hi + 1))
    for letter in word:
        # right multiplication by s_letter swaps positions
        a = letter - lo
        if vals[a] > vals[a + 1]:
            return False
        vals[a], vals[a + 1] = vals[a + 1], vals[a]
    return True


def reduced_words(p: Permutation) -> set[tuple[int, ...]]:
    """All reduced words of ``p``, letters being window positions."""
    out: set[tuple[int, ...]] = set()
    memo: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def rec(vals: tuple[int, ...]) -> list[tuple[int, ...]]:
        if vals in memo:
            return memo[vals]
        words: list[tuple[int, ...]] = []
        found = False
        for a in range(len(vals) - 1):
            if vals[a] > vals[a + 1]:
                found = True
                nxt = list(vals)
                nxt[a], nxt[a + 1] = nxt[a + 1], nxt[a]
                # p = (p s_a) s_a, so the last letter is a
                for w in rec(tuple(nxt)):
                    words.append(w + (a + p.start,))
        if not found:
            words = [()]
        memo[vals] = words
        return words

    out.update(rec(p.values))
    return out


def lehmer_code(p: Permutation) -> tuple[int, ...]:
    v = p.values
    n = len(v)
    return tuple(sum(1 for j in range(i + 1, n) if v[j] < v[i]) for i in range(n))


def perm_from_code(code: Sequence[int], window_start: int = 1) -> Permutation:
    n = len(code)
    avail = list(range(window_start, window_start + n))
    vals = []
    for i, c in enumerate(code):
        if not 0 <= c < n - i:
            raise ValueError(f"infeasible Lehmer code {list(code)} at position {i}")
        vals.append(avail.pop(c))
    return Permutation(window_start, vals)


def right_weak_prefixes(p: Permutation, target_len: int) -> set[Permutation]:
    """All ``u`` with ``l(u) = target_len`` and ``p = u * v`` length-additively.

    Breadth-first growth ``u -> u s_i`` keeping only prefixes of ``p``.
    """
    total = length(p)
    if not 0 <= target_len <= total:
        return set()
    layer = {identity(p.start, p.stop)}
    for _ in range(target_len):
        nxt = set()
        for u in layer:
            # u s_i is a prefix iff s_i is a left descent of u^{-1} p
            rest = compose(inverse(u), p)
            rv = rest.values
            # left descent i of rest: i+1 appears before i in one-line notation
            pos = {v: idx for idx, v in enumerate(rv)}
            for i in range(p.start, p.stop):
                if pos[i + 1] < pos[i] and not _is_right_descent(u, i):
                    nxt.add(mul_simple(u, i, "right"))
        layer = nxt
    return layer


def _is_right_descent(u: Permutation, i: int) -> bool:
    return u(i) > u(i + 1)


_WINDOW_RE = re.compile(r"^\s*(?P<body>[-0-9,\s\[\]]+?)\s*(?:@\s*(?P<start>-?\d+))?\s*$")


def parse_perm(text: str) -> Permutation:
    """Parse ``"1,3,2"``, ``"-2,0,...@-2"``, ``"[1, 3, 2]"`` or digit shorthand ``"132"``."""
    m = _WINDOW_RE.match(text)
    if not m:
        raise MalformedPermutation(f"cannot parse permutation {text!r}")
    body = m.group("body").strip().strip("[]").strip()
    if "," in body:
        values = [int(tok) for tok in body.split(",") if tok.strip()]
    elif body.isdigit():
        values = [int(ch) for ch in body]
    elif body.lstrip("-").isdigit():
        values = [int(body)]
    else:
        values = [int(tok) for tok in body.split()]
    start = int(m.group("start")) if m.group("start") is not None else min(values)
    return Permutation(start, values)


def format_perm(p: Permutation) -> str:
    if p.start == 1 and all(0 < v < 10 for v in p.values):
        return "".join(str(v) for v in p.values)
    body = ",".join(str(v) for v in p.values)
    return body if p.start == 1 else f"{body}@{p.start}"


def all_perms(n: int, start: int = 1) -> list[Permutation]:
    from itertools import permutations

    return [Permutation(start, vals) for vals in permutations(range(start, start + n))]
