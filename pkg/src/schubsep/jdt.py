"""Jeu de taquin, Littlewood-Richardson coefficients, and the grassmannian
dictionary between pipe dreams and semistandard tableaux.

Skew tableaux are tuples of rows in which cells of the inner shape hold
``None``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .bpd import BPD, droop_moves, enumerate_bpds
from .eg import Tableau, is_semistandard, standard_tableaux
from .perm import Permutation, descents

__all__ = [
    "NotGrassmannian",
    "MarkedTableau",
    "skew_cells",
    "jdt_rectify",
    "skew_standard_tableaux",
    "lr_coefficient",
    "grassmannian_perm",
    "grassmannian_shape",
    "semistandard_tableaux",
    "bpd_to_ssyt",
    "ssyt_to_bpd",
    "marked_tableau_rectify",
]

SkewTableau = tuple[tuple[int | None, ...], ...]


class NotGrassmannian(ValueError):
    pass


def skew_cells(t: SkewTableau) -> dict[tuple[int, int], int]:
    return {(r, c): x for r, row in enumerate(t) for c, x in enumerate(row) if x is not None}


def _inner(t: SkewTableau) -> list[int]:
    return [sum(1 for x in row if x is None) for row in t]


def jdt_rectify(t: SkewTableau, choose: Callable[[list[tuple[int, int]]], tuple[int, int]] | None = None) -> Tableau:
    """Slide every inner cell out; ``choose`` picks among the inner corners
    (default: the bottom-most)."""
    rows = [list(r) for r in t]
    while True:
        inner = _inner(rows)
        corners = [(r, inner[r] - 1) for r in range(len(rows)) if inner[r] and (r + 1 >= len(rows) or inner[r + 1] < inner[r])]
        if not corners:
            break
        r, c = choose(corners) if choose else max(corners)
        while True:
            right = rows[r][c + 1] if c + 1 < len(rows[r]) else None
            below = rows[r + 1][c] if r + 1 < len(rows) and c < len(rows[r + 1]) else None
            if right is None and below is None:
                break
            # ties go to the box below
            if below is not None and (right is None or below <= right):
                rows[r][c], rows[r + 1][c] = below, None
                r += 1
            else:
                rows[r][c], rows[r][c + 1] = right, None
                c += 1
        del rows[r][c]
        # the hole sits on the SE border, so it is the last cell of its row
        rows = [row for row in rows if row]
    return tuple(tuple(row) for row in rows)


def skew_standard_tableaux(outer: Sequence[int], inner: Sequence[int]) -> list[SkewTableau]:
    outer = list(outer)
    inner = list(inner) + [0] * (len(outer) - len(inner))
    total = sum(outer) - sum(inner)
    out = []

    def rec(filled: list[int], rows: list[list[int | None]], k: int):
        if k > total:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(outer)):
            c = filled[r]
            if c < outer[r] and (r == 0 or filled[r - 1] > c):
                rows[r].append(k)
                filled[r] += 1
                rec(filled, rows, k + 1)
                filled[r] -= 1
                rows[r].pop()

    rec(list(inner), [[None] * i for i in inner], 1)
    return out


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """``c^nu_{lam, mu}``: standard fillings of ``nu/mu`` rectifying to a fixed
    standard tableau of shape ``lam``."""
    lam, mu, nu = (tuple(p for p in x if p) for x in (lam, mu, nu))
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    if len(mu) > len(nu) or any(a > b for a, b in zip(mu, nu)):
        return 0
    if not lam:
        return 1 if mu == nu else 0
    target = standard_tableaux(lam)[0]
    return sum(1 for t in skew_standard_tableaux(nu, mu) if jdt_rectify(t) == target)


# ---------------------------------------------------------------------------
# grassmannian permutations


def grassmannian_perm(shape: Sequence[int], k: int, start: int = 1) -> Permutation:
    """The permutation with its only descent at row ``start + k - 1`` and shape ``shape``."""
    shape = [s for s in shape if s]
    if len(shape) > k:
        raise ValueError(f"shape {shape} has more than {k} rows")
    size = k + (shape[0] if shape else 0)
    size = max(size, k + 1)
    padded = shape + [0] * (k - len(shape))
    top = [start + t + padded[k - 1 - t] for t in range(k)]
    rest = [v for v in range(start, start + size) if v not in top]
    return Permutation(start, top + rest)


def grassmannian_shape(p: Permutation) -> tuple[tuple[int, ...], int]:
    """``(shape, k)`` of a permutation with at most one descent."""
    des = descents(p)
    if len(des) > 1:
        raise NotGrassmannian(f"{p} has descents {sorted(des)}")
    if not des:
        return (), 0
    d = next(iter(des))
    k = d - p.start + 1
    parts = [p(p.start + t) - (p.start + t) for t in range(k)]
    return tuple(x for x in reversed(parts) if x), k


def semistandard_tableaux(shape: Sequence[int], k: int, low: int = 1) -> list[Tableau]:
    shape = [s for s in shape if s]
    cells = [(r, c) for r, n in enumerate(shape) for c in range(n)]
    out = []

    def rec(idx: int, rows: list[list[int]]):
        if idx == len(cells):
            out.append(tuple(tuple(r) for r in rows))
            return
        r, c = cells[idx]
        lo = low
        if c:
            lo = max(lo, rows[r][c - 1])
        if r:
            lo = max(lo, rows[r - 1][c] + 1)
        for v in range(lo, k + 1):
            rows[r].append(v)
            rec(idx + 1, rows)
            rows[r].pop()

    rec(0, [[] for _ in shape])
    return out


def _droop_all(d: BPD) -> tuple[BPD, dict[tuple[int, int], tuple[int, int]]]:
    """Droop until no droop applies, tracking where each original blank ends up."""
    where = {b: b for b in d.blanks()}
    while True:
        options = droop_moves(d)
        if not options:
            return d, where
        # the blank at the droop target moves to the old corner
        d, corner, target = min(options, key=lambda m: m[0].tiles)
        for b, pos in where.items():
            if pos == target:
                where[b] = corner


def bpd_to_ssyt(d: BPD, *, with_cells: bool = False):
    """Label blanks by their row, droop everything NW, read the tableau.

    With ``with_cells`` also return ``{blank of d: (row, col) in the tableau}``.
    """
    grassmannian_shape(d.perm())
    final, where = _droop_all(d)
    cells = {}
    for (r, c), (fr, fc) in where.items():
        cells[(r, c)] = (fr - d.start, fc - d.start)
    shape: dict[int, int] = {}
    for r, c in cells.values():
        shape[r] = max(shape.get(r, 0), c + 1)
    rows = [[0] * shape[r] for r in range(len(shape))]
    for (r, _), (tr, tc) in cells.items():
        rows[tr][tc] = r
    t = tuple(tuple(row) for row in rows)
    if not is_semistandard(t) or sum(len(r) for r in t) != len(cells):
        raise AssertionError("drooped blanks do not form a semistandard tableau")
    return (t, cells) if with_cells else t


@lru_cache(maxsize=256)
def _ssyt_index(p: Permutation) -> dict[Tableau, BPD]:
    return {bpd_to_ssyt(d): d for d in enumerate_bpds(p)}


def ssyt_to_bpd(t: Tableau, k: int | None = None, perm: Permutation | None = None) -> BPD:
    """Inverse of :func:`bpd_to_ssyt` for the grassmannian permutation ``perm``
    (default: shape of ``t``, descent at ``k``, window starting at 1)."""
    t = tuple(tuple(r) for r in t)
    if perm is None:
        if k is None:
            raise ValueError("either k or perm is required")
        perm = grassmannian_perm([len(r) for r in t], k)
    try:
        return _ssyt_index(perm)[t]
    except KeyError:
        raise ValueError(f"{t} is not a tableau of a pipe dream of {perm}") from None


# ---------------------------------------------------------------------------
# marked tableaux


@dataclass(frozen=True)
class MarkedTableau:
    rows: Tableau
    marked: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_skew(cls, t: SkewTableau) -> "MarkedTableau":
        """Fill row ``i`` of the inner shape with ``i - l`` (``l`` inner rows), marked."""
        inner = _inner(t)
        l = sum(1 for x in inner if x)
        rows, marked = [], set()
        for r, row in enumerate(t):
            out = []
            for c, x in enumerate(row):
                if x is None:
                    out.append(r + 1 - l)
                    marked.add((r, c))
                else:
                    out.append(x)
            rows.append(tuple(out))
        return cls(tuple(rows), frozenset(marked))

    def unmarked(self) -> SkewTableau:
        return tuple(
            tuple(None if (r, c) in self.marked else x for c, x in enumerate(row)) for r, row in enumerate(self.rows)
        )


def marked_tableau_rectify(t: MarkedTableau, k: int) -> tuple[Tableau, list]:
    """Rectify by incrementing marked entries; returns the tableau and a trace.

    Trace entries are ``(kind, rows, mark)``.  ``"column"`` is one increment
    together with its 2(a) cascade, ``"slide"`` is a 2(b) move and
    ``"delete"`` removes the active entry (``mark`` is None).  These line up
    one to one with the column moves, slides and deletions of the pipe dream
    rectification.
    """
    rows = [list(r) for r in t.rows]
    marked = set(t.marked)
    trace: list = []

    def snap(kind, mark):
        trace.append((kind, tuple(tuple(r) for r in rows), mark))

    def at(r, c):
        if 0 <= r < len(rows) and 0 <= c < len(rows[r]):
            return rows[r][c]
        return None

    def delete(r: int, c: int, record: bool) -> None:
        # a marked k leaves through the equal entries below and to the right
        nonlocal rows
        while True:
            if at(r + 1, c) == k:
                r += 1
            elif at(r, c + 1) == k:
                while at(r, c + 1) == k:
                    c += 1
                if record:
                    snap("slide", (r, c))
            else:
                break
        del rows[r][c]
        rows = [row for row in rows if row]
        snap("delete", None)

    def step(r: int, c: int) -> tuple[int, int] | None:
        rows[r][c] += 1
        v = rows[r][c]
        if v > k:
            raise AssertionError(f"marked entry exceeded {k}")
        while v < k and at(r + 1, c) == v:
            v += 1
            rows[r + 1][c] = v
            r += 1
        if v == k and at(r + 1, c) == k:
            # no valid tableau in between: the pipe dream deletes straight away
            delete(r, c, record=False)
            return None
        snap("column", (r, c))
        if v == k:
            delete(r, c, record=True)
            return None
        if at(r, c + 1) == v:
            while at(r, c + 1) == v:
                c += 1
            snap("slide", (r, c))
        return r, c

    while marked:
        corners = [(r, c) for r, c in marked if (r + 1, c) not in marked and (r, c + 1) not in marked]
        pos = max(corners)
        marked.remove(pos)
        while pos is not None:
            pos = step(*pos)
    out = tuple(tuple(r) for r in rows)
    if not is_semistandard(out):
        raise AssertionError("marked rectification left a non-semistandard tableau")
    return out, trace
