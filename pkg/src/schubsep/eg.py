"""Coxeter-Knuth insertion and the Edelman-Greene correspondence.

Words are inserted right to left, and insertion tableaux are read row by row
from the top, right to left inside a row.  With these two conventions the
reading word of ``P(w)`` is a reduced word for the same permutation as ``w``.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .perm import Permutation, is_reduced, reduced_words

__all__ = [
    "Tableau",
    "NotReduced",
    "ck_insert",
    "eg_insert",
    "reading_word",
    "ck_classes",
    "descent_set",
    "word_descents",
    "is_increasing",
    "is_standard",
    "is_semistandard",
    "standard_tableaux",
    "shape_of",
    "parse_tableau",
    "format_tableau",
    "ck_neighbors",
]

Tableau = tuple[tuple[int, ...], ...]


class NotReduced(ValueError):
    """The word given to Edelman-Greene insertion is not reduced."""


def shape_of(t: Tableau) -> tuple[int, ...]:
    return tuple(len(r) for r in t)


def ck_insert(p: Tableau, x: int) -> tuple[Tableau, int]:
    """Insert ``x``; return the new tableau and the row index (0-based) of the new box."""
    rows = [list(r) for r in p]
    i = 0
    while True:
        if i == len(rows):
            rows.append([x])
            break
        row = rows[i]
        if not row or x >= row[-1]:
            row.append(x)
            break
        pos = next(j for j, z in enumerate(row) if z > x)
        z = row[pos]
        if z == x + 1 and x in row:
            x = x + 1
        else:
            row[pos] = x
            x = z
        i += 1
    return tuple(tuple(r) for r in rows), i


def eg_insert(word: Sequence[int]) -> tuple[Tableau, Tableau]:
    """``(P, Q)`` for a reduced word; ``Q`` records step ``j`` when the ``j``-th
    letter from the right is inserted."""
    if not is_reduced(word):
        raise NotReduced(f"{list(word)} is not reduced")
    p: Tableau = ()
    q: list[list[int]] = []
    for step, x in enumerate(reversed(word), 1):
        p, row = ck_insert(p, x)
        if row == len(q):
            q.append([])
        q[row].append(step)
    return p, tuple(tuple(r) for r in q)


def reading_word(p: Tableau) -> tuple[int, ...]:
    return tuple(x for row in p for x in reversed(row))


def ck_classes(p: Permutation) -> dict[Tableau, set[tuple[int, ...]]]:
    classes: dict[Tableau, set[tuple[int, ...]]] = defaultdict(set)
    for w in reduced_words(p):
        classes[eg_insert(w)[0]].add(w)
    return dict(classes)


def descent_set(q: Tableau) -> set[int]:
    """``{j : j+1 sits in a lower row than j}``."""
    row_of = {x: r for r, row in enumerate(q) for x in row}
    return {j for j in row_of if j + 1 in row_of and row_of[j + 1] > row_of[j]}


def word_descents(w: Sequence[int]) -> set[int]:
    return {j for j in range(1, len(w)) if w[j - 1] > w[j]}


def is_increasing(t: Tableau) -> bool:
    """Rows and columns strictly increasing, shape a partition."""
    sh = shape_of(t)
    if any(a < b for a, b in zip(sh, sh[1:])):
        return False
    for r, row in enumerate(t):
        if any(a >= b for a, b in zip(row, row[1:])):
            return False
        if r and any(row[c] <= t[r - 1][c] for c in range(len(row))):
            return False
    return True


def is_standard(t: Tableau) -> bool:
    n = sum(shape_of(t))
    return is_increasing(t) and sorted(x for r in t for x in r) == list(range(1, n + 1))


def is_semistandard(t: Tableau) -> bool:
    sh = shape_of(t)
    if any(a < b for a, b in zip(sh, sh[1:])):
        return False
    for r, row in enumerate(t):
        if any(a > b for a, b in zip(row, row[1:])):
            return False
        if r and any(row[c] <= t[r - 1][c] for c in range(len(row))):
            return False
    return True


def standard_tableaux(shape: Sequence[int]) -> list[Tableau]:
    """Every standard Young tableau of a straight shape."""
    shape = tuple(s for s in shape if s)
    n = sum(shape)
    out: list[Tableau] = []

    def rec(rows: list[list[int]], k: int):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(shape)):
            if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                rec(rows, k + 1)
                rows[r].pop()

    rec([[] for _ in shape], 1)
    return out


def ck_neighbors(w: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Words one elementary Coxeter-Knuth relation away from ``w``."""
    w = tuple(w)
    for s in range(len(w) - 2):
        x, y, z = w[s : s + 3]
        pre, post = w[:s], w[s + 3 :]
        # j i k ~ j k i (i < j < k): the first letter is the middle value
        if min(y, z) < x < max(y, z):
            yield pre + (x, z, y) + post
        # i k j ~ k i j: the last letter is the middle value
        if min(x, y) < z < max(x, y):
            yield pre + (y, x, z) + post
        # i (i+1) i ~ (i+1) i (i+1)
        if x == z and abs(x - y) == 1:
            yield pre + (y, x, y) + post


def parse_tableau(text: str) -> Tableau:
    text = text.strip()
    if not text:
        return ()
    return tuple(tuple(int(x) for x in row.split(",") if x.strip()) for row in text.split("/"))


def format_tableau(t: Tableau) -> str:
    return "/".join(",".join(str(x) for x in row) for row in t)
