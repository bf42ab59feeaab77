"""Star operation, square-form pipe dreams, rectification and insertion.

A star problem is a tuple ``(pi_0, ..., pi_m)`` of permutations of ``[1, n]``
with cuts ``k_1 < ... < k_m``.  In the star pipe dream the grid of ``pi_alpha``
occupies the column block shifted by ``(m - alpha) n - K`` (``K = sum k``), so
``pi_m`` sits furthest west.  The binary case ``pi * rho`` at ``k`` is the
problem ``(rho, pi)`` with cut ``(k,)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import bpd as B
from .bpd import BPD, BLANK, CROSS, HORIZ, VERT, ELBOW_SE, ELBOW_NW, E, S, W
from .eg import Tableau, shape_of
from .perm import (
    Permutation,
    compose,
    descents,
    has_separated_descents,
    identity,
    inverse,
    length,
    mul_simple,
    right_weak_prefixes,
    word_product,
)
from .kernels import count_word_tableaux
from .poly import SchubertExpansion

__all__ = [
    "SeparatedDescentsError",
    "NotSquareForm",
    "RectificationError",
    "InsertionError",
    "GrowWindow",
    "StarProblem",
    "star_perm",
    "multi_star_perm",
    "star_bpd",
    "multi_star_bpd",
    "is_square_form",
    "is_multi_square_form",
    "split_square",
    "multi_split_square",
    "MarkedBPD",
    "rectify",
    "insert_letter",
    "insert_word",
    "structure_constant",
    "expansion",
    "multi_lambda",
    "multi_expansion",
    "rect",
    "trim",
]


class SeparatedDescentsError(ValueError):
    pass


class NotSquareForm(ValueError):
    pass


class RectificationError(RuntimeError):
    """An internal invariant of rectification broke; this indicates a bug."""


class InsertionError(ValueError):
    pass


class GrowWindow(InsertionError):
    """The marks do not fit at the NW corner; the grid must be back-stabilised."""


# ---------------------------------------------------------------------------
# star permutations


@dataclass(frozen=True)
class StarProblem:
    perms: tuple[Permutation, ...]
    cuts: tuple[int, ...]
    n: int

    @classmethod
    def make(cls, perms: Sequence[Permutation], cuts: Sequence[int]) -> "StarProblem":
        perms = tuple(perms)
        cuts = tuple(int(k) for k in cuts)
        if len(perms) != len(cuts) + 1:
            raise ValueError(f"{len(perms)} permutations need {len(perms) - 1} cuts, got {len(cuts)}")
        if not cuts:
            raise ValueError("at least one cut is required")
        if any(a >= b for a, b in zip(cuts, cuts[1:])) or cuts[0] < 1:
            raise ValueError(f"cuts must be strictly increasing positive integers, got {list(cuts)}")
        for p in perms:
            if p.start != 1:
                raise ValueError(f"{p} must live on a window starting at 1")
        n = max(max(len(p) for p in perms), cuts[-1] + 1)
        perms = tuple(p.embed(1, n) for p in perms)
        bounds = (1,) + cuts + (n - 1,)
        for alpha, p in enumerate(perms):
            lo, hi = bounds[alpha], bounds[alpha + 1]
            bad = [d for d in descents(p) if not lo <= d <= hi]
            if bad:
                raise SeparatedDescentsError(
                    f"permutation {alpha} ({p}) has descents {sorted(bad)} outside [{lo}, {hi}]"
                )
        return cls(perms, cuts, n)

    @property
    def m(self) -> int:
        return len(self.cuts)

    @property
    def K(self) -> int:
        return sum(self.cuts)

    @property
    def window(self) -> tuple[int, int]:
        return 1 - self.K, (self.m + 1) * self.n - self.K

    def shift(self, alpha: int) -> int:
        return (self.m - alpha) * self.n - self.K

    def k(self, alpha: int) -> int:
        """``k_alpha`` with ``k_0 = 0`` and ``k_{m+1} = n``."""
        if alpha == 0:
            return 0
        if alpha == self.m + 1:
            return self.n
        return self.cuts[alpha - 1]

    def owner(self, i: int) -> int:
        """The ``alpha`` whose rows ``(k_alpha, k_{alpha+1}]`` contain ``i``."""
        return next(a for a in range(self.m + 1) if self.k(a) < i <= self.k(a + 1))

    def top_block(self, alpha: int) -> tuple[int, int]:
        """Non-positive rows hosting the hooks of ``pi_alpha`` (``alpha >= 1``)."""
        below = sum(self.cuts[: alpha - 1])
        return 1 - below - self.k(alpha), -below


def _binary(pi: Permutation, rho: Permutation, k: int) -> StarProblem:
    n = max(len(pi), len(rho), k + 1)
    pi, rho = pi.embed(1, n), rho.embed(1, n)
    if not has_separated_descents(pi, rho, k):
        raise SeparatedDescentsError(f"{pi} and {rho} do not have separated descents at {k}")
    return StarProblem.make((rho, pi), (k,))


def multi_star_perm(sp: StarProblem) -> Permutation:
    lo, hi = sp.window
    val: dict[int, int] = {}
    for alpha in range(1, sp.m + 1):
        top, bottom = sp.top_block(alpha)
        for t, row in enumerate(range(top, bottom + 1), 1):
            val[row] = sp.perms[alpha](t) + sp.shift(alpha)
    for i in range(1, sp.n + 1):
        alpha = sp.owner(i)
        val[i] = sp.perms[alpha](i) + sp.shift(alpha)
    rest = sorted(set(range(lo, hi + 1)) - set(val.values()))
    for i, v in zip(range(sp.n + 1, hi + 1), rest):
        val[i] = v
    return Permutation(lo, (val[i] for i in range(lo, hi + 1)))


def star_perm(pi: Permutation, rho: Permutation, k: int) -> Permutation:
    return multi_star_perm(_binary(pi, rho, k))


# ---------------------------------------------------------------------------
# square-form pipe dreams


def _top_rows(sp: StarProblem) -> dict[tuple[int, int], int]:
    """Tiles of the non-positive rows: nested hooks per block, blanks elsewhere."""
    lo, hi = sp.window
    tiles: dict[tuple[int, int], int] = {}
    turns: list[tuple[int, int]] = []  # (row, column) of every hook corner
    for alpha in range(1, sp.m + 1):
        top, _ = sp.top_block(alpha)
        ka = sp.k(alpha)
        for t in range(ka):
            col = sp.n - ka + 1 + t + sp.shift(alpha)
            turns.append((top + t, col))
    for r in range(lo, 1):
        turn_col = next(c for rr, c in turns if rr == r)
        vertical = {c for rr, c in turns if rr < r}
        for c in range(lo, hi + 1):
            if c == turn_col:
                t = ELBOW_SE
            elif c > turn_col:
                t = CROSS if c in vertical else HORIZ
            else:
                t = VERT if c in vertical else BLANK
            tiles[r, c] = t
    return tiles


@lru_cache(maxsize=None)
def _square_top(n: int, cuts: tuple[int, ...]) -> tuple[tuple[tuple[int, int], int], ...]:
    """Non-positive rows of the square form.

    For one cut the hook layout already has a NW blank rectangle.  With more
    cuts the hooks of different blocks leave gaps; droops confined to the
    non-positive rows push the blanks into a NW partition.  The result depends
    only on ``(n, cuts)``.
    """
    sp = StarProblem(tuple(identity(1, n) for _ in range(len(cuts) + 1)), cuts, n)
    hooks = _top_rows(sp)
    if len(cuts) == 1:
        return tuple(sorted(hooks.items()))
    f = _assemble(sp, [B.rothe_bpd(p) for p in sp.perms], hooks)

    def top_marks(g: BPD):
        return {(r, c) for r, c in g.blanks() if r <= 0}

    def lower(g: BPD) -> bytes:
        return g.tiles[(1 - g.start) * g.size :]

    base = lower(f)
    seen = {f}
    queue = deque([f])
    while queue:
        g = queue.popleft()
        if _mark_shape(g, top_marks(g)) is not None:
            return tuple(((r, c), g[r, c]) for r in range(g.start, 1) for c in range(g.start, g.stop + 1))
        for h in B.droops(g):
            if h not in seen and lower(h) == base:
                seen.add(h)
                queue.append(h)
    raise AssertionError(f"no square form for n={n}, cuts={cuts}")


def _triangle(sp: StarProblem, alpha: int, i: int, c_local: int) -> bool:
    return i <= sp.k(alpha) and c_local >= sp.n - sp.k(alpha) + i


_REROUTE = {ELBOW_SE: VERT, HORIZ: ELBOW_NW}


def multi_star_bpd(sp: StarProblem, ds: Sequence[BPD]) -> BPD:
    """Assemble the square-form pipe dream of ``(D_0, ..., D_m)``."""
    if len(ds) != sp.m + 1:
        raise ValueError("one pipe dream per permutation is required")
    ds = [d if d.start == 1 and d.size == sp.n else d.embed(1, sp.n) for d in ds]
    for alpha, d in enumerate(ds):
        if d.perm() != sp.perms[alpha]:
            raise ValueError(f"pipe dream {alpha} is for {d.perm()}, expected {sp.perms[alpha]}")
    f = _assemble(sp, ds, dict(_square_top(sp.n, sp.cuts)))
    if f.perm() != multi_star_perm(sp):
        raise AssertionError("star pipe dream has the wrong permutation")
    return f


def _assemble(sp: StarProblem, ds: Sequence[BPD], top: dict) -> BPD:
    lo, hi = sp.window
    n = sp.n
    tiles = dict(top)
    for i in range(1, n + 1):
        beta = sp.owner(i)
        for alpha in range(sp.m + 1):
            d, s = ds[alpha], sp.shift(alpha)
            p = sp.perms[alpha]
            for cl in range(1, n + 1):
                if alpha == beta:
                    t = d[i, cl]
                elif alpha > beta:
                    t = d[i, cl]
                    if _triangle(sp, alpha, i, cl):
                        if cl == n - sp.k(alpha) + i:
                            t = _REROUTE.get(t, -1)
                        else:
                            t = VERT if t == HORIZ else -1
                        if t < 0:
                            raise B.InvalidBPD(f"unexpected tile in rerouted triangle at ({i}, {cl})")
                else:
                    kept = inverse(p)(cl) <= sp.k(alpha + 1)
                    t = CROSS if kept else HORIZ
                tiles[i, cl + s] = t
    # bottom rows: extend verticals, start a new pipe in the first free column
    below = {c for c in range(lo, hi + 1) if tiles[n, c] & S}
    for r in range(n + 1, hi + 1):
        free = min(c for c in range(lo, hi + 1) if c not in below)
        for c in range(lo, hi + 1):
            if c == free:
                tiles[r, c] = ELBOW_SE
            elif c > free:
                tiles[r, c] = CROSS if c in below else HORIZ
            else:
                tiles[r, c] = VERT
        below.add(free)
    return BPD.from_rows(lo, [[tiles[r, c] for c in range(lo, hi + 1)] for r in range(lo, hi + 1)])


def star_bpd(d: BPD, e: BPD, k: int) -> BPD:
    return multi_star_bpd(_binary(d.perm(), e.perm(), k), (e, d))


def is_multi_square_form(f: BPD, sp_or_cuts, n: int | None = None) -> bool:
    cuts = sp_or_cuts.cuts if isinstance(sp_or_cuts, StarProblem) else tuple(sp_or_cuts)
    n = sp_or_cuts.n if isinstance(sp_or_cuts, StarProblem) else n
    m, K = len(cuts), sum(cuts)
    if f.start != 1 - K or f.size != (m + 1) * n:
        return False
    for (r, c), t in _square_top(n, cuts):
        if f[r, c] != t:
            return False
    try:
        B.validate(f)
    except B.InvalidBPD:
        return False
    return True


def is_square_form(f: BPD, k: int, n: int) -> bool:
    return is_multi_square_form(f, (k,), n)


def _recover_perms(f: BPD, cuts: tuple[int, ...], n: int) -> StarProblem:
    star = f.perm()
    m = len(cuts)
    shell = StarProblem(tuple(identity(1, n) for _ in range(m + 1)), cuts, n)
    perms = []
    for alpha in range(m + 1):
        s = shell.shift(alpha)
        vals: dict[int, int] = {}
        if alpha >= 1:
            top, bottom = shell.top_block(alpha)
            for t, row in enumerate(range(top, bottom + 1), 1):
                vals[t] = star(row) - s
        for i in range(shell.k(alpha) + 1, shell.k(alpha + 1) + 1):
            vals[i] = star(i) - s
        rest = sorted(set(range(1, n + 1)) - set(vals.values()))
        for i, v in zip(range(shell.k(alpha + 1) + 1, n + 1), rest):
            vals[i] = v
        try:
            perms.append(Permutation(1, (vals[i] for i in range(1, n + 1))))
        except Exception as err:
            raise NotSquareForm(f"block {alpha} does not carry a permutation of [1, {n}]") from err
    return StarProblem.make(perms, cuts)


def multi_split_square(f: BPD, cuts: Sequence[int], n: int) -> list[BPD]:
    """Inverse of :func:`multi_star_bpd`; returns ``[D_0, ..., D_m]``."""
    cuts = tuple(cuts)
    if not is_multi_square_form(f, cuts, n):
        raise NotSquareForm("grid is not in square form")
    sp = _recover_perms(f, cuts, n)
    back = {VERT: ELBOW_SE, ELBOW_NW: HORIZ}
    out = []
    for alpha in range(sp.m + 1):
        s = sp.shift(alpha)
        rothe = B.rothe_bpd(sp.perms[alpha])
        rows = []
        for i in range(1, n + 1):
            row = []
            for cl in range(1, n + 1):
                t = f[i, cl + s]
                if i > sp.k(alpha + 1):
                    t = rothe[i, cl]
                elif _triangle(sp, alpha, i, cl):
                    if cl == n - sp.k(alpha) + i:
                        if t not in back:
                            raise NotSquareForm(f"unexpected tile at ({i}, {cl + s})")
                        t = back[t]
                    else:
                        if t != VERT:
                            raise NotSquareForm(f"unexpected tile at ({i}, {cl + s})")
                        t = HORIZ
                row.append(t)
            rows.append(row)
        d = BPD.from_rows(1, rows)
        if d.perm() != sp.perms[alpha]:
            raise NotSquareForm(f"block {alpha} does not split off a pipe dream of {sp.perms[alpha]}")
        out.append(d)
    if multi_star_bpd(sp, out) != f:
        raise NotSquareForm("grid differs from the star of its split")
    return out


def split_square(f: BPD, k: int, n: int) -> tuple[BPD, BPD]:
    e, d = multi_split_square(f, (k,), n)
    return d, e


# ---------------------------------------------------------------------------
# marked pipe dreams


@dataclass(frozen=True)
class MarkedBPD:
    bpd: BPD
    marks: frozenset = field(default_factory=frozenset)
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "marks", frozenset(self.marks))
        for r, c in self.marks:
            if self.bpd[r, c] != BLANK:
                raise ValueError(f"mark at ({r}, {c}) is not on a blank tile")

    def shape(self) -> tuple[int, ...] | None:
        """Row lengths if the marks form a diagram anchored at the NW corner, else None."""
        return _mark_shape(self.bpd, self.marks)

    def render(self) -> str:
        return B.render_ascii(self.bpd, self.marks)


def _mark_shape(d: BPD, marks) -> tuple[int, ...] | None:
    rows: dict[int, list[int]] = {}
    for r, c in marks:
        rows.setdefault(r - d.start, []).append(c - d.start)
    shape = []
    for r in range(len(rows)):
        cols = sorted(rows.get(r, []))
        if not cols or cols != list(range(len(cols))):
            return None
        shape.append(len(cols))
    if any(a < b for a, b in zip(shape, shape[1:])):
        return None
    return tuple(shape)


def _strip(d: BPD, top: int, bottom: int, j: int, bottom_right: int) -> BPD:
    """Forward column move / deletion: the vertical run of the pipe in column
    ``j+1`` between rows ``top`` and ``bottom`` shifts into column ``j``."""
    up = {}
    for r in range(top + 1, bottom):
        old = d[r, j]
        up[r, j + 1] = old
        up[r, j] = CROSS if old & W else VERT
    up[top, j] = ELBOW_SE
    up[top, j + 1] = HORIZ if d[top, j + 1] == ELBOW_SE else ELBOW_NW
    up[bottom, j] = ELBOW_NW if d[bottom, j] == HORIZ else VERT
    up[bottom, j + 1] = bottom_right
    return d.replace(up)


def _unstrip(d: BPD, top: int, bottom: int, j: int, bottom_right: int) -> BPD:
    """Inverse of :func:`_strip`; the tile ``(top, j)`` becomes blank."""
    up = {}
    for r in range(top + 1, bottom):
        new = d[r, j + 1]
        up[r, j] = new
        up[r, j + 1] = CROSS if new & E else VERT
    up[top, j] = BLANK
    up[top, j + 1] = ELBOW_SE if d[top, j + 1] == HORIZ else VERT
    up[bottom, j] = HORIZ if d[bottom, j] == ELBOW_NW else ELBOW_SE
    up[bottom, j + 1] = bottom_right
    return d.replace(up)


def _slide_right(d: BPD, r: int, c: int) -> int:
    while c + 1 <= d.stop and d[r, c + 1] == BLANK:
        c += 1
    return c


def _run_below(d: BPD, r: int, c: int) -> tuple[int, int]:
    """Follow the vertical pipe through ``(r, c)`` downwards.

    Returns ``(row, tile)`` of the first tile that is not V/X, or
    ``(stop + 1, -1)`` if the pipe enters from the south border.
    """
    rr = r + 1
    while rr <= d.stop and d[rr, c] in (VERT, CROSS):
        rr += 1
    if rr > d.stop:
        return rr, -1
    return rr, d[rr, c]


def _horizontal_label(d: BPD, r: int, c: int) -> int:
    for label, path in d.pipe_paths().items():
        for rr, cc, came, out in path:
            if (rr, cc) == (r, c) and came == W:
                return label
    raise RectificationError(f"no horizontal pipe through ({r}, {c})")


def _rectify_one(d: BPD, mark: tuple[int, int], trace: list | None = None) -> tuple[BPD, int]:
    """Move one mark until it is deleted; returns the new grid and the letter."""
    r, c = mark
    while True:
        c0, c = c, _slide_right(d, r, c)
        if trace is not None and c != c0:
            trace.append(("slide", d, (r, c)))
        if c == d.stop:
            raise RectificationError(f"mark at ({r}, {c}) is stuck on the east border")
        q = d[r, c + 1]
        if q not in (ELBOW_SE, VERT):
            raise RectificationError(f"unexpected tile right of the mark at ({r}, {c})")
        rp, t = _run_below(d, r, c + 1)
        if t == ELBOW_NW and d[rp, c] in (HORIZ, ELBOW_SE):
            nd = _strip(d, r, rp, c, BLANK)
            _check_same(nd, d)
            d, r, c = nd, rp, c + 1
            if trace is not None:
                trace.append(("column", d, (r, c)))
            continue
        if t != -1:
            raise RectificationError(f"no move applies to the mark at ({r}, {c})")
        for rr in range(r + 1, d.stop + 1):
            if d[rr, c + 1] == CROSS and _horizontal_label(d, rr, c + 1) == c:
                break
        else:
            raise RectificationError(f"pipes {c} and {c + 1} do not cross below ({r}, {c})")
        if d[rr, c] not in (HORIZ, ELBOW_SE):
            raise RectificationError(f"cannot undroop pipe {c} at ({rr}, {c})")
        nd = _strip(d, r, rr, c, ELBOW_SE)
        try:
            p_new = nd.perm()
        except B.InvalidBPD as err:
            raise RectificationError(f"deletion at ({r}, {c}) broke the pipe dream: {err}") from err
        if mul_simple(p_new, c, "left") != d.perm():
            raise RectificationError(f"deletion at ({r}, {c}) did not remove the crossing of {c}, {c + 1}")
        if trace is not None:
            trace.append(("delete", nd, None))
        return nd, c


def _check_same(nd: BPD, d: BPD) -> None:
    try:
        p = nd.perm()
    except B.InvalidBPD as err:
        raise RectificationError(f"column move broke the pipe dream: {err}") from err
    if p != d.perm():
        raise RectificationError("column move changed the permutation")


def _corner_order(marks) -> tuple[int, int]:
    corners = [(r, c) for r, c in marks if (r + 1, c) not in marks and (r, c + 1) not in marks]
    return max(corners)


def rectify(
    m: MarkedBPD | BPD,
    order: Tableau | None = None,
    marks=None,
    trace: list | None = None,
) -> tuple[BPD, tuple[int, ...]]:
    """Remove every mark; returns the unmarked grid and the recorded word.

    ``order`` is a standard tableau on the mark shape; the largest entry is
    removed first.  By default the bottom-most SE corner goes first.
    """
    if isinstance(m, BPD):
        m = MarkedBPD(m, frozenset(marks or ()))
    d, marks = m.bpd, set(m.marks)
    shape = _mark_shape(d, marks)
    if shape is None:
        raise ValueError("marks do not form a diagram at the NW corner")
    pos = None
    if order is not None:
        if tuple(len(r) for r in order) != shape:
            raise ValueError(f"order tableau shape {shape_of(order)} differs from mark shape {shape}")
        pos = {x: (d.start + r, d.start + c) for r, row in enumerate(order) for c, x in enumerate(row)}
    original = d.perm()
    blanks = d.blank_counts()
    word: list[int] = []
    while marks:
        if pos is not None:
            mark = pos.pop(max(pos))
        else:
            mark = _corner_order(marks)
        marks.remove(mark)
        row = mark[0]
        d, letter = _rectify_one(d, mark, trace)
        word.append(letter)
        # unmarked blanks per row never change
        now = d.blank_counts()
        for r in now:
            if now[r] - sum(1 for mr, _ in marks if mr == r) != blanks[r] - sum(
                1 for mr, _ in marks if mr == r
            ) - (1 if r == row else 0):
                raise RectificationError(f"unmarked blank count changed in row {r}")
        blanks = now
    if word_product(word, d.start, d.stop) * d.perm() != original:
        raise RectificationError("recorded word does not account for the permutation change")
    return d, tuple(word)


# ---------------------------------------------------------------------------
# insertion


@dataclass(frozen=True)
class Insertion:
    marked: MarkedBPD
    footprints: tuple[tuple[int, int], ...]
    position: tuple[int, int]


def _first_turn(d: BPD, label: int) -> int:
    for r, c, came, out in d.pipe_paths()[label]:
        if out == E:
            return r
    raise InsertionError(f"pipe {label} never turns")


def insert_letter(m: MarkedBPD, i: int, *, verify: bool = True) -> Insertion:
    """``F <- i``: add one mark by undoing a deletion and then column moves."""
    d, marks = m.bpd, set(m.marks)
    if not (d.start <= i < d.stop):
        raise GrowWindow(f"letter {i} outside the window [{d.start}, {d.stop})")
    p = d.perm()
    pinv = inverse(p)
    if pinv(i) > pinv(i + 1):
        raise InsertionError(f"pipes {i} and {i + 1} already cross")
    r0 = _first_turn(d, i)
    ip = _first_turn(d, i + 1)
    if not ip > r0:
        raise InsertionError(f"pipe {i + 1} turns above pipe {i}")
    if d[r0, i + 1] not in (HORIZ, ELBOW_NW):
        raise InsertionError(f"cannot open a mark at ({r0}, {i})")
    if any((rr, i + 1) in marks for rr in range(r0 + 1, ip)):
        raise InsertionError("a mark blocks the deletion strip")
    d = _unstrip(d, r0, ip, i, CROSS)
    R, C = r0, i
    footprints: list[tuple[int, int]] = []
    while True:
        while C - 1 >= d.start and d[R, C - 1] == BLANK and (R, C - 1) not in marks:
            C -= 1
        if C - 1 < d.start or d[R, C - 1] not in (ELBOW_NW, VERT):
            break
        top = R - 1
        while top >= d.start and d[top, C - 1] in (VERT, CROSS):
            top -= 1
        if top < d.start or d[top, C - 1] != ELBOW_SE:
            break
        if d[top, C] not in (HORIZ, ELBOW_NW):
            break
        if any((rr, C) in marks for rr in range(top + 1, R)):
            break
        footprints.append((R, C))
        d = _unstrip(d, top, R, C - 1, ELBOW_NW)
        R, C = top, C - 1
    footprints.append((R, C))
    try:
        new_perm = d.perm()
    except B.InvalidBPD as err:
        raise InsertionError(f"insertion of {i} produced an invalid grid: {err}") from err
    if new_perm != mul_simple(p, i, "left"):
        raise InsertionError(f"insertion of {i} produced the wrong permutation")
    out = MarkedBPD(d, frozenset(marks | {(R, C)}), (i,) + m.word)
    if verify:
        back, letter = _rectify_one(d, (R, C))
        if back != m.bpd or letter != i:
            raise InsertionError(f"insertion of {i} is not undone by rectification")
    return Insertion(out, tuple(footprints), (R, C))


def insert_word(
    f: BPD, w: Sequence[int], *, max_growth: int | None = None, verify: bool = True
) -> tuple[MarkedBPD, Tableau]:
    """``F <- w`` with automatic back-stabilisation; returns the marked grid and ``Q``."""
    w = tuple(w)
    sigma = f.perm()
    if w:
        lo, hi = min(min(w), f.start), max(max(w) + 1, f.stop)
        if (lo, hi) != (f.start, f.stop):
            f = f.embed(lo, hi)
            sigma = f.perm()
        u = word_product(w, f.start, f.stop)
        if length(u) != len(w) or length(u * sigma) != len(w) + length(sigma):
            raise InsertionError("word is not reduced or not length-additive with the grid")
    if max_growth is None:
        max_growth = len(w) + 1
    for _ in range(max_growth + 1):
        try:
            return _insert_all(f, w, verify)
        except InsertionError:
            f = f.embed(f.start - 1, f.stop)
    raise GrowWindow(f"insertion still fails after adding {max_growth} border pipes")


def _insert_all(f: BPD, w: tuple[int, ...], verify: bool) -> tuple[MarkedBPD, Tableau]:
    m = MarkedBPD(f)
    added: dict[tuple[int, int], int] = {}
    for step, letter in enumerate(reversed(w), 1):
        ins = insert_letter(m, letter, verify=verify)
        m = ins.marked
        if m.shape() is None:
            raise GrowWindow("marks left the NW corner")
        added[ins.position] = step
    shape = m.shape() or ()
    q = tuple(tuple(added[m.bpd.start + r, m.bpd.start + c] for c in range(n)) for r, n in enumerate(shape))
    return m, q


# ---------------------------------------------------------------------------
# structure constants


def _rectangle(k: int, n: int) -> tuple[int, ...]:
    return (n - k,) * k


def _count_classes(u: Permutation, shape: tuple[int, ...]) -> int:
    # one class per insertion tableau, i.e. per increasing tableau with a reduced reading word
    return count_word_tableaux(u.values, u.start, shape)


def structure_constant(pi: Permutation, rho: Permutation, k: int, sigma: Permutation) -> int:
    sp = _binary(pi, rho, k)
    star = multi_star_perm(sp)
    lo, hi = sp.window
    sig = sigma if sigma.start == lo else sigma.embed(min(lo, sigma.start), max(hi, sigma.stop))
    if sig.window != (lo, hi):
        raise ValueError(f"{sigma} does not fit the window [{lo}, {hi}]")
    target = k * (sp.n - k)
    u = compose(star, inverse(sig))
    if length(star) - length(sig) != target or length(u) != target:
        return 0
    return _count_classes(u, _rectangle(k, sp.n))


def _expand(star: Permutation, shape: tuple[int, ...]) -> SchubertExpansion:
    out = SchubertExpansion()
    size = sum(shape)
    for u in right_weak_prefixes(star, size):
        sigma = compose(inverse(u), star)
        sup = sigma.support()
        if sup is not None and sup[0] < 1:
            continue
        c = _count_classes(u, shape)
        if c:
            key = sigma.normalized()
            out[key] = out.get(key, 0) + c
    return out


def expansion(pi: Permutation, rho: Permutation, k: int) -> SchubertExpansion:
    sp = _binary(pi, rho, k)
    return _expand(multi_star_perm(sp), _rectangle(k, sp.n))


def multi_lambda(cuts: Sequence[int], n: int) -> tuple[int, ...]:
    """Shape of the NW blank region of the square form for ``(cuts, n)``."""
    cuts = tuple(cuts)
    counts: dict[int, int] = {}
    for (r, _), t in _square_top(n, cuts):
        if t == BLANK:
            counts[r] = counts.get(r, 0) + 1
    return tuple(counts[r] for r in sorted(counts))


def multi_expansion(sp: StarProblem) -> SchubertExpansion:
    star = multi_star_perm(sp)
    lam = multi_lambda(sp.cuts, sp.n)
    if sum(lam) != length(star) - sum(length(p) for p in sp.perms):
        raise AssertionError("shape size disagrees with the length identity")
    return _expand(star, lam)


def rect(f: BPD) -> BPD:
    """Rectify all blanks in non-positive rows and trim to the window ``[1, stop]``."""
    marks = {(r, c) for r, c in f.blanks() if r <= 0}
    g, _ = rectify(f, marks=marks)
    return trim(g)


def trim(g: BPD) -> BPD:
    """Drop the identity border above row 1 (no blanks may live there)."""
    if g.start >= 1:
        return g
    if any(r < 1 for r, _ in g.blanks()):
        raise ValueError("blank tiles above row 1")
    rows = [[g[r, c] for c in range(1, g.stop + 1)] for r in range(1, g.stop + 1)]
    out = BPD.from_rows(1, rows)
    if out.perm() != g.perm().restrict(1, g.stop):
        raise AssertionError("trimmed grid has the wrong permutation")
    return out
