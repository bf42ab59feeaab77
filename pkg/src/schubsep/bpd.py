"""Bumpless pipe dreams on a square window ``[a, b] x [a, b]``.

Tiles are stored as edge masks (``N=1, E=2, S=4, W=8``); a cross is the full
mask.  The bump tile cannot be stored, so bumps only surface while rebuilding a
grid from pipe paths.  Pipes enter at the bottom of every column, travel north
and east only, and leave through the east border; a pipe is labelled by the
column it enters.
"""
from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Sequence

from .perm import Permutation, inverse
from .poly import SparsePolynomial

__all__ = [
    "Tile",
    "N", "E", "S", "W",
    "BLANK", "CROSS", "HORIZ", "VERT", "ELBOW_SE", "ELBOW_NW",
    "InvalidBPD", "EdgeMismatch", "BumpError", "DoubleCrossing", "PipeCountError", "BadTile",
    "BPD",
    "validate",
    "rothe_bpd",
    "droops",
    "droop_moves",
    "tiles_from_paths",
    "enumerate_bpds",
    "weight",
    "bpd_polynomial",
    "render_ascii",
    "parse_ascii",
    "render_svg",
]

N, E, S, W = 1, 2, 4, 8
BLANK = 0
CROSS = N | E | S | W
HORIZ = E | W
VERT = N | S
ELBOW_SE = S | E  # r-tile
ELBOW_NW = N | W  # j-tile
VALID = frozenset({BLANK, CROSS, HORIZ, VERT, ELBOW_SE, ELBOW_NW})


class Tile(enum.IntEnum):
    Blank = BLANK
    Cross = CROSS
    Horizontal = HORIZ
    Vertical = VERT
    ElbowSE = ELBOW_SE
    ElbowNW = ELBOW_NW


CHARS = {BLANK: ".", CROSS: "+", HORIZ: "-", VERT: "|", ELBOW_SE: "r", ELBOW_NW: "j"}
FROM_CHAR = {v: k for k, v in CHARS.items()}


class InvalidBPD(ValueError):
    """Base class for grids that are not bumpless pipe dreams."""


class BadTile(InvalidBPD):
    pass


class EdgeMismatch(InvalidBPD):
    pass


class BumpError(InvalidBPD):
    pass


class DoubleCrossing(InvalidBPD):
    pass


class PipeCountError(InvalidBPD):
    pass


class BPD:
    """Immutable tile grid with window start ``start`` and side ``size``.

    ``tiles`` is a row-major ``bytes`` of edge masks; it doubles as the hash key.
    Construction does not validate; use :func:`validate` or :meth:`checked`.
    """

    __slots__ = ("start", "size", "tiles", "_perm")

    def __init__(self, start: int, size: int, tiles: bytes | Sequence[int]):
        self.start = start
        self.size = size
        self.tiles = bytes(tiles)
        if len(self.tiles) != size * size:
            raise InvalidBPD(f"expected {size * size} tiles, got {len(self.tiles)}")
        self._perm = None

    @classmethod
    def from_rows(cls, start: int, rows: Sequence[Sequence[int]]) -> "BPD":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidBPD("grid is not square")
        return cls(start, n, [int(t) for r in rows for t in r])

    @property
    def stop(self) -> int:
        return self.start + self.size - 1

    def rows(self) -> list[list[int]]:
        n = self.size
        return [list(self.tiles[r * n : (r + 1) * n]) for r in range(n)]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.tiles[(r - self.start) * self.size + (c - self.start)]

    def inside(self, r: int, c: int) -> bool:
        return self.start <= r <= self.stop and self.start <= c <= self.stop

    def replace(self, updates: dict[tuple[int, int], int]) -> "BPD":
        buf = bytearray(self.tiles)
        for (r, c), t in updates.items():
            buf[(r - self.start) * self.size + (c - self.start)] = t
        return BPD(self.start, self.size, bytes(buf))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BPD):
            return NotImplemented
        return self.start == other.start and self.tiles == other.tiles

    def __hash__(self) -> int:
        return hash((self.start, self.tiles))

    def __repr__(self) -> str:
        return f"BPD(start={self.start}, rows={render_ascii(self).split()})"

    def __str__(self) -> str:
        return render_ascii(self)

    def perm(self) -> Permutation:
        if self._perm is None:
            self._perm = validate(self)
        return self._perm

    def checked(self) -> "BPD":
        validate(self)
        return self

    def blanks(self) -> list[tuple[int, int]]:
        n, a = self.size, self.start
        return [(a + k // n, a + k % n) for k, t in enumerate(self.tiles) if t == BLANK]

    def blank_counts(self) -> dict[int, int]:
        out = {r: 0 for r in range(self.start, self.stop + 1)}
        for r, _ in self.blanks():
            out[r] += 1
        return out

    def pipe_paths(self) -> dict[int, list[tuple[int, int, int, int]]]:
        """``{label: [(row, col, in_edge, out_edge), ...]}`` from south to east."""
        return _trace(self)

    def embed(self, start: int, stop: int) -> "BPD":
        """Back/forward stabilise: add identity pipes NW of / SE of the grid."""
        if start > self.start or stop < self.stop:
            raise ValueError("new window must contain the old one")
        lo, hi = self.start, self.stop
        rows = []
        for r in range(start, stop + 1):
            row = []
            for c in range(start, stop + 1):
                if lo <= r <= hi and lo <= c <= hi:
                    row.append(self[r, c])
                    continue
                # identity pipe c: up column c to row c, then east
                t = 0
                if r > c:
                    t |= VERT
                elif r == c:
                    t |= ELBOW_SE
                # pipe r runs east along row r from column r
                if c > r:
                    t |= HORIZ
                # inside-window pipes crossing the new SE strip
                if r > hi and lo <= c <= hi:
                    t = VERT
                    t |= HORIZ if c > r else 0
                if c > hi and lo <= r <= hi:
                    t = HORIZ | (VERT if r > c else 0)
                row.append(CROSS if t == (VERT | HORIZ | ELBOW_SE) else t)
            rows.append(row)
        return BPD.from_rows(start, rows)


def _trace(d: BPD) -> dict[int, list[tuple[int, int, int, int]]]:
    a, n = d.start, d.size
    paths: dict[int, list[tuple[int, int, int, int]]] = {}
    for c0 in range(a, a + n):
        r, c, came = a + n - 1, c0, S
        path = []
        while True:
            if not (a <= r < a + n and a <= c < a + n):
                raise PipeCountError(f"pipe {c0} leaves the grid at ({r}, {c})")
            t = d[r, c]
            if not t & came:
                raise EdgeMismatch(f"pipe {c0} enters ({r}, {c}) through a closed edge")
            if t == CROSS:
                out = N if came == S else E
            elif t == VERT and came == S:
                out = N
            elif t == HORIZ and came == W:
                out = E
            elif t == ELBOW_SE and came == S:
                out = E
            elif t == ELBOW_NW and came == W:
                out = N
            else:
                raise EdgeMismatch(f"pipe {c0} cannot pass tile at ({r}, {c})")
            path.append((r, c, came, out))
            if out == N:
                r, came = r - 1, S
            else:
                c, came = c + 1, W
            if c == a + n:
                break
        paths[c0] = path
    return paths


def validate(grid: BPD | Sequence[Sequence[int]], start: int = 1) -> Permutation:
    """Check every pipe-dream condition and return the permutation read off the east border."""
    d = grid if isinstance(grid, BPD) else BPD.from_rows(start, grid)
    a, n = d.start, d.size
    for k, t in enumerate(d.tiles):
        if t not in VALID:
            raise BadTile(f"invalid tile code {t} at ({a + k // n}, {a + k % n})")
    for r in range(a, a + n):
        for c in range(a, a + n):
            t = d[r, c]
            if r == a and t & N:
                raise PipeCountError(f"pipe leaves through the north border at ({r}, {c})")
            if c == a and t & W:
                raise PipeCountError(f"pipe enters through the west border at ({r}, {c})")
            if r == a + n - 1 and not t & S:
                raise PipeCountError(f"no pipe enters column {c} from the south")
            if c == a + n - 1 and not t & E:
                raise PipeCountError(f"no pipe exits row {r} to the east")
            if c < a + n - 1 and bool(t & E) != bool(d[r, c + 1] & W):
                raise EdgeMismatch(f"edge mismatch between ({r}, {c}) and ({r}, {c + 1})")
            if r < a + n - 1 and bool(t & S) != bool(d[r + 1, c] & N):
                raise EdgeMismatch(f"edge mismatch between ({r}, {c}) and ({r + 1}, {c})")
    paths = _trace(d)
    owner: dict[tuple[int, int], list[int]] = {}
    for label, path in paths.items():
        for r, c, _, _ in path:
            owner.setdefault((r, c), []).append(label)
    seen: set[tuple[int, int]] = set()
    for (r, c), labels in owner.items():
        if len(labels) == 2:
            pair = (min(labels), max(labels))
            if pair in seen:
                raise DoubleCrossing(f"pipes {pair[0]} and {pair[1]} cross twice")
            seen.add(pair)
    values = [0] * n
    for label, path in paths.items():
        r = path[-1][0]
        values[r - a] = label
    return Permutation(a, values)


def rothe_bpd(p: Permutation) -> BPD:
    a, n = p.start, len(p)
    pinv = inverse(p)
    rows = []
    for i in range(a, a + n):
        row = []
        for j in range(a, a + n):
            if p(i) == j:
                row.append(ELBOW_SE)
                continue
            t = 0
            if i > pinv(j):
                t |= VERT
            if j > p(i):
                t |= HORIZ
            row.append(t)
        rows.append(row)
    d = BPD.from_rows(a, rows)
    d._perm = p
    return d


# ---------------------------------------------------------------------------
# rebuilding grids from pipe paths


def tiles_from_paths(start: int, size: int, paths: Iterable[Sequence[tuple[int, int, int, int]]]) -> BPD:
    """Assemble a grid from ``(row, col, in, out)`` paths; raises on overlaps and bumps."""
    shapes: dict[tuple[int, int], list[int]] = {}
    for path in paths:
        for r, c, came, out in path:
            shapes.setdefault((r, c), []).append(came | out)
    buf = bytearray(size * size)
    for (r, c), parts in shapes.items():
        if len(parts) == 1:
            t = parts[0]
        elif len(parts) == 2 and sorted(parts) == sorted((HORIZ, VERT)):
            t = CROSS
        elif len(parts) == 2 and sorted(parts) == sorted((ELBOW_SE, ELBOW_NW)):
            raise BumpError(f"bump at ({r}, {c})")
        else:
            raise EdgeMismatch(f"overlapping pipes at ({r}, {c})")
        buf[(r - start) * size + (c - start)] = t
    return BPD(start, size, bytes(buf))


_STRIP_V = {VERT: BLANK, CROSS: HORIZ}
_STRIP_H = {HORIZ: BLANK, CROSS: VERT}
_ADD_V = {BLANK: VERT, HORIZ: CROSS}
_ADD_H = {BLANK: HORIZ, VERT: CROSS}


def droop_moves(d: BPD) -> list[tuple[BPD, tuple[int, int], tuple[int, int]]]:
    """``(new grid, old corner, new blank position)`` for every droop.

    The r-tile at ``(i, j)`` droops to the blank ``(ip, jp)`` when the only
    elbows in the rectangle they span are ``(i, j)`` itself and the pipe's own
    turns on its NE and SW corners; the blank moves to ``(i, j)``.
    """
    a, n, tiles = d.start, d.size, d.tiles
    elbow = (ELBOW_SE, ELBOW_NW)
    out = []
    for k, t in enumerate(tiles):
        if t != ELBOW_SE:
            continue
        i, j = a + k // n, a + k % n
        # the pipe's vertical run below (i, j) ends at an r-tile or its own j-turn
        rows = []
        for ip in range(i + 1, d.stop + 1):
            u = d[ip, j]
            if u == ELBOW_SE:
                break
            rows.append(ip)
            if u == ELBOW_NW:
                break
        for jp in range(j + 1, d.stop + 1):
            top = d[i, jp]
            if top == ELBOW_SE:
                break
            for ip in rows:
                if d[ip, jp] != BLANK:
                    if d[ip, jp] in elbow:
                        break
                    continue
                # only one blank may move, so the new route must not pass blanks
                if any(d[ip, c] in elbow or d[ip, c] == BLANK for c in range(j + 1, jp)):
                    continue
                if any(d[r, jp] == BLANK for r in range(i + 1, ip)):
                    continue
                if any(d[r, c] in elbow for r in range(i + 1, ip) for c in range(j + 1, jp + 1)):
                    continue
                out.append((_droop(d, i, j, ip, jp), (i, j), (ip, jp)))
            if top == ELBOW_NW:
                break
    return out


def _droop(d: BPD, i: int, j: int, ip: int, jp: int) -> BPD:
    up = {
        (i, j): BLANK,
        (ip, j): HORIZ if d[ip, j] == ELBOW_NW else ELBOW_SE,
        (ip, jp): ELBOW_NW,
        (i, jp): VERT if d[i, jp] == ELBOW_NW else ELBOW_SE,
    }
    for r in range(i + 1, ip):
        up[r, j] = _STRIP_V[d[r, j]]
        up[r, jp] = _ADD_V[d[r, jp]]
    for c in range(j + 1, jp):
        up[i, c] = _STRIP_H[d[i, c]]
        up[ip, c] = _ADD_H[d[ip, c]]
    g = d.replace(up)
    g._perm = d._perm
    return g


def droops(d: BPD) -> list[BPD]:
    """Every grid reachable by one droop; the permutation is unchanged."""
    return [g for g, _, _ in droop_moves(d)]


def enumerate_bpds(p: Permutation) -> set[BPD]:
    start = rothe_bpd(p)
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for nxt in droops(d):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def weight(d: BPD) -> SparsePolynomial:
    exp: dict[int, int] = {}
    for r, _ in d.blanks():
        if r < 1:
            raise ValueError(f"blank tile in non-positive row {r} has no variable")
        exp[r] = exp.get(r, 0) + 1
    n = max(exp, default=0)
    return SparsePolynomial.monomial(tuple(exp.get(i, 0) for i in range(1, n + 1)))


def bpd_polynomial(p: Permutation) -> SparsePolynomial:
    total = SparsePolynomial()
    for d in enumerate_bpds(p):
        total = total + weight(d)
    return total


# ---------------------------------------------------------------------------
# rendering


def render_ascii(d: BPD, marks: Iterable[tuple[int, int]] = ()) -> str:
    marks = set(marks)
    lines = []
    for r in range(d.start, d.stop + 1):
        lines.append(
            "".join("x" if (r, c) in marks else CHARS[d[r, c]] for c in range(d.start, d.stop + 1))
        )
    return "\n".join(lines)


def parse_ascii(text: str, start: int = 1) -> tuple[BPD, set[tuple[int, int]]]:
    """Inverse of :func:`render_ascii`; ``x`` reads as a marked blank."""
    rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
    marks = set()
    grid = []
    for r, line in enumerate(rows):
        row = []
        for c, ch in enumerate(line):
            if ch == "x":
                marks.add((start + r, start + c))
                row.append(BLANK)
            elif ch in FROM_CHAR:
                row.append(FROM_CHAR[ch])
            else:
                raise BadTile(f"unknown tile character {ch!r} at line {r + 1}, column {c + 1}")
        grid.append(row)
    return BPD.from_rows(start, grid), marks


def render_svg(d: BPD, marks: Iterable[tuple[int, int]] = (), unit: int = 20) -> str:
    marks = set(marks)
    n = d.size
    h = unit / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{n * unit}" height="{n * unit}" '
        f'viewBox="0 0 {n * unit} {n * unit}">',
        f'<rect width="{n * unit}" height="{n * unit}" fill="white" stroke="black"/>',
    ]
    for r in range(d.start, d.stop + 1):
        for c in range(d.start, d.stop + 1):
            x, y = (c - d.start) * unit, (r - d.start) * unit
            t = d[r, c]
            out.append(f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}" fill="none" stroke="#ddd"/>')
            if (r, c) in marks:
                out.append(f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}" fill="#999"/>')
            if t & VERT == VERT and t != ELBOW_SE and t != ELBOW_NW:
                out.append(f'<line x1="{x + h}" y1="{y}" x2="{x + h}" y2="{y + unit}" stroke="black"/>')
            if t & HORIZ == HORIZ and t != ELBOW_SE and t != ELBOW_NW:
                out.append(f'<line x1="{x}" y1="{y + h}" x2="{x + unit}" y2="{y + h}" stroke="black"/>')
            if t == ELBOW_SE:
                out.append(
                    f'<path d="M {x + h} {y + unit} A {h} {h} 0 0 1 {x + unit} {y + h}" fill="none" stroke="black"/>'
                )
            if t == ELBOW_NW:
                out.append(f'<path d="M {x} {y + h} A {h} {h} 0 0 0 {x + h} {y}" fill="none" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out)
