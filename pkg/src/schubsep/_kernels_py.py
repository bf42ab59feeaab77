"""Pure Python kernels; the compiled module ``_kernels`` mirrors this API."""
from __future__ import annotations

from typing import Sequence


def count_word_tableaux(values: Sequence[int], start: int, shape: Sequence[int]) -> int:
    """Number of increasing tableaux of ``shape`` whose reading word (rows top
    to bottom, each right to left) is a reduced word of the permutation with
    one-line ``values`` on a window beginning at ``start``.
    """
    n = len(values)
    size = sum(shape)
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if values[a] > values[b])
    if size != inv:
        return 0
    if size == 0:
        return 1
    # pos[v] = position of value v; letter a is usable when a is a left descent
    pos = [0] * n
    for i, v in enumerate(values):
        pos[v - start] = i
    cells = [(r, c) for r, m in enumerate(shape) for c in range(m - 1, -1, -1)]
    grid = [[0] * m for m in shape]
    total = 0

    def rec(k: int) -> None:
        nonlocal total
        if k == size:
            total += 1
            return
        r, c = cells[k]
        lo = grid[r - 1][c] + 1 if r else 0
        hi = grid[r][c + 1] - 1 if c + 1 < shape[r] else n - 2
        for a in range(lo, hi + 1):
            if pos[a] > pos[a + 1]:
                pos[a], pos[a + 1] = pos[a + 1], pos[a]
                grid[r][c] = a
                rec(k + 1)
                pos[a], pos[a + 1] = pos[a + 1], pos[a]

    rec(0)
    return total
