"""Sparse integer polynomials, Schubert polynomials and Schubert-basis expansion.

This module is the brute-force oracle: nothing in here knows about pipe dreams
or tableaux.
"""
from __future__ import annotations

import threading
from typing import Iterable, Mapping

from .perm import Permutation, mul_simple, perm_from_code

__all__ = [
    "NotInSpan",
    "SparsePolynomial",
    "SchubertExpansion",
    "var",
    "divided_difference",
    "schubert_poly",
    "expand_in_schubert_basis",
    "structure_constants_oracle",
    "multi_structure_constants_oracle",
]


def _trim(exp: Iterable[int]) -> tuple[int, ...]:
    exp = list(exp)
    while exp and exp[-1] == 0:
        exp.pop()
    return tuple(exp)


class SparsePolynomial:
    """Polynomial in ``x_1, x_2, ...`` stored as ``{exponent tuple: coefficient}``.

    Exponent tuples drop trailing zeros, so equal polynomials have equal maps.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean: dict[tuple[int, ...], int] = {}
        for exp, c in (terms or {}).items():
            if c:
                key = _trim(exp)
                clean[key] = clean.get(key, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, c: int) -> "SparsePolynomial":
        return cls({(): c})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: int = 1) -> "SparsePolynomial":
        return cls({tuple(exp): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SparsePolynomial.constant(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePolynomial(out)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "SparsePolynomial":
        if isinstance(other, int):
            return SparsePolynomial({e: c * other for e, c in self.terms.items()})
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                if len(e1) < len(e2):
                    e = tuple(a + b for a, b in zip(e1 + (0,) * (len(e2) - len(e1)), e2))
                else:
                    e = tuple(a + b for a, b in zip(e1, e2 + (0,) * (len(e1) - len(e2))))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial(out)

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def swap(self, i: int) -> "SparsePolynomial":
        """Exchange ``x_i`` and ``x_{i+1}``."""
        out = {}
        for e, c in self.terms.items():
            e = list(e) + [0] * max(0, i + 1 - len(e))
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return SparsePolynomial(out)

    def lex_min_term(self) -> tuple[tuple[int, ...], int]:
        """Lex-smallest exponent (comparing ``x_1`` first) and its coefficient.

        Trimmed tuples compare like their zero-padded versions.
        """
        if not self.terms:
            raise ValueError("zero polynomial has no terms")
        exp = min(self.terms)
        return exp, self.terms[exp]

    def __repr__(self) -> str:
        return f"SparsePolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        n = self.nvars()
        keys = sorted(self.terms, key=lambda e: e + (0,) * (n - len(e)), reverse=True)
        parts = []
        for e in keys:
            c = self.terms[e]
            mono = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a
            )
            body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])


def var(i: int) -> SparsePolynomial:
    return SparsePolynomial.monomial((0,) * (i - 1) + (1,))


def _dd_monomial(e: tuple[int, ...], i: int) -> dict[tuple[int, ...], int]:
    e = list(e) + [0] * max(0, i + 1 - len(e))
    a, b = e[i - 1], e[i]
    if a == b:
        return {}
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    out = {}
    # (x^a y^b - x^b y^a)/(x - y) = (xy)^b * sum_{t<a-b} x^t y^{a-b-1-t}
    for t in range(a - b):
        f = list(e)
        f[i - 1] = b + t
        f[i] = b + (a - b - 1 - t)
        out[tuple(f)] = sign
    return out


def divided_difference(f: SparsePolynomial, i: int) -> SparsePolynomial:
    """``(f - s_i f) / (x_i - x_{i+1})``."""
    if i < 1:
        raise ValueError(f"divided difference index must be positive, got {i}")
    out: dict[tuple[int, ...], int] = {}
    for e, c in f.terms.items():
        for g, s in _dd_monomial(e, i).items():
            g = _trim(g)
            out[g] = out.get(g, 0) + s * c
    return SparsePolynomial(out)


_schubert_cache: dict[tuple[int, ...], SparsePolynomial] = {}
_cache_lock = threading.Lock()


def _positive_key(p: Permutation) -> tuple[int, ...]:
    q = p.normalized()
    return q.values


def schubert_poly(p: Permutation) -> SparsePolynomial:
    """Schubert polynomial via divided differences from the longest element.

    Stability under ``S_n -> S_{n+1}`` lets the cache key on the normalised
    one-line notation.
    """
    key = _positive_key(p)
    with _cache_lock:
        hit = _schubert_cache.get(key)
    if hit is not None:
        return hit
    n = len(key)
    q = Permutation(1, key)
    if key == tuple(range(n, 0, -1)):
        poly = SparsePolynomial.monomial(tuple(range(n - 1, -1, -1)))
    else:
        i = next(i for i in range(1, n) if q(i) < q(i + 1))
        poly = divided_difference(schubert_poly(mul_simple(q, i, "right")), i)
    with _cache_lock:
        _schubert_cache.setdefault(key, poly)
    return poly


class NotInSpan(ValueError):
    """The polynomial is not an integer combination of Schubert polynomials."""


class SchubertExpansion(dict):
    """``{Permutation: coefficient}``, permutations normalised to ``[1, m]``."""

    def polynomial(self) -> SparsePolynomial:
        total = SparsePolynomial()
        for p, c in self.items():
            total = total + schubert_poly(p) * c
        return total

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"{c}*S[{p}]" for p, c in sorted(self.items(), key=_sort_key))


def _sort_key(item):
    p, _ = item
    return (len(p), p.values)


def expand_in_schubert_basis(f: SparsePolynomial) -> SchubertExpansion:
    """Peel off lex-smallest terms: every monomial of S_w is lex >= x^code(w)."""
    out = SchubertExpansion()
    rest = f
    prev = None
    while rest:
        exp, c = rest.lex_min_term()
        if prev is not None and not exp > prev:
            raise NotInSpan(f"elimination stalled at exponent {exp}")
        m = len(exp) + (max(exp) if exp else 0)
        try:
            w = perm_from_code(list(exp) + [0] * (m - len(exp)), 1)
        except ValueError as err:
            raise NotInSpan(f"exponent {exp} is not a Lehmer code") from err
        w = w.normalized()
        out[w] = out.get(w, 0) + c
        rest = rest - schubert_poly(w) * c
        prev = exp
    return SchubertExpansion({p: c for p, c in out.items() if c})


def structure_constants_oracle(pi: Permutation, rho: Permutation) -> SchubertExpansion:
    return expand_in_schubert_basis(schubert_poly(pi) * schubert_poly(rho))


def multi_structure_constants_oracle(perms: Iterable[Permutation]) -> SchubertExpansion:
    prod = SparsePolynomial.constant(1)
    for p in perms:
        prod = prod * schubert_poly(p)
    return expand_in_schubert_basis(prod)
