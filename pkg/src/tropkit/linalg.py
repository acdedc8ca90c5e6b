"""Exact linear algebra over the rationals.

Vectors are plain tuples/lists of ``Fraction`` or ``int``.  Dimensions in
this package are tiny (ambient dimension <= 5), so straightforward Gaussian
elimination is used throughout.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = Sequence[Fraction]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def as_fractions(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows are dropped.

    Returns the nonzero rows and their pivot columns.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : r . x = 0 for every row r}``."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence], target: Sequence, ncols: int) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i columns[i] == target``, or None."""
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(ncols)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        sol[p] = row[k]
    return sol


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def scale_row(a: Sequence, b) -> tuple[tuple[int, ...], Fraction]:
    """Scale the inequality ``a . x >= b`` so that ``a`` is primitive integral."""
    fr = [Fraction(x) for x in a]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), Fraction(b)
    return tuple(x // g for x in ints), Fraction(b) * den / g


def integer_row(v: Sequence) -> tuple[int, ...]:
    """Clear denominators of a rational vector, then divide by the content."""
    return primitive(v)


class OrthogonalProjector:
    """Orthogonal projection onto the complement of a rational subspace."""

    def __init__(self, basis: Sequence[Sequence], ncols: int):
        ortho: list[tuple[list[Fraction], Fraction]] = []
        for b in basis:
            v = [Fraction(x) for x in b]
            for u, uu in ortho:
                c = dot(v, u) / uu
                v = [x - c * y for x, y in zip(v, u)]
            if any(v):
                ortho.append((v, dot(v, v)))
        self._ortho = ortho
        self.ncols = ncols

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        w = [Fraction(x) for x in v]
        for u, uu in self._ortho:
            c = dot(w, u) / uu
            if c:
                w = [x - c * y for x, y in zip(w, u)]
        return tuple(w)
