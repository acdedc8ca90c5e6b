"""Integer lattice tools: kernels, Smith normal form, saturation, indices."""
from __future__ import annotations

from math import gcd
from typing import Sequence

from .linalg import nullspace, primitive, rank


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^ncols : r . x = 0 for all rows r}``.

    Column reduction of the matrix tracked by a unimodular transform; the
    columns of the transform matching zero columns span the kernel.
    """
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def colop(j: int, k: int, p: int, q: int, r: int, s: int) -> None:
        # (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k)
        for m in (a, u):
            for row in m:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    col = 0
    for i in range(len(a)):
        if col >= ncols:
            break
        for j in range(col + 1, ncols):
            if a[i][j] == 0:
                continue
            x, y = a[i][col], a[i][j]
            g, p, q = xgcd(x, y)
            colop(col, j, p, q, -y // g, x // g)
        if a[i][col] != 0:
            col += 1
    return [tuple(u[r][c] for r in range(ncols)) for c in range(col, ncols)]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    a = [list(r) for r in mat]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # divisibility: fold an offending row into row t
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def saturated_basis(vectors: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of ``Z^n`` intersected with the rational span of ``vectors``."""
    vecs = [v for v in vectors if any(v)]
    if not vecs or rank(vecs, ncols) == 0:
        return []
    comp = [primitive(r) for r in nullspace(vecs, ncols)]
    if not comp:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    return integer_kernel(comp, ncols)


def lattice_index(generators: Sequence[Sequence[int]], ncols: int) -> int:
    """Index of the lattice spanned by integer ``generators`` in its saturation.

    The generators need not be independent.  Computed from the Smith normal
    form of the generator matrix: the product of its invariant factors.
    """
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return 1
    prod = 1
    for d in smith_normal_form(gens):
        prod *= d
    return prod


def extend_to_unit(g: Sequence[int]) -> tuple[int, ...]:
    """Integer vector ``y`` with ``g . y == 1`` for primitive ``g``."""
    y = [0] * len(g)
    cur = 0
    for i, x in enumerate(g):
        if x == 0:
            continue
        if cur == 0:
            cur = x
            y[i] = 1
            continue
        gg, p, q = xgcd(cur, x)
        y = [p * v for v in y]
        y[i] = q
        cur = gg
    if cur < 0:
        y = [-v for v in y]
        cur = -cur
    if cur != 1:
        raise ValueError(f"vector {tuple(g)} is not primitive")
    return tuple(y)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
