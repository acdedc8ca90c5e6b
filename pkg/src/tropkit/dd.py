"""Double description method on integer cones.

Computes generators of ``{x in Q^d : A x >= 0, E x = 0}`` as a list of
extreme rays (modulo lineality) and a lineality basis.  All arithmetic is on
Python integers; vectors are kept primitive after every combination.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]


def _reduce(v) -> IntVec:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_generators(ineqs: Sequence[IntVec], eqs: Sequence[IntVec], dim: int
                    ) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality basis of ``{x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}``.

    Rays are determined up to adding lineality vectors; callers that need a
    canonical form project them afterwards.
    """
    lin: list[IntVec] = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[IntVec] = []
    tight: list[int] = []       # bitmask of processed inequalities tight at each ray
    processed = 0               # bitmask of processed inequalities

    # equalities first: they shrink the space without producing rays
    constraints = [(tuple(e), True) for e in eqs] + [(tuple(a), False) for a in ineqs]
    for k, (a, is_eq) in enumerate(constraints):
        if not any(a):
            continue
        bit = 0 if is_eq else 1 << k
        piv = next((i for i, l in enumerate(lin) if _dot(a, l) != 0), None)
        if piv is not None:
            l0 = lin.pop(piv)
            s0 = _dot(a, l0)
            if s0 < 0:
                l0 = tuple(-x for x in l0)
                s0 = -s0
            new_lin = []
            for l in lin:
                c = _dot(a, l)
                new_lin.append(_reduce([s0 * x - c * y for x, y in zip(l, l0)]) if c else l)
            lin = new_lin
            new_rays = []
            for r in rays:
                c = _dot(a, r)
                new_rays.append(_reduce([s0 * x - c * y for x, y in zip(r, l0)]) if c else r)
            rays = new_rays
            tight = [t | bit for t in tight]
            if not is_eq:
                rays.append(_reduce(l0))
                tight.append(processed)
            processed |= bit
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        out_rays = [rays[i] for i in zero]
        out_tight = [tight[i] | bit for i in zero]
        if not is_eq:
            out_rays += [rays[i] for i in pos]
            out_tight += [tight[i] for i in pos]
        for p in pos:
            zp = tight[p]
            for q in neg:
                common = zp & tight[q]
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and (tight[r] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                new = _reduce([vp * x - vq * y for x, y in zip(rays[q], rays[p])])
                out_rays.append(new)
                out_tight.append(common | bit)
        rays, tight = out_rays, out_tight
        processed |= bit
    return rays, lin
