"""Tropical hypersurfaces of Laurent polynomials with valued coefficients."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Mapping, Sequence

from .cycles import WeightedComplex
from .linalg import dot
from .polyhedra import PolyhedralComplex
from .valued import ValuedScalar, residue, val
from .weights import HeightedConfiguration, WeightComplexStructure, weight_complex

Exponent = tuple[int, ...]


class MonomialWarning(UserWarning):
    """A monomial has empty tropicalization."""


class TropicalPolynomial:
    """Laurent polynomial ``sum c_u x^u`` with :class:`ValuedScalar` coefficients."""

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], ValuedScalar | int | Fraction]):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        clean: dict[Exponent, ValuedScalar] = {}
        for u, c in terms.items():
            u = tuple(int(x) for x in u)
            if len(u) != num_vars:
                raise ValueError(f"exponent {u} has wrong length")
            c = c if isinstance(c, ValuedScalar) else ValuedScalar.constant(c)
            clean[u] = clean.get(u, ValuedScalar()) + c
        self.num_vars = num_vars
        self.terms = {u: clean[u] for u in sorted(clean) if clean[u]}

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TropicalPolynomial) and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __repr__(self) -> str:
        return f"TropicalPolynomial({self.num_vars}, {self.terms})"

    def map_coefficients(self, fn: Callable[[ValuedScalar], ValuedScalar]) -> TropicalPolynomial:
        return TropicalPolynomial(self.num_vars, {u: fn(c) for u, c in self.terms.items()})

    def __mul__(self, c) -> TropicalPolynomial:
        return self.map_coefficients(lambda x: x * c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class InitialForm:
    terms: dict

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) <= 1

    def __len__(self) -> int:
        return len(self.terms)


def coefficient_configuration(f: TropicalPolynomial) -> HeightedConfiguration:
    """Exponents as characters, coefficient valuations as heights (one slot each)."""
    if not f.terms:
        raise ValueError("the zero polynomial has no coefficient configuration")
    chars = tuple(f.terms)
    vals = tuple(val(c) for c in f.terms.values())
    return HeightedConfiguration(chars, vals, tuple((v,) for v in vals))


def initial_form(f: TropicalPolynomial, w: Sequence) -> InitialForm:
    """Residues of the terms minimizing ``val(c_u) + <u, w>``; exponents unshifted."""
    if not f.terms:
        raise ValueError("the zero polynomial has no initial form")
    w = [Fraction(x) for x in w]
    if len(w) != f.num_vars:
        raise ValueError("weight vector has wrong length")
    vals = {u: val(c) + dot(u, w) for u, c in f.terms.items()}
    m = min(vals.values())
    return InitialForm({u: residue(f.terms[u]) for u, v in vals.items() if v == m})


def groebner_complex(f: TropicalPolynomial) -> WeightComplexStructure:
    return weight_complex(coefficient_configuration(f))


def tropicalize_with_structure(f: TropicalPolynomial) -> tuple[WeightedComplex, WeightComplexStructure | None]:
    if len(f.terms) < 2:
        warnings.warn("a monomial has empty tropicalization", MonomialWarning, stacklevel=3)
        return WeightedComplex.empty(f.num_vars, f.num_vars - 1), None
    wc = groebner_complex(f)
    n = f.num_vars
    chars = wc.config.characters
    cells, weights = [], {}
    for cell in wc.complex:
        face = wc.dual_face(cell)
        if face.dim < 1:
            continue
        cells.append(cell)
        if face.dim == 1:
            a, b = (chars[i] for i in face.extremal)
            g = 0
            for x, y in zip(a, b):
                g = gcd(g, x - y)
            weights[cell.key] = g
    cx = PolyhedralComplex(n, cells, close=False)
    return WeightedComplex(cx, weights, n - 1), wc


def tropicalize(f: TropicalPolynomial) -> WeightedComplex:
    """Corner locus of ``min_u(val(c_u) + <u, w>)`` weighted by dual edge lattice lengths.

    A monomial has empty tropicalization; a warning is issued and the empty
    ``(n-1)``-cycle is returned.
    """
    return tropicalize_with_structure(f)[0]
