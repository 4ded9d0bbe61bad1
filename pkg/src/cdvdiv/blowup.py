"""Weighted blowups with discrepancy-1 exceptional divisors.

For a weighted blowup with primitive weight w = (w1, w2, w3, w4) the
discrepancy of a multiplicity-m component of the exceptional divisor over a
Gorenstein hypersurface point is

    m * (w1 + w2 + w3 + w4 - 1 - min <w, supp f>),

so the discrepancy-1 weights are exactly the primitive solutions of
sum(w) = min-value + 2.  They are enumerated by an exact integer scan over a
finite box (vectorized with int64 numpy; every survivor is re-verified with
rational arithmetic, and the box auto-expands if a solution ever touches its
boundary).

The exceptional divisor of sigma_w lives in the weighted projective space
P(w) and is cut out by the face polynomial of w; its components are the
irreducible rational factors of that polynomial, with pure monomial factors
split off as toric content (coordinate-hyperplane pieces are not divisors
centered at the origin).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Tuple

import numpy as np

from cdvdiv.factorize import rational_factors, strip_monomial_content
from cdvdiv.newton import NewtonDiagram, face_polynomial, support_value
from cdvdiv.poly import ExponentVector, Polynomial, total_degree


@dataclass(frozen=True)
class Weight:
    """Primitive strictly positive integer weight vector for x, y, z, t."""

    w: Tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.w) != 4 or any(c < 1 for c in self.w):
            raise ValueError(f"weight entries must be positive integers: {self.w}")
        g = gcd(gcd(self.w[0], self.w[1]), gcd(self.w[2], self.w[3]))
        if g != 1:
            raise ValueError(f"weight {self.w} is not primitive (gcd {g})")

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, i: int) -> int:
        return self.w[i]

    def sum(self) -> int:
        return sum(self.w)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.w) + ")"


def default_weight_bound(d: NewtonDiagram) -> int:
    """Default box bound for the discrepancy-1 weight scan."""
    return 2 * max(total_degree(v) for v in d.vertices) + 2


def enumerate_weights(
    d: NewtonDiagram,
    max_coord: int | None = None,
    allow_expand: bool = True,
) -> List[Weight]:
    """All primitive weights in the box with discrepancy exactly 1.

    Scans 1 <= w_i <= max_coord for primitive w with
    sum(w) - 1 - support_value = 1, sorted lexicographically.  If a solution
    has a coordinate equal to max_coord the box cannot be trusted to be
    complete; it is then doubled (up to 4 times) unless allow_expand is
    False, in which case a RuntimeError is raised.
    """
    if max_coord is None:
        max_coord = default_weight_bound(d)
    if max_coord < 1:
        raise ValueError("max_coord must be at least 1")
    vertices = np.array(d.vertices, dtype=np.int64)
    for _attempt in range(5):
        found = _scan_box(vertices, max_coord)
        if not any(max(w) == max_coord for w in found):
            break
        if not allow_expand:
            raise RuntimeError(
                f"discrepancy-1 weight touches the scan box (bound {max_coord}); "
                "the enumeration may be incomplete"
            )
        max_coord *= 2
    else:
        raise RuntimeError(
            f"discrepancy-1 weights keep touching the scan box (bound {max_coord}); "
            "the support probably misses a coordinate axis"
        )
    weights = []
    for w in found:
        weight = Weight(w)
        # Independent exact re-check of the defining identity.
        if weight.sum() - 1 - support_value(d, w) != 1:
            raise AssertionError(f"scan produced a bad weight {w}")
        weights.append(weight)
    weights.sort(key=lambda weight: weight.w)
    return weights


def _scan_box(vertices: np.ndarray, bound: int) -> List[Tuple[int, int, int, int]]:
    # Chunk over w1 to keep the grid at bound^3 rows.
    rng = np.arange(1, bound + 1, dtype=np.int64)
    g2, g3, g4 = np.meshgrid(rng, rng, rng, indexing="ij")
    cols = [g2.ravel(), g3.ravel(), g4.ravel()]
    tail = np.stack(cols, axis=1)  # (bound^3, 3)
    tail_vals = tail @ vertices[:, 1:].T  # (bound^3, nverts)
    tail_sum = tail.sum(axis=1)
    out: List[Tuple[int, int, int, int]] = []
    for w1 in range(1, bound + 1):
        vals = tail_vals + w1 * vertices[:, 0]
        support_min = vals.min(axis=1)
        hits = np.nonzero(tail_sum + w1 - 2 == support_min)[0]
        for idx in hits:
            w = (w1, int(tail[idx, 0]), int(tail[idx, 1]), int(tail[idx, 2]))
            if gcd(gcd(w[0], w[1]), gcd(w[2], w[3])) == 1:
                out.append(w)
    return out


def discrepancy(d: NewtonDiagram, w: Weight, m: int = 1) -> int:
    """Discrepancy of a multiplicity-m exceptional component of sigma_w."""
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    return m * (w.sum() - 1 - support_value(d, w.w))


@dataclass(frozen=True)
class Factorization:
    """Factor decomposition of a face polynomial.

    constant * x^content * prod(factor^multiplicity) reproduces the input
    exactly; `components` holds only the non-monomial irreducible factors.
    """

    constant: Fraction
    content: ExponentVector
    components: Tuple[Tuple[Polynomial, int], ...]


def decompose_components(g: Polynomial) -> Factorization:
    """Irreducible factors of g over Q, with monomial content split off."""
    if g.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    content, stripped = strip_monomial_content(g)
    constant, factors = rational_factors(stripped)
    components = tuple(
        (factor, mult) for factor, mult in factors if len(factor.terms) > 1
    )
    # After content removal the only monomial factor sympy can report is the
    # trivial constant one.
    for factor, _mult in factors:
        if len(factor.terms) == 1 and factor.degree() > 0:
            raise AssertionError("monomial factor survived content stripping")
    return Factorization(constant=constant, content=content, components=components)


@dataclass(frozen=True)
class ExceptionalSurface:
    """The exceptional divisor of sigma_w inside P(w1, w2, w3, w4)."""

    ambient_weights: Weight
    equation: Polynomial
    constant: Fraction
    toric_content: ExponentVector
    components: Tuple[Tuple[Polynomial, int], ...]


def exceptional_surface(f: Polynomial, w: Weight) -> ExceptionalSurface:
    """Face polynomial of w together with its component decomposition."""
    equation = face_polynomial(f, w.w)
    decomposition = decompose_components(equation)
    return ExceptionalSurface(
        ambient_weights=w,
        equation=equation,
        constant=decomposition.constant,
        toric_content=decomposition.content,
        components=decomposition.components,
    )
