"""Factorization of sparse x,y,z,t-polynomials over Q.

Thin exact bridge to sympy's multivariate factorization.  Monomial content
is split off first, every returned factor is normalized to integer content 1
with a positive leading coefficient in grlex order, and the factorization is
re-multiplied and compared against the input before it is returned, so a
wrong answer cannot slip through silently.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Tuple

import sympy

from cdvdiv.poly import ExponentVector, Polynomial, ZERO_EXPONENT, grlex_key

_SYMBOLS = sympy.symbols("x y z t")


def to_sympy(f: Polynomial):
    expr = sympy.Integer(0)
    for exps, coeff in f.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(_SYMBOLS, exps):
            if e:
                term *= s**e
        expr += term
    return expr


def from_sympy(expr) -> Polynomial:
    poly = sympy.Poly(expr, *_SYMBOLS)
    terms = {}
    for monom, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        terms[tuple(int(e) for e in monom)] = Fraction(
            int(coeff.p), int(coeff.q)
        )
    return Polynomial(terms)


def monomial_content(f: Polynomial) -> ExponentVector:
    """Componentwise minimum exponent over the support (the monomial gcd)."""
    if f.is_zero():
        return ZERO_EXPONENT
    support = f.support()
    return tuple(min(v[i] for v in support) for i in range(4))


def strip_monomial_content(f: Polynomial) -> Tuple[ExponentVector, Polynomial]:
    content = monomial_content(f)
    if content == ZERO_EXPONENT:
        return content, f
    stripped = Polynomial(
        {
            tuple(e - c for e, c in zip(exps, content)): coeff
            for exps, coeff in f.items()
        }
    )
    return content, stripped


def normalize_integer_primitive(f: Polynomial) -> Tuple[Fraction, Polynomial]:
    """Write f = scalar * g with g of integer content 1, positive grlex lead."""
    if f.is_zero():
        return Fraction(1), f
    denominators = 1
    for _exps, coeff in f.items():
        denominators = denominators * coeff.denominator // gcd(
            denominators, coeff.denominator
        )
    numerators = 0
    for _exps, coeff in f.items():
        numerators = gcd(numerators, abs(coeff.numerator * (denominators // coeff.denominator)))
    scalar = Fraction(numerators, denominators)
    lead = max(f.support(), key=grlex_key)
    if f.coefficient(lead) < 0:
        scalar = -scalar
    return scalar, f.scale(1 / scalar)


def rational_factors(f: Polynomial) -> Tuple[Fraction, List[Tuple[Polynomial, int]]]:
    """Irreducible factors of f over Q with multiplicities.

    Returns (constant, [(factor, multiplicity), ...]) with each factor
    integer-primitive with positive leading coefficient; the product of
    constant * prod(factor^multiplicity) is verified to reproduce f exactly.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    const, raw = sympy.factor_list(to_sympy(f))
    const = sympy.Rational(const)
    constant = Fraction(int(const.p), int(const.q))
    factors: List[Tuple[Polynomial, int]] = []
    for expr, mult in raw:
        factor = from_sympy(expr)
        scalar, primitive = normalize_integer_primitive(factor)
        constant *= scalar ** int(mult)
        factors.append((primitive, int(mult)))
    factors.sort(key=lambda pair: (pair[0].degree(), sorted(pair[0].terms)))
    check = Polynomial.constant(constant)
    for factor, mult in factors:
        check = check * factor**mult
    if check != f:
        raise AssertionError("factorization failed to reproduce the input")
    return constant, factors
