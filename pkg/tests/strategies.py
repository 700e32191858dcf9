"""Hypothesis strategies and small helpers shared by the property tests."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from planeaut.field import QQ, FieldSpec
from planeaut.poly import Poly2, PolyT

SMALL_FIELDS = [QQ, FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5)]

fields = st.sampled_from(SMALL_FIELDS)
prime_fields = st.sampled_from(SMALL_FIELDS[1:] + [FieldSpec.prime(7), FieldSpec.prime(2**31 - 1)])

coefficients = st.one_of(
    st.integers(-20, 20),
    st.integers(-(10**30), 10**30),
    st.fractions(max_denominator=12).filter(lambda q: abs(q.numerator) < 1000),
)


def _poly(cls, spec, max_deg, max_terms):
    nv = len(cls.VARS)
    exps = st.tuples(*[st.integers(0, max_deg)] * nv)
    coeff = coefficients.filter(lambda c: not spec.is_prime_field or Fraction(c).denominator % spec.modulus)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda d: cls.from_dict(spec, d))


def poly2s(spec, max_deg=4, max_terms=6):
    return _poly(Poly2, spec, max_deg, max_terms)


def polyTs(spec, max_deg=3, max_terms=5):
    return _poly(PolyT, spec, max_deg, max_terms)


X1, X2, T, U = sympy.symbols("x1 x2 T U")
SYMBOLS = {"x1": X1, "x2": X2, "T": T, "U": U}


def to_sympy(f):
    """Independent representation of a polynomial for oracle comparisons."""
    syms = [SYMBOLS[v] for v in f.VARS]
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return expr


def sympy_equal(f, expr):
    """Compare a planeaut polynomial with a sympy expression over f's field."""
    syms = [SYMBOLS[v] for v in f.VARS]
    spec = f.spec
    if spec.is_prime_field:
        diff = sympy.Poly(sympy.expand(to_sympy(f) - expr), *syms, modulus=spec.modulus)
    else:
        diff = sympy.Poly(sympy.expand(to_sympy(f) - expr), *syms, domain="QQ")
    return diff.is_zero
