"""Sparse polynomials in k[x1,x2], k[x1,x2][T] and k[x1,x2][T,U].

All three rings share one representation: a dict from exponent tuples to
nonzero raw field coefficients (see :mod:`planeaut.field`).  ``PolyT`` and
``PolyTU`` expose their coefficients as ``Poly2`` values on demand.

Term order for ``Poly2`` (printing, normalization, JSON) is lexicographic
with ``x1 > x2``, descending.  ``PolyT`` and ``PolyTU`` print T-major:
``(T, U, x1, x2)`` lexicographic, descending.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import gmpy2
import numpy as np

from .errors import MixedFieldError, ZeroPolynomial
from .field import FieldElement, FieldSpec


class _MinusInfinity:
    """Degree of the zero polynomial.  Orders below every integer, supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "MINUS_INFINITY"

    def __str__(self):
        return "-inf"


MINUS_INFINITY = _MinusInfinity()


class Z2Degree(NamedTuple):
    """(T-degree, total degree of the leading T-coefficient), compared lexicographically."""

    tdeg: int
    cdeg: int


@dataclass(frozen=True)
class Weight:
    w1: Fraction
    w2: Fraction

    def __init__(self, w1, w2):
        object.__setattr__(self, "w1", Fraction(w1))
        object.__setattr__(self, "w2", Fraction(w2))

    def __iter__(self):
        return iter((self.w1, self.w2))


def _norm_terms(spec: FieldSpec, acc: dict) -> dict:
    if spec.is_prime_field:
        p = spec.modulus
        out = {}
        for e, c in acc.items():
            c %= p
            if c:
                out[e] = c
        return out
    out = {}
    for e, c in acc.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[e] = c
    return out


def _schoolbook(a: dict, b: dict, nvars: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    acc = defaultdict(int)
    if nvars == 2:
        for (i, j), c in b.items():
            for (k, m), d in a.items():
                acc[(i + k, j + m)] += c * d
    elif nvars == 3:
        for (i, j, t), c in b.items():
            for (k, m, s), d in a.items():
                acc[(i + k, j + m, t + s)] += c * d
    else:
        for e, c in b.items():
            for f, d in a.items():
                acc[tuple(x + y for x, y in zip(e, f))] += c * d
    return acc


_KRON_MIN_WORK = 256
_KRON_MAX_VOLUME = 1 << 23
_UINT = {1: np.uint8, 2: np.uint16, 4: np.uint32, 8: np.uint64}
_SINT = {1: np.int8, 2: np.int16, 4: np.int32, 8: np.int64}


def _kronecker(a: dict, b: dict, nvars: int, signed: bool):
    """Integer polynomial product via one big-int multiplication.

    Packs each operand into an integer with one fixed-width digit per
    exponent cell of the result box.  Returns ``None`` when the box is too
    sparse or the coefficients too wide for 64-bit digits.
    """
    ea = np.array(list(a), dtype=np.int64)
    eb = np.array(list(b), dtype=np.int64)
    dims = tuple(int(x) for x in ea.max(axis=0) + eb.max(axis=0) + 1)
    volume = math.prod(dims)
    work = len(a) * len(b)
    if volume > _KRON_MAX_VOLUME or volume > 32 * work:
        return None
    ca = list(a.values())
    cb = list(b.values())
    bound = max(map(abs, ca)) * max(map(abs, cb)) * min(len(a), len(b))
    width = bound.bit_length() + (1 if signed else 0)
    nbytes = next((n for n in (1, 2, 4, 8) if 8 * n >= width), None)
    if nbytes is None:
        return _kronecker_wide(ea, eb, ca, cb, dims, (width + 7) // 8, signed)
    utype = _UINT[nbytes]
    strides = np.array([math.prod(dims[k + 1:]) for k in range(nvars)], dtype=np.int64)

    def pack(exps, coeffs):
        idx = exps @ strides
        size = int(idx.max()) + 1
        if not signed:
            arr = np.zeros(size, dtype=utype)
            arr[idx] = coeffs
            return int.from_bytes(arr.tobytes(), "little")
        pos = np.zeros(size, dtype=utype)
        neg = np.zeros(size, dtype=utype)
        cs = np.array(coeffs, dtype=object)
        mask = cs > 0
        pos[idx[mask]] = cs[mask].astype(np.uint64)
        neg[idx[~mask]] = (-cs[~mask]).astype(np.uint64)
        return int.from_bytes(pos.tobytes(), "little") - int.from_bytes(neg.tobytes(), "little")

    prod = _bigmul(pack(ea, ca), pack(eb, cb))
    if signed:
        half = 1 << (8 * nbytes - 1)
        prod += int.from_bytes(np.full(volume, half, dtype=utype).tobytes(), "little")
    digits = np.frombuffer(prod.to_bytes(volume * nbytes, "little"), dtype=utype)
    if signed:
        digits = (digits - utype(half)).view(_SINT[nbytes])
    nz = np.flatnonzero(digits)
    exps = zip(*(x.tolist() for x in np.unravel_index(nz, dims)))
    return dict(zip(exps, digits[nz].tolist()))


def _kronecker_wide(ea, eb, ca, cb, dims, nbytes, signed):
    """Kronecker product with digits wider than 64 bits, packed byte-wise."""
    volume = math.prod(dims)
    strides = [math.prod(dims[k + 1:]) for k in range(len(dims))]

    def pack(exps, coeffs):
        idx = (exps @ np.array(strides, dtype=np.int64)).tolist()
        size = (max(idx) + 1) * nbytes
        pos = bytearray(size)
        neg = bytearray(size)
        for i, c in zip(idx, coeffs):
            buf = pos if c > 0 else neg
            buf[i * nbytes:(i + 1) * nbytes] = abs(c).to_bytes(nbytes, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    prod = _bigmul(pack(ea, ca), pack(eb, cb))
    half = 1 << (8 * nbytes - 1)
    if signed:
        prod += int.from_bytes(half.to_bytes(nbytes, "little") * volume, "little")
    cells = np.frombuffer(prod.to_bytes(volume * nbytes, "little"), dtype=np.uint8).reshape(volume, nbytes)
    if signed:
        offset = np.frombuffer(half.to_bytes(nbytes, "little"), dtype=np.uint8)
        nz = np.flatnonzero((cells != offset).any(axis=1))
    else:
        nz = np.flatnonzero(cells.any(axis=1))
    exps = zip(*(x.tolist() for x in np.unravel_index(nz, dims)))
    shift = half if signed else 0
    return {e: int.from_bytes(cells[k].tobytes(), "little") - shift for e, k in zip(exps, nz.tolist())}


def _bigmul(a: int, b: int) -> int:
    # GMP is much faster than CPython once the packed operands reach kilobytes
    if a.bit_length() < 20000 or b.bit_length() < 20000:
        return a * b
    return int(gmpy2.mpz(a) * gmpy2.mpz(b))


def _int_product(a: dict, b: dict, nvars: int, signed: bool) -> dict:
    if len(a) * len(b) >= _KRON_MIN_WORK:
        got = _kronecker(a, b, nvars, signed)
        if got is not None:
            return got
    return _schoolbook(a, b, nvars)


def _clear_denominators(terms: dict):
    den = 1
    for c in terms.values():
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return terms, 1
    return {e: int(c * den) for e, c in terms.items()}, den


def _mul_terms(spec: FieldSpec, a: dict, b: dict, nvars: int) -> dict:
    if spec.is_prime_field:
        return _norm_terms(spec, _int_product(a, b, nvars, signed=False))
    ia, da = _clear_denominators(a)
    ib, db = _clear_denominators(b)
    prod = _int_product(ia, ib, nvars, signed=True)
    den = da * db
    if den != 1:
        prod = {e: Fraction(c, den) for e, c in prod.items()}
    return _norm_terms(spec, prod)


def _fmt_coeff(spec: FieldSpec, c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class Poly:
    """Common machinery; use :class:`Poly2`, :class:`PolyT` or :class:`PolyTU`."""

    VARS: tuple = ()
    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms=None):
        self.spec = spec
        self.terms = _norm_terms(spec, terms) if terms else {}

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.terms = terms
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def nvars(cls) -> int:
        return len(cls.VARS)

    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, {})

    @classmethod
    def const(cls, spec, c):
        v = spec(c).value
        return cls._raw(spec, {(0,) * len(cls.VARS): v} if v else {})

    @classmethod
    def one(cls, spec):
        return cls.const(spec, 1)

    @classmethod
    def var(cls, spec, name: str):
        idx = cls.VARS.index(name)
        e = [0] * len(cls.VARS)
        e[idx] = 1
        return cls._raw(spec, {tuple(e): 1})

    @classmethod
    def monomial(cls, spec, exps, coeff=1):
        v = spec(coeff).value
        return cls._raw(spec, {tuple(exps): v} if v else {})

    @classmethod
    def from_dict(cls, spec, mapping):
        """Build from ``{exponent tuple: int | Fraction | FieldElement}``."""
        terms = {}
        n = len(cls.VARS)
        for e, c in mapping.items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {cls.__name__}")
            v = spec(c).value
            if v:
                terms[e] = v
        return cls._raw(spec, terms)

    @classmethod
    def embed(cls, p: "Poly"):
        """Lift ``p`` from a ring whose variables are a prefix of ours."""
        if type(p) is cls:
            return p
        k = len(p.VARS)
        if p.VARS != cls.VARS[:k]:
            raise TypeError(f"cannot embed {type(p).__name__} into {cls.__name__}")
        pad = (0,) * (len(cls.VARS) - k)
        return cls._raw(p.spec, {e + pad: c for e, c in p.terms.items()})

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise MixedFieldError(f"cannot combine {self.spec} and {other.spec} polynomials")
            if type(other) is type(self):
                return other
            if len(other.VARS) < len(self.VARS):
                return type(self).embed(other)
            return NotImplemented
        if isinstance(other, (int, Fraction, FieldElement)):
            return type(self).const(self.spec, other)
        return NotImplemented

    # -- ring arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        acc = dict(self.terms)
        for e, c in o.terms.items():
            acc[e] = acc.get(e, 0) + c
        return type(self)._raw(self.spec, _norm_terms(self.spec, acc))

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.spec, _norm_terms(self.spec, {e: -c for e, c in self.terms.items()}))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        acc = dict(self.terms)
        for e, c in o.terms.items():
            acc[e] = acc.get(e, 0) - c
        return type(self)._raw(self.spec, _norm_terms(self.spec, acc))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return type(self).zero(self.spec)
        return type(self)._raw(self.spec, _mul_terms(self.spec, self.terms, o.terms, len(self.VARS)))

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a scalar (int, Fraction, FieldElement or raw value)."""
        v = self.spec(c).value if not isinstance(c, FieldElement) else c.value
        if isinstance(c, FieldElement) and c.spec != self.spec:
            raise MixedFieldError(f"cannot scale {self.spec} polynomial by {c.spec} scalar")
        if v == 0:
            return type(self).zero(self.spec)
        return type(self)._raw(self.spec, _norm_terms(self.spec, {e: c * v for e, c in self.terms.items()}))

    def _scale_raw(self, v):
        return type(self)._raw(self.spec, _norm_terms(self.spec, {e: c * v for e, c in self.terms.items()}))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = type(self).one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison / inspection -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            if type(other) is not type(self):
                try:
                    o = self._coerce(other)
                except MixedFieldError:
                    return False
                if o is NotImplemented:
                    return other.__eq__(self)
                other = o
            return self.spec == other.spec and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            try:
                return self == type(self).const(self.spec, other)
            except (MixedFieldError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.spec, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> FieldElement:
        return FieldElement(self.spec, self.terms.get((0,) * len(self.VARS), 0))

    def coefficient(self, exps) -> FieldElement:
        return FieldElement(self.spec, self.terms.get(tuple(exps), 0))

    def items(self):
        """(exponents, FieldElement) pairs in descending term order."""
        return [(e, FieldElement(self.spec, self.terms[e])) for e in self.sorted_exponents()]

    @staticmethod
    def _order_key(e):
        return e

    def sorted_exponents(self):
        return sorted(self.terms, key=self._order_key, reverse=True)

    def leading_coefficient(self) -> FieldElement:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return FieldElement(self.spec, self.terms[max(self.terms, key=self._order_key)])

    def monic(self):
        """Scale so the leading coefficient (term order) is 1."""
        lc = self.leading_coefficient()
        return self._scale_raw(self.spec.inv_raw(lc.value))

    def normalized(self):
        """Drop the constant term and make the result monic."""
        g = self - self.constant_term()
        if g.is_zero():
            raise ZeroPolynomial("cannot normalize a constant")
        return g.monic()

    def deg_in(self, idx: int):
        if not self.terms:
            return MINUS_INFINITY
        return max(e[idx] for e in self.terms)

    def total_deg(self):
        """Total degree in every variable of the ring (``MINUS_INFINITY`` for zero)."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return {self.VARS[i] for i in used}

    # -- text -----------------------------------------------------------------
    def _fmt_monomial(self, e) -> str:
        parts = []
        for name, x in zip(self.VARS, e):
            if x == 1:
                parts.append(name)
            elif x > 1:
                parts.append(f"{name}^{x}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in self.sorted_exponents():
            c = self.terms[e]
            neg = not self.spec.is_prime_field and c < 0
            mag = -c if neg else c
            mono = self._fmt_monomial(e)
            if not mono:
                body = _fmt_coeff(self.spec, mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(self.spec, mag)}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"{type(self).__name__}({self.spec}, {self})"


class Poly2(Poly):
    VARS = ("x1", "x2")
    __slots__ = ()

    @classmethod
    def gens(cls, spec):
        return cls.var(spec, "x1"), cls.var(spec, "x2")

    def top_homog(self) -> "Poly2":
        if not self.terms:
            raise ZeroPolynomial("top_homog of zero")
        d = self.total_deg()
        return Poly2._raw(self.spec, {e: c for e, c in self.terms.items() if e[0] + e[1] == d})

    def w_deg(self, w: Weight):
        if not self.terms:
            return MINUS_INFINITY
        w1, w2 = w
        return max(i * w1 + j * w2 for i, j in self.terms)

    def w_top(self, w: Weight) -> "Poly2":
        if not self.terms:
            raise ZeroPolynomial("w_top of zero")
        w1, w2 = w
        d = self.w_deg(w)
        return Poly2._raw(self.spec, {e: c for e, c in self.terms.items() if e[0] * w1 + e[1] * w2 == d})

    def is_w_homogeneous(self, w: Weight) -> bool:
        return self.is_zero() or self.w_top(w) == self

    def weight_of(self) -> Weight:
        if not self.terms:
            raise ZeroPolynomial("weight_of zero")
        # deliberately swapped: x1 is weighted by the x2-degree and vice versa
        return Weight(self.deg_in(1), self.deg_in(0))

    def is_non_univariate(self) -> bool:
        return any(e[0] > 0 for e in self.terms) and any(e[1] > 0 for e in self.terms)

    def univariate_in(self):
        """Index of the only variable used (0 or 1), ``None`` for constants or mixed."""
        used = self.variables_used()
        if len(used) != 1:
            return None
        return self.VARS.index(used.pop())

    def univariate_coeffs(self, idx: int):
        """Coefficient list of a polynomial in the single variable ``VARS[idx]``."""
        if any(e[1 - idx] for e in self.terms):
            raise ValueError(f"{self} is not a polynomial in {self.VARS[idx]} alone")
        n = self.deg_in(idx)
        if n is MINUS_INFINITY:
            return []
        out = [FieldElement(self.spec, 0)] * (n + 1)
        for e, c in self.terms.items():
            out[e[idx]] = FieldElement(self.spec, c)
        return out


class PolyT(Poly):
    VARS = ("x1", "x2", "T")
    __slots__ = ()

    @staticmethod
    def _order_key(e):
        return (e[2], e[0], e[1])

    @classmethod
    def T(cls, spec):
        return cls.var(spec, "T")

    @classmethod
    def from_coeffs(cls, spec, coeffs):
        """Build sum of ``coeffs[i] * T**i`` from Poly2 values."""
        terms = {}
        for i, q in coeffs.items():
            if q.spec != spec:
                raise MixedFieldError("coefficient field mismatch")
            for (a, b), c in q.terms.items():
                terms[(a, b, i)] = c
        return cls._raw(spec, terms)

    def tdeg(self):
        return self.deg_in(2)

    def coeff(self, i: int) -> Poly2:
        return Poly2._raw(self.spec, {(a, b): c for (a, b, t), c in self.terms.items() if t == i})

    def coeffs(self) -> dict:
        out = defaultdict(dict)
        for (a, b, t), c in self.terms.items():
            out[t][(a, b)] = c
        return {t: Poly2._raw(self.spec, d) for t, d in sorted(out.items())}

    def lead(self) -> Poly2:
        if not self.terms:
            raise ZeroPolynomial("zero has no leading T-coefficient")
        return self.coeff(self.tdeg())

    def is_poly2(self) -> bool:
        return all(t == 0 for (_, _, t) in self.terms)

    def to_poly2(self) -> Poly2:
        if not self.is_poly2():
            raise ValueError(f"{self} involves T")
        return self.coeff(0)

    def z2_deg(self) -> Z2Degree:
        if not self.terms:
            raise ZeroPolynomial("z2_deg of zero")
        m = self.tdeg()
        return Z2Degree(m, self.coeff(m).total_deg())

    def shift_T(self) -> "PolyTU":
        """Substitute T -> T + U."""
        x1, x2 = PolyTU.var(self.spec, "x1"), PolyTU.var(self.spec, "x2")
        return subst(self, x1, x2, PolyTU.var(self.spec, "T") + PolyTU.var(self.spec, "U"))


class PolyTU(Poly):
    VARS = ("x1", "x2", "T", "U")
    __slots__ = ()

    @staticmethod
    def _order_key(e):
        return (e[2], e[3], e[0], e[1])

    def coeff(self, t: int, u: int) -> Poly2:
        return Poly2._raw(self.spec, {(a, b): c for (a, b, s, v), c in self.terms.items() if s == t and v == u})


# -- free functions ------------------------------------------------------------

def total_deg(f: Poly2):
    return f.total_deg()


def top_homog(f: Poly2) -> Poly2:
    return f.top_homog()


def w_deg(f: Poly2, w: Weight):
    return f.w_deg(w)


def w_top(f: Poly2, w: Weight) -> Poly2:
    return f.w_top(w)


def weight_of(f: Poly2) -> Weight:
    return f.weight_of()


def is_non_univariate(f: Poly2) -> bool:
    return f.is_non_univariate()


def z2_deg(q: PolyT) -> Z2Degree:
    return q.z2_deg()


def _power(cache: dict, e: int):
    got = cache.get(e)
    if got is not None:
        return got
    if e % 2 == 0:
        half = _power(cache, e // 2)
        got = half * half
    else:
        got = _power(cache, e - 1) * cache[1]
    cache[e] = got
    return got


def _linear_combination(cls, spec, pairs):
    """sum of raw c * poly over ``pairs``."""
    acc = defaultdict(int)
    if spec.is_prime_field:
        for c, p in pairs:
            for e, v in p.terms.items():
                acc[e] += c * v
        return cls._raw(spec, _norm_terms(spec, acc))
    # over Q, accumulate integer numerators over one common denominator
    parts = []
    den = 1
    for c, p in pairs:
        ints, d = _clear_denominators(p.terms)
        c = Fraction(c)
        d *= c.denominator
        parts.append((c.numerator, d, ints))
        den = den * d // math.gcd(den, d)
    for num, d, ints in parts:
        scale = num * (den // d)
        for e, v in ints.items():
            acc[e] += scale * v
    if den != 1:
        acc = {e: Fraction(v, den) for e, v in acc.items()}
    return cls._raw(spec, _norm_terms(spec, acc))


def _horner(cls, spec, terms: dict, caches: list, k: int):
    if len(caches) - k == 1:
        return _linear_combination(cls, spec, [(c, _power(caches[k], e[0])) for e, c in terms.items()])
    groups = defaultdict(dict)
    for e, c in terms.items():
        groups[e[0]][e[1:]] = c
    order = sorted(groups, reverse=True)
    acc = _horner(cls, spec, groups[order[0]], caches, k + 1)
    prev = order[0]
    for e in order[1:]:
        acc = acc * _power(caches[k], prev - e) + _horner(cls, spec, groups[e], caches, k + 1)
        prev = e
    if prev:
        acc = acc * _power(caches[k], prev)
    return acc


def subst(f: Poly, *images):
    """Replace the i-th variable of ``f`` by ``images[i]``.

    Images may mix Poly2 and PolyT/PolyTU values; the result lives in the
    largest of their rings.
    """
    if len(images) != len(f.VARS):
        raise ValueError(f"{type(f).__name__} needs {len(f.VARS)} images, got {len(images)}")
    spec = f.spec
    for g in images:
        if g.spec != spec:
            raise MixedFieldError(f"cannot substitute {g.spec} polynomials into a {spec} polynomial")
    cls = max((type(g) for g in images), key=lambda c: len(c.VARS))
    imgs = [cls.embed(g) for g in images]
    if not f.terms:
        return cls.zero(spec)
    caches = [{0: cls.one(spec), 1: g} for g in imgs]
    return _horner(cls, spec, f.terms, caches, 0)


def eval_T(q: PolyT, t: Poly2) -> Poly2:
    """sum of q_i * t**i."""
    if q.spec != t.spec:
        raise MixedFieldError("field mismatch in eval_T")
    coeffs = q.coeffs()
    if not coeffs:
        return Poly2.zero(q.spec)
    order = sorted(coeffs, reverse=True)
    cache = {0: Poly2.one(q.spec), 1: t}
    acc = coeffs[order[0]]
    prev = order[0]
    for i in order[1:]:
        acc = acc * _power(cache, prev - i) + coeffs[i]
        prev = i
    if prev:
        acc = acc * _power(cache, prev)
    return acc
