"""Exact scalars over the rationals and prime fields.

Polynomials store *raw* coefficients for speed: an ``int`` or
:class:`fractions.Fraction` over Q (integral values are always plain ints),
and the least nonnegative residue over F_p.  :class:`FieldSpec` owns the raw
arithmetic; :class:`FieldElement` is the public, self-describing scalar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from sympy import integer_nthroot, isprime
from sympy.ntheory.residue_ntheory import nthroot_mod

from .errors import DivisionByZero, InvalidFieldSpec, MixedFieldError

MAX_MODULUS = 2**61
_BRUTE_FORCE_LIMIT = 2**16

Raw = Union[int, Fraction]


class FieldKind(enum.Enum):
    RATIONALS = "q"
    PRIME_FIELD = "fp"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.modulus is not None:
                raise InvalidFieldSpec("the rationals take no modulus")
            return
        p = self.modulus
        if not isinstance(p, int) or p < 2 or p >= MAX_MODULUS:
            raise InvalidFieldSpec(f"modulus must be a prime below 2^61, got {p!r}")
        if not isprime(p):
            raise InvalidFieldSpec(f"modulus {p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Read a designator ``"q"`` or ``"fp:<prime>"``."""
        t = text.strip().lower()
        if t == "q":
            return cls.rationals()
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise InvalidFieldSpec(f"bad field designator {text!r}") from None
            return cls.prime(p)
        raise InvalidFieldSpec(f"bad field designator {text!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME_FIELD

    def characteristic(self) -> int:
        return self.modulus if self.is_prime_field else 0

    def designator(self) -> str:
        return f"fp:{self.modulus}" if self.is_prime_field else "q"

    def __str__(self):
        return self.designator()

    # -- raw arithmetic -------------------------------------------------
    def norm(self, x) -> Raw:
        """Canonical raw form of an int or Fraction."""
        if self.is_prime_field:
            if isinstance(x, Fraction):
                return (x.numerator * self.inv_raw(x.denominator % self.modulus)) % self.modulus
            return x % self.modulus
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def inv_raw(self, x: Raw) -> Raw:
        if self.is_prime_field:
            x %= self.modulus
            if x == 0:
                raise DivisionByZero("inverse of zero")
            return pow(x, -1, self.modulus)
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self.norm(1 / Fraction(x))

    def div_raw(self, a: Raw, b: Raw) -> Raw:
        if self.is_prime_field:
            return (a * self.inv_raw(b)) % self.modulus
        if b == 0:
            raise DivisionByZero("division by zero")
        return self.norm(Fraction(a) / b)

    def __call__(self, value) -> "FieldElement":
        """Coerce an int, Fraction or ``"a/b"`` string into this field."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise MixedFieldError(f"{value.spec} element used in {self}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction) and self.is_prime_field and value.denominator % self.modulus == 0:
            raise DivisionByZero(f"denominator of {value} vanishes in {self}")
        return FieldElement(self, self.norm(value))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """Iterate F_p in canonical order.  Not available over Q."""
        if not self.is_prime_field:
            raise TypeError("the rationals are not enumerable here")
        return (FieldElement(self, i) for i in range(self.modulus))


QQ = FieldSpec.rationals()


def characteristic(spec: FieldSpec) -> int:
    return spec.characteristic()


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: Raw

    def _coerce(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFieldError(f"cannot combine {self.spec} and {other.spec} elements")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.spec(other).value
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.norm(self.value + o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.norm(self.value - o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.norm(o - self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.norm(self.value * o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div_raw(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div_raw(o, self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.norm(-self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.spec.is_prime_field:
            return FieldElement(self.spec, pow(self.value, n, self.spec.modulus))
        return FieldElement(self.spec, self.spec.norm(Fraction(self.value) ** n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_raw(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.spec.norm(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldElement({self.spec}, {self.value})"


def _rational_roots(c: Fraction, n: int) -> list:
    if c == 0:
        return [0]
    if c < 0 and n % 2 == 0:
        return []
    num, exact_n = integer_nthroot(abs(c.numerator), n)
    den, exact_d = integer_nthroot(c.denominator, n)
    if not (exact_n and exact_d):
        return []
    r = Fraction(num, den)
    if c < 0:
        r = -r
    return [-r, r] if n % 2 == 0 else [r]


def _residue_roots(c: int, n: int, p: int) -> list:
    if c == 0:
        return [0]
    if p < _BRUTE_FORCE_LIMIT:
        return [r for r in range(1, p) if pow(r, n, p) == c]
    roots = nthroot_mod(c, n, p, all_roots=True) or []
    return sorted(int(r) for r in roots)


def all_nth_roots(c: FieldElement, n: int) -> list:
    """Every r in the field with r**n == c, ordered by canonical representative."""
    if n < 1:
        raise ValueError("root index must be positive")
    spec = c.spec
    if spec.is_prime_field:
        raws = _residue_roots(c.value, n, spec.modulus)
    else:
        raws = _rational_roots(Fraction(c.value), n)
    return [FieldElement(spec, spec.norm(r)) for r in raws]


def nth_root(c: FieldElement, n: int) -> Optional[FieldElement]:
    """An n-th root of ``c``, or ``None`` when the field has none.

    Over F_p the least residue wins.  Over Q the real root is returned for odd
    ``n`` and the nonnegative one for even ``n``.
    """
    roots = all_nth_roots(c, n)
    if not roots:
        return None
    if c.spec.is_prime_field:
        return roots[0]
    return roots[-1]
