"""Additive-group actions on k[x1, x2], given as co-actions sigma: A -> A[T].

A :class:`CoAction` is just the pair of images ``(sigma(x1), sigma(x2))``.
Only :func:`validate` produces a :class:`ValidatedCoAction`, and every
operation that relies on the axioms insists on one.

(A2) is checked on the generators only.  Both sides of (A2), viewed as maps
``a -> sum sigma(a_i) U^i`` and ``a -> sum a_i (T + U)^i``, are k-algebra
homomorphisms A -> A[T, U]; two homomorphisms agreeing on x1 and x2 agree on
all of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .auto import PlaneMap, invert
from .errors import (
    AxiomViolation,
    DegreeCapExceeded,
    InvalidExponent,
    MixedFieldError,
    NotInvariantParameter,
    TrivialAction,
)
from .field import FieldSpec
from .linalg import RowEchelon
from .poly import Poly2, PolyT, PolyTU, eval_T, subst


@dataclass(frozen=True)
class CoAction:
    s1: PolyT
    s2: PolyT

    def __post_init__(self):
        for name in ("s1", "s2"):
            s = getattr(self, name)
            if not isinstance(s, PolyT):
                object.__setattr__(self, name, PolyT.embed(s))
        if self.s1.spec != self.s2.spec:
            raise MixedFieldError("generator images live over different fields")

    @property
    def spec(self) -> FieldSpec:
        return self.s1.spec

    @property
    def validated(self) -> bool:
        return False

    def __getitem__(self, i: int) -> PolyT:
        if i == 1:
            return self.s1
        if i == 2:
            return self.s2
        raise IndexError(i)

    def __str__(self):
        return f"({self.s1}, {self.s2})"


class ValidatedCoAction(CoAction):
    """A co-action known to satisfy (A1) and (A2).  Obtain one from :func:`validate`."""

    @property
    def validated(self) -> bool:
        return True


def _require_valid(sigma) -> ValidatedCoAction:
    if not isinstance(sigma, ValidatedCoAction):
        raise TypeError("operation needs a validated co-action; call validate() first")
    return sigma


def apply_action(sigma: CoAction, f: Poly2) -> PolyT:
    """sigma(f) = f(sigma(x1), sigma(x2)) in k[x1, x2][T]."""
    if f.spec != sigma.spec:
        raise MixedFieldError(f"cannot act on a {f.spec} polynomial with a {sigma.spec} action")
    if isinstance(f, PolyT):
        f = f.to_poly2()
    return subst(f, sigma.s1, sigma.s2)


def _shift_U(q: PolyTU, k: int) -> PolyTU:
    return PolyTU._raw(q.spec, {(a, b, t, u + k): c for (a, b, t, u), c in q.terms.items()})


def axiom_a2_sides(sigma: CoAction, a):
    """Both sides of (A2) as PolyTU values (left, right).

    ``a`` is a generator index (1 or 2) or any Poly2.
    """
    s = sigma[a] if isinstance(a, int) else apply_action(sigma, a)
    left = PolyTU.zero(sigma.spec)
    for k, coeff in s.coeffs().items():
        left = left + _shift_U(PolyTU.embed(apply_action(sigma, coeff)), k)
    right = s.shift_T()
    return left, right


def validate(sigma: CoAction) -> ValidatedCoAction:
    """Check (A1) and (A2) on both generators; raise :class:`AxiomViolation` on failure."""
    spec = sigma.spec
    gens = Poly2.gens(spec)
    for i, x in zip((1, 2), gens):
        diff = sigma[i].coeff(0) - x
        if not diff.is_zero():
            raise AxiomViolation("A1", f"x{i}", diff)
    for i in (1, 2):
        left, right = axiom_a2_sides(sigma, i)
        if left != right:
            raise AxiomViolation("A2", f"x{i}", right - left)
    if isinstance(sigma, ValidatedCoAction):
        return sigma
    return ValidatedCoAction(sigma.s1, sigma.s2)


def is_trivial(sigma: ValidatedCoAction) -> bool:
    _require_valid(sigma)
    x1, x2 = Poly2.gens(sigma.spec)
    return sigma.s1 == x1 and sigma.s2 == x2


def trivial_action(spec: FieldSpec) -> ValidatedCoAction:
    x1, x2 = Poly2.gens(spec)
    return validate(CoAction(PolyT.embed(x1), PolyT.embed(x2)))


def is_invariant(sigma: CoAction, f: Poly2) -> bool:
    return apply_action(sigma, f) == f


def evaluate(sigma: ValidatedCoAction, t: Poly2) -> PlaneMap:
    """The automorphism sigma_t: T -> t, for a sigma-invariant ``t``."""
    _require_valid(sigma)
    if not is_invariant(sigma, t):
        raise NotInvariantParameter(f"{t} is not invariant under the action")
    return PlaneMap(eval_T(sigma.s1, t), eval_T(sigma.s2, t))


def top_coefficient(sigma: ValidatedCoAction, a: Poly2) -> Poly2:
    """Leading T-coefficient of sigma(a); always invariant."""
    _require_valid(sigma)
    q = apply_action(sigma, a)
    if q.is_zero():
        return Poly2.zero(sigma.spec)
    lead = q.lead()
    assert is_invariant(sigma, lead), f"leading coefficient {lead} is not invariant"
    return lead


# -- invariants by linear algebra ----------------------------------------------

def monomials_up_to(d: int, start: int = 0):
    """Exponent pairs of total degree in [start, d], by degree then lex-descending."""
    return [(i, k - i) for k in range(start, d + 1) for i in range(k, -1, -1)]


class _ActionImages:
    """Memoized sigma(x1^a x2^b) built from cached powers of the images."""

    def __init__(self, sigma: CoAction):
        self.sigma = sigma
        one = PolyT.one(sigma.spec)
        self.pow1 = {0: one, 1: sigma.s1}
        self.pow2 = {0: one, 1: sigma.s2}
        self.cache = {}

    @staticmethod
    def _power(table, e):
        while e not in table:
            k = max(table)
            table[k + 1] = table[k] * table[1]
        return table[e]

    def image(self, e):
        got = self.cache.get(e)
        if got is None:
            got = self._power(self.pow1, e[0]) * self._power(self.pow2, e[1])
            self.cache[e] = got
        return got


def _invariant_system(sigma: CoAction, exps, images: Optional[_ActionImages] = None) -> RowEchelon:
    """Row echelon form of the system sigma(a) - a = 0 for a = sum c_e x^e."""
    images = images or _ActionImages(sigma)
    rows = {}
    n = len(exps)
    for col, e in enumerate(exps):
        q = images.image(e)
        for key, c in q.terms.items():
            rows.setdefault(key, {})[col] = c
        row = rows.setdefault((e[0], e[1], 0), {})
        row[col] = row.get(col, 0) - 1
    ech = RowEchelon(sigma.spec, n)
    for key in sorted(rows):
        sparse = rows[key]
        if not any(sigma.spec.norm(v) for v in sparse.values()):
            continue
        dense = [0] * n
        for col, v in sparse.items():
            dense[col] = v
        ech.add_row(dense)
        if ech.full():
            break
    return ech


def _vector_to_poly(spec, exps, vec) -> Poly2:
    return Poly2._raw(spec, {e: v for e, v in zip(exps, vec) if v})


def invariant_basis(sigma: CoAction, d: int, images: Optional[_ActionImages] = None) -> list:
    """Basis of the sigma-invariant polynomials of total degree <= d (constants included)."""
    exps = monomials_up_to(d)
    ech = _invariant_system(sigma, exps, images)
    return [_vector_to_poly(sigma.spec, exps, v) for v in ech.nullspace()]


def find_invariant(sigma: ValidatedCoAction, dmax: int = 24) -> Poly2:
    """A nonconstant invariant of least total degree, normalized.

    Normalization: no constant term, leading coefficient (lex order) 1.
    """
    _require_valid(sigma)
    if is_trivial(sigma):
        raise TrivialAction("the trivial action fixes everything")
    images = _ActionImages(sigma)
    for d in range(1, dmax + 1):
        exps = monomials_up_to(d, start=1)
        ech = _invariant_system(sigma, exps, images)
        basis = ech.nullspace()
        if basis:
            g = _vector_to_poly(sigma.spec, exps, basis[0]).normalized()
            assert is_invariant(sigma, g)
            return g
    raise DegreeCapExceeded(dmax)


# -- constructors --------------------------------------------------------------

def _is_frobenius_power(e: int, p: int) -> bool:
    if e < 1:
        return False
    if p == 0:
        return e == 1
    while e % p == 0:
        e //= p
    return e == 1


def basic_action(spec: FieldSpec, p_list) -> ValidatedCoAction:
    """sigma(x1) = x1, sigma(x2) = x2 + sum p_e(x1) T^e.

    ``p_list`` holds pairs ``(e, p_e)`` where ``e`` is the T-exponent, which
    must be 1 in characteristic 0 and a power of p in characteristic p.
    """
    p = spec.characteristic()
    x1, x2 = Poly2.gens(spec)
    T = PolyT.T(spec)
    s2 = PolyT.embed(x2)
    for e, pe in p_list:
        if not _is_frobenius_power(e, p):
            raise InvalidExponent(f"T^{e} is not additive in characteristic {p}")
        if pe.spec != spec:
            raise MixedFieldError("addend over the wrong field")
        if "x2" in pe.variables_used():
            raise ValueError(f"addend {pe} must be a polynomial in x1 alone")
        s2 = s2 + PolyT.embed(pe) * T**e
    return validate(CoAction(PolyT.embed(x1), s2))


def conjugate(sigma: ValidatedCoAction, phi: PlaneMap) -> ValidatedCoAction:
    """phi_T o sigma o phi^{-1}; invariants g of sigma become phi(g)."""
    _require_valid(sigma)
    return validate(conjugate_images(sigma, phi))


def conjugate_images(sigma: CoAction, phi: PlaneMap) -> CoAction:
    """The unvalidated co-action behind :func:`conjugate`."""
    if phi.spec != sigma.spec:
        raise MixedFieldError("map and action over different fields")
    inv = invert(phi)
    T = PolyT.T(sigma.spec)
    images = []
    for g in inv:
        q = apply_action(sigma, g)
        images.append(subst(q, phi.f1, phi.f2, T))
    return CoAction(*images)
