"""Plane endomorphisms: composition, tame decomposition, inversion, leading
relations, the (x_i - b x_j^l)^m normal form of weighted leading forms, and
coordinate recognition.

Convention: a :class:`PlaneMap` ``(f1, f2)`` is the k-algebra endomorphism
``x1 -> f1, x2 -> f2``; ``apply(phi, f) = f(f1, f2)`` and
``compose(phi, psi)`` is ``phi o psi``, i.e.
``apply(compose(phi, psi), f) == apply(phi, apply(psi, f))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import NamedTuple, Optional, Union

from .errors import MixedFieldError, NotAutomorphismError, PlaneAutError, PreconditionViolation
from .field import FieldElement, FieldSpec, all_nth_roots
from .poly import MINUS_INFINITY, Poly2, subst


@dataclass(frozen=True)
class PlaneMap:
    f1: Poly2
    f2: Poly2

    def __post_init__(self):
        if self.f1.spec != self.f2.spec:
            raise MixedFieldError("map components live over different fields")

    @property
    def spec(self) -> FieldSpec:
        return self.f1.spec

    @classmethod
    def identity(cls, spec: FieldSpec) -> "PlaneMap":
        return cls(*Poly2.gens(spec))

    @classmethod
    def swap(cls, spec: FieldSpec) -> "PlaneMap":
        x1, x2 = Poly2.gens(spec)
        return cls(x2, x1)

    def __iter__(self):
        return iter((self.f1, self.f2))

    def __getitem__(self, i: int) -> Poly2:
        """1-based component access, matching the x1/x2 naming."""
        if i == 1:
            return self.f1
        if i == 2:
            return self.f2
        raise IndexError(i)

    def replace(self, i: int, g: Poly2) -> "PlaneMap":
        return PlaneMap(g, self.f2) if i == 1 else PlaneMap(self.f1, g)

    def degrees(self):
        return self.f1.total_deg(), self.f2.total_deg()

    def max_degree(self):
        return max(self.degrees())

    def is_identity(self) -> bool:
        return self == PlaneMap.identity(self.spec)

    def __str__(self):
        return f"({self.f1}, {self.f2})"


def apply(phi: PlaneMap, f: Poly2) -> Poly2:
    if phi.spec != f.spec:
        raise MixedFieldError(f"cannot apply a {phi.spec} map to a {f.spec} polynomial")
    return subst(f, phi.f1, phi.f2)


def compose(phi: PlaneMap, psi: PlaneMap) -> PlaneMap:
    """phi o psi."""
    return PlaneMap(apply(phi, psi.f1), apply(phi, psi.f2))


def compose_all(spec: FieldSpec, maps) -> PlaneMap:
    return reduce(compose, maps, PlaneMap.identity(spec))


# -- factors -------------------------------------------------------------------

@dataclass(frozen=True)
class ElementaryFactor:
    """x_target -> x_target + addend(x_other), the other variable fixed."""

    target: int
    addend: Poly2

    def __post_init__(self):
        if self.target not in (1, 2):
            raise ValueError("target must be 1 or 2")
        if any(e[self.target - 1] for e in self.addend.terms):
            raise ValueError(f"addend {self.addend} must not involve x{self.target}")

    kind = "elem"

    def as_map(self, spec: FieldSpec) -> PlaneMap:
        ident = PlaneMap.identity(spec)
        return ident.replace(self.target, ident[self.target] + self.addend)

    def inverse(self) -> "ElementaryFactor":
        return ElementaryFactor(self.target, -self.addend)

    def to_json(self):
        return {"kind": "elem", "target": self.target, "addend": str(self.addend)}


@dataclass(frozen=True)
class AffineFactor:
    """x1 -> a*x1 + b*x2 + e, x2 -> c*x1 + d*x2 + f with ``matrix = ((a, b), (c, d))``."""

    matrix: tuple
    translation: tuple

    kind = "affine"

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if (a * d - b * c).is_zero():
            raise ValueError("singular linear part")

    @property
    def spec(self) -> FieldSpec:
        return self.matrix[0][0].spec

    @classmethod
    def from_map(cls, phi: PlaneMap) -> "AffineFactor":
        rows = []
        shift = []
        for g in phi:
            rows.append((g.coefficient((1, 0)), g.coefficient((0, 1))))
            shift.append(g.constant_term())
        return cls(tuple(rows), tuple(shift))

    def determinant(self) -> FieldElement:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def as_map(self, spec: FieldSpec) -> PlaneMap:
        x1, x2 = Poly2.gens(spec)
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        return PlaneMap(x1 * a + x2 * b + e, x1 * c + x2 * d + f)

    def inverse(self) -> "AffineFactor":
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        det = self.determinant()
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        return AffineFactor(((ia, ib), (ic, id_)), (-(ia * e + ib * f), -(ic * e + id_ * f)))

    def is_identity(self) -> bool:
        (a, b), (c, d) = self.matrix
        return a == 1 and d == 1 and b.is_zero() and c.is_zero() and all(t.is_zero() for t in self.translation)

    def to_json(self):
        return {
            "kind": "affine",
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "translation": [str(v) for v in self.translation],
        }


Factor = Union[ElementaryFactor, AffineFactor]


@dataclass(frozen=True)
class TameDecomposition:
    """phi = F1 o F2 o ... o Fn for ``factors = (F1, ..., Fn)``."""

    spec: FieldSpec
    factors: tuple

    def product(self) -> PlaneMap:
        return compose_all(self.spec, (f.as_map(self.spec) for f in self.factors))

    def inverse_map(self) -> PlaneMap:
        return compose_all(self.spec, (f.inverse().as_map(self.spec) for f in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def to_json(self):
        return {"field": self.spec.designator(), "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class NotAutomorphism:
    """Negative result of :func:`tame_decompose` with the state it got stuck on."""

    reason: str
    f1: Poly2
    f2: Poly2

    def __bool__(self):
        return False

    def to_json(self):
        return {"kind": "NotAutomorphism", "reason": self.reason, "f1": str(self.f1), "f2": str(self.f2)}


class LeadingRelation(NamedTuple):
    """top(f_i) == alpha * top(f_j)**l."""

    i: int
    j: int
    alpha: FieldElement
    l: int

    def to_json(self):
        return {"i": self.i, "j": self.j, "alpha": str(self.alpha), "l": self.l}


def _match_power(top_i: Poly2, top_j: Poly2, l: int) -> Optional[FieldElement]:
    """alpha with top_i == alpha * top_j**l, or None."""
    power = top_j**l
    alpha = top_i.leading_coefficient() / power.leading_coefficient()
    if top_i == power.scale(alpha):
        return alpha
    return None


def leading_relation(phi: PlaneMap) -> Optional[LeadingRelation]:
    """Find (i, j, alpha, l) with top(f_i) = alpha * top(f_j)^l; ``None`` if none exists.

    Among valid answers the component of larger degree is reduced; equal
    degrees prefer i = 1.
    """
    d1, d2 = phi.degrees()
    if d1 is MINUS_INFINITY or d2 is MINUS_INFINITY or d1 < 1 or d2 < 1 or max(d1, d2) < 2:
        raise PreconditionViolation(f"leading_relation needs degrees >= 1 with one >= 2, got ({d1}, {d2})")
    tops = {1: phi.f1.top_homog(), 2: phi.f2.top_homog()}
    degs = {1: d1, 2: d2}
    order = [(1, 2), (2, 1)] if d1 >= d2 else [(2, 1), (1, 2)]
    for i, j in order:
        if degs[i] % degs[j]:
            continue
        l = degs[i] // degs[j]
        alpha = _match_power(tops[i], tops[j], l)
        if alpha is not None:
            return LeadingRelation(i, j, alpha, l)
    return None


def tame_decompose(phi: PlaneMap) -> Union[TameDecomposition, NotAutomorphism]:
    spec = phi.spec
    x = dict(zip((1, 2), Poly2.gens(spec)))
    cur = phi
    peeled = []  # inverse elementary factors, in discovery order
    while True:
        d1, d2 = cur.degrees()
        if max(d1, d2) < 2:
            break
        if min(d1, d2) < 1:
            return NotAutomorphism("constant component", cur.f1, cur.f2)
        rel = leading_relation(cur)
        if rel is None:
            return NotAutomorphism("no leading relation between the top forms", cur.f1, cur.f2)
        i, j, alpha, l = rel
        addend = (x[j] ** l).scale(alpha)
        cur = cur.replace(i, cur[i] - (cur[j] ** l).scale(alpha))
        peeled.append(ElementaryFactor(i, addend))
    for g in cur:
        if g.total_deg() is MINUS_INFINITY:
            return NotAutomorphism("zero component", cur.f1, cur.f2)
    (a, b), (c, d) = ((g.coefficient((1, 0)), g.coefficient((0, 1))) for g in cur)
    if (a * d - b * c).is_zero():
        return NotAutomorphism("singular linear part", cur.f1, cur.f2)
    affine = AffineFactor.from_map(cur)
    factors = ([] if affine.is_identity() else [affine]) + peeled[::-1]
    return TameDecomposition(spec, tuple(factors))


def is_automorphism(phi: PlaneMap) -> bool:
    return isinstance(tame_decompose(phi), TameDecomposition)


def _require_decomposition(phi: PlaneMap) -> TameDecomposition:
    dec = tame_decompose(phi)
    if isinstance(dec, NotAutomorphism):
        raise NotAutomorphismError(dec)
    return dec


def invert(phi: PlaneMap) -> PlaneMap:
    """Two-sided inverse; raises :class:`NotAutomorphismError` if none exists."""
    return _require_decomposition(phi).inverse_map()


# -- weighted leading forms ----------------------------------------------------

class ICForm(NamedTuple):
    """f^{w(f)} == a * (x_i - b * x_j**l)**m."""

    a: FieldElement
    b: FieldElement
    i: int
    j: int
    l: int
    m: int

    def expand(self, spec: FieldSpec) -> Poly2:
        x = dict(zip((1, 2), Poly2.gens(spec)))
        return ((x[self.i] - (x[self.j] ** self.l).scale(self.b)) ** self.m).scale(self.a)

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b), "i": self.i, "j": self.j, "l": self.l, "m": self.m}


def ic_form(f: Poly2) -> Optional[ICForm]:
    """Write the w(f)-leading form of ``f`` as ``a (x_i - b x_j^l)^m``.

    Returns ``None`` when the leading form has no such shape.  Every root
    ``b`` of ``b^m = (-1)^m c / a`` is tried and the answer is confirmed by
    expansion, which keeps the routine correct when p divides m.
    """
    if not f.is_non_univariate():
        raise PreconditionViolation(f"{f} is univariate")
    spec = f.spec
    F = f.w_top(f.weight_of())
    for i, j in ((1, 2), (2, 1)):
        m = F.deg_in(i - 1)
        lm = F.deg_in(j - 1)
        if m < 1 or lm < 1 or lm % m:
            continue
        l = lm // m
        ei = [0, 0]
        ei[i - 1] = m
        ej = [0, 0]
        ej[j - 1] = lm
        a = F.coefficient(ei)
        c = F.coefficient(ej)
        if a.is_zero() or c.is_zero():
            continue
        target = c / (a * (-1) ** m)
        for b in all_nth_roots(target, m):
            cand = ICForm(a, b, i, j, l, m)
            if cand.expand(spec) == F:
                return cand
    return None


class ICFailure(PlaneAutError, RuntimeError):
    """A non-univariate invariant whose weighted leading form is not of IC shape."""

    kind = "ICFailure"


def leading_relation_via_ic(phi: PlaneMap) -> LeadingRelation:
    """Leading relation of an automorphism read off the inverse map.

    For ``g_t = phi^{-1}(x_t)`` non-univariate, the normal form
    ``a (x_i - b x_j^l)^m`` of its weighted leading form yields
    ``top(f_i) = b * top(f_j)^l``.  When ``l == 1`` and the answer has
    ``i == 2`` it is restated with ``i == 1`` so it is comparable with
    :func:`leading_relation`.
    """
    d1, d2 = phi.degrees()
    if max(d1, d2) < 2:
        raise PreconditionViolation("map is affine")
    inv = invert(phi)
    g = next((h for h in inv if h.is_non_univariate()), None)
    if g is None:
        raise ICFailure(f"no component of the inverse {inv} is non-univariate")
    form = ic_form(g)
    if form is None:
        raise ICFailure(f"weighted leading form of {g} is not of IC shape")
    rel = LeadingRelation(form.i, form.j, form.b, form.l)
    if rel.l == 1 and rel.i == 2 and d1 == d2:
        rel = LeadingRelation(1, 2, rel.alpha.inverse(), 1)
    return rel


# -- coordinate recognition ----------------------------------------------------

@dataclass(frozen=True)
class CoordinateCertificate:
    """``automorphism.f1`` is the input; ``peels`` are the substitutions used."""

    automorphism: PlaneMap
    peels: tuple = field(default=())

    def __bool__(self):
        return True

    def to_json(self):
        return {
            "kind": "Coordinate",
            "f1": str(self.automorphism.f1),
            "f2": str(self.automorphism.f2),
            "peels": [p.to_json() for p in self.peels],
        }


@dataclass(frozen=True)
class NotCoordinate:
    reason: str
    residue: Poly2

    def __bool__(self):
        return False

    def to_json(self):
        return {"kind": "NotCoordinate", "reason": self.reason, "residue": str(self.residue)}


@dataclass(frozen=True)
class DepthExceeded:
    """The peel measure failed to drop.  Inconclusive, not a negative answer."""

    residue: Poly2
    measure_before: int
    measure_after: int

    def __bool__(self):
        return False

    def to_json(self):
        return {
            "kind": "DepthExceeded",
            "residue": str(self.residue),
            "measure_before": self.measure_before,
            "measure_after": self.measure_after,
        }


def _peel_measure(f: Poly2) -> int:
    return f.deg_in(0) + f.deg_in(1)


def coordinate_reduce(f: Poly2):
    """Decide whether ``f`` is a coordinate by peeling IC leading forms.

    Returns a :class:`CoordinateCertificate`, :class:`NotCoordinate` or
    :class:`DepthExceeded`.
    """
    if f.is_constant():
        raise PreconditionViolation("constant polynomials are never coordinates")
    spec = f.spec
    x = dict(zip((1, 2), Poly2.gens(spec)))
    cur = f
    peels = []
    while cur.total_deg() > 1:
        if not cur.is_non_univariate():
            return NotCoordinate("univariate of degree >= 2", cur)
        form = ic_form(cur)
        if form is None:
            return NotCoordinate("weighted leading form is not of IC shape", cur)
        eps = ElementaryFactor(form.i, (x[form.j] ** form.l).scale(form.b))
        nxt = apply(eps.as_map(spec), cur)
        before, after = _peel_measure(cur), _peel_measure(nxt)
        if nxt.is_constant() or after >= before:
            return DepthExceeded(cur, before, after)
        peels.append(eps)
        cur = nxt
    # cur = apply(E, f) with E = eps_{n-1} o ... o eps_0; f = apply(E^-1, cur)
    completion = PlaneMap(cur, x[2]) if not cur.coefficient((1, 0)).is_zero() else PlaneMap(cur, x[1])
    undo = compose_all(spec, (p.inverse().as_map(spec) for p in peels))
    cert = compose(undo, completion)
    if cert.f1 != f:
        raise RuntimeError(f"certificate reconstruction failed for {f}")
    return CoordinateCertificate(cert, tuple(peels))
