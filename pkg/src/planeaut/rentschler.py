"""The invariant coordinate of a nontrivial plane Ga-action.

Starting from ``(f1, f2) = (x1, x2)`` the loop keeps ``q_i = sigma(f_i)``
and, while both have positive T-degree, replaces ``f_i`` by
``f_i - alpha f_j^l`` where the top forms of the leading T-coefficients
satisfy ``top(q_{i,m_i}) = alpha top(q_{j,m_j})^l`` with ``m_i = l m_j``.
Each step lowers the Z^2-degree of ``q_i``, so the loop ends; when some
``q_i`` is free of T, ``f_i`` generates the invariant ring.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .auto import NotAutomorphism, PlaneMap, TameDecomposition, apply, tame_decompose
from .errors import StuckReduction, TrivialAction
from .field import FieldElement
from .gaction import (
    ValidatedCoAction,
    _require_valid,
    invariant_basis,
    is_invariant,
    is_trivial,
)
from .poly import Poly2, Z2Degree, subst

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionStep:
    i: int
    j: int
    alpha: FieldElement
    l: int
    z2_before: Z2Degree
    z2_after: Z2Degree

    def to_json(self):
        return {
            "i": self.i,
            "j": self.j,
            "alpha": str(self.alpha),
            "l": self.l,
            "z2_before": list(self.z2_before),
            "z2_after": list(self.z2_after),
        }


@dataclass(frozen=True)
class InvariantResult:
    f: Poly2
    companion: Poly2
    trace: tuple
    decomposition: TameDecomposition = field(repr=False, compare=False)
    inverse: PlaneMap = field(repr=False, compare=False)

    @property
    def automorphism(self) -> PlaneMap:
        return PlaneMap(self.f, self.companion)

    def to_json(self):
        return {
            "f": str(self.f),
            "companion": str(self.companion),
            "trace": [s.to_json() for s in self.trace],
        }


def _find_step(q: dict):
    """Pick (i, j, alpha, l) for the current pair, or None."""
    leads = {i: q[i].lead() for i in (1, 2)}
    m = {i: q[i].tdeg() for i in (1, 2)}
    z2 = {i: q[i].z2_deg() for i in (1, 2)}
    order = sorted((1, 2), key=lambda i: (z2[i], -i), reverse=True)
    for i in order:
        j = 3 - i
        if m[i] % m[j]:
            continue
        l = m[i] // m[j]
        top_i = leads[i].top_homog()
        power = leads[j].top_homog() ** l
        if top_i.total_deg() != power.total_deg():
            continue
        alpha = top_i.leading_coefficient() / power.leading_coefficient()
        if top_i == power.scale(alpha):
            return i, j, alpha, l
    return None


def invariant_coordinate(sigma: ValidatedCoAction) -> InvariantResult:
    """Coordinate f with k[x1, x2]^sigma = k[f], plus a companion and the step trace."""
    _require_valid(sigma)
    if is_trivial(sigma):
        raise TrivialAction("the trivial action has no invariant coordinate")
    spec = sigma.spec
    f = dict(zip((1, 2), Poly2.gens(spec)))
    q = {1: sigma.s1, 2: sigma.s2}
    trace = []
    while True:
        if q[1].tdeg() == 0:
            raw, companion = f[1], f[2]
            break
        if q[2].tdeg() == 0:
            raw, companion = f[2], f[1]
            break
        step = _find_step(q)
        if step is None:
            log.error("stuck reduction: falsification event for %s", sigma)
            raise StuckReduction(f[1], f[2], q[1], q[2])
        i, j, alpha, l = step
        before = q[i].z2_deg()
        f[i] = f[i] - (f[j] ** l).scale(alpha)
        q[i] = q[i] - (q[j] ** l).scale(alpha)
        after = q[i].z2_deg()
        assert after < before, (before, after)
        trace.append(ReductionStep(i, j, alpha, l, before, after))

    fnorm = raw.normalized()
    assert is_invariant(sigma, fnorm), f"{fnorm} is not invariant"
    dec = tame_decompose(PlaneMap(fnorm, companion))
    assert not isinstance(dec, NotAutomorphism), f"({fnorm}, {companion}) does not decompose"
    return InvariantResult(fnorm, companion, tuple(trace), dec, dec.inverse_map())


@dataclass(frozen=True)
class Member:
    """g = p(f); ``p`` is stored as a polynomial in x1 standing for the variable t."""

    p: Poly2

    def __bool__(self):
        return True

    def coefficients(self) -> list:
        return self.p.univariate_coeffs(0)

    def __str__(self):
        return str(self.p).replace("x1", "t")

    def to_json(self):
        return {"kind": "Member", "p": str(self)}


@dataclass(frozen=True)
class NotMember:
    residue: Poly2

    def __bool__(self):
        return False

    def to_json(self):
        return {"kind": "NotMember", "residue": str(self.residue)}


def membership(g: Poly2, res: InvariantResult):
    """Decide g in k[f]; return :class:`Member` or :class:`NotMember`."""
    G = apply(res.inverse, g)
    if "x2" in G.variables_used():
        return NotMember(G)
    rebuilt = subst(G, res.f, Poly2.var(g.spec, "x2"))
    assert rebuilt == g, "membership reconstruction failed"
    return Member(G)


@dataclass(frozen=True)
class Report:
    result: InvariantResult
    max_degree: int
    dimensions: tuple  # dim of invariants of degree <= d, d = 0..max_degree
    expected: tuple
    non_members: tuple

    @property
    def passed(self) -> bool:
        return not self.non_members and self.dimensions == self.expected

    def to_json(self):
        return {
            "f": str(self.result.f),
            "max_degree": self.max_degree,
            "dimensions": list(self.dimensions),
            "expected_dimensions": list(self.expected),
            "non_members": [str(g) for g in self.non_members],
            "passed": self.passed,
        }


def verify_theorem1(sigma: ValidatedCoAction, D: int, result: Optional[InvariantResult] = None) -> Report:
    """Check that every invariant of degree <= D lies in k[f].

    The invariant spaces come from exact linear solves, independent of the
    reduction loop; their dimensions must be ``D // deg f + 1``.
    """
    res = result or invariant_coordinate(sigma)
    basis = invariant_basis(sigma, D)
    # columns run by ascending degree, so the RREF kernel basis is graded:
    # each vector lives in degree <= the degree of its free column
    degs = [g.total_deg() for g in basis]
    dims = [sum(1 for k in degs if k <= d) for d in range(D + 1)]
    deg_f = res.f.total_deg()
    expected = tuple(d // deg_f + 1 for d in range(D + 1))
    bad = tuple(g for g in basis if not membership(g, res))
    return Report(res, D, tuple(dims), expected, bad)
