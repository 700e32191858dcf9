"""Exact nullspaces over a FieldSpec, working on raw coefficients."""

from __future__ import annotations

import math
from fractions import Fraction

from .field import FieldSpec


def _primitive(r: list) -> list:
    """Divide an integer row by its content and make the first nonzero entry positive."""
    g = math.gcd(*r)
    if g == 0:
        return r
    lead = next(v for v in r if v)
    if lead < 0:
        g = -g
    return [v // g for v in r] if g != 1 else r


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row has zeros in every other stored pivot column, so a new
    row is reduced in one pass regardless of pivot order.  Over F_p the rows
    hold residues with pivot 1; over Q they are primitive integer vectors
    (fraction-free elimination), which is far cheaper than Fraction arithmetic.
    Rows already seen are skipped.
    """

    def __init__(self, spec: FieldSpec, ncols: int):
        self.spec = spec
        self.ncols = ncols
        self.pivots = {}  # pivot column -> row
        self._seen = set()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def full(self) -> bool:
        return len(self.pivots) == self.ncols

    def add_row(self, row) -> bool:
        """Insert ``row``; return True if it increased the rank."""
        if self.spec.is_prime_field:
            return self._add_mod(row)
        return self._add_int(row)

    def _add_mod(self, row) -> bool:
        p = self.spec.modulus
        r = [v % p for v in row]
        lead = next((c for c, v in enumerate(r) if v), None)
        if lead is None:
            return False
        inv = pow(r[lead], -1, p)
        r = [v * inv % p for v in r]
        key = tuple(r)
        if key in self._seen:
            return False
        self._seen.add(key)
        for c, prow in self.pivots.items():
            f = r[c]
            if f:
                r = [(a - f * b) % p for a, b in zip(r, prow)]
        lead = next((c for c, v in enumerate(r) if v), None)
        if lead is None:
            return False
        inv = pow(r[lead], -1, p)
        r = [v * inv % p for v in r]
        for c, prow in list(self.pivots.items()):
            f = prow[lead]
            if f:
                self.pivots[c] = [(a - f * b) % p for a, b in zip(prow, r)]
        self.pivots[lead] = r
        return True

    def _add_int(self, row) -> bool:
        row = [Fraction(v) if not isinstance(v, int) else v for v in row]
        den = 1
        for v in row:
            if type(v) is Fraction:
                den = den * v.denominator // math.gcd(den, v.denominator)
        r = [v * den if type(v) is int else v.numerator * (den // v.denominator) for v in row]
        if not any(r):
            return False
        r = _primitive(r)
        key = tuple(r)
        if key in self._seen:
            return False
        self._seen.add(key)
        for c, prow in self.pivots.items():
            f = r[c]
            if f:
                pc = prow[c]
                r = _primitive([a * pc - f * b for a, b in zip(r, prow)])
        lead = next((c for c, v in enumerate(r) if v), None)
        if lead is None:
            return False
        pl = r[lead]
        for c, prow in list(self.pivots.items()):
            f = prow[lead]
            if f:
                new = _primitive([a * pl - f * b for a, b in zip(prow, r)])
                if new[c] < 0:
                    new = [-v for v in new]
                self.pivots[c] = new
        self.pivots[lead] = r
        return True

    def nullspace(self) -> list:
        """Basis of the right kernel, one vector per free column (ascending)."""
        norm = self.spec.norm
        basis = []
        for free in range(self.ncols):
            if free in self.pivots:
                continue
            v = [0] * self.ncols
            v[free] = 1
            for c, prow in self.pivots.items():
                if prow[free]:
                    v[c] = norm(Fraction(-prow[free], prow[c])) if not self.spec.is_prime_field else norm(-prow[free])
            basis.append(v)
        return basis


def nullspace(spec: FieldSpec, rows, ncols: int) -> list:
    """Right kernel of the matrix whose rows are given (dense raw lists)."""
    ech = RowEchelon(spec, ncols)
    for row in rows:
        ech.add_row(row)
        if ech.full():
            break
    return ech.nullspace()
