"""Exception hierarchy.

Domain-negative outcomes (a map that is not an automorphism, a polynomial
that is not a coordinate, ...) are returned as values by the library.  The
exceptions here signal bad input, violated preconditions, or, in the case of
:class:`StuckReduction`, an internal falsification event.
"""


class PlaneAutError(Exception):
    """Base class for every error raised by this package."""

    kind = "Error"

    def payload(self):
        return {"kind": self.kind, "message": str(self)}


class MixedFieldError(PlaneAutError, TypeError):
    kind = "MixedFieldError"


class DivisionByZero(PlaneAutError, ZeroDivisionError):
    kind = "DivisionByZero"


class InvalidFieldSpec(PlaneAutError, ValueError):
    kind = "InvalidFieldSpec"


class ZeroPolynomial(PlaneAutError, ValueError):
    kind = "ZeroPolynomial"


class PreconditionViolation(PlaneAutError, ValueError):
    kind = "PreconditionViolation"


class NotAutomorphismError(PlaneAutError, ValueError):
    """Raised where an automorphism is required but decomposition failed."""

    kind = "NotAutomorphism"

    def __init__(self, witness):
        super().__init__(witness.reason)
        self.witness = witness

    def payload(self):
        return self.witness.to_json()


class AxiomViolation(PlaneAutError, ValueError):
    """A co-action fails (A1) or (A2) on one of the generators."""

    kind = "AxiomViolation"

    def __init__(self, axiom, generator, difference):
        self.axiom = axiom
        self.generator = generator
        self.difference = difference
        super().__init__(f"{axiom} fails on {generator}: difference {difference}")

    def payload(self):
        return {
            "kind": self.kind,
            "axiom": self.axiom,
            "generator": self.generator,
            "difference": str(self.difference),
        }


class NotInvariantParameter(PlaneAutError, ValueError):
    kind = "NotInvariantParameter"


class TrivialAction(PlaneAutError, ValueError):
    kind = "TrivialAction"


class DegreeCapExceeded(PlaneAutError, RuntimeError):
    """No nonconstant invariant of degree <= dmax.  Inconclusive, never a proof of absence."""

    kind = "DegreeCapExceeded"

    def __init__(self, dmax):
        super().__init__(f"no nonconstant invariant of total degree <= {dmax}")
        self.dmax = dmax


class InvalidExponent(PlaneAutError, ValueError):
    kind = "InvalidExponent"


class StuckReduction(PlaneAutError, RuntimeError):
    """The invariant-coordinate loop found no reducing step.

    For a genuine co-action this cannot happen, so it is reported as a
    falsification event together with the state that got stuck.
    """

    kind = "StuckReduction"

    def __init__(self, f1, f2, q1, q2):
        super().__init__(f"no reduction applies to ({f1}, {f2})")
        self.f1, self.f2, self.q1, self.q2 = f1, f2, q1, q2

    def payload(self):
        return {
            "kind": self.kind,
            "f1": str(self.f1),
            "f2": str(self.f2),
            "q1": str(self.q1),
            "q2": str(self.q2),
        }


class ParseError(PlaneAutError, ValueError):
    """Base for parser failures; carries the character position."""

    kind = "ParseError"

    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        where = "" if position is None else f" at position {position}"
        super().__init__(message + where)

    def payload(self):
        out = {"kind": self.kind, "message": str(self)}
        if self.position is not None:
            out["position"] = self.position
        if self.expected:
            out["expected"] = list(self.expected)
        return out


class ExprSyntaxError(ParseError):
    kind = "SyntaxError"


class ContextError(ParseError):
    kind = "ContextError"


class LiteralError(ParseError):
    kind = "LiteralError"
