import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.auto import PlaneMap, apply, compose, is_automorphism
from planeaut.errors import (
    AxiomViolation,
    DegreeCapExceeded,
    InvalidExponent,
    MixedFieldError,
    NotInvariantParameter,
    TrivialAction,
)
from planeaut.field import QQ, FieldSpec
from planeaut.gaction import (
    CoAction,
    ValidatedCoAction,
    apply_action,
    axiom_a2_sides,
    basic_action,
    conjugate,
    evaluate,
    find_invariant,
    invariant_basis,
    is_invariant,
    is_trivial,
    top_coefficient,
    trivial_action,
    validate,
)
from planeaut.gen import GenConfig, random_action, random_tame
from planeaut.parse import parse_poly2, parse_polyT
from planeaut.poly import Poly2
from planeaut.rentschler import invariant_coordinate, membership

from .strategies import fields, poly2s

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def P(text, spec=QQ):
    return parse_poly2(text, spec)


def A(s1, s2, spec=QQ):
    return CoAction(parse_polyT(s1, spec), parse_polyT(s2, spec))


def V(s1, s2, spec=QQ):
    return validate(A(s1, s2, spec))


def images(sigma):
    return sigma.s1, sigma.s2


WORKED_Q = ("x1 + 2*x2*T + T^2", "x2 + T")
WORKED_F2 = ("x1 + (x2 + x1^2)*T + T^2", "x2 + (x2^2 + x1^4)*T^2 + T^4")


@st.composite
def actions(draw, max_factors=2):
    cfg = GenConfig(seed=draw(st.integers(0, 2**64 - 1)), field=draw(fields), max_factors=max_factors,
                    max_coefficient_height=2)
    return random_action(cfg)


# -- application and validation --------------------------------------------------

def test_apply_action_examples():
    assert apply_action(A("x1", "x2 + x1*T"), P("x2")) == parse_polyT("x2 + x1*T", QQ)
    assert apply_action(A(*WORKED_Q), P("x1 - x2^2")) == parse_polyT("x1 - x2^2", QQ)
    assert apply_action(A("x1 + T", "x2*T"), P("5")) == parse_polyT("5", QQ)
    with pytest.raises(MixedFieldError):
        apply_action(A("x1", "x2"), P("x1", F2))


def test_validate_examples():
    sigma = V("x1", "x2 + x1*T + T^2", F2)
    assert isinstance(sigma, ValidatedCoAction)
    with pytest.raises(AxiomViolation) as info:
        validate(A("x1", "x2 + T^2"))
    err = info.value
    assert (err.axiom, err.generator, str(err.difference)) == ("A2", "x2", "2*T*U")
    assert is_trivial(V("x1", "x2"))


def test_validate_reports_a1_first():
    with pytest.raises(AxiomViolation) as info:
        validate(A("x1 + 1", "x2 + T"))
    assert info.value.axiom == "A1" and info.value.generator == "x1"
    assert str(info.value.difference) == "1"
    assert info.value.payload() == {"kind": "AxiomViolation", "axiom": "A1", "generator": "x1", "difference": "1"}


def test_t_cubed_is_not_additive_in_char_two():
    with pytest.raises(AxiomViolation) as info:
        validate(A("x1", "x2 + T^3", F2))
    assert info.value.axiom == "A2"
    # (T+U)^3 - T^3 - U^3 = T^2 U + T U^2 in characteristic 2
    assert str(info.value.difference) == "T^2*U + T*U^2"


def test_x2_times_T_shift_is_a_genuine_action():
    # sigma(x1) = x1 + x2 T, sigma(x2) = x2 satisfies both axioms identically
    sigma = V("x1 + x2*T", "x2")
    left, right = axiom_a2_sides(sigma, 1)
    assert left == right
    assert find_invariant(sigma) == P("x2")


def test_type_state_is_enforced():
    with pytest.raises(TypeError):
        is_trivial(A("x1", "x2"))
    with pytest.raises(TypeError):
        invariant_coordinate(A("x1", "x2 + T"))


def test_is_trivial_examples():
    assert is_trivial(trivial_action(QQ))
    assert not is_trivial(V("x1", "x2 + x1*T"))
    assert not is_trivial(V("x1 + T", "x2 + T"))


# -- evaluation --------------------------------------------------------------------

def test_evaluate_examples():
    sigma = V(*WORKED_Q)
    assert evaluate(sigma, Poly2.zero(QQ)) == PlaneMap.identity(QQ)
    t = P("x1 - x2^2")
    got = evaluate(sigma, t)
    assert got == PlaneMap(P("x1 + 2*x2*(x1 - x2^2) + (x1 - x2^2)^2"), P("x2 + x1 - x2^2"))
    assert is_automorphism(got)
    assert evaluate(V("x1", "x2 + x1*T"), P("x1")) == PlaneMap(P("x1"), P("x2 + x1^2"))
    with pytest.raises(NotInvariantParameter):
        evaluate(sigma, P("x2"))


def test_top_coefficient_examples():
    sigma = V(*WORKED_Q)
    assert top_coefficient(sigma, P("x1")) == P("1")
    assert top_coefficient(sigma, P("x1*x2")) == P("1")
    assert top_coefficient(V("x1", "x2 + x1*T"), P("x2")) == P("x1")
    assert top_coefficient(sigma, P("x1 - x2^2")) == P("x1 - x2^2")


# -- invariants ----------------------------------------------------------------------

def test_find_invariant_examples():
    assert find_invariant(V("x1", "x2 + x1*T")) == P("x1")
    assert find_invariant(V("x1 + T", "x2 + T")) == P("x1 - x2")
    assert find_invariant(V(*WORKED_Q)) == P("x1 - x2^2")
    with pytest.raises(TrivialAction):
        find_invariant(trivial_action(QQ))


def test_find_invariant_degree_cap():
    sigma = V(*WORKED_Q)
    with pytest.raises(DegreeCapExceeded) as info:
        find_invariant(sigma, dmax=1)
    assert info.value.dmax == 1


def test_invariant_basis_example():
    sigma = V("x1 + T", "x2 + T")
    basis = invariant_basis(sigma, 2)
    assert len(basis) == 3
    g = P("x1 - x2")
    for h in basis:
        assert is_invariant(sigma, h)
    span = {P("1"), g, g * g}
    # every basis element is a combination of 1, g, g^2 (membership oracle)
    res = invariant_coordinate(sigma)
    assert all(membership(h, res) for h in basis)
    assert all(membership(h, res) for h in span)


# -- constructors ---------------------------------------------------------------------

def test_basic_action_examples():
    assert images(basic_action(QQ, [(1, P("x1^2"))])) == images(A("x1", "x2 + x1^2*T"))
    assert images(basic_action(F2, [(1, P("x1", F2)), (2, P("1", F2))])) == images(A("x1", "x2 + x1*T + T^2", F2))
    with pytest.raises(InvalidExponent):
        basic_action(QQ, [(2, P("1"))])
    with pytest.raises(InvalidExponent):
        basic_action(F3, [(6, P("1", F3))])
    with pytest.raises(ValueError):
        basic_action(QQ, [(1, P("x2"))])


def test_conjugate_examples():
    sigma = V("x1", "x2 + T")
    assert conjugate(sigma, PlaneMap.identity(QQ)) == sigma
    phi = PlaneMap(P("x2 + x1^2", F2), P("x1", F2))
    got = conjugate(V("x1", "x2 + x1*T + T^2", F2), phi)
    assert images(got) == images(A(*WORKED_F2, F2))
    triv = trivial_action(QQ)
    assert conjugate(triv, PlaneMap(P("x1 + x2^3"), P("x2"))) == triv


# -- properties --------------------------------------------------------------------------

@given(actions(), st.data())
@settings(max_examples=40, deadline=None)
def test_a2_holds_on_random_polynomials(sigma, data):
    a = data.draw(poly2s(sigma.spec, max_deg=2, max_terms=3))
    left, right = axiom_a2_sides(sigma, a)
    assert left == right


@given(actions())
@settings(max_examples=40, deadline=None)
def test_group_law(sigma):
    if is_trivial(sigma):
        return
    f = invariant_coordinate(sigma).f
    zero = Poly2.zero(sigma.spec)
    assert evaluate(sigma, zero) == PlaneMap.identity(sigma.spec)
    for t, u in ((f, f * f), (f + f * f, f), (zero, f)):
        st_, su = evaluate(sigma, t), evaluate(sigma, u)
        assert compose(st_, su) == evaluate(sigma, t + u)
        assert is_automorphism(st_)


@given(actions(), st.data())
@settings(max_examples=40, deadline=None)
def test_top_coefficient_is_invariant(sigma, data):
    a = data.draw(poly2s(sigma.spec, max_deg=3, max_terms=4))
    lead = top_coefficient(sigma, a)
    assert apply_action(sigma, lead) == lead


@given(actions(max_factors=1), st.integers(0, 2**64 - 1))
@settings(max_examples=25, deadline=None)
def test_conjugation_transports_invariants(sigma, seed):
    if is_trivial(sigma):
        return
    phi = random_tame(GenConfig(seed=seed, field=sigma.spec, max_factors=1, max_elementary_degree=2))
    conj = conjugate(sigma, phi)
    f = invariant_coordinate(sigma).f
    moved = apply(phi, f)
    assert is_invariant(conj, moved)
    g = find_invariant(conj)
    assert membership(g, invariant_coordinate(conj))
    # g and phi(f) generate the same invariant ring
    res = invariant_coordinate(conj)
    assert membership(moved, res)
