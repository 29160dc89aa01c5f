"""Reduction: strategies, long forms, properness, elimination, decoding."""

import pytest

from term_corpus import lambda_y_corpus, omega_corpus
from yflow.parser import parse_term, parse_type
from yflow.printer import term_to_str
from yflow.reduction import (
    FuelExhausted,
    Improper,
    Normal,
    Proper,
    assured_normalize,
    classify_properness,
    decode_numeral,
    eliminate_omega,
    enumerate_long_normal_forms,
    is_long_normal,
    long_normal_form,
    normalize,
    step_normal_order,
    term_size,
)
from yflow.terms import contains_omega, contains_y, church_numeral, subterms, type_of
from yflow.types import GROUND, Arrow

O = GROUND
OO = Arrow(O, O)


def test_beta_step():
    t = parse_term(r"(\x:o->o. x) (\y:o. y)")
    assert step_normal_order(t) == parse_term(r"\y:o. y")


def test_eta_step():
    t = parse_term(r"[f:o->o] \x:o. f x")
    assert step_normal_order(t) == parse_term(r"[f:o->o] f")


def test_eta_does_not_fire_when_bound_occurs():
    t = parse_term(r"[f:o->o->o] \x:o. f x x")
    assert step_normal_order(t) is None  # \x. f x x is normal


def test_y_unfolds():
    t = parse_term(r"Y{o} (\x:o. x)")
    s = step_normal_order(t)
    assert s == parse_term(r"(\x:o. x) (Y{o} (\x:o. x))")


def test_omega_is_inert():
    assert step_normal_order(parse_term(r"Omega{o->o} Omega{o}")) is None


def test_normalize_fuel_exhaustion():
    t = parse_term(r"Y{o} (\x:o. x)")
    out = normalize(t, fuel=25)
    assert isinstance(out, FuelExhausted) and out.fuel == 25


def test_strategies_agree_on_omega_corpus():
    for t in omega_corpus():
        a = normalize(t, strategy="normal-order")
        b = normalize(t, strategy="innermost")
        assert isinstance(a, Normal) and isinstance(b, Normal), term_to_str(t)
        assert a.term == b.term, term_to_str(t)


def test_normal_forms_are_stable():
    for t in omega_corpus()[::5]:
        nf = assured_normalize(t)
        assert step_normal_order(nf) is None
        assert assured_normalize(nf) == nf


def test_assured_normalize_grows_fuel():
    # multiplication needs well over the starting budget of 4 steps
    app = parse_term(
        r"(\m:(o->o)->o->o. \n:(o->o)->o->o. \f:o->o. m (n f)) #7{o} #9{o}")
    assert decode_numeral(assured_normalize(app, fuel=4), O) == 63


def test_long_normal_form_examples():
    t = parse_term(r"\g:(o->o)->o. g")
    lnf = long_normal_form(t)
    assert lnf == parse_term(r"\g:(o->o)->o. \h:o->o. g (\z:o. h z)")
    assert is_long_normal(lnf)


def test_long_normal_form_of_numeral_one():
    # beta-eta short form of 1 is \f. f; the long form restores the binder
    one = church_numeral(1, O)
    assert assured_normalize(one) == parse_term(r"\f:o->o. f")
    assert long_normal_form(one) == one


def test_long_normal_form_idempotent_on_corpus():
    for t in omega_corpus()[::7]:
        lnf = long_normal_form(t)
        assert is_long_normal(lnf), term_to_str(t)
        assert long_normal_form(lnf) == lnf


def test_long_normal_form_rejects_y():
    with pytest.raises(ValueError):
        long_normal_form(parse_term(r"Y{o} (\x:o. x)"))


def test_is_long_normal_counterexamples():
    assert not is_long_normal(parse_term(r"\f:o->o. f"))          # under-applied head
    assert not is_long_normal(parse_term(r"(\x:o. x) Omega{o}"))  # redex
    assert is_long_normal(parse_term(r"\f:o->o. \x:o. f x"))


def test_classify_properness():
    assert classify_properness(parse_term(r"\f:o->o. \x:o. f x")) == Proper()
    got = classify_properness(parse_term(r"\f:o->o. \x:o. f Omega{o}"))
    assert isinstance(got, Improper)
    assert got.render_path() == "body/body/arg"
    assert classify_properness(parse_term(r"Omega{o}")) == Improper(())
    assert Improper(()).render_path() == "root"


def test_classify_properness_requires_long_form():
    with pytest.raises(ValueError):
        classify_properness(parse_term(r"\f:o->o. f"))


def test_eliminate_omega_simple():
    # \f. \x. f Omega at numeral type over o, zero numeral arguments
    t = parse_term(r"\f:o->o. \x:o. f Omega{o}")
    out = eliminate_omega(t, numeral_args=0)
    assert out == church_numeral(1, O)


def test_eliminate_omega_is_identity_on_pure_numerals():
    for m in range(4):
        out = eliminate_omega(church_numeral(m, O), numeral_args=0)
        assert assured_normalize(out) == assured_normalize(church_numeral(m, O))


def test_eliminate_omega_higher_parameter():
    # numeral parameter o -> o brings binders for the extra arguments
    t = parse_term(r"\f:(o->o)->o->o. \x:o->o. \b:o. Omega{o}")
    out = eliminate_omega(t, numeral_args=0)
    assert not contains_omega(out)
    assert type_of(out, {}) == type_of(t, {})


def test_eliminate_omega_requires_ground_bottoms():
    with pytest.raises(ValueError):
        eliminate_omega(parse_term(r"\f:o->o. \x:o. Omega{o->o} x"),
                        numeral_args=0)


def test_eliminate_omega_rejects_non_numeral_chain():
    with pytest.raises(ValueError):
        eliminate_omega(parse_term(r"\x:o. Omega{o}"), numeral_args=0)


def test_decode_numeral():
    assert decode_numeral(church_numeral(4, O), O) == 4
    assert decode_numeral(church_numeral(4, O), OO) is None
    assert decode_numeral(parse_term(r"\f:o->o. f"), O) is None  # strict


def test_enumeration_members_are_long_well_typed_unique():
    ty = parse_type("(o->o)->o")
    forms = enumerate_long_normal_forms(ty, 10)
    assert len(forms) == len(set(forms))
    for t in forms:
        assert type_of(t, {}) == ty
        assert is_long_normal(t)
        assert term_size(t) <= 10
        assert not contains_y(t)


def test_enumeration_finds_known_forms():
    ty = parse_type("o->o")
    forms = set(enumerate_long_normal_forms(ty, 8))
    assert parse_term(r"\x:o. x") in forms
    assert parse_term(r"\x:o. Omega{o}") in forms
    assert parse_term(r"\x:o. Omega{o->o} x") in forms


def test_enumeration_budget_is_monotone():
    ty = parse_type("o->o")
    small = set(enumerate_long_normal_forms(ty, 6))
    large = set(enumerate_long_normal_forms(ty, 9))
    assert small <= large
