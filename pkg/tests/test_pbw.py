import random

import pytest
from hypothesis import given, settings, strategies as st

from pbwdeform.colorlie import check_omega, parse_color
from pbwdeform.corpus import permutation_spec
from pbwdeform.cyclotomic import CycloScalar
from pbwdeform.hochschild import bracket_CL
from pbwdeform.pbw import (
    METHODS,
    VecOps,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    check_pbw,
    condition2_residual,
    overlap_confluence,
)
from pbwdeform.presentation import parse_spec

from conftest import corpus_specs, fixture_text, load


def test_cyclic3_all_conditions(cyc3):
    for m in METHODS:
        rep = check_pbw(cyc3, m)
        assert rep.passed and rep.method == m
    c1 = check_condition1(cyc3)
    assert c1.details == {"minor_formula": True, "action_formula": True, "consistent": True}
    # the (1,2,3) instance of condition (2) is q q^-1 v3 v3 - v3 v3 = 0
    assert all(not condition2_residual(cyc3, g, 0, 1, 2) for g in range(3))
    c3 = check_condition3(cyc3)
    assert c3.passed and c3.details["left_zero"] and c3.details["right_zero"]
    assert check_condition4(cyc3).passed


def test_condition1_failure_both_formulations():
    s = parse_spec(fixture_text("cyclic3.spec").replace("2 1 0 : linear 0 0 1", "2 1 0 : linear 1 0 0"))
    c1 = check_condition1(s)
    assert not c1.passed
    assert c1.details["minor_formula"] is False and c1.details["action_formula"] is False
    assert c1.witnesses


def test_trivial_group_condition1(anti):
    assert check_condition1(anti).passed


def test_condition2_failure_residual():
    s = parse_spec(fixture_text("anticommuting.spec").replace("2 1 0 : linear 1 0 0", "2 1 0 : linear 0 0 1"))
    c2 = check_condition2(s)
    assert not c2.passed
    # hand expansion: v1 v3 - v3 v1 + v3 v3 - v3 v3 = 2 v1 v3 in the anticommuting algebra
    assert condition2_residual(s, 0, 0, 1, 2) == {(0, 2): CycloScalar.rational(2)}
    assert c2.witnesses[0].describe() == "g=0 i=1 j=2 k=3: 2*v1*v3"


def test_zero_kappa_passes():
    s = parse_spec("[algebra]\ndimension 3\ncyclo_order 3\n[q]\n1 2 z^1\n")
    for f in (check_condition1, check_condition2, check_condition3, check_condition4):
        assert f(s).passed
    c3 = check_condition3(s)
    assert c3.details["left_zero"] and c3.details["right_zero"]


def test_anticommuting_condition3_sides(anti):
    c3 = check_condition3(anti)
    assert c3.passed and c3.details["left_zero"] and c3.details["right_zero"]


def test_constant_on_v1_v3_all_methods_agree():
    s = load("anticommuting.spec", "1 3 0 : const 1\n")
    verdicts = {m: check_pbw(s, m).passed for m in METHODS}
    assert len(set(verdicts.values())) == 1
    assert verdicts["direct"]
    c3 = check_condition3(s)
    # every q_ij = -1 makes the right side vanish identically
    assert c3.details["right_zero"]


def test_condition4_against_color_omega():
    for extra, omega in [("1 3 0 : const 1\n", "1 3 : 1\n"), ("2 3 0 : const 1\n", "2 3 : 1\n")]:
        s = load("heisenberg.spec", extra)
        d = parse_color(fixture_text("heisenberg.color") + "\n[omega]\n" + omega)
        assert check_condition4(s).passed == check_omega(d).ok
        if check_omega(d).ok:
            assert bracket_CL(s).is_zero()


def test_unknown_method(cyc3):
    with pytest.raises(ValueError):
        check_pbw(cyc3, "psychic")


def test_report_lookup(cyc3):
    rep = check_pbw(cyc3, "direct")
    assert rep.condition("(2) kappa^L cocycle").passed
    with pytest.raises(KeyError):
        rep.condition("nope")


@given(corpus_specs())
def test_condition1_formulations_agree(spec):
    assert check_condition1(spec).details["consistent"]


@given(corpus_specs())
def test_sorted_triples_suffice(spec):
    for f in (check_condition2, check_condition3, check_condition4):
        assert f(spec).passed == f(spec, sorted_only=True).passed


@given(corpus_specs())
def test_confluence_matches_pbw(spec):
    assert (not overlap_confluence(spec)) == check_pbw(spec, "direct").passed


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_nonabelian_group_agreement(seed, qv):
    spec = permutation_spec(random.Random(seed), qv)
    d, h = check_pbw(spec, "direct"), check_pbw(spec, "homological")
    assert d.verdicts() == h.verdicts()
    assert check_condition1(spec).details["consistent"]
    assert check_pbw(spec, "oracle", 3).passed == d.passed
    assert (not overlap_confluence(spec)) == d.passed


def test_vecops_bilinear(cyc3):
    ops = VecOps(cyc3)
    e = [ops.basis(i) for i in range(3)]
    assert ops.kappa_L(0, e[1], e[0]) == cyc3.kappa.linear_table[0][1][0]
    two = tuple(2 * x for x in e[1])
    assert ops.kappa_L(0, two, e[0]) == tuple(2 * x for x in cyc3.kappa.linear_table[0][1][0])
