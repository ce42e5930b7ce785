from math import comb

import pytest
from hypothesis import given, settings

from pbwdeform.oracle import ResourceLimitError, pbw_counts, truncated_dimension
from pbwdeform.pbw import check_pbw
from pbwdeform.presentation import parse_spec
from pbwdeform.skew import monomials

from conftest import fixture_text, load, pbw_specs

BROKEN_ANTI = fixture_text("anticommuting.spec").replace("2 1 0 : linear 1 0 0", "2 1 0 : linear 0 0 1")


def test_polynomial_counts():
    s = parse_spec("[algebra]\ndimension 3\n")
    r = truncated_dimension(s, 3)
    assert r.dims == (1, 4, 10, 20)
    assert r.pbw and r.certificate is None


def test_counts_match_monomial_enumeration():
    for n in range(1, 5):
        for m in range(1, 4):
            acc = 0
            for d, c in enumerate(pbw_counts(n, m, 4)):
                acc += len(list(monomials(n, d)))
                assert c == m * acc == m * comb(d + n, n)


def test_cyclic3(cyc3):
    assert truncated_dimension(cyc3, 3).dims == (3, 12, 30, 60)
    assert truncated_dimension(cyc3, 4).pbw


def test_anticommuting(anti):
    assert truncated_dimension(anti, 4).dims == (1, 4, 10, 20, 35)


def test_constant_on_v1_v3_is_still_pbw():
    # with every q_ij = -1 the constant term drops out of the Jacobi-type identity
    s = load("anticommuting.spec", "1 3 0 : const 1\n")
    r = truncated_dimension(s, 4)
    assert r.pbw and r.dims[3] == 20
    assert check_pbw(s, "direct").passed and check_pbw(s, "homological").passed


def test_collapse_certificate():
    s = parse_spec(BROKEN_ANTI)
    r = truncated_dimension(s, 4)
    assert not r.pbw
    assert r.dims[2] < 10 and r.dims[3] < 20
    cert = r.certificate
    assert cert is not None and cert.degree <= 4
    lead = min(cert.element, key=lambda k: (-len(k[0]), tuple(-x for x in k[0])))
    assert list(lead[0]) == sorted(lead[0])
    assert "v" in cert.describe()


def test_resource_limit(cyc3):
    with pytest.raises(ResourceLimitError):
        truncated_dimension(cyc3, 4, max_cells=1000)
    with pytest.raises(ValueError):
        truncated_dimension(cyc3, 1)


@settings(max_examples=15)
@given(pbw_specs())
def test_dimension_law_on_pbw_specs(spec):
    r = truncated_dimension(spec, 3)
    assert r.dims == pbw_counts(spec.n, spec.group.order, 3)
