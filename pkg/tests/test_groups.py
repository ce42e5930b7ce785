from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from pbwdeform.cyclotomic import CycloScalar
from pbwdeform.groups import (
    GroupTable,
    check_q_compatibility,
    conjugate,
    identity_matrix,
    mat_mul,
    quantum_minor_det,
    validate_group,
)
from pbwdeform.presentation import q_from_upper

from conftest import corpus_specs

Z3 = CycloScalar.zeta(3)


def diag(*xs):
    n = len(xs)
    zero = CycloScalar.zero(xs[0].order)
    return tuple(tuple(xs[r] if r == c else zero for c in range(n)) for r in range(n))


def s3():
    perms = sorted(permutations(range(3)))  # identity first
    idx = {p: k for k, p in enumerate(perms)}
    rows = [[idx[tuple(g[h[x]] for x in range(3))] for h in perms] for g in perms]
    return GroupTable.from_rows(rows), perms, idx


def perm_matrix(p, order=1):
    one, zero = CycloScalar.one(order), CycloScalar.zero(order)
    # ^p v_j = v_{p(j)}
    return tuple(tuple(one if p[c] == r else zero for c in range(3)) for r in range(3))


def test_trivial_group_valid():
    assert validate_group(GroupTable.trivial(), [identity_matrix(2)]).ok


def test_cyclic_diagonal_action_valid():
    g = diag(Z3, Z3**2, CycloScalar.one(3))
    action = [identity_matrix(3, 3), g, mat_mul(g, g)]
    assert validate_group(GroupTable.cyclic(3), action).ok


def test_broken_table():
    rep = validate_group(GroupTable.from_rows([[0, 1], [1, 1]]))
    assert not rep.ok
    assert any("inverse" in p for p in rep.problems)


def test_representation_failure_reported():
    g = diag(Z3, Z3**2, CycloScalar.one(3))
    rep = validate_group(GroupTable.cyclic(3), [identity_matrix(3, 3), g, g])
    assert any("representation" in p for p in rep.problems)


def test_q_compatibility():
    q = q_from_upper(2, 1, {(0, 1): CycloScalar.rational(2)})
    one, zero = CycloScalar.one(), CycloScalar.zero()
    swap = ((zero, one), (one, zero))
    assert not check_q_compatibility(q, [identity_matrix(2), swap]).ok
    q1 = q_from_upper(2, 1, {})
    assert check_q_compatibility(q1, [identity_matrix(2), swap]).ok
    # diagonal actions are always compatible
    qz = q_from_upper(3, 3, {(0, 1): Z3, (1, 2): Z3, (0, 2): Z3**2})
    assert check_q_compatibility(qz, [identity_matrix(3, 3), diag(Z3, Z3**2, Z3)]).ok


def test_permutation_action_with_minus_one():
    # swapping coordinates preserves v_i v_j + v_j v_i
    t, perms, _ = s3()
    minus = CycloScalar.rational(-1)
    q = q_from_upper(3, 1, {(0, 1): minus, (0, 2): minus, (1, 2): minus})
    mats = [perm_matrix(p) for p in perms]
    assert validate_group(t, mats).ok
    assert check_q_compatibility(q, mats).ok


def test_conjugation():
    t, perms, idx = s3()
    h = idx[(1, 0, 2)]  # (12)
    g = idx[(1, 2, 0)]  # (123): 0->1->2->0
    assert perms[conjugate(t, h, g)] == (2, 0, 1)  # (132)
    c = GroupTable.cyclic(4)
    assert all(conjugate(c, a, b) == b for a in range(4) for b in range(4))
    assert all(t.conjugate(0, x) == x for x in range(6))


def test_quantum_minor_examples():
    q = q_from_upper(3, 3, {(0, 1): Z3**2, (1, 2): Z3**2, (0, 2): Z3})
    g = diag(Z3, Z3**2, CycloScalar.one(3))
    assert quantum_minor_det(q, g, 1, 2, 1, 2) == 1
    assert quantum_minor_det(q, g, 1, 2, 1, 3) == 0
    I = identity_matrix(3, 3)
    for i, j, k, l in [(1, 2, 1, 2), (1, 2, 2, 1), (2, 3, 3, 2), (1, 3, 2, 3)]:
        expect = (1 if (j == l and i == k) else 0) - q[j - 1][i - 1] * (1 if (i == l and j == k) else 0)
        assert quantum_minor_det(q, I, i, j, k, l) == expect
    with pytest.raises(IndexError):
        quantum_minor_det(q, g, 0, 1, 1, 2)


def _swap_rule_holds(q, mat, n):
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    if quantum_minor_det(q, mat, i, j, l, k) != -q[l - 1][k - 1] * quantum_minor_det(q, mat, i, j, k, l):
                        return False
    return True


@given(corpus_specs())
def test_minor_swap_rule_diagonal(spec):
    assert all(_swap_rule_holds(spec.q, m, spec.n) for m in spec.action)


@pytest.mark.parametrize("qv", [1, -1])
def test_minor_swap_rule_permutations(qv):
    _, perms, _ = s3()
    v = CycloScalar.rational(qv)
    q = q_from_upper(3, 1, {(0, 1): v, (0, 2): v, (1, 2): v})
    assert all(_swap_rule_holds(q, perm_matrix(p), 3) for p in perms)


def test_minor_swap_rule_needs_compatibility():
    q = q_from_upper(2, 1, {(0, 1): CycloScalar.rational(2)})
    one, zero = CycloScalar.one(), CycloScalar.zero()
    assert not _swap_rule_holds(q, ((zero, one), (one, zero)), 2)
