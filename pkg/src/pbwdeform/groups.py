"""Finite groups given by multiplication tables, and their linear actions on V."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .cyclotomic import CycloScalar

Matrix = tuple[tuple[CycloScalar, ...], ...]


@dataclass
class ValidationReport:
    """A list of violated axioms; empty means valid."""

    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, msg: str) -> None:
        self.problems.append(msg)

    def extend(self, other: "ValidationReport") -> None:
        self.problems.extend(other.problems)


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table on ids 0..order-1, with 0 the identity."""

    mult: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.mult)

    @classmethod
    def trivial(cls) -> "GroupTable":
        return cls(((0,),))

    @classmethod
    def cyclic(cls, m: int) -> "GroupTable":
        return cls(tuple(tuple((a + b) % m for b in range(m)) for a in range(m)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GroupTable":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        row = self.mult[a]
        for b in range(self.order):
            if row[b] == 0 and self.mult[b][a] == 0:
                return b
        raise ValueError(f"element {a} has no inverse")

    def conjugate(self, h: int, g: int) -> int:
        """h g h^{-1}."""
        return self.mult[self.mult[h][g]][self.inverse(h)]

    def elements(self) -> range:
        return range(self.order)


def conjugate(t: GroupTable, h: int, g: int) -> int:
    return t.conjugate(h, g)


def identity_matrix(n: int, order: int = 1) -> Matrix:
    one, zero = CycloScalar.one(order), CycloScalar.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def is_diagonal(m: Matrix) -> bool:
    return all(m[i][j].is_zero() for i in range(len(m)) for j in range(len(m)) if i != j)


def validate_group(t: GroupTable, action: Sequence[Matrix] | None = None) -> ValidationReport:
    """Check the group axioms and, if given, the representation property."""
    rep = ValidationReport()
    m = t.order
    if m < 1:
        rep.add("empty group table")
        return rep
    for a, row in enumerate(t.mult):
        if len(row) != m:
            rep.add(f"row {a} has length {len(row)}, expected {m}")
        for x in row:
            if not 0 <= x < m:
                rep.add(f"row {a} contains out-of-range id {x}")
    if not rep.ok:
        return rep
    for a in range(m):
        if t.mult[0][a] != a or t.mult[a][0] != a:
            rep.add(f"0 is not a two-sided identity for element {a}")
    for a in range(m):
        if not any(t.mult[a][b] == 0 and t.mult[b][a] == 0 for b in range(m)):
            rep.add(f"element {a} has no two-sided inverse")
    for a, b, c in product(range(m), repeat=3):
        if t.mult[t.mult[a][b]][c] != t.mult[a][t.mult[b][c]]:
            rep.add(f"associativity fails for ({a},{b},{c})")
    if action is None or not rep.ok:
        return rep
    if len(action) != m:
        rep.add(f"expected {m} action matrices, got {len(action)}")
        return rep
    n = len(action[0])
    order = action[0][0][0].order if n else 1
    if action[0] != identity_matrix(n, order):
        rep.add("identity element does not act as the identity matrix")
    for g, h in product(range(m), repeat=2):
        if mat_mul(action[g], action[h]) != action[t.mult[g][h]]:
            rep.add(f"representation property fails for ({g},{h})")
    return rep


def _span_reduce(rows: list[dict], vec: dict) -> dict:
    """Reduce vec against echelon rows (each a dict with '_pivot')."""
    vec = dict(vec)
    for r in rows:
        p = r["_pivot"]
        c = vec.get(p)
        if c is not None and not c.is_zero():
            for k, v in r.items():
                if k == "_pivot":
                    continue
                nv = vec.get(k, CycloScalar.zero(v.order)) - c * v
                if nv.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = nv
    return {k: v for k, v in vec.items() if not v.is_zero()}


def check_q_compatibility(q: Sequence[Sequence[CycloScalar]], action: Sequence[Matrix]) -> ValidationReport:
    """Check that every ^g(v_i v_j - q_ij v_j v_i) lies in the relation span.

    Tensors are expanded in V (x) V with keys (a, b) for v_a v_b.
    """
    rep = ValidationReport()
    n = len(q)
    # echelon basis of the relation span, pivot on (i, j) with i < j
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            row = {(i, j): CycloScalar.one(q[i][j].order), (j, i): -q[i][j], "_pivot": (i, j)}
            basis.append(row)
    for g, mat in enumerate(action):
        if is_diagonal(mat):
            continue
        for i in range(n):
            for j in range(i + 1, n):
                vec: dict = {}
                for a in range(n):
                    for b in range(n):
                        c = mat[a][i] * mat[b][j] - q[i][j] * mat[a][j] * mat[b][i]
                        if not c.is_zero():
                            vec[(a, b)] = vec.get((a, b), CycloScalar.zero(c.order)) + c
                if _span_reduce(basis, vec):
                    rep.add(f"action of g={g} does not preserve relation ({i + 1},{j + 1})")
    return rep


def quantum_minor_det(
    q: Sequence[Sequence[CycloScalar]], mat: Matrix, i: int, j: int, k: int, l: int
) -> CycloScalar:
    """det_{ijkl}(g) = g^j_l g^i_k - q_ji g^i_l g^j_k, 1-based indices.

    ``mat[a][b]`` is the coefficient of v_a in ^g v_b, i.e. g^b_a.
    """
    n = len(q)
    for x in (i, j, k, l):
        if not 1 <= x <= n:
            raise IndexError(f"index {x} out of range 1..{n}")
    i, j, k, l = i - 1, j - 1, k - 1, l - 1
    return mat[l][j] * mat[k][i] - q[j][i] * mat[l][i] * mat[k][j]
