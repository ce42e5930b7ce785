"""Direct evaluation of the four PBW conditions on (q, G, kappa).

Vectors of V are tuples of n scalars.  All indices are 0-based internally and
reported 1-based (group ids are reported as-is).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional, Sequence

from .cyclotomic import CycloScalar
from .groups import quantum_minor_det
from .presentation import DeformationSpec
from .skew import AlgebraElement, format_element, undeformed_algebra

Vec = tuple[CycloScalar, ...]

METHODS = ("direct", "homological", "oracle")


@dataclass
class Witness:
    indices: tuple
    residual: str

    def describe(self) -> str:
        idx = self.indices
        if idx and isinstance(idx[0], str):
            where = " ".join(f"{idx[t]}={idx[t + 1]}" for t in range(0, len(idx), 2))
        else:
            where = "^".join(f"v{i}" for i in idx)
        return f"{where}: {self.residual}"


@dataclass
class ConditionResult:
    name: str
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    details: dict = field(default_factory=dict)


@dataclass
class PbwReport:
    method: str
    conditions: list[ConditionResult]
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def verdicts(self) -> tuple[bool, ...]:
        return tuple(c.passed for c in self.conditions)


class VecOps:
    """Bilinear evaluation of the kappa parts and the G-action on vectors."""

    def __init__(self, spec: DeformationSpec):
        self.spec = spec
        self.n = spec.n
        self.zero = CycloScalar.zero(spec.order)
        self.one = CycloScalar.one(spec.order)
        self.kc = spec.kappa.const_table
        self.kl = spec.kappa.linear_table
        self.q = spec.q
        self.G = spec.group

    def basis(self, i: int) -> Vec:
        return tuple(self.one if t == i else self.zero for t in range(self.n))

    def zero_vec(self) -> Vec:
        return (self.zero,) * self.n

    def act(self, h: int, x: Vec) -> Vec:
        mat = self.spec.action[h]
        n = self.n
        out = []
        for k in range(n):
            acc = self.zero
            for i in range(n):
                if not x[i].is_zero() and not mat[k][i].is_zero():
                    acc = acc + mat[k][i] * x[i]
            out.append(acc)
        return tuple(out)

    def kappa_L(self, g: int, x: Vec, y: Vec) -> Vec:
        out = [self.zero] * self.n
        tab = self.kl[g]
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                if yb.is_zero() or a == b:
                    continue
                c = xa * yb
                for l, v in enumerate(tab[a][b]):
                    if not v.is_zero():
                        out[l] = out[l] + c * v
        return tuple(out)

    def kappa_C(self, g: int, x: Vec, y: Vec) -> CycloScalar:
        acc = self.zero
        tab = self.kc[g]
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                if yb.is_zero() or a == b or tab[a][b].is_zero():
                    continue
                acc = acc + xa * yb * tab[a][b]
        return acc

    def sq_product(self, x: Vec, y: Vec) -> dict[tuple[int, int], CycloScalar]:
        """x*y in S_q(V), keyed by sorted index pairs."""
        out: dict[tuple[int, int], CycloScalar] = {}
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                if yb.is_zero():
                    continue
                if a <= b:
                    key, c = (a, b), xa * yb
                else:
                    key, c = (b, a), xa * yb * self.q[a][b]
                out[key] = out[key] + c if key in out else c
        return {k: v for k, v in out.items() if not v.is_zero()}

    def vec_element(self, x: Vec, g: int = 0) -> AlgebraElement:
        return AlgebraElement.vector(x, g)


def _scale(v: Vec, c: CycloScalar) -> Vec:
    return tuple(x * c for x in v)


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _sq_element(n: int, d: dict[tuple[int, int], CycloScalar], g: int) -> AlgebraElement:
    terms = {}
    for (a, b), c in d.items():
        mono = [0] * n
        mono[a] += 1
        mono[b] += 1
        terms[(tuple(mono), g)] = c
    return AlgebraElement(terms)


def distinct_triples(n: int, sorted_only: bool = False):
    if sorted_only:
        return [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    return list(permutations(range(n), 3))


# ---------------------------------------------------------------------------
# condition (1)


def check_condition1(spec: DeformationSpec) -> ConditionResult:
    """G-invariance, by the quantum-minor formula and by acting directly; both are reported."""
    ops = VecOps(spec)
    n, G = spec.n, spec.group
    mats = spec.action
    wa: list[Witness] = []
    for g, h in product(G.elements(), repeat=2):
        hgh = G.conjugate(h, g)
        for i in range(n):
            for j in range(i + 1, n):
                dets = {}
                for k in range(n):
                    for l in range(k + 1, n):
                        d = quantum_minor_det(spec.q, mats[h], i + 1, j + 1, k + 1, l + 1)
                        if not d.is_zero():
                            dets[(k, l)] = d
                rhs_c = ops.zero
                rhs_l = ops.zero_vec()
                for (k, l), d in dets.items():
                    rhs_c = rhs_c + d * ops.kc[hgh][l][k]
                    rhs_l = _add(rhs_l, _scale(ops.kl[hgh][l][k], d))
                lhs_c = ops.kc[g][j][i]
                lhs_l = ops.act(h, ops.kl[g][j][i])
                if lhs_c != rhs_c or lhs_l != rhs_l:
                    res = AlgebraElement.vector(tuple(a - b for a, b in zip(lhs_l, rhs_l)), hgh) + AlgebraElement(
                        {((0,) * n, hgh): lhs_c - rhs_c}
                    )
                    wa.append(Witness(("g", g, "h", h, "i", i + 1, "j", j + 1), format_element(res)))
    wb = _invariance_by_action(spec)
    consistent = (not wa) == (not wb)
    return ConditionResult(
        "(1) G-invariance",
        not wa and not wb,
        wa or wb,
        {"minor_formula": not wa, "action_formula": not wb, "consistent": consistent},
    )


def kappa_element(spec: DeformationSpec, i: int, j: int) -> AlgebraElement:
    """kappa(v_i, v_j) as an element of (k + V) # G."""
    n = spec.n
    out = AlgebraElement.zero()
    for g in spec.group.elements():
        out = out + AlgebraElement.vector(spec.kappa.linear_table[g][i][j], g)
        c = spec.kappa.const_table[g][i][j]
        if not c.is_zero():
            out = out + AlgebraElement({((0,) * n, g): c})
    return out


def kappa_on_vectors(spec: DeformationSpec, x: Vec, y: Vec) -> AlgebraElement:
    ops = VecOps(spec)
    n = spec.n
    out = AlgebraElement.zero()
    for g in spec.group.elements():
        out = out + AlgebraElement.vector(ops.kappa_L(g, x, y), g)
        c = ops.kappa_C(g, x, y)
        if not c.is_zero():
            out = out + AlgebraElement({((0,) * n, g): c})
    return out


def _invariance_by_action(spec: DeformationSpec) -> list[Witness]:
    """^h kappa(v_i, v_j) == kappa(^h v_i, ^h v_j) for all h and all ordered pairs."""
    alg = undeformed_algebra(spec)
    ops = VecOps(spec)
    out = []
    for h in spec.group.elements():
        for i in range(spec.n):
            for j in range(spec.n):
                left = alg.act(h, kappa_element(spec, i, j))
                right = kappa_on_vectors(spec, ops.act(h, ops.basis(i)), ops.act(h, ops.basis(j)))
                if left != right:
                    out.append(Witness(("h", h, "i", i + 1, "j", j + 1), format_element(left - right)))
    return out


# ---------------------------------------------------------------------------
# conditions (2)-(4)


def condition2_residual(spec: DeformationSpec, g: int, i: int, j: int, k: int, ops: VecOps | None = None):
    ops = ops or VecOps(spec)
    q = spec.q
    L = ops.kl[g]
    vi, vj, vk = ops.basis(i), ops.basis(j), ops.basis(k)
    gi, gj, gk = ops.act(g, vi), ops.act(g, vj), ops.act(g, vk)
    terms = [
        (q[j][i] * q[k][i], vi, L[k][j]),
        (-ops.one, L[k][j], gi),
        (-q[k][j], vj, L[k][i]),
        (q[j][i], L[k][i], gj),
        (ops.one, vk, L[j][i]),
        (-(q[k][i] * q[k][j]), L[j][i], gk),
    ]
    acc: dict[tuple[int, int], CycloScalar] = {}
    for c, x, y in terms:
        for key, v in ops.sq_product(x, y).items():
            acc[key] = acc[key] + c * v if key in acc else c * v
    return {key: v for key, v in acc.items() if not v.is_zero()}


def check_condition2(spec: DeformationSpec, sorted_only: bool = False) -> ConditionResult:
    ops = VecOps(spec)
    wit = []
    for g in spec.group.elements():
        for i, j, k in distinct_triples(spec.n, sorted_only):
            res = condition2_residual(spec, g, i, j, k, ops)
            if res:
                wit.append(Witness(("g", g, "i", i + 1, "j", j + 1, "k", k + 1), format_element(_sq_element(spec.n, res, g))))
    return ConditionResult("(2) kappa^L cocycle", not wit, wit)


def nested_sum(spec: DeformationSpec, outer: str, g: int, i: int, j: int, k: int, ops: VecOps | None = None):
    """Six-term sum over h of the outer kappa part (``"L"`` or ``"C"``) at g h^-1,
    with kappa^L_h nested inside, as in the left sides of conditions (3) and (4)."""
    ops = ops or VecOps(spec)
    q = spec.q
    G = spec.group
    vi, vj, vk = ops.basis(i), ops.basis(j), ops.basis(k)
    f = ops.kappa_L if outer == "L" else ops.kappa_C
    acc = ops.zero_vec() if outer == "L" else ops.zero
    qijik = q[i][j] * q[i][k]
    qikjk = q[i][k] * q[j][k]
    for h in G.elements():
        gh = G.mul(g, G.inverse(h))
        Ljk = ops.kl[h][j][k]
        Lki = ops.kl[h][k][i]
        Lij = ops.kl[h][i][j]
        hvi, hvj, hvk = ops.act(h, vi), ops.act(h, vj), ops.act(h, vk)
        parts = [
            (qijik, f(gh, Ljk, hvi)),
            (-ops.one, f(gh, vi, Ljk)),
            (qikjk, f(gh, Lki, hvj)),
            (-qijik, f(gh, vj, Lki)),
            (ops.one, f(gh, Lij, hvk)),
            (-qikjk, f(gh, vk, Lij)),
        ]
        for c, val in parts:
            if outer == "L":
                acc = _add(acc, _scale(val, c))
            else:
                acc = acc + c * val
    return acc


def condition3_sides(spec: DeformationSpec, g: int, i: int, j: int, k: int, ops: VecOps | None = None):
    ops = ops or VecOps(spec)
    q = spec.q
    C = ops.kc[g]
    vi, vj, vk = ops.basis(i), ops.basis(j), ops.basis(k)
    gi, gj, gk = ops.act(g, vi), ops.act(g, vj), ops.act(g, vk)
    qijik = q[i][j] * q[i][k]
    qikjk = q[i][k] * q[j][k]
    left = nested_sum(spec, "L", g, i, j, k, ops)
    right = ops.zero_vec()
    right = _add(right, _scale(_add(vi, _scale(gi, -qijik)), C[j][k]))
    right = _add(right, _scale(_add(_scale(vj, qijik), _scale(gj, -qikjk)), C[k][i]))
    right = _add(right, _scale(_add(_scale(vk, qikjk), _scale(gk, -ops.one)), C[i][j]))
    right = _scale(right, CycloScalar.rational(2, spec.order))
    return left, right


def check_condition3(spec: DeformationSpec, sorted_only: bool = False) -> ConditionResult:
    ops = VecOps(spec)
    wit = []
    left_zero = right_zero = True
    left_wit = right_wit = None
    for g in spec.group.elements():
        for i, j, k in distinct_triples(spec.n, sorted_only):
            left, right = condition3_sides(spec, g, i, j, k, ops)
            idx = ("g", g, "i", i + 1, "j", j + 1, "k", k + 1)
            if any(not x.is_zero() for x in left):
                left_zero = False
                left_wit = left_wit or idx
            if any(not x.is_zero() for x in right):
                right_zero = False
                right_wit = right_wit or idx
            if left != right:
                diff = tuple(a - b for a, b in zip(left, right))
                wit.append(Witness(idx, format_element(AlgebraElement.vector(diff, g))))
    return ConditionResult(
        "(3) [kappa^L,kappa^L] = 2 d*kappa^C",
        not wit,
        wit,
        {"left_zero": left_zero, "right_zero": right_zero, "left_witness": left_wit, "right_witness": right_wit},
    )


def check_condition4(spec: DeformationSpec, sorted_only: bool = False) -> ConditionResult:
    ops = VecOps(spec)
    wit = []
    n = spec.n
    for g in spec.group.elements():
        for i, j, k in distinct_triples(n, sorted_only):
            val = nested_sum(spec, "C", g, i, j, k, ops)
            if not val.is_zero():
                wit.append(
                    Witness(("g", g, "i", i + 1, "j", j + 1, "k", k + 1), format_element(AlgebraElement({((0,) * n, g): val})))
                )
    return ConditionResult("(4) [kappa^C,kappa^L] = 0", not wit, wit)


def check_direct(spec: DeformationSpec) -> PbwReport:
    return PbwReport(
        "direct",
        [check_condition1(spec), check_condition2(spec), check_condition3(spec), check_condition4(spec)],
    )


def check_oracle(spec: DeformationSpec, degree: int = 4) -> PbwReport:
    from .oracle import truncated_dimension

    res = truncated_dimension(spec, degree)
    wit = []
    if not res.pbw:
        first = next(d for d in range(degree + 1) if res.dims[d] != res.expected[d])
        msg = f"dim F_{first} = {res.dims[first]} < {res.expected[first]}"
        if res.certificate is not None:
            msg += f"; certificate in degree {res.certificate.degree}: {res.certificate.describe()}"
        wit.append(Witness(("degree", first), msg))
    cond = ConditionResult(
        f"dimension count D={degree}",
        res.pbw,
        wit,
        {"dims": res.dims, "expected": res.expected},
    )
    return PbwReport("oracle", [cond], {"truncation": res})


def check_pbw(spec: DeformationSpec, method: str = "direct", degree: int = 4) -> PbwReport:
    if method == "direct":
        return check_direct(spec)
    if method == "homological":
        from .hochschild import check_homological

        return check_homological(spec)
    if method == "oracle":
        return check_oracle(spec, degree)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


# ---------------------------------------------------------------------------
# overlap ambiguities of the rewriting system


def overlap_confluence(spec: DeformationSpec) -> list[Witness]:
    """Resolve the overlaps v_k v_j v_i (k > j > i) and g v_j v_i (j > i) both ways.

    The returned witnesses are the overlaps whose two reductions differ.
    """
    from .skew import algebra

    alg = algebra(spec)
    n = spec.n
    v = [alg.generator(i) for i in range(n)]
    out = []
    for k in range(n):
        for j in range(k):
            kj = alg.multiply(v[k], v[j])
            for i in range(j):
                left = alg.multiply(kj, v[i])
                right = alg.multiply(v[k], alg.multiply(v[j], v[i]))
                if left != right:
                    out.append(Witness(("k", k + 1, "j", j + 1, "i", i + 1), format_element(left - right)))
    for g in spec.group.elements():
        if g == 0:
            continue
        gel = alg.group_element(g)
        for j in range(n):
            gj = alg.multiply(gel, v[j])
            for i in range(j):
                left = alg.multiply(gj, v[i])
                right = alg.multiply(gel, alg.multiply(v[j], v[i]))
                if left != right:
                    out.append(Witness(("g", g, "j", j + 1, "i", i + 1), format_element(left - right)))
    return out
