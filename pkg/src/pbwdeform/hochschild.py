"""Cochains on the Koszul resolution of S_q(V), chain maps to and from the bar
resolution, degree-2 Gerstenhaber brackets and the homological PBW test.

S_q(V) monomials are exponent tuples.  Wedges are sorted tuples of 0-based
indices, with v_j ^ v_i = -q_ji v_i ^ v_j.  Cochain values live in S_q(V) # G.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .cyclotomic import CycloScalar
from .presentation import DeformationSpec
from .skew import AlgebraElement, format_element, undeformed_algebra

Mono = tuple[int, ...]
Wedge = tuple[int, ...]


class UnsupportedShapeError(ValueError):
    """The chain map psi is only defined on a few argument shapes."""


def _acc(d: dict, key, c: CycloScalar) -> None:
    if key in d:
        c = d[key] + c
    if c.is_zero():
        d.pop(key, None)
    else:
        d[key] = c


def unit_mono(n: int) -> Mono:
    return (0,) * n


def gen_mono(n: int, i: int) -> Mono:
    return tuple(1 if t == i else 0 for t in range(n))


def sq_mul(spec: DeformationSpec, a: Mono, b: Mono) -> tuple[CycloScalar, Mono]:
    """a * b in S_q(V): moving v_c of b left past v_r of a (r > c) costs q_rc."""
    c = spec.one()
    q = spec.q
    for r, er in enumerate(a):
        if not er:
            continue
        for s in range(r):
            es = b[s]
            if es:
                c = c * q[r][s] ** (er * es)
    return c, tuple(x + y for x, y in zip(a, b))


def sort_wedge(spec: DeformationSpec, idx: Sequence[int]) -> tuple[Optional[CycloScalar], Wedge]:
    """Bring a wedge word to sorted order; coefficient None means it vanishes."""
    if len(set(idx)) != len(idx):
        return None, ()
    w = list(idx)
    c = spec.one()
    q = spec.q
    for a in range(len(w)):
        for b in range(len(w) - 1 - a):
            if w[b] > w[b + 1]:
                c = c * (-q[w[b]][w[b + 1]])
                w[b], w[b + 1] = w[b + 1], w[b]
    return c, tuple(w)


# ---------------------------------------------------------------------------
# Koszul side


@dataclass
class KoszulChain:
    """Element of S^e (x) Lambda^p(V): {(left, right, wedge): coeff}."""

    degree: int
    terms: dict[tuple[Mono, Mono, Wedge], CycloScalar] = field(default_factory=dict)

    def add_term(self, left: Mono, right: Mono, wedge: Wedge, c: CycloScalar) -> None:
        _acc(self.terms, (left, right, wedge), c)

    def __add__(self, other: "KoszulChain") -> "KoszulChain":
        out = KoszulChain(self.degree, dict(self.terms))
        for k, c in other.terms.items():
            _acc(out.terms, k, c)
        return out

    def scale(self, c: CycloScalar) -> "KoszulChain":
        return KoszulChain(self.degree, {k: v * c for k, v in self.terms.items() if not (v * c).is_zero()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KoszulChain):
            return NotImplemented
        return self.terms == other.terms and (self.degree == other.degree or not self.terms)


def koszul_d(spec: DeformationSpec, p: int, wedge: Wedge) -> KoszulChain:
    """d_p(1 (x) 1 (x) v_{j_1} ^ ... ^ v_{j_p})."""
    n = spec.n
    if not 1 <= p <= n or len(wedge) != p:
        raise ValueError(f"need a wedge of length p in 1..{n}, got p={p}, wedge={wedge}")
    if any(wedge[t] >= wedge[t + 1] for t in range(p - 1)) or not all(0 <= x < n for x in wedge):
        raise ValueError(f"wedge {wedge} must be strictly increasing in 0..{n - 1}")
    q = spec.q
    one = spec.one()
    out = KoszulChain(p - 1)
    u = unit_mono(n)
    for t, jt in enumerate(wedge):
        sign = one if t % 2 == 0 else -one
        left = one
        for s in range(t + 1):
            left = left * q[wedge[s]][jt]
        right = one
        for s in range(t, p):
            right = right * q[jt][wedge[s]]
        rest = wedge[:t] + wedge[t + 1 :]
        v = gen_mono(n, jt)
        out.add_term(v, u, rest, sign * left)
        out.add_term(u, v, rest, -(sign * right))
    return out


def apply_d(spec: DeformationSpec, chain: KoszulChain) -> KoszulChain:
    """Extend d S^e-linearly: (a (x) b) . (x (x) y) = a x (x) y b."""
    out = KoszulChain(chain.degree - 1)
    for (a, b, w), c in chain.terms.items():
        for (x, y, w2), e in koszul_d(spec, len(w), w).terms.items():
            c1, ax = sq_mul(spec, a, x)
            c2, yb = sq_mul(spec, y, b)
            out.add_term(ax, yb, w2, c * e * c1 * c2)
    return out


def flatten(spec: DeformationSpec, chain: KoszulChain) -> dict[Mono, CycloScalar]:
    """The augmentation S^e -> S, a (x) b -> a b, on degree-0 chains."""
    out: dict[Mono, CycloScalar] = {}
    for (a, b, _), c in chain.terms.items():
        e, ab = sq_mul(spec, a, b)
        _acc(out, ab, c * e)
    return out


# ---------------------------------------------------------------------------
# cochains


class Cochain:
    """A p-cochain: values on sorted wedges, as elements of S_q(V) # G."""

    def __init__(self, spec: DeformationSpec, degree: int, values: dict[Wedge, AlgebraElement] | None = None):
        self.spec = spec
        self.degree = degree
        self.values = {k: v for k, v in (values or {}).items() if not v.is_zero()}

    def evaluate(self, idx: Sequence[int]) -> AlgebraElement:
        c, w = sort_wedge(self.spec, tuple(idx))
        if c is None:
            return AlgebraElement.zero()
        v = self.values.get(w)
        return AlgebraElement.zero() if v is None else v.scale(c)

    def on_chain(self, chain: KoszulChain) -> AlgebraElement:
        """sum c * a mu(w) b, products in S_q(V) # G."""
        alg = undeformed_algebra(self.spec)
        n = self.spec.n
        out = AlgebraElement.zero()
        for (a, b, w), c in chain.terms.items():
            val = self.values.get(w)
            if val is None:
                continue
            left = AlgebraElement.basis(a, 0, c)
            right = AlgebraElement.basis(b, 0, self.spec.one())
            term = alg.multiply(alg.multiply(left, val), right) if any(a) or any(b) else val.scale(c)
            out = out + term
        return out

    def is_zero(self) -> bool:
        return not self.values

    def __sub__(self, other: "Cochain") -> "Cochain":
        keys = set(self.values) | set(other.values)
        return Cochain(self.spec, self.degree, {k: self.evaluate(k) - other.evaluate(k) for k in keys})

    def scale(self, c: CycloScalar) -> "Cochain":
        return Cochain(self.spec, self.degree, {k: v.scale(c) for k, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.values == other.values

    def lines(self) -> list[str]:
        """One line per sorted wedge and group slot with a nonzero value."""
        out = []
        for w in sorted(self.values):
            val = self.values[w]
            name = "^".join(f"v{i + 1}" for i in w)
            for g in sorted(val.group_support()):
                out.append(f"{name} [g{g}]: {format_element(val.component(g))}")
        return out


def kappa_cochain(spec: DeformationSpec, part: str = "full") -> Cochain:
    """kappa, kappa^L (``"L"``) or kappa^C (``"C"``) as a 2-cochain."""
    n = spec.n
    vals = {}
    for i, j in combinations(range(n), 2):
        el = AlgebraElement.zero()
        for g in spec.group.elements():
            if part in ("full", "L"):
                el = el + AlgebraElement.vector(spec.kappa.linear_table[g][i][j], g)
            if part in ("full", "C"):
                c = spec.kappa.const_table[g][i][j]
                if not c.is_zero():
                    el = el + AlgebraElement({(unit_mono(n), g): c})
        vals[(i, j)] = el
    return Cochain(spec, 2, vals)


def dual_d(mu: Cochain) -> Cochain:
    """(d* mu)(w) = mu(d_{p+1}(w))."""
    spec = mu.spec
    p = mu.degree + 1
    vals = {}
    if p <= spec.n:
        for w in combinations(range(spec.n), p):
            vals[w] = mu.on_chain(koszul_d(spec, p, w))
    return Cochain(spec, p, vals)


# ---------------------------------------------------------------------------
# bar side and the chain maps


@dataclass
class BarElement:
    """Formal sum of tensors r_0 (x) ... (x) r_{m+1} of S_q(V) monomials."""

    degree: int
    terms: dict[tuple[Mono, ...], CycloScalar] = field(default_factory=dict)

    def add_term(self, factors: tuple[Mono, ...], c: CycloScalar) -> None:
        _acc(self.terms, factors, c)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def phi(spec: DeformationSpec, p: int, wedge: Wedge) -> BarElement:
    """Koszul-to-bar comparison map: signed q-antisymmetrization of the wedge."""
    n = spec.n
    out = BarElement(p)
    u = unit_mono(n)
    for perm in permutations(range(p)):
        word = [wedge[t] for t in perm]
        # q_pi * v_word = v_sorted, read off by normal-forming v_word
        c = spec.one()
        acc = u
        for x in word:
            e, acc = sq_mul(spec, acc, gen_mono(n, x))
            c = c * e
        coeff = c.inverse() if _perm_sign(perm) > 0 else -c.inverse()
        out.add_term((u,) + tuple(gen_mono(n, x) for x in word) + (u,), coeff)
    return out


def bar_delta(spec: DeformationSpec, x: BarElement) -> BarElement:
    out = BarElement(x.degree - 1)
    for fac, c in x.terms.items():
        m = len(fac) - 2
        for i in range(m + 1):
            e, prod = sq_mul(spec, fac[i], fac[i + 1])
            coeff = c * e if i % 2 == 0 else -(c * e)
            out.add_term(fac[:i] + (prod,) + fac[i + 2 :], coeff)
    return out


def _se_times(spec: DeformationSpec, a: Mono, b: Mono, chain: KoszulChain, c: CycloScalar, out: KoszulChain) -> None:
    for (x, y, w), e in chain.terms.items():
        c1, ax = sq_mul(spec, a, x)
        c2, yb = sq_mul(spec, y, b)
        out.add_term(ax, yb, w, c * e * c1 * c2)


def _psi1_middle(spec: DeformationSpec, m: Mono) -> KoszulChain:
    n = spec.n
    u = unit_mono(n)
    out = KoszulChain(1)
    deg = sum(m)
    if deg == 1:
        out.add_term(u, u, (m.index(1),), spec.one())
        return out
    if deg != 2:
        raise UnsupportedShapeError(f"psi_1 is undefined on a middle factor of degree {deg}")
    idx = [t for t in range(n) for _ in range(m[t])]
    i, j = idx
    half = CycloScalar.rational(1, spec.order) / 2
    q = spec.q
    vi, vj = gen_mono(n, i), gen_mono(n, j)
    # 1/2 (q_ij (x) v_i + v_i (x) 1) (x) v_j + 1/2 (q_ij v_j (x) 1 + 1 (x) v_j) (x) v_i
    out.add_term(u, vi, (j,), half * q[i][j])
    out.add_term(vi, u, (j,), half)
    out.add_term(vj, u, (i,), half * q[i][j])
    out.add_term(u, vj, (i,), half)
    return out


def psi(spec: DeformationSpec, k: int, x: BarElement) -> KoszulChain:
    """Bar-to-Koszul comparison map in degrees 0, 1, 2 on its defined shapes."""
    n = spec.n
    out = KoszulChain(k)
    half = CycloScalar.rational(1, spec.order) / 2
    for fac, c in x.terms.items():
        if len(fac) != k + 2:
            raise UnsupportedShapeError(f"expected {k + 2} tensor factors, got {len(fac)}")
        a, b = fac[0], fac[-1]
        if k == 0:
            out.add_term(a, b, (), c)
        elif k == 1:
            _se_times(spec, a, b, _psi1_middle(spec, fac[1]), c, out)
        elif k == 2:
            m1, m2 = fac[1], fac[2]
            if sum(m1) != 1 or sum(m2) != 1:
                raise UnsupportedShapeError("psi_2 is only defined on v_i (x) v_j")
            i, j = m1.index(1), m2.index(1)
            s, w = sort_wedge(spec, (i, j))
            if s is None:
                continue
            inner = KoszulChain(2, {(unit_mono(n), unit_mono(n), w): half * s})
            _se_times(spec, a, b, inner, c, out)
        else:
            raise UnsupportedShapeError(f"psi_{k} is not defined")
    return out


def bar_generator(spec: DeformationSpec, *middle: Mono) -> BarElement:
    """1 (x) m_1 (x) ... (x) m_k (x) 1."""
    u = unit_mono(spec.n)
    return BarElement(len(middle), {(u,) + tuple(middle) + (u,): spec.one()})


# ---------------------------------------------------------------------------
# circle products and brackets in degree 2


def _pullback2(alpha: Cochain, i: int, j: int) -> AlgebraElement:
    """alpha evaluated on psi_2(1 (x) v_i (x) v_j (x) 1)."""
    n = alpha.spec.n
    chain = psi(alpha.spec, 2, bar_generator(alpha.spec, gen_mono(n, i), gen_mono(n, j)))
    return alpha.on_chain(chain)


def _outer(alpha: Cochain, x: AlgebraElement, v: int, x_first: bool) -> AlgebraElement:
    """alpha(x (x) v_v) or alpha(v_v (x) x) for x in (k + V) # G, via psi_2.

    Group parts follow mu(r # g, s) = mu(r, ^g s) g and mu(r, s # h) = mu(r, s) h.
    Constant parts contribute 0, as in the normalized bar complex.
    """
    spec = alpha.spec
    G = spec.group
    out = AlgebraElement.zero()
    for (m, h), c in x.terms.items():
        deg = sum(m)
        if deg == 0:
            continue
        if deg != 1:
            raise UnsupportedShapeError("inner cochain value of degree above 1")
        l = m.index(1)
        if x_first:
            mat = spec.action[h]
            for k in range(spec.n):
                a = mat[k][v]
                if not a.is_zero():
                    out = out + _pullback2(alpha, l, k).right_group(h, G).scale(c * a)
        else:
            out = out + _pullback2(alpha, v, l).right_group(h, G).scale(c)
    return out


def circle_via_resolutions(alpha: Cochain, beta: Cochain, wedge: Wedge) -> AlgebraElement:
    """(alpha o beta)(phi_3(wedge)) with both cochains pulled back through psi_2."""
    spec = alpha.spec
    out = AlgebraElement.zero()
    for fac, c in phi(spec, 3, wedge).terms.items():
        a, b, d = (f.index(1) for f in fac[1:4])
        t1 = _outer(alpha, _pullback2(beta, a, b), d, True)
        t2 = _outer(alpha, _pullback2(beta, b, d), a, False)
        out = out + (t1 - t2).scale(c)
    return out


class _Bilinear:
    """alpha(x, y) for vectors x, y of V, from the values on basis pairs."""

    def __init__(self, alpha: Cochain):
        n = alpha.spec.n
        self.n = n
        self.table = [[alpha.evaluate((a, b)) for b in range(n)] for a in range(n)]

    def __call__(self, x: Sequence[CycloScalar], y: Sequence[CycloScalar]) -> AlgebraElement:
        out = AlgebraElement.zero()
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                if yb.is_zero():
                    continue
                val = self.table[a][b]
                if not val.is_zero():
                    out = out + val.scale(xa * yb)
        return out


def _linear_part(x: AlgebraElement, n: int, h: int, order: int) -> tuple[CycloScalar, ...]:
    vec = [CycloScalar.zero(order)] * n
    for (m, g), c in x.terms.items():
        if g == h and sum(m) == 1:
            vec[m.index(1)] = c
    return tuple(vec)


def circle_closed_form(alpha: Cochain, beta: Cochain, wedge: Wedge) -> AlgebraElement:
    """Twice (alpha o beta) on v_i ^ v_j ^ v_k, as a six-term sum over h.

    Only the V-part of beta enters; an outer component in slot g' lands in g'h.
    """
    spec = alpha.spec
    n, G, q = spec.n, spec.group, spec.q
    i, j, k = wedge
    A = _Bilinear(alpha)
    one = spec.one()
    zero = CycloScalar.zero(spec.order)

    def e(t):
        return tuple(one if s == t else zero for s in range(n))

    def act(h, x):
        mat = spec.action[h]
        return tuple(sum((mat[r][s] * x[s] for s in range(n)), zero) for r in range(n))

    bij, bjk, bki = beta.evaluate((i, j)), beta.evaluate((j, k)), beta.evaluate((k, i))
    qikjk = q[i][k] * q[j][k]
    qijik = q[i][j] * q[i][k]
    out = AlgebraElement.zero()
    for h in G.elements():
        Bij = _linear_part(bij, n, h, spec.order)
        Bjk = _linear_part(bjk, n, h, spec.order)
        Bki = _linear_part(bki, n, h, spec.order)
        if all(x.is_zero() for x in Bij + Bjk + Bki):
            continue
        s = (
            A(Bij, act(h, e(k)))
            - A(e(k), Bij).scale(qikjk)
            + A(Bjk, act(h, e(i))).scale(qijik)
            - A(e(i), Bjk)
            + A(Bki, act(h, e(j))).scale(qikjk)
            - A(e(j), Bki).scale(qijik)
        )
        out = out + s.right_group(h, G)
    return out


def circle(alpha: Cochain, beta: Cochain) -> Cochain:
    half = CycloScalar.rational(1, alpha.spec.order) / 2
    vals = {w: circle_closed_form(alpha, beta, w).scale(half) for w in combinations(range(alpha.spec.n), 3)}
    return Cochain(alpha.spec, 3, vals)


def bracket(alpha: Cochain, beta: Cochain) -> Cochain:
    """[alpha, beta] = alpha o beta + beta o alpha."""
    a, b = circle(alpha, beta), circle(beta, alpha)
    return Cochain(alpha.spec, 3, {w: a.evaluate(w) + b.evaluate(w) for w in set(a.values) | set(b.values)})


def gerstenhaber_square_L(spec: DeformationSpec) -> Cochain:
    L = kappa_cochain(spec, "L")
    return bracket(L, L)


def bracket_CL(spec: DeformationSpec) -> Cochain:
    return bracket(kappa_cochain(spec, "C"), kappa_cochain(spec, "L"))


# ---------------------------------------------------------------------------


def _cochain_witnesses(c: Cochain):
    from .pbw import Witness

    out = []
    for w in sorted(c.values):
        out.append(Witness(tuple(i + 1 for i in w), format_element(c.values[w])))
    return out


def check_homological(spec: DeformationSpec):
    """Invariance, d* kappa^L = 0, [kappa^L, kappa^L] = 2 d* kappa^C, [kappa^C, kappa^L] = 0."""
    from .pbw import ConditionResult, PbwReport, _invariance_by_action

    inv = _invariance_by_action(spec)
    L = kappa_cochain(spec, "L")
    C = kappa_cochain(spec, "C")
    dL = dual_d(L)
    two = CycloScalar.rational(2, spec.order)
    r3 = gerstenhaber_square_L(spec) - dual_d(C).scale(two)
    r4 = bracket_CL(spec)
    return PbwReport(
        "homological",
        [
            ConditionResult("(1) kappa G-invariant", not inv, inv),
            ConditionResult("(2) d*kappa^L = 0", dL.is_zero(), _cochain_witnesses(dL)),
            ConditionResult("(3) [kappa^L,kappa^L] = 2 d*kappa^C", r3.is_zero(), _cochain_witnesses(r3)),
            ConditionResult("(4) [kappa^C,kappa^L] = 0", r4.is_zero(), _cochain_witnesses(r4)),
        ],
    )
