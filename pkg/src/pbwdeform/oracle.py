"""Dimension-count PBW oracle: exact linear algebra in truncations of (T(V) # G)/I.

The filtered piece F_d of H_{q,kappa} is T_{<=d}(V) # G modulo the part of the
ideal lying in filtration degree <= d.  We approximate the ideal by the span of
all products (u # 1) s (w # h) of total degree <= D, where s runs over a basis
of span{^g r_ij} and r_ij = v_i v_j - q_ij v_j v_i - kappa(v_i, v_j).  With the
columns ordered by descending word length, the number of echelon pivots in
degree <= d is dim(I_D intersected with T_{<=d} # G).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Optional

from .cyclotomic import CycloScalar, format_scalar
from .presentation import DeformationSpec

Word = tuple[int, ...]
TKey = tuple[Word, int]


class ResourceLimitError(RuntimeError):
    pass


@dataclass
class CollapseCertificate:
    """An ideal element of filtration degree ``degree`` whose leading word is ordered."""

    degree: int
    element: dict[TKey, CycloScalar]

    def describe(self) -> str:
        parts = []
        for (w, g), c in self.element.items():
            body = "*".join([f"v{i + 1}" for i in w] + ([f"g{g}"] if g else [])) or "1"
            s = format_scalar(c)
            if s in ("1", "-1") and body != "1":
                s = s[:-1] + body
            else:
                s = (s if c.is_rational() else f"({s})") + ("" if body == "1" else "*" + body)
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


@dataclass
class TruncationResult:
    degree: int
    dims: tuple[int, ...]  # cumulative dim F_d, d = 0..D
    expected: tuple[int, ...]
    rows: int
    columns: int
    certificate: Optional[CollapseCertificate] = None

    @property
    def pbw(self) -> bool:
        return self.dims == self.expected


def pbw_counts(n: int, group_order: int, D: int) -> tuple[int, ...]:
    """|G| * sum_{e<=d} C(e+n-1, n-1), cumulative for d = 0..D."""
    out, acc = [], 0
    for d in range(D + 1):
        acc += comb(d + n - 1, n - 1)
        out.append(group_order * acc)
    return tuple(out)


class _TensorSkew:
    """Multiplication in T(V) # G on dict elements {(word, g): coeff}."""

    def __init__(self, spec: DeformationSpec):
        self.spec = spec
        self.n = spec.n
        self.group = spec.group
        self.one = CycloScalar.one(spec.order)
        self._act: dict[tuple[int, Word], dict[Word, CycloScalar]] = {}

    def act_word(self, g: int, w: Word) -> dict[Word, CycloScalar]:
        key = (g, w)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if not w:
            res = {(): self.one}
        else:
            head = self.act_word(g, w[:-1])
            mat = self.spec.action[g]
            i = w[-1]
            res = {}
            for hw, hc in head.items():
                for k in range(self.n):
                    a = mat[k][i]
                    if not a.is_zero():
                        nw = hw + (k,)
                        res[nw] = res[nw] + hc * a if nw in res else hc * a
            res = {k: c for k, c in res.items() if not c.is_zero()}
        self._act[key] = res
        return res

    def mul(self, x: dict[TKey, CycloScalar], y: dict[TKey, CycloScalar]) -> dict[TKey, CycloScalar]:
        out: dict[TKey, CycloScalar] = {}
        mul = self.group.mul
        for (a, g), c in x.items():
            for (b, h), d in y.items():
                cd = c * d
                gh = mul(g, h)
                for bw, bc in self.act_word(g, b).items():
                    key = (a + bw, gh)
                    v = cd * bc
                    out[key] = out[key] + v if key in out else v
        return {k: c for k, c in out.items() if not c.is_zero()}

    def conj_act(self, g: int, x: dict[TKey, CycloScalar]) -> dict[TKey, CycloScalar]:
        """^g x = (1#g) x (1#g^-1)."""
        ginv = self.group.inverse(g)
        out: dict[TKey, CycloScalar] = {}
        for (w, a), c in x.items():
            b = self.group.mul(self.group.mul(g, a), ginv)
            for aw, ac in self.act_word(g, w).items():
                key = (aw, b)
                out[key] = out[key] + c * ac if key in out else c * ac
        return {k: c for k, c in out.items() if not c.is_zero()}


def relation(spec: DeformationSpec, i: int, j: int) -> dict[TKey, CycloScalar]:
    """r_ij = v_i v_j - q_ij v_j v_i - kappa(v_i, v_j) in T(V) # G (0-based)."""
    one = CycloScalar.one(spec.order)
    r: dict[TKey, CycloScalar] = {((i, j), 0): one}
    key = ((j, i), 0)
    r[key] = r.get(key, CycloScalar.zero(spec.order)) - spec.q[i][j]
    for g in range(spec.group.order):
        c = spec.kappa.const_table[g][i][j]
        if not c.is_zero():
            r[((), g)] = -c
        for l, a in enumerate(spec.kappa.linear_table[g][i][j]):
            if not a.is_zero():
                r[((l,), g)] = -a
    return {k: c for k, c in r.items() if not c.is_zero()}


class _Echelon:
    """Semi-echelon form over Q(zeta_M); rows are {column index: coeff}."""

    def __init__(self):
        self.pivots: dict[int, dict[int, CycloScalar]] = {}

    def add(self, row: dict[int, CycloScalar]) -> Optional[int]:
        row = dict(row)
        pivots = self.pivots
        while row:
            p = min(row)
            prow = pivots.get(p)
            if prow is None:
                inv = row[p].inverse()
                if inv != 1:
                    row = {k: v * inv for k, v in row.items()}
                pivots[p] = row
                return p
            c = row[p]
            for k, v in prow.items():
                if k in row:
                    nv = row[k] - c * v
                    if nv.is_zero():
                        del row[k]
                    else:
                        row[k] = nv
                else:
                    row[k] = -(c * v)
        return None


def _words(n: int, length: int):
    return product(range(n), repeat=length)


def _column_key(w: Word, g: int):
    # high degree first; within a degree, unordered words before ordered ones
    ordered = all(w[t] <= w[t + 1] for t in range(len(w) - 1))
    return (-len(w), ordered, tuple(-x for x in w), g)


def truncated_dimension(spec: DeformationSpec, D: int = 4, max_cells: int = 20_000_000) -> TruncationResult:
    """dim F_d of the degree-<=D truncation of H_{q,kappa}, for d = 0..D."""
    if D < 2:
        raise ValueError("truncation degree must be at least 2")
    n, G = spec.n, spec.group
    ts = _TensorSkew(spec)

    cols = [(w, g) for L in range(D + 1) for w in _words(n, L) for g in range(G.order)]
    cols.sort(key=lambda k: _column_key(*k))
    index = {k: t for t, k in enumerate(cols)}

    # basis of span{^g r_ij}
    rel_rows = []
    ech = _Echelon()
    for i in range(n):
        for j in range(i + 1, n):
            r = relation(spec, i, j)
            for g in G.elements():
                s = ts.conj_act(g, r)
                if ech.add({index[k]: c for k, c in s.items()}) is not None:
                    rel_rows.append(s)
    outer = [(u, w) for lu in range(D - 1) for lw in range(D - 1 - lu) for u in _words(n, lu) for w in _words(n, lw)]
    n_rows = len(rel_rows) * len(outer) * G.order
    if n_rows * len(cols) > max_cells:
        raise ResourceLimitError(f"oracle matrix {n_rows} x {len(cols)} exceeds max_cells={max_cells}")

    one = CycloScalar.one(spec.order)
    ech = _Echelon()
    for s in rel_rows:
        for u, w in outer:
            us = ts.mul({(u, 0): one}, s)
            for h in G.elements():
                row = ts.mul(us, {(w, h): one})
                ech.add({index[k]: c for k, c in row.items()})

    pivots_by_deg = [0] * (D + 1)
    for p in ech.pivots:
        pivots_by_deg[len(cols[p][0])] += 1
    dims, total, piv = [], 0, 0
    for d in range(D + 1):
        total += G.order * n**d
        piv += pivots_by_deg[d]
        dims.append(total - piv)
    expected = pbw_counts(n, G.order, D)

    cert = None
    if tuple(dims) != expected:
        for p in sorted(ech.pivots, key=lambda p: (len(cols[p][0]), p)):
            w, _ = cols[p]
            if all(w[t] <= w[t + 1] for t in range(len(w) - 1)):
                cert = CollapseCertificate(len(w), {cols[k]: c for k, c in sorted(ech.pivots[p].items())})
                break
    return TruncationResult(D, tuple(dims), expected, n_rows, len(cols), cert)
