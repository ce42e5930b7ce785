"""Color Lie algebras, generalized enveloping algebras, and conversion to and
from deformations with trivial group.

A grading group is presented as Z^r with an integer exponent matrix E and
epsilon(a, b) = zeta_M^(a^T E b); degrees are integer vectors, compared
modulo the radical of epsilon.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .cyclotomic import CycloScalar, format_scalar
from .groups import GroupTable, ValidationReport
from .presentation import (
    DeformationSpec,
    SpecError,
    SpecValidationError,
    _int,
    _scalar,
    parse_header,
    q_from_upper,
    read_sections,
)

Vec = tuple[CycloScalar, ...]


class NotColorConvertible(ValueError):
    def __init__(self, msg: str, witness: tuple | None = None):
        super().__init__(msg)
        self.witness = witness


class NonRootOfUnityQ(NotColorConvertible):
    pass


@dataclass(frozen=True)
class Bicharacter:
    rank: int
    order: int
    E: tuple[tuple[int, ...], ...]

    def exponent(self, a: Sequence[int], b: Sequence[int]) -> int:
        r = self.rank
        return sum(a[s] * self.E[s][t] * b[t] for s in range(r) for t in range(r)) % self.order

    def value(self, a: Sequence[int], b: Sequence[int]) -> CycloScalar:
        return CycloScalar.zeta(self.order, self.exponent(a, b))

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        M, r = self.order, self.rank
        if len(self.E) != r or any(len(row) != r for row in self.E):
            rep.add(f"exponent matrix must be {r} x {r}")
            return rep
        for s in range(r):
            for t in range(r):
                if (self.E[s][t] + self.E[t][s]) % M:
                    # on the diagonal this says epsilon(a_s, a_s) = +-1
                    rep.add(f"epsilon(a_{s + 1},a_{t + 1}) epsilon(a_{t + 1},a_{s + 1}) != 1")
        return rep


def radical_member(b: Bicharacter, c: Sequence[int]) -> bool:
    """epsilon(c, -) == 1, i.e. E c == 0 mod M (E is antisymmetric mod M)."""
    if len(c) != b.rank:
        raise ValueError(f"vector of length {len(c)} for a bicharacter of rank {b.rank}")
    return all(sum(b.E[s][t] * c[t] for t in range(b.rank)) % b.order == 0 for s in range(b.rank))


@dataclass
class ColorLieData:
    """Homogeneous basis v_1..v_n with degrees, brackets [v_i, v_j] and omega(v_i, v_j) for i < j."""

    n: int
    bichar: Bicharacter
    degrees: tuple[tuple[int, ...], ...]
    bracket_upper: dict[tuple[int, int], Vec] = field(default_factory=dict)
    omega_upper: dict[tuple[int, int], CycloScalar] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.bichar.order

    def eps(self, i: int, j: int) -> CycloScalar:
        return self.bichar.value(self.degrees[i], self.degrees[j])

    def bracket_const(self, i: int, j: int) -> Vec:
        zero = CycloScalar.zero(self.order)
        if i == j:
            return (zero,) * self.n
        if i < j:
            return self.bracket_upper.get((i, j), (zero,) * self.n)
        f = -self.eps(i, j)
        return tuple(f * x for x in self.bracket_upper.get((j, i), (zero,) * self.n))

    def omega_const(self, i: int, j: int) -> CycloScalar:
        zero = CycloScalar.zero(self.order)
        if i == j:
            return zero
        if i < j:
            return self.omega_upper.get((i, j), zero)
        return -self.eps(i, j) * self.omega_upper.get((j, i), zero)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = [CycloScalar.zero(self.order)] * self.n
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                if yb.is_zero():
                    continue
                for l, c in enumerate(self.bracket_const(a, b)):
                    if not c.is_zero():
                        out[l] = out[l] + xa * yb * c
        return tuple(out)

    def omega(self, x: Vec, y: Vec) -> CycloScalar:
        acc = CycloScalar.zero(self.order)
        for a, xa in enumerate(x):
            for b, yb in enumerate(y):
                if not xa.is_zero() and not yb.is_zero():
                    acc = acc + xa * yb * self.omega_const(a, b)
        return acc

    def basis(self, i: int) -> Vec:
        one, zero = CycloScalar.one(self.order), CycloScalar.zero(self.order)
        return tuple(one if t == i else zero for t in range(self.n))


def check_color_axioms(d: ColorLieData) -> ValidationReport:
    """Grading, epsilon-antisymmetry and the epsilon-Jacobi identity on basis elements."""
    rep = d.bichar.validate()
    if not rep.ok:
        return rep
    n, r = d.n, d.bichar.rank
    if len(d.degrees) != n or any(len(deg) != r for deg in d.degrees):
        rep.add(f"need {n} degree vectors of length {r}")
        return rep
    for i in range(n):
        if d.eps(i, i) != 1:
            rep.add(f"epsilon(|v{i + 1}|,|v{i + 1}|) != 1, so [v{i + 1},v{i + 1}] is not determined")
    for (i, j), c in sorted(d.bracket_upper.items()):
        for l, x in enumerate(c):
            if x.is_zero():
                continue
            diff = tuple(d.degrees[i][t] + d.degrees[j][t] - d.degrees[l][t] for t in range(r))
            if not radical_member(d.bichar, diff):
                rep.add(f"grading: [v{i + 1},v{j + 1}] has a v{l + 1} component but |v{i + 1}|+|v{j + 1}|-|v{l + 1}| = {diff} is not in rad")
    for i in range(n):
        for j in range(n):
            if i != j and d.bracket_const(i, j) != tuple(-d.eps(i, j) * x for x in d.bracket_const(j, i)):
                rep.add(f"antisymmetry fails for (v{i + 1},v{j + 1})")
    for i, j, k in product(range(n), repeat=3):
        x, y, z = d.basis(i), d.basis(j), d.basis(k)
        terms = [
            (d.eps(k, i), d.bracket(x, d.bracket(y, z))),
            (d.eps(i, j), d.bracket(y, d.bracket(z, x))),
            (d.eps(j, k), d.bracket(z, d.bracket(x, y))),
        ]
        res = [sum((c * v[l] for c, v in terms), CycloScalar.zero(d.order)) for l in range(n)]
        if any(not v.is_zero() for v in res):
            rep.add(f"Jacobi fails on (v{i + 1},v{j + 1},v{k + 1}): residual ({', '.join(format_scalar(v) for v in res)})")
    return rep


def check_omega(d: ColorLieData) -> ValidationReport:
    rep = ValidationReport()
    n = d.n
    for i, j, k in product(range(n), repeat=3):
        x, y, z = d.basis(i), d.basis(j), d.basis(k)
        val = (
            d.eps(k, i) * d.omega(x, d.bracket(y, z))
            + d.eps(i, j) * d.omega(y, d.bracket(z, x))
            + d.eps(j, k) * d.omega(z, d.bracket(x, y))
        )
        if not val.is_zero():
            rep.add(f"omega condition fails on (v{i + 1},v{j + 1},v{k + 1}): {format_scalar(val)}")
    return rep


# ---------------------------------------------------------------------------
# conversions


def structure_hypothesis(spec: DeformationSpec):
    """First (i, j, l, m) with C^{i,j}_l != 0 but q_im q_jm != q_lm, or None (0-based)."""
    n, q = spec.n, spec.q
    L = spec.kappa.linear_table[0]
    pairs = [(i, j) for i in range(n) for j in range(i)] + [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in pairs:
        for l, c in enumerate(L[i][j]):
            if c.is_zero():
                continue
            for m in range(n):
                if q[i][m] * q[j][m] != q[l][m]:
                    return (i, j, l, m)
    return None


def hq_to_color(spec: DeformationSpec) -> ColorLieData:
    from .pbw import check_condition3, check_pbw

    if spec.group.order != 1:
        raise NotColorConvertible("the group must be trivial")
    n = spec.n
    # Q(zeta_M) = Q(zeta_2M) for odd M, and its roots of unity are the powers of zeta_2M
    M = spec.order if spec.order % 2 == 0 else 2 * spec.order
    E = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = spec.q[i][j].promote(M).zeta_exponent()
            if e is None:
                raise NonRootOfUnityQ(
                    f"q_{i + 1}{j + 1} = {format_scalar(spec.q[i][j])} is not a power of zeta_{M}", (i + 1, j + 1)
                )
            E[i][j], E[j][i] = e, (-e) % M
    rep = check_pbw(spec, "direct")
    if not rep.passed:
        bad = next(c for c in rep.conditions if not c.passed)
        raise NotColorConvertible(f"not PBW: {bad.name} fails at {bad.witnesses[0].describe()}")
    w = structure_hypothesis(spec)
    if w is not None:
        i, j, l, m = w
        c = spec.kappa.linear_table[0][i][j][l]
        raise NotColorConvertible(
            f"C^{{{i + 1},{j + 1}}}_{l + 1} = {format_scalar(c)} != 0 but "
            f"q_{i + 1}{m + 1} q_{j + 1}{m + 1} = {format_scalar(spec.q[i][m] * spec.q[j][m])} "
            f"!= q_{l + 1}{m + 1} = {format_scalar(spec.q[l][m])}",
            (i + 1, j + 1, l + 1, m + 1),
        )
    c3 = check_condition3(spec)
    if not c3.details["left_zero"] or not c3.details["right_zero"]:
        side = "left" if not c3.details["left_zero"] else "right"
        wit = c3.details[f"{side}_witness"]
        raise NotColorConvertible(f"the {side} side of the kappa^L/kappa^C identity is nonzero at {wit}", wit)
    degrees = tuple(tuple(1 if t == i else 0 for t in range(n)) for i in range(n))
    L, C = spec.kappa.linear_table[0], spec.kappa.const_table[0]
    brackets = {(i, j): tuple(x.promote(M) for x in L[i][j]) for i in range(n) for j in range(i + 1, n) if any(not x.is_zero() for x in L[i][j])}
    omega = {(i, j): C[i][j].promote(M) for i in range(n) for j in range(i + 1, n) if not C[i][j].is_zero()}
    return ColorLieData(n, Bicharacter(n, M, tuple(map(tuple, E))), degrees, brackets, omega)


def color_to_hq(d: ColorLieData, verify: bool = True) -> DeformationSpec:
    from .pbw import check_pbw

    rep = check_color_axioms(d)
    rep.extend(check_omega(d))
    if not rep.ok:
        raise SpecValidationError("color Lie data invalid: " + "; ".join(rep.problems))
    n, M = d.n, d.order
    q = q_from_upper(n, M, {(i, j): d.eps(i, j) for i in range(n) for j in range(i + 1, n)})
    zero = CycloScalar.zero(M)
    kappa = {}
    for i in range(n):
        for j in range(i + 1, n):
            lin = d.bracket_upper.get((i, j), (zero,) * n)
            c = d.omega_upper.get((i, j), zero)
            if not c.is_zero() or any(not x.is_zero() for x in lin):
                kappa[(i, j, 0)] = (c, lin)
    spec = DeformationSpec.build(n, M, q, GroupTable.trivial(), None, kappa)
    if verify:
        res = check_pbw(spec, "direct")
        if not res.passed:
            raise RuntimeError("color Lie data produced a non-PBW deformation: " + str(res.verdicts()))
    return spec


# ---------------------------------------------------------------------------
# text format


def parse_color(text: str) -> ColorLieData:
    sec = read_sections(text, ["colorlie", "degrees", "epsilon", "bracket", "omega"])
    if "colorlie" not in sec:
        raise SpecError("missing [colorlie] section")
    hdr = parse_header(sec["colorlie"], {"dimension": None, "cyclo_order": None, "rank": 0}, "colorlie")
    n, M = hdr["dimension"], hdr["cyclo_order"]
    r = hdr["rank"] or n
    if n < 1 or M < 1 or r < 1:
        raise SpecError("dimension, cyclo_order and rank must be positive")
    deg_lines = sec.get("degrees", [])
    if len(deg_lines) != n:
        raise SpecError(f"[degrees] needs {n} rows, got {len(deg_lines)}")
    degrees = []
    for line in deg_lines:
        if len(line.tokens) != r:
            raise SpecError(f"degree vector must have {r} entries", line.number, 1)
        degrees.append(tuple(_int(line, k) for k in range(r)))
    eps_lines = sec.get("epsilon", [])
    if len(eps_lines) != r:
        raise SpecError(f"[epsilon] needs {r} rows, got {len(eps_lines)}")
    E = []
    for line in eps_lines:
        if len(line.tokens) != r:
            raise SpecError(f"exponent row must have {r} entries", line.number, 1)
        E.append(tuple(_int(line, k) % M for k in range(r)))
    bichar = Bicharacter(r, M, tuple(E))
    rep = bichar.validate()
    if not rep.ok:
        raise SpecValidationError("; ".join(rep.problems))
    d = ColorLieData(n, bichar, tuple(degrees))

    def entries(name: str, width: int):
        for line in sec.get(name, []):
            if ":" not in line.raw:
                raise SpecError("expected 'i j : ...'", line.number, 1)
            head, body = line.raw.split(":", 1)
            ht, bt = head.split(), body.split()
            if len(ht) != 2 or len(bt) != width:
                raise SpecError(f"expected 'i j : ' followed by {width} scalar(s)", line.number, 1)
            try:
                i, j = int(ht[0]) - 1, int(ht[1]) - 1
            except ValueError:
                raise SpecError("indices must be integers", line.number, 1)
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise SpecValidationError(f"bad index pair ({i + 1},{j + 1})", line.number, 1)
            yield line, i, j, tuple(_scalar(line, t, M, line.raw.index(t, len(head)) + 1) for t in bt)

    for line, i, j, vals in entries("bracket", n):
        if i > j:
            f = -d.eps(j, i)
            i, j, vals = j, i, tuple(f * x for x in vals)
        if (i, j) in d.bracket_upper and d.bracket_upper[(i, j)] != vals:
            raise SpecValidationError(f"bracket ({i + 1},{j + 1}) given inconsistently", line.number, 1)
        d.bracket_upper[(i, j)] = vals
    for line, i, j, (val,) in entries("omega", 1):
        if i > j:
            i, j, val = j, i, -d.eps(j, i) * val
        if (i, j) in d.omega_upper and d.omega_upper[(i, j)] != val:
            raise SpecValidationError(f"omega ({i + 1},{j + 1}) given inconsistently", line.number, 1)
        d.omega_upper[(i, j)] = val
    d.bracket_upper = {k: v for k, v in d.bracket_upper.items() if any(not x.is_zero() for x in v)}
    d.omega_upper = {k: v for k, v in d.omega_upper.items() if not v.is_zero()}
    return d


def serialize_color(d: ColorLieData) -> str:
    b = d.bichar
    out = ["[colorlie]", f"dimension {d.n}", f"cyclo_order {b.order}", f"rank {b.rank}", "", "[degrees]"]
    out += [" ".join(str(x) for x in deg) for deg in d.degrees]
    out += ["", "[epsilon]"]
    out += [" ".join(str(x) for x in row) for row in b.E]
    if d.bracket_upper:
        out += ["", "[bracket]"]
        for (i, j), v in sorted(d.bracket_upper.items()):
            out.append(f"{i + 1} {j + 1} : " + " ".join(format_scalar(x) for x in v))
    if d.omega_upper:
        out += ["", "[omega]"]
        for (i, j), v in sorted(d.omega_upper.items()):
            out.append(f"{i + 1} {j + 1} : {format_scalar(v)}")
    return "\n".join(out) + "\n"
