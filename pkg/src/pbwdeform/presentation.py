"""Deformation data (n, q, G, action, kappa): model, validation and file format.

File schema (line oriented, ``#`` starts a comment)::

    [algebra]
    dimension 3
    cyclo_order 3
    [q]
    2 1 z^1            # i j q_ij; the reverse orientation is derived
    [group]
    order 3
    0 1 2              # one multiplication-table row per element
    ...
    [action]
    element 1          # then n rows; column j holds the coordinates of ^g v_j
    z^1 0 0
    ...
    [kappa]
    2 1 0 : const 0 ; linear 0 0 1     # kappa_g(v_i, v_j) for g = 0

Missing ``[group]`` means the trivial group, missing ``[kappa]`` means zero.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic import CycloScalar, ScalarSyntaxError, format_scalar, parse_scalar
from .groups import (
    GroupTable,
    Matrix,
    ValidationReport,
    check_q_compatibility,
    identity_matrix,
    validate_group,
)


class SpecError(ValueError):
    """Syntax or semantic problem in an input file."""

    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)


class SpecValidationError(SpecError):
    """A named invariant of the deformation data is violated."""


# ---------------------------------------------------------------------------
# q-matrix


def validate_q(q: Sequence[Sequence[CycloScalar]]) -> ValidationReport:
    rep = ValidationReport()
    n = len(q)
    for i in range(n):
        if q[i][i] != 1:
            rep.add(f"q_{i + 1}{i + 1} = {q[i][i]} must be 1")
        for j in range(n):
            if q[i][j].is_zero():
                rep.add(f"q_{i + 1}{j + 1} is zero")
            elif q[j][i] * q[i][j] != 1:
                rep.add(f"q_{j + 1}{i + 1} != q_{i + 1}{j + 1}^-1")
    return rep


def q_from_upper(n: int, order: int, upper: dict[tuple[int, int], CycloScalar]) -> tuple:
    """Full q-matrix from entries with i < j (0-based); missing entries are 1."""
    one = CycloScalar.one(order)
    rows = [[one] * n for _ in range(n)]
    for (i, j), v in upper.items():
        rows[i][j] = v
        rows[j][i] = v.inverse()
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# kappa


KappaValue = tuple[CycloScalar, tuple[CycloScalar, ...]]


class KappaMap:
    """kappa_g(v_i, v_j) = const + sum_l linear[l] v_l, stored for i < j.

    The other orientation follows from kappa(v_i, v_j) = -q_ij kappa(v_j, v_i);
    ``const_table[g][i][j]`` and ``linear_table[g][i][j]`` give all ordered pairs.
    """

    def __init__(
        self,
        n: int,
        group_order: int,
        q: Sequence[Sequence[CycloScalar]],
        entries: dict[tuple[int, int, int], KappaValue] | None = None,
    ):
        self.n = n
        self.group_order = group_order
        order = q[0][0].order if n else 1
        self.order = order
        zero = CycloScalar.zero(order)
        zvec = (zero,) * n
        self.entries: dict[tuple[int, int, int], KappaValue] = {}
        for (i, j, g), (c, lin) in sorted((entries or {}).items()):
            if not i < j:
                raise ValueError("kappa entries are stored for i < j only")
            if c.is_zero() and all(x.is_zero() for x in lin):
                continue
            self.entries[(i, j, g)] = (c, tuple(lin))
        const = [[[zero] * n for _ in range(n)] for _ in range(group_order)]
        linear = [[[zvec] * n for _ in range(n)] for _ in range(group_order)]
        for (i, j, g), (c, lin) in self.entries.items():
            const[g][i][j] = c
            linear[g][i][j] = lin
            f = -q[j][i]
            const[g][j][i] = f * c
            linear[g][j][i] = tuple(f * x for x in lin)
        self.const_table = tuple(tuple(tuple(r) for r in m) for m in const)
        self.linear_table = tuple(tuple(tuple(r) for r in m) for m in linear)

    def is_zero(self) -> bool:
        return not self.entries

    def has_constant_part(self) -> bool:
        return any(not c.is_zero() for c, _ in self.entries.values())

    def has_linear_part(self) -> bool:
        return any(any(not x.is_zero() for x in lin) for _, lin in self.entries.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KappaMap):
            return NotImplemented
        return self.n == other.n and self.group_order == other.group_order and self.entries == other.entries

    def __repr__(self) -> str:
        return f"KappaMap(n={self.n}, entries={len(self.entries)})"


@dataclass(frozen=True)
class KappaParts:
    """Constant and linear parts of kappa, per group element."""

    const: tuple  # const[g][i][j] -> scalar
    linear: tuple  # linear[g][i][j] -> vector of n scalars

    def kappa_C(self, g: int, i: int, j: int) -> CycloScalar:
        return self.const[g][i][j]

    def kappa_L(self, g: int, i: int, j: int) -> tuple[CycloScalar, ...]:
        return self.linear[g][i][j]

    def recompose(self, q: Sequence[Sequence[CycloScalar]]) -> KappaMap:
        n = len(q)
        entries = {}
        for g in range(len(self.const)):
            for i in range(n):
                for j in range(i + 1, n):
                    entries[(i, j, g)] = (self.const[g][i][j], self.linear[g][i][j])
        return KappaMap(n, len(self.const), q, entries)


def decompose_kappa(k: KappaMap) -> KappaParts:
    return KappaParts(k.const_table, k.linear_table)


# ---------------------------------------------------------------------------
# the full input


@dataclass(frozen=True)
class DeformationSpec:
    n: int
    order: int
    q: tuple
    group: GroupTable
    action: tuple
    kappa: KappaMap
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def build(
        cls,
        n: int,
        order: int,
        q: Sequence[Sequence[CycloScalar]],
        group: GroupTable | None = None,
        action: Sequence[Matrix] | None = None,
        kappa: dict[tuple[int, int, int], KappaValue] | KappaMap | None = None,
        validate: bool = True,
    ) -> "DeformationSpec":
        """Assemble (promoting all scalars to ``order``) and validate."""
        q = tuple(tuple(CycloScalar.coerce(x, order) for x in row) for row in q)
        group = group or GroupTable.trivial()
        if action is None:
            if group.order != 1:
                raise SpecValidationError("an action matrix is required for every group element")
            action = [identity_matrix(n, order)]
        action = tuple(tuple(tuple(CycloScalar.coerce(x, order) for x in row) for row in m) for m in action)
        if not isinstance(kappa, KappaMap):
            entries = {}
            for key, (c, lin) in (kappa or {}).items():
                entries[key] = (
                    CycloScalar.coerce(c, order),
                    tuple(CycloScalar.coerce(x, order) for x in lin),
                )
            kappa = KappaMap(n, group.order, q, entries)
        spec = cls(n, order, q, group, action, kappa)
        if validate:
            spec.validate()
        return spec

    def validation_report(self) -> ValidationReport:
        rep = ValidationReport()
        if len(self.q) != self.n or any(len(r) != self.n for r in self.q):
            rep.add("q-matrix has the wrong shape")
            return rep
        rep.extend(validate_q(self.q))
        rep.extend(validate_group(self.group, self.action))
        if rep.ok:
            rep.extend(check_q_compatibility(self.q, self.action))
        for (i, j, g), (c, lin) in self.kappa.entries.items():
            if not (0 <= i < j < self.n and 0 <= g < self.group.order and len(lin) == self.n):
                rep.add(f"kappa entry ({i + 1},{j + 1},g{g}) out of range")
        return rep

    def validate(self) -> None:
        rep = self.validation_report()
        if not rep.ok:
            raise SpecValidationError("; ".join(rep.problems))

    # convenience views
    @property
    def parts(self) -> KappaParts:
        return decompose_kappa(self.kappa)

    def zero(self) -> CycloScalar:
        return CycloScalar.zero(self.order)

    def one(self) -> CycloScalar:
        return CycloScalar.one(self.order)

    def with_kappa(self, kappa: dict | KappaMap, validate: bool = True) -> "DeformationSpec":
        return DeformationSpec.build(self.n, self.order, self.q, self.group, self.action, kappa, validate)

    def undeformed(self) -> "DeformationSpec":
        """The same q, G and action with kappa = 0 (the algebra S_q(V) # G)."""
        key = "undeformed"
        if key not in self._cache:
            self._cache[key] = self.with_kappa({}, validate=False) if not self.kappa.is_zero() else self
        return self._cache[key]


# ---------------------------------------------------------------------------
# text format


@dataclass
class _Line:
    number: int
    raw: str
    tokens: list[str]

    def col(self, tok_index: int) -> int:
        # 1-based column of the tok_index-th whitespace token
        pos = 0
        for k, t in enumerate(self.tokens):
            pos = self.raw.index(t, pos)
            if k == tok_index:
                return pos + 1
            pos += len(t)
        return 1


def read_sections(text: str, allowed: Iterable[str]) -> dict[str, list[_Line]]:
    allowed = set(allowed)
    sections: dict[str, list[_Line]] = {}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        stripped = content.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise SpecError("unterminated section header", number, raw.index("[") + 1)
            name = stripped[1:-1].strip()
            if name not in allowed:
                raise SpecError(f"unknown section [{name}]", number, raw.index("[") + 1)
            if name in sections:
                raise SpecError(f"duplicate section [{name}]", number, 1)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise SpecError("content before the first section header", number, 1)
        sections[current].append(_Line(number, content, content.split()))
    return sections


def _int(line: _Line, k: int) -> int:
    try:
        return int(line.tokens[k])
    except (IndexError, ValueError):
        raise SpecError("expected an integer", line.number, line.col(k) if k < len(line.tokens) else len(line.raw) + 1)


def _scalar(line: _Line, text: str, order: int, col: int | None = None) -> CycloScalar:
    try:
        return parse_scalar(text, order)
    except ScalarSyntaxError as exc:
        raise SpecError(str(exc), line.number, col)


def parse_header(lines: list[_Line], keys: dict[str, int | None], section: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for line in lines:
        key = line.tokens[0]
        if key not in keys:
            raise SpecError(f"unknown key {key!r} in [{section}]", line.number, line.col(0))
        if len(line.tokens) != 2:
            raise SpecError(f"expected '{key} <integer>'", line.number, line.col(0))
        out[key] = _int(line, 1)
    for key, default in keys.items():
        if key not in out:
            if default is None:
                raise SpecError(f"missing '{key}' in [{section}]")
            out[key] = default
    return out


def _parse_kappa_line(line: _Line, n: int, order: int) -> tuple[int, int, int, KappaValue]:
    if ":" not in line.raw:
        raise SpecError("expected 'i j g : const <s> ; linear <s1> ... <sn>'", line.number, 1)
    head, body = line.raw.split(":", 1)
    ht = head.split()
    if len(ht) != 3:
        raise SpecError("expected 'i j g' before ':'", line.number, 1)
    try:
        i, j, g = (int(x) for x in ht)
    except ValueError:
        raise SpecError("kappa indices must be integers", line.number, 1)
    const = CycloScalar.zero(order)
    lin = (CycloScalar.zero(order),) * n
    col0 = len(head) + 2
    for part in body.split(";"):
        toks = part.split()
        if not toks:
            continue
        col = line.raw.index(toks[0], col0 - 1) + 1
        if toks[0] == "const":
            if len(toks) != 2:
                raise SpecError("'const' takes one scalar", line.number, col)
            const = _scalar(line, toks[1], order, col)
        elif toks[0] == "linear":
            if len(toks) != n + 1:
                raise SpecError(f"'linear' takes {n} scalars", line.number, col)
            lin = tuple(_scalar(line, t, order, col) for t in toks[1:])
        else:
            raise SpecError(f"unknown kappa part {toks[0]!r}", line.number, col)
    return i, j, g, (const, lin)


def parse_spec(text: str) -> DeformationSpec:
    """Parse and fully validate a deformation file."""
    sec = read_sections(text, ["algebra", "q", "group", "action", "kappa"])
    if "algebra" not in sec:
        raise SpecError("missing [algebra] section")
    hdr = parse_header(sec["algebra"], {"dimension": None, "cyclo_order": 1}, "algebra")
    n, order = hdr["dimension"], hdr["cyclo_order"]
    if n < 1 or order < 1:
        raise SpecError("dimension and cyclo_order must be positive")

    # q
    upper: dict[tuple[int, int], CycloScalar] = {}
    seen: dict[tuple[int, int], int] = {}
    for line in sec.get("q", []):
        toks = line.tokens[1:] if line.tokens[0] == "q" else line.tokens
        off = len(line.tokens) - len(toks)
        if len(toks) != 3:
            raise SpecError("expected 'i j <scalar>'", line.number, 1)
        i, j = _int(line, off) - 1, _int(line, off + 1) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise SpecValidationError(f"q index out of range ({i + 1},{j + 1})", line.number, line.col(off))
        val = _scalar(line, toks[2], order, line.col(off + 2))
        if val.is_zero():
            raise SpecValidationError(f"q_{i + 1}{j + 1} is zero", line.number, line.col(off + 2))
        if i == j:
            if val != 1:
                raise SpecValidationError(f"q_{i + 1}{i + 1} = {val} must be 1", line.number, line.col(off + 2))
            continue
        key, v = ((i, j), val) if i < j else ((j, i), val.inverse())
        if key in upper:
            if upper[key] != v:
                raise SpecValidationError(
                    f"q_{i + 1}{j + 1} inconsistent with line {seen[key]} (q_ji must equal q_ij^-1)",
                    line.number,
                    line.col(off + 2),
                )
            continue
        upper[key] = v
        seen[key] = line.number
    q = q_from_upper(n, order, upper)

    # group
    group = GroupTable.trivial()
    if "group" in sec:
        lines = sec["group"]
        if not lines or lines[0].tokens[0] != "order" or len(lines[0].tokens) != 2:
            raise SpecError("[group] must start with 'order <m>'", lines[0].number if lines else None, 1)
        m = _int(lines[0], 1)
        rows = lines[1:]
        if len(rows) != m:
            raise SpecError(f"[group] expects {m} table rows, got {len(rows)}", lines[0].number, 1)
        table = []
        for r in rows:
            if len(r.tokens) != m:
                raise SpecError(f"table row must have {m} entries", r.number, 1)
            table.append([_int(r, k) for k in range(m)])
        group = GroupTable.from_rows(table)
        rep = validate_group(group)
        if not rep.ok:
            raise SpecValidationError("invalid group: " + "; ".join(rep.problems), lines[0].number)

    # action
    mats: dict[int, Matrix] = {0: identity_matrix(n, order)}
    if "action" in sec:
        lines = sec["action"]
        k = 0
        given: set[int] = set()
        while k < len(lines):
            line = lines[k]
            if line.tokens[0] != "element" or len(line.tokens) != 2:
                raise SpecError("expected 'element <id>'", line.number, 1)
            g = _int(line, 1)
            if not 0 <= g < group.order:
                raise SpecValidationError(f"group element {g} out of range", line.number, line.col(1))
            if g in given:
                raise SpecError(f"duplicate action for element {g}", line.number, 1)
            given.add(g)
            rows = lines[k + 1 : k + 1 + n]
            if len(rows) != n:
                raise SpecError(f"element {g} needs {n} matrix rows", line.number, 1)
            mat = []
            for r in rows:
                if len(r.tokens) != n:
                    raise SpecError(f"matrix row must have {n} entries", r.number, 1)
                mat.append(tuple(_scalar(r, t, order, r.col(c)) for c, t in enumerate(r.tokens)))
            mats[g] = tuple(mat)
            k += n + 1
    missing = [g for g in range(group.order) if g not in mats]
    if missing:
        raise SpecValidationError(f"no action matrix for group elements {missing}")
    action = tuple(mats[g] for g in range(group.order))

    # kappa
    entries: dict[tuple[int, int, int], KappaValue] = {}
    origin: dict[tuple[int, int, int], int] = {}
    for line in sec.get("kappa", []):
        i, j, g, (c, lin) = _parse_kappa_line(line, n, order)
        i, j = i - 1, j - 1
        if not (0 <= i < n and 0 <= j < n and 0 <= g < group.order):
            raise SpecValidationError(f"kappa index out of range ({i + 1},{j + 1},{g})", line.number, 1)
        if i == j:
            if not c.is_zero() or any(not x.is_zero() for x in lin):
                raise SpecValidationError(f"kappa(v_{i + 1},v_{i + 1}) must vanish", line.number, 1)
            continue
        if i > j:
            # kappa(v_j, v_i) = -q_ji kappa(v_i, v_j)
            f = -q[j][i]
            i, j, c, lin = j, i, f * c, tuple(f * x for x in lin)
        key = (i, j, g)
        if key in entries:
            if entries[key] != (c, lin):
                raise SpecValidationError(
                    f"kappa({i + 1},{j + 1},g{g}) inconsistent with line {origin[key]} "
                    "under kappa(v_i,v_j) = -q_ij kappa(v_j,v_i)",
                    line.number,
                    1,
                )
            continue
        entries[key] = (c, lin)
        origin[key] = line.number
    try:
        return DeformationSpec.build(n, order, q, group, action, entries)
    except SpecValidationError:
        raise
    except ValueError as exc:
        raise SpecValidationError(str(exc))


def serialize_spec(spec: DeformationSpec) -> str:
    out = ["[algebra]", f"dimension {spec.n}", f"cyclo_order {spec.order}", "", "[q]"]
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            out.append(f"{i + 1} {j + 1} {format_scalar(spec.q[i][j])}")
    if spec.group.order > 1:
        out += ["", "[group]", f"order {spec.group.order}"]
        out += [" ".join(str(x) for x in row) for row in spec.group.mult]
        out += ["", "[action]"]
        for g, mat in enumerate(spec.action):
            out.append(f"element {g}")
            out += [" ".join(format_scalar(x) for x in row) for row in mat]
    if spec.kappa.entries:
        out += ["", "[kappa]"]
        for (i, j, g), (c, lin) in sorted(spec.kappa.entries.items()):
            parts = []
            if not c.is_zero():
                parts.append(f"const {format_scalar(c)}")
            if any(not x.is_zero() for x in lin):
                parts.append("linear " + " ".join(format_scalar(x) for x in lin))
            out.append(f"{i + 1} {j + 1} {g} : " + " ; ".join(parts))
    return "\n".join(out) + "\n"


def spec_digest(spec: DeformationSpec) -> str:
    return hashlib.sha256(serialize_spec(spec).encode()).hexdigest()[:16]
