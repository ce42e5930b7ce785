"""Normal-form arithmetic in S_q(V) # G and its deformations H_{q,kappa}.

Basis elements are pairs (m, g) of an exponent vector m (the ordered monomial
v_1^{m_1} ... v_n^{m_n}) and a group id g, standing for m # g.  Products are
computed by pushing generators rightwards with the rewriting rules

    v_j v_i -> q_ji v_i v_j + kappa(v_j, v_i)    (j > i)
    g v_i   -> (^g v_i) g
    g h     -> gh
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence, Union

from .cyclotomic import CycloScalar, ScalarSyntaxError, format_scalar, is_scalar_token, parse_scalar
from .presentation import DeformationSpec, SpecError

Monomial = tuple[int, ...]
Key = tuple[Monomial, int]
Letter = tuple[str, int]  # ("v", i) with 0-based i, or ("g", id)


class AlgebraElement:
    """Finite sum of c * (m # g) with no stored zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, CycloScalar] | Iterable[tuple[Key, CycloScalar]] | None = None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        acc: dict[Key, CycloScalar] = {}
        for k, c in items:
            if k in acc:
                c = acc[k] + c
            acc[k] = c
        self.terms = {k: c for k, c in acc.items() if not c.is_zero()}

    @classmethod
    def _wrap(cls, terms: dict[Key, CycloScalar]) -> "AlgebraElement":
        obj = object.__new__(cls)
        obj.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        return obj

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls._wrap({})

    @classmethod
    def unit(cls, n: int, order: int = 1) -> "AlgebraElement":
        return cls._wrap({((0,) * n, 0): CycloScalar.one(order)})

    @classmethod
    def basis(cls, mono: Sequence[int], g: int = 0, coeff: CycloScalar | None = None, order: int = 1):
        c = coeff if coeff is not None else CycloScalar.one(order)
        return cls._wrap({(tuple(mono), g): c})

    @classmethod
    def group_element(cls, n: int, g: int, order: int = 1) -> "AlgebraElement":
        return cls.basis((0,) * n, g, order=order)

    @classmethod
    def vector(cls, coeffs: Sequence[CycloScalar], g: int = 0) -> "AlgebraElement":
        """sum_l coeffs[l] v_l # g."""
        n = len(coeffs)
        terms = {}
        for l, c in enumerate(coeffs):
            if not c.is_zero():
                mono = tuple(1 if t == l else 0 for t in range(n))
                terms[(mono, g)] = c
        return cls._wrap(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Filtration degree; -1 for zero."""
        return max((sum(m) for m, _ in self.terms), default=-1)

    def items(self):
        return self.terms.items()

    def component(self, g: int) -> "AlgebraElement":
        return AlgebraElement._wrap({k: c for k, c in self.terms.items() if k[1] == g})

    def homogeneous_part(self, d: int) -> "AlgebraElement":
        return AlgebraElement._wrap({k: c for k, c in self.terms.items() if sum(k[0]) == d})

    def group_support(self) -> set[int]:
        return {g for _, g in self.terms}

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return AlgebraElement._wrap(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Union[CycloScalar, int]) -> "AlgebraElement":
        if isinstance(c, int) or not c.is_zero():
            return AlgebraElement._wrap({k: v * c for k, v in self.terms.items()})
        return AlgebraElement.zero()

    def __rmul__(self, c: Union[CycloScalar, int]) -> "AlgebraElement":
        return self.scale(c)

    def right_group(self, h: int, group) -> "AlgebraElement":
        """x * (1 # h)."""
        return AlgebraElement._wrap({(m, group.mul(g, h)): c for (m, g), c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):  # pragma: no cover - mutable-looking, keep unhashable
        raise TypeError("AlgebraElement is unhashable")

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def _term_sort_key(key: Key):
    mono, g = key
    letters = tuple(i for i, e in enumerate(mono) for _ in range(e))
    return (-sum(mono), letters, g)


def format_element(x: AlgebraElement) -> str:
    """Canonical text: terms by descending degree, then lexicographic, then group id."""
    if not x.terms:
        return "0"
    pieces = []
    for key in sorted(x.terms, key=_term_sort_key):
        mono, g = key
        c = x.terms[key]
        factors = [f"v{i + 1}" for i, e in enumerate(mono) for _ in range(e)]
        if g:
            factors.append(f"g{g}")
        neg = False
        if c == 1:
            coef = ""
        elif c == -1:
            coef, neg = "", True
        else:
            coef = format_scalar(c)
            if coef.startswith("-"):
                neg, coef = True, coef[1:]
        body = "*".join(([coef] if coef else []) + factors) or "1"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# expressions


FreeWord = tuple[CycloScalar, tuple[Letter, ...]]
_LETTER = re.compile(r"^([vg])([0-9]+)$")


def _split_terms(s: str) -> list[tuple[int, str]]:
    terms, cur, sign, depth = [], [], 1, 0
    prev = ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in ("^", "*", "") and cur:
            terms.append((sign, "".join(cur)))
            cur, sign = [], (1 if ch == "+" else -1)
        elif ch in "+-" and depth == 0 and not cur:
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur.append(ch)
        prev = ch
    if cur:
        terms.append((sign, "".join(cur)))
    elif s:
        raise SpecError(f"expression {s!r} ends with an operator")
    return terms


def parse_expression(text: str, spec: DeformationSpec) -> list[FreeWord]:
    """Parse ``coef * tok * ...`` terms joined by +/-; tokens vI (1-based) and gK."""
    s = "".join(text.split())
    if not s:
        raise SpecError("empty expression")
    words = []
    for sign, term in _split_terms(s):
        coeff = CycloScalar.one(spec.order) * sign
        letters: list[Letter] = []
        for factor in term.split("*") if "[" not in term else _split_factors(term):
            if not factor:
                raise SpecError(f"bad term {term!r}")
            m = _LETTER.match(factor)
            if m:
                kind, idx = m.group(1), int(m.group(2))
                if kind == "v":
                    if not 1 <= idx <= spec.n:
                        raise SpecError(f"basis vector v{idx} out of range 1..{spec.n}")
                    letters.append(("v", idx - 1))
                else:
                    if not 0 <= idx < spec.group.order:
                        raise SpecError(f"group element g{idx} out of range 0..{spec.group.order - 1}")
                    letters.append(("g", idx))
            elif is_scalar_token(factor):
                try:
                    coeff = coeff * parse_scalar(factor, spec.order)
                except ScalarSyntaxError as exc:
                    raise SpecError(str(exc))
            else:
                raise SpecError(f"bad factor {factor!r}")
        words.append((coeff, tuple(letters)))
    return words


def _split_factors(term: str) -> list[str]:
    out, cur, depth = [], [], 0
    for ch in term:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ---------------------------------------------------------------------------
# the algebra


class StepLimitExceeded(RuntimeError):
    pass


class SkewAlgebra:
    """Multiplication in H_{q,kappa} (kappa = 0 gives S_q(V) # G) for one spec."""

    def __init__(self, spec: DeformationSpec, step_limit: int = 10**7):
        self.spec = spec
        self.n = spec.n
        self.group = spec.group
        self.q = spec.q
        self.order = spec.order
        self.zero_s = CycloScalar.zero(spec.order)
        self.one_s = CycloScalar.one(spec.order)
        self.deformed = not spec.kappa.is_zero()
        kc, kl = spec.kappa.const_table, spec.kappa.linear_table
        # kappa(v_j, v_i) for j > i as {(mono, g): coeff}
        self._kappa: dict[tuple[int, int], dict[Key, CycloScalar]] = {}
        n = self.n
        for j in range(n):
            for i in range(j):
                terms: dict[Key, CycloScalar] = {}
                for g in range(self.group.order):
                    c = kc[g][j][i]
                    if not c.is_zero():
                        terms[((0,) * n, g)] = c
                    for l, a in enumerate(kl[g][j][i]):
                        if not a.is_zero():
                            terms[(tuple(1 if t == l else 0 for t in range(n)), g)] = a
                if terms:
                    self._kappa[(j, i)] = terms
        # ^g v_i as [(k, coeff)]
        self._act_vec = [
            [[(k, mat[k][i]) for k in range(n) if not mat[k][i].is_zero()] for i in range(n)]
            for mat in spec.action
        ]
        self._inv = [self.group.inverse(g) for g in range(self.group.order)]
        self._gen_cache: dict[tuple[Monomial, int], dict[Key, CycloScalar]] = {}
        self.steps = 0
        self.step_limit = step_limit

    # -- core rewriting ----------------------------------------------------
    def _mono_times_gen(self, m: Monomial, i: int) -> dict[Key, CycloScalar]:
        """(m # 1) * v_i in normal form."""
        key = (m, i)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > self.step_limit:
            raise StepLimitExceeded("rewriting step bound exceeded")
        last = -1
        for t in range(self.n - 1, -1, -1):
            if m[t]:
                last = t
                break
        if last <= i:
            mm = list(m)
            mm[i] += 1
            res = {(tuple(mm), 0): self.one_s}
        elif not self.deformed:
            c = self.one_s
            for k in range(i + 1, self.n):
                if m[k]:
                    c = c * self.q[k][i] ** m[k]
            mm = list(m)
            mm[i] += 1
            res = {(tuple(mm), 0): c}
        else:
            k = last
            mp = list(m)
            mp[k] -= 1
            mp = tuple(mp)
            res = {}
            # q_ki (m' v_i) v_k
            first = self._right_gen(self._mono_times_gen(mp, i), k)
            qk = self.q[k][i]
            for t, c in first.items():
                _acc(res, t, c * qk)
            # m' kappa(v_k, v_i)
            for (km, g), c in self._kappa.get((k, i), {}).items():
                if not any(km):
                    part = {(mp, 0): self.one_s}
                else:
                    part = self._mono_times_gen(mp, km.index(1))
                for (pm, pg), pc in part.items():
                    _acc(res, (pm, self.group.mul(pg, g)), pc * c)
            res = {t: c for t, c in res.items() if not c.is_zero()}
        self._gen_cache[key] = res
        return res

    def _right_gen(self, x: dict[Key, CycloScalar], i: int) -> dict[Key, CycloScalar]:
        """x * v_i."""
        out: dict[Key, CycloScalar] = {}
        for (m, h), c in x.items():
            for k, a in self._act_vec[h][i]:
                ca = c * a
                for (pm, pg), pc in self._mono_times_gen(m, k).items():
                    _acc(out, (pm, self.group.mul(pg, h)), pc * ca)
        return {t: c for t, c in out.items() if not c.is_zero()}

    def _right_group(self, x: dict[Key, CycloScalar], h: int) -> dict[Key, CycloScalar]:
        mul = self.group.mul
        return {(m, mul(g, h)): c for (m, g), c in x.items()}

    # -- public operations -------------------------------------------------
    def normal_form(self, words: Iterable[FreeWord]) -> AlgebraElement:
        out: dict[Key, CycloScalar] = {}
        for coeff, letters in words:
            x = {((0,) * self.n, 0): coeff}
            for kind, idx in letters:
                if kind == "v":
                    x = self._right_gen(x, idx)
                else:
                    x = self._right_group(x, idx)
            for t, c in x.items():
                _acc(out, t, c)
        return AlgebraElement(out)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict[Key, CycloScalar] = {}
        for (m2, h2), c2 in y.terms.items():
            cur = dict(x.terms)
            for i, e in enumerate(m2):
                for _ in range(e):
                    cur = self._right_gen(cur, i)
            cur = self._right_group(cur, h2)
            for t, c in cur.items():
                _acc(out, t, c * c2)
        return AlgebraElement(out)

    def act_vector(self, g: int, i: int) -> AlgebraElement:
        """^g v_i as an element of V # 1."""
        n = self.n
        return AlgebraElement(
            {(tuple(1 if t == k else 0 for t in range(n)), 0): a for k, a in self._act_vec[g][i]}
        )

    def act(self, g: int, x: AlgebraElement) -> AlgebraElement:
        """^g(s # a) = (^g s) # (g a g^-1), with ^g s the product of the ^g v_i."""
        out: dict[Key, CycloScalar] = {}
        ginv = self._inv[g]
        mul = self.group.mul
        for (m, a), c in x.terms.items():
            cur = {((0,) * self.n, 0): c}
            for i, e in enumerate(m):
                for _ in range(e):
                    nxt: dict[Key, CycloScalar] = {}
                    for k, b in self._act_vec[g][i]:
                        for t, v in self._right_gen(cur, k).items():
                            _acc(nxt, t, v * b)
                    cur = nxt
            conj = mul(mul(g, a), ginv)
            for t, v in self._right_group(cur, conj).items():
                _acc(out, t, v)
        return AlgebraElement(out)

    def generator(self, i: int) -> AlgebraElement:
        mono = tuple(1 if t == i else 0 for t in range(self.n))
        return AlgebraElement({(mono, 0): self.one_s})

    def group_element(self, g: int) -> AlgebraElement:
        return AlgebraElement({((0,) * self.n, g): self.one_s})

    def unit(self) -> AlgebraElement:
        return AlgebraElement.unit(self.n, self.order)


def _acc(d: dict, key, c: CycloScalar) -> None:
    if key in d:
        d[key] = d[key] + c
    else:
        d[key] = c


def algebra(spec: DeformationSpec) -> SkewAlgebra:
    """The (cached) deformed algebra of a spec."""
    alg = spec._cache.get("algebra")
    if alg is None:
        alg = spec._cache["algebra"] = SkewAlgebra(spec)
    return alg


def undeformed_algebra(spec: DeformationSpec) -> SkewAlgebra:
    """S_q(V) # G with the q-matrix and action of ``spec``, kappa dropped."""
    alg = spec._cache.get("algebra0")
    if alg is None:
        alg = spec._cache["algebra0"] = SkewAlgebra(spec.undeformed())
    return alg


def normal_form(words: Iterable[FreeWord], spec: DeformationSpec) -> AlgebraElement:
    return algebra(spec).normal_form(words)


def multiply(x: AlgebraElement, y: AlgebraElement, spec: DeformationSpec) -> AlgebraElement:
    return algebra(spec).multiply(x, y)


def act(g: int, x: AlgebraElement, spec: DeformationSpec) -> AlgebraElement:
    return algebra(spec).act(g, x)


def monomials(n: int, d: int) -> Iterator[Monomial]:
    """Exponent vectors of total degree d, in lexicographic order of letters."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in monomials(n - 1, d - first):
            yield (first,) + rest
