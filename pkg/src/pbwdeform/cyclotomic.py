"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored as integer numerator vectors over a common positive
denominator, in the power basis 1, z, ..., z^(phi(M)-1) reduced modulo the
M-th cyclotomic polynomial.  Rationals live at order 1.  Binary operations
between different orders promote both operands to the lcm of the orders.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

#: Upper bound on the cyclotomic order reachable by promotion.
MAX_ORDER = 360


class CycloOrderError(ValueError):
    """Raised when promotion would exceed :data:`MAX_ORDER`."""


class ScalarSyntaxError(ValueError):
    pass


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficients are lowest degree first
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for t in range(dd + 1):
                num[k - dd + t] -= c * den[t]
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def _moebius(m: int) -> int:
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


class _Field:
    """Precomputed reduction data for Q(zeta_M)."""

    def __init__(self, order: int):
        self.order = order
        self.phi_poly = cyclotomic_polynomial(order)
        self.dim = len(self.phi_poly) - 1
        d = self.dim
        # x^k mod Phi for k < max(2d - 1, order)
        top = max(2 * d - 1, order)
        red: list[tuple[int, ...]] = []
        cur = [0] * d
        cur[0] = 1
        for k in range(top):
            red.append(tuple(cur))
            # multiply by x
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for t in range(d):
                    cur[t] -= carry * self.phi_poly[t]
        self.red = red
        self.zeta_powers = red[:order]
        # normalised trace of z^k: Ramanujan sum / phi(M)
        traces = []
        for k in range(d):
            mk = order // math.gcd(order, k)
            traces.append(Fraction(_moebius(mk), _euler_phi(mk)))
        self.traces = traces


def _euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _field(order: int) -> _Field:
    return _Field(order)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g == 0:
        return tuple(num), 1
    if g != 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


Number = Union[int, Fraction, "CycloScalar"]


class CycloScalar:
    """An element of Q(zeta_M); immutable."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num: Iterable[int], den: int = 1):
        num = list(num)
        fld = _field(order)
        if len(num) != fld.dim:
            raise ValueError(f"expected {fld.dim} coefficients for order {order}")
        self.order = order
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num: tuple[int, ...], den: int) -> "CycloScalar":
        obj = object.__new__(cls)
        obj.order = order
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, value: Union[int, Fraction], order: int = 1) -> "CycloScalar":
        value = Fraction(value)
        d = _field(order).dim
        num = [value.numerator] + [0] * (d - 1)
        return cls._raw(order, tuple(num), value.denominator) if value else cls.zero(order)

    @classmethod
    def zero(cls, order: int = 1) -> "CycloScalar":
        return cls._raw(order, (0,) * _field(order).dim, 1)

    @classmethod
    def one(cls, order: int = 1) -> "CycloScalar":
        return cls.rational(1, order)

    @classmethod
    def zeta(cls, order: int, exponent: int = 1) -> "CycloScalar":
        fld = _field(order)
        return cls._raw(order, fld.zeta_powers[exponent % order], 1)

    @classmethod
    def from_coeffs(cls, order: int, coeffs: Iterable[Union[int, Fraction]]) -> "CycloScalar":
        """Build from power-basis coefficients (reduced modulo Phi_M if longer)."""
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        ints = [int(c * den) for c in coeffs]
        fld = _field(order)
        out = [0] * fld.dim
        for k, c in enumerate(ints):
            if c:
                red = fld.zeta_powers[k % order]
                for t in range(fld.dim):
                    out[t] += c * red[t]
        return cls(order, out, den)

    @classmethod
    def coerce(cls, value: Number, order: int = 1) -> "CycloScalar":
        if isinstance(value, CycloScalar):
            return value.promote(order) if value.order != order else value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value, order)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycloScalar")

    # structure ----------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def promote(self, order: int) -> "CycloScalar":
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise CycloOrderError(f"cannot embed order {self.order} into order {order}")
        if order > MAX_ORDER:
            raise CycloOrderError(f"cyclotomic order {order} exceeds maximum {MAX_ORDER}")
        step = order // self.order
        fld = _field(order)
        out = [0] * fld.dim
        for k, c in enumerate(self.num):
            if c:
                red = fld.zeta_powers[(k * step) % order]
                for t in range(fld.dim):
                    out[t] += c * red[t]
        return CycloScalar._raw(order, tuple(out), self.den)

    def _common(self, other: Number) -> tuple["CycloScalar", "CycloScalar"]:
        if isinstance(other, CycloScalar):
            if other.order == self.order:
                return self, other
            m = math.lcm(self.order, other.order)
            if m > MAX_ORDER:
                raise CycloOrderError(f"cyclotomic order {m} exceeds maximum {MAX_ORDER}")
            return self.promote(m), other.promote(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloScalar.rational(other, self.order)
        return NotImplemented, NotImplemented  # type: ignore[return-value]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Number) -> "CycloScalar":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            num_t, den = _normalize(num, a.den)
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            num_t, den = _normalize(num, a.den * b.den)
        return CycloScalar._raw(a.order, num_t, den)

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return CycloScalar._raw(self.order, tuple(-c for c in self.num), self.den)

    def __sub__(self, other: Number) -> "CycloScalar":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other: Number) -> "CycloScalar":
        return (-self) + other

    def __mul__(self, other: Number) -> "CycloScalar":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        fld = _field(a.order)
        d = fld.dim
        if d == 1:
            num_t, den = _normalize([a.num[0] * b.num[0]], a.den * b.den)
            return CycloScalar._raw(a.order, num_t, den)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        red = fld.red
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                r = red[k]
                for t in range(d):
                    out[t] += c * r[t]
        num_t, den = _normalize(out, a.den * b.den)
        return CycloScalar._raw(a.order, num_t, den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        """Multiplicative inverse via extended Euclid against Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        if self.is_rational():
            return CycloScalar.rational(Fraction(self.den, self.num[0]), self.order)
        fld = _field(self.order)
        a = _trim([Fraction(c) for c in self.num])
        m = [Fraction(c) for c in fld.phi_poly]
        # invariant: s * a == r0 (mod Phi)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
            if len(r1) == 1 and r1[0] == 0:
                break
        # r0 is a nonzero constant (gcd with the irreducible Phi)
        c = r0[0]
        inv = [x / c for x in s0]
        res = CycloScalar.from_coeffs(self.order, inv)
        return res * Fraction(self.den)

    def __truediv__(self, other: Number) -> "CycloScalar":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other: Number) -> "CycloScalar":
        return self.inverse() * other

    def __pow__(self, k: int) -> "CycloScalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloScalar.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloScalar):
            if other.order == self.order:
                return self.num == other.num and self.den == other.den
            try:
                a, b = self._common(other)
            except CycloOrderError:
                return False
            return a.num == b.num and a.den == b.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def normalized_trace(self) -> Fraction:
        """Trace to Q divided by phi(M); independent of the ambient order."""
        fld = _field(self.order)
        return sum((Fraction(c) * t for c, t in zip(self.num, fld.traces)), Fraction(0)) / self.den

    def __hash__(self) -> int:
        # equal values at different orders share the normalized trace
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def zeta_exponent(self) -> int | None:
        """Return e with self == z^e (0 <= e < M), or None."""
        if self.den != 1:
            return None
        for e, p in enumerate(_field(self.order).zeta_powers):
            if p == self.num:
                return e
        return None

    # text ---------------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"CycloScalar({self.order}, {list(self.num)}, {self.den})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _fpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _fpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for t, y in enumerate(b):
                a[k + t] -= c * y
    rem = _trim(a[: len(b) - 1] or [Fraction(0)])
    return _trim(q), rem


# textual syntax ----------------------------------------------------------

_RAT = re.compile(r"^[0-9]+(/[0-9]+)?$")
_ZETA = re.compile(r"^z(\^(-?[0-9]+))?$")


def _parse_atom(tok: str, order: int) -> CycloScalar:
    if _RAT.match(tok):
        return CycloScalar.rational(Fraction(tok), order)
    m = _ZETA.match(tok)
    if m:
        e = int(m.group(2)) if m.group(2) is not None else 1
        return CycloScalar.zeta(order, e)
    if tok.startswith("[") and tok.endswith("]"):
        body = tok[1:-1]
        parts = [p for p in body.split(",")] if body else []
        try:
            coeffs = [parse_scalar(p, 1).to_fraction() for p in parts]
        except (ScalarSyntaxError, ValueError) as exc:
            raise ScalarSyntaxError(f"bad coefficient vector {tok!r}") from exc
        return CycloScalar.from_coeffs(order, coeffs)
    raise ScalarSyntaxError(f"bad scalar token {tok!r}")


def is_scalar_token(tok: str) -> bool:
    tok = tok.strip().lstrip("+-")
    return bool(_RAT.match(tok) or _ZETA.match(tok) or (tok.startswith("[") and tok.endswith("]")))


def parse_scalar(text: str, order: int = 1) -> CycloScalar:
    """Parse ``p/q``, ``z^e``, ``[c0,c1,...]`` and ``*``-products of these.

    A leading sign is allowed; whitespace is ignored.
    """
    s = "".join(text.split())
    if not s:
        raise ScalarSyntaxError("empty scalar")
    sign = 1
    while s and s[0] in "+-":
        if s[0] == "-":
            sign = -sign
        s = s[1:]
    if not s:
        raise ScalarSyntaxError(f"bad scalar {text!r}")
    result = CycloScalar.one(order)
    for tok in _split_top(s, "*"):
        if not tok:
            raise ScalarSyntaxError(f"bad scalar {text!r}")
        result = result * _parse_atom(tok, order)
    return -result if sign < 0 else result


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x: CycloScalar) -> str:
    """Canonical text form, re-parseable by :func:`parse_scalar` at x.order."""
    if x.is_rational():
        return _format_fraction(x.to_fraction())
    e = x.zeta_exponent()
    if e is not None:
        return f"z^{e}"
    e = (-x).zeta_exponent()
    if e is not None:
        return f"-z^{e}"
    return "[" + ",".join(_format_fraction(c) for c in x.coeffs) + "]"
