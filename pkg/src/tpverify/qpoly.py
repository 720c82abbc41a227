"""Polynomials in one variable ``q`` with unbounded integer coefficients."""
from __future__ import annotations

from typing import Iterable, Sequence, Union


def _trim(coeffs: Sequence[int]) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in coeffs[:end])


class QPoly:
    """Dense integer polynomial, ``coeffs[i]`` is the coefficient of ``q**i``.

    Instances are immutable and kept in canonical form: no trailing zero
    coefficients, and the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    def __reduce__(self):
        return (QPoly, (self.coeffs,))

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, deg: int) -> "QPoly":
        return cls([0] * deg + [c])

    @classmethod
    def coerce(cls, value: "PolyLike") -> "QPoly":
        if isinstance(value, QPoly):
            return value
        if isinstance(value, int):
            return cls((value,))
        return cls(value)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(("QPoly", self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "PolyLike") -> "QPoly":
        other = QPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other: "PolyLike") -> "QPoly":
        return self + (-QPoly.coerce(other))

    def __rsub__(self, other: "PolyLike") -> "QPoly":
        return QPoly.coerce(other) - self

    def __mul__(self, other: "PolyLike") -> "QPoly":
        other = QPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) == 1:
            c = a[0]
            return QPoly(c * x for x in b)
        if len(b) == 1:
            c = b[0]
            return QPoly(c * x for x in a)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def is_q_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Union[str, int]]) -> "QPoly":
        return cls(int(c) for c in data)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                body = mag + ("q" if i == 1 else f"q^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


PolyLike = Union[QPoly, int, Sequence[int]]

ZERO = QPoly(())
ONE = QPoly((1,))
Q = QPoly((0, 1))


def add(a: PolyLike, b: PolyLike) -> QPoly:
    return QPoly.coerce(a) + QPoly.coerce(b)


def mul(a: PolyLike, b: PolyLike) -> QPoly:
    return QPoly.coerce(a) * QPoly.coerce(b)


def neg(a: PolyLike) -> QPoly:
    return -QPoly.coerce(a)


def is_q_nonnegative(f: PolyLike) -> bool:
    return QPoly.coerce(f).is_q_nonnegative()


def geq_q(f: PolyLike, g: PolyLike) -> bool:
    """``f >=_q g``: every coefficient of ``f - g`` is nonnegative."""
    return (QPoly.coerce(f) - QPoly.coerce(g)).is_q_nonnegative()


def poly_sum(items: Iterable[QPoly]) -> QPoly:
    out: list = []
    for p in items:
        cs = p.coeffs
        if len(cs) > len(out):
            out.extend([0] * (len(cs) - len(out)))
        for i, c in enumerate(cs):
            out[i] += c
    return QPoly(out)


def poly_prod(items: Iterable[QPoly]) -> QPoly:
    result = ONE
    for p in items:
        result = result * p
    return result
