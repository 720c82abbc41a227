"""Builders for the type-B Narayana polynomials and their recurrence matrices.

A Catalan-Stieltjes triangle ``C`` is generated column by column from three
polynomial sequences ``r`` (raising), ``s`` (level) and ``t`` (lowering)::

    c[n][0] = s0*c[n-1][0] + t1*c[n-1][1]
    c[n][k] = r[k-1]*c[n-1][k-1] + s[k]*c[n-1][k] + t[k+1]*c[n-1][k+1]

with ``c[0][0] = 1``.  The type-B data is ``r_k = 1``, ``s_k = 1 + q``,
``t_1 = 2q`` and ``t_k = q`` for ``k >= 2``; its first column is ``W_n(q)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Tuple

from .errors import ParameterError
from .polymat import PolyMatrix
from .qpoly import ONE, ZERO, QPoly, geq_q

DEFAULT_LENGTH = 16


@dataclass(frozen=True)
class RecurrenceData:
    """Finite recurrence sequences.  ``t[0]`` holds ``t_1``."""

    r: Tuple[QPoly, ...]
    s: Tuple[QPoly, ...]
    t: Tuple[QPoly, ...]

    def __post_init__(self):
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, tuple(QPoly.coerce(p) for p in getattr(self, name)))

    def r_at(self, k: int) -> QPoly:
        return self._get(self.r, k, "r", k)

    def s_at(self, k: int) -> QPoly:
        return self._get(self.s, k, "s", k)

    def t_at(self, k: int) -> QPoly:
        if k < 1:
            raise ParameterError("t is indexed from 1")
        return self._get(self.t, k - 1, "t", k)

    @staticmethod
    def _get(seq, i, name, label):
        if i >= len(seq):
            raise ParameterError(f"recurrence data too short: {name}_{label} not supplied")
        return seq[i]

    def to_json(self) -> dict:
        return {k: [p.to_json() for p in getattr(self, k)] for k in ("r", "s", "t")}

    @classmethod
    def from_json(cls, data: dict) -> "RecurrenceData":
        return cls(*(tuple(QPoly.from_json(p) for p in data[k]) for k in ("r", "s", "t")))


def type_b_data(length: int = DEFAULT_LENGTH) -> RecurrenceData:
    one_plus_q = QPoly((1, 1))
    t = [QPoly((0, 2))] + [QPoly((0, 1))] * (length - 1)
    return RecurrenceData((ONE,) * length, (one_plus_q,) * length, tuple(t))


def generalized_data(case: int, e: int, f: int, length: int = DEFAULT_LENGTH) -> RecurrenceData:
    """The two two-parameter families that reuse the type-B network.

    Case 1 (``f >= e >= 0``): ``s0 = (f-e) + e q``, ``t1 = f q``, remaining
    data as for type B.  Case 2 (``e, f >= 1``): ``s0 = (f-1) + e q``,
    ``t1 = e f q``, ``s_k = 1 + e q`` and ``t_k = e q`` beyond the first.
    """
    check_generalized_params(case, e, f)
    if case == 1:
        s0, t1 = QPoly((f - e, e)), QPoly((0, f))
        s_rest, t_rest = QPoly((1, 1)), QPoly((0, 1))
    else:
        s0, t1 = QPoly((f - 1, e)), QPoly((0, e * f))
        s_rest, t_rest = QPoly((1, e)), QPoly((0, e))
    s = (s0,) + (s_rest,) * (length - 1)
    t = (t1,) + (t_rest,) * (length - 1)
    return RecurrenceData((ONE,) * length, s, t)


def check_generalized_params(case: int, e: int, f: int) -> None:
    if case == 1:
        if not f >= e >= 0:
            raise ParameterError(f"case 1 needs f >= e >= 0, got e={e}, f={f}")
    elif case == 2:
        if e < 1 or f < 1:
            raise ParameterError(f"case 2 needs e >= 1 and f >= 1, got e={e}, f={f}")
    else:
        raise ParameterError(f"unknown case {case!r}; expected 1 or 2")


def narayana_b(n: int) -> QPoly:
    if n < 0:
        raise ParameterError("n must be nonnegative")
    return QPoly(comb(n, k) ** 2 for k in range(n + 1))


def _cs_rows(data: RecurrenceData, n: int) -> list:
    rows = [[ONE]]
    for m in range(1, n + 1):
        prev = rows[-1]
        cur = []
        for k in range(m + 1):
            acc = ZERO
            if k >= 1:
                acc = acc + data.r_at(k - 1) * prev[k - 1]
            if k < len(prev):
                acc = acc + data.s_at(k) * prev[k]
            if k + 1 < len(prev):
                acc = acc + data.t_at(k + 1) * prev[k + 1]
            cur.append(acc)
        rows.append(cur)
    return rows


def cs_matrix(data: RecurrenceData, n: int) -> PolyMatrix:
    """The ``(n+1) x (n+1)`` leading block of the Catalan-Stieltjes triangle."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    rows = _cs_rows(data, n)
    return PolyMatrix.from_rows([r + [ZERO] * (n + 1 - len(r)) for r in rows])


def first_column(data: RecurrenceData, n: int) -> list:
    return [r[0] for r in _cs_rows(data, n)]


def coefficient_matrix(data: RecurrenceData, n: int) -> PolyMatrix:
    """The ``(n+2) x (n+2)`` banded coefficient matrix of ``C``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    size = n + 2
    rows = [[ZERO] * size for _ in range(size)]
    rows[0][0] = ONE
    for i in range(1, size):
        rows[i][i] = data.r_at(i - 1)
        rows[i][i - 1] = data.s_at(i - 1)
        if i >= 2:
            rows[i][i - 2] = data.t_at(i - 1)
    return PolyMatrix.from_rows(rows)


def hankel(n: int, data: Optional[RecurrenceData] = None) -> PolyMatrix:
    """``(c_{i+j,0})`` for ``0 <= i, j <= n``; type-B Narayana when ``data`` is None."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if data is None:
        seq = [narayana_b(m) for m in range(2 * n + 1)]
    else:
        seq = first_column(data, 2 * n)
    return PolyMatrix.from_rows([[seq[i + j] for j in range(n + 1)] for i in range(n + 1)])


def t_matrix(n: int, data: Optional[RecurrenceData] = None) -> PolyMatrix:
    """Diagonal factor ``diag(1, t1, t1 t2, ...)``; ``diag(1, 2q, ..., 2q^n)`` for type B."""
    if data is None:
        data = type_b_data(max(n, 1))
    diag = [ONE]
    for k in range(1, n + 1):
        diag.append(diag[-1] * data.t_at(k))
    return PolyMatrix.diag(diag)


def pad_top_left(m: PolyMatrix) -> PolyMatrix:
    """``[[1, 0], [0, m]]``."""
    rows = [[ONE] + [ZERO] * m.cols]
    for r in m.to_rows():
        rows.append([ZERO] + r)
    return PolyMatrix.from_rows(rows)


def lb_matrix(n: int) -> PolyMatrix:
    return coefficient_matrix(type_b_data(n + 2), n)


def b_matrix(n: int) -> PolyMatrix:
    return cs_matrix(type_b_data(n + 2), n)


def is_q_log_convex_at(seq: Sequence[QPoly], n: int) -> bool:
    return geq_q(seq[n + 1] * seq[n - 1], seq[n] * seq[n])
