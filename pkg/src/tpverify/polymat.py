"""Rectangular matrices over :class:`QPoly`."""
from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import CapExceeded, ShapeError
from .qpoly import ONE, ZERO, PolyLike, QPoly

DET_CAP = 8

Index = Tuple[int, ...]


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[PolyLike]):
        entries = tuple(QPoly.coerce(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def __reduce__(self):
        return (PolyMatrix, (self.rows, self.cols, self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[PolyLike]]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence[PolyLike]) -> "PolyMatrix":
        n = len(values)
        entries = [ZERO] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = QPoly.coerce(v)
        return cls(n, n, entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> QPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[QPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matmul(self, other)

    def __repr__(self) -> str:
        return f"PolyMatrix({[[e.coeffs for e in r] for r in self.to_rows()]!r})"

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.to_rows())

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in r] for r in self.to_rows()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyMatrix":
        rows = data["entries"]
        if len(rows) != data["rows"] or any(len(r) != data["cols"] for r in rows):
            raise ShapeError("declared shape disagrees with entries")
        return cls(data["rows"], data["cols"], [QPoly.from_json(e) for r in rows for e in r])


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = ZERO
            for t in range(a.cols):
                x = arow[t]
                if x:
                    y = b.entries[t * b.cols + j]
                    if y:
                        acc = acc + x * y
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, out)


def transpose(a: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(a.cols, a.rows, [a[i, j] for j in range(a.cols) for i in range(a.rows)])


def _check_indices(idx: Sequence[int], bound: int, what: str) -> Index:
    idx = tuple(idx)
    for a, b in zip(idx, idx[1:]):
        if a >= b:
            raise ShapeError(f"{what} indices {idx} are not strictly ascending")
    if idx and (idx[0] < 0 or idx[-1] >= bound):
        raise ShapeError(f"{what} indices {idx} out of range 0..{bound - 1}")
    return idx


def submatrix(m: PolyMatrix, I: Sequence[int], J: Sequence[int]) -> PolyMatrix:
    I = _check_indices(I, m.rows, "row")
    J = _check_indices(J, m.cols, "column")
    return PolyMatrix(len(I), len(J), [m[i, j] for i in I for j in J])


def det(m: PolyMatrix, cap: Optional[int] = DET_CAP) -> QPoly:
    """Division-free determinant by dynamic programming over column subsets.

    Row ``t`` is matched to a column outside the current subset; the sign
    counts how many already-used columns lie to its right.
    """
    if m.rows != m.cols:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    k = m.rows
    if cap is not None and k > cap:
        raise CapExceeded(f"determinant order {k} exceeds cap {cap}")
    if k == 0:
        return ONE
    layer: Dict[int, QPoly] = {0: ONE}
    for t in range(k):
        row = m.row(t)
        nxt: Dict[int, QPoly] = {}
        for mask, val in layer.items():
            for c in range(k):
                bit = 1 << c
                if mask & bit or not row[c]:
                    continue
                above = bin(mask >> (c + 1)).count("1")
                term = val * row[c]
                if above & 1:
                    term = -term
                nmask = mask | bit
                prev = nxt.get(nmask)
                nxt[nmask] = term if prev is None else prev + term
        layer = nxt
    return layer.get((1 << k) - 1, ZERO)


def det_laplace(m: PolyMatrix) -> QPoly:
    """Cofactor expansion along row 0; exponential, kept as an oracle."""
    if m.rows != m.cols:
        raise ShapeError("non-square")
    k = m.rows
    if k == 0:
        return ONE
    if k == 1:
        return m[0, 0]
    acc = ZERO
    rest = tuple(range(1, k))
    for j in range(k):
        if not m[0, j]:
            continue
        cols = tuple(c for c in range(k) if c != j)
        minor = det_laplace(PolyMatrix(k - 1, k - 1, [m[r, c] for r in rest for c in cols]))
        term = m[0, j] * minor
        acc = acc - term if j & 1 else acc + term
    return acc


def all_minors(m: PolyMatrix, max_order: int) -> Dict[Tuple[Index, Index], QPoly]:
    """Every minor of order ``1..max_order`` keyed by ``(I, J)``.

    Order-``k`` minors are expanded along their last row against the stored
    order-``k-1`` minors, so the whole sweep shares work.
    """
    out: Dict[Tuple[Index, Index], QPoly] = {}
    prev: Dict[Tuple[Index, Index], QPoly] = {((), ()): ONE}
    for k in range(1, min(max_order, m.rows, m.cols) + 1):
        cur: Dict[Tuple[Index, Index], QPoly] = {}
        for I in combinations(range(m.rows), k):
            head, last = I[:-1], I[-1]
            row = m.row(last)
            for J in combinations(range(m.cols), k):
                acc = ZERO
                for pos, c in enumerate(J):
                    x = row[c]
                    if not x:
                        continue
                    sub = prev[(head, J[:pos] + J[pos + 1:])]
                    if not sub:
                        continue
                    term = x * sub
                    acc = acc - term if (k - 1 + pos) & 1 else acc + term
                cur[(I, J)] = acc
        out.update(cur)
        prev = cur
    return out


def permanent_ryser(m: PolyMatrix) -> QPoly:
    """Ryser's inclusion-exclusion formula for the permanent."""
    if m.rows != m.cols:
        raise ShapeError("non-square")
    n = m.rows
    if n == 0:
        return ONE
    total = ZERO
    for mask in range(1, 1 << n):
        cols = [c for c in range(n) if mask >> c & 1]
        prod = ONE
        for i in range(n):
            s = ZERO
            for c in cols:
                s = s + m[i, c]
            prod = prod * s
            if not prod:
                break
        if (n - len(cols)) & 1:
            total = total - prod
        else:
            total = total + prod
    return total
