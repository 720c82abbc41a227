"""Symmetric group characters, immanants, and the Hankel immanant sweep."""
from __future__ import annotations

import time
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .certificate import Certificate
from .errors import CapExceeded, ShapeError
from .polymat import PolyMatrix, submatrix
from .qpoly import ONE, ZERO, QPoly
from .seqmat import RecurrenceData, hankel

IMMANANT_CAP = 7

Partition = Tuple[int, ...]


def partitions(k: int) -> List[Partition]:
    """Partitions of ``k`` in reverse lexicographic order, ``(k)`` first."""
    if k < 1:
        raise ValueError("k must be positive")
    out: List[Partition] = []

    def gen(rest: int, largest: int, prefix: Partition) -> None:
        if rest == 0:
            out.append(prefix)
            return
        for part in range(min(rest, largest), 0, -1):
            gen(rest - part, part, prefix + (part,))

    gen(k, k, ())
    return out


def _normalize(parts: Sequence[int]) -> Partition:
    return tuple(sorted((p for p in parts if p > 0), reverse=True))


@lru_cache(maxsize=None)
def _mn(beta: Tuple[int, ...], mu: Partition) -> int:
    # beta: strictly decreasing beta-numbers of the shape
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        crossed = sum(1 for c in beta if target < c < b)
        moved = tuple(sorted((target if c == b else c for c in beta), reverse=True))
        term = _mn(moved, rest)
        total += -term if crossed & 1 else term
    return total


def character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """``chi^lam`` on the class of cycle type ``mu`` (Murnaghan-Nakayama rule)."""
    lam, mu = _normalize(lam), _normalize(mu)
    if sum(lam) != sum(mu):
        raise ShapeError(f"partition sizes differ: |{lam}| != |{mu}|")
    length = len(lam)
    beta = tuple(lam[i] + length - 1 - i for i in range(length))
    return _mn(beta, mu)


def character_table(k: int) -> Dict[Tuple[Partition, Partition], int]:
    parts = partitions(k)
    return {(lam, mu): character(lam, mu) for lam in parts for mu in parts}


def hook_length_dimension(lam: Sequence[int]) -> int:
    lam = _normalize(lam)
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    fact = 1
    for m in range(2, n + 1):
        fact *= m
    return fact // prod


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return _normalize(lengths)


def class_sums(m: PolyMatrix) -> Dict[Partition, QPoly]:
    """``sum over sigma of type mu of prod_i m[i, sigma(i)]`` for each cycle type ``mu``."""
    if m.rows != m.cols:
        raise ShapeError("immanant of a non-square matrix")
    k = m.rows
    sums: Dict[Partition, QPoly] = {}
    perm = [0] * k

    def walk(i: int, used: int, acc: QPoly) -> None:
        if i == k:
            mu = cycle_type(perm)
            sums[mu] = sums.get(mu, ZERO) + acc
            return
        row = m.row(i)
        for c in range(k):
            if used >> c & 1 or not row[c]:
                continue
            perm[i] = c
            walk(i + 1, used | 1 << c, acc * row[c])

    walk(0, 0, ONE)
    return sums


def _check_cap(k: int, cap: Optional[int]) -> None:
    if cap is not None and k > cap:
        raise CapExceeded(f"immanant order {k} exceeds cap {cap}")


def immanant(m: PolyMatrix, lam: Sequence[int], cap: Optional[int] = IMMANANT_CAP) -> QPoly:
    lam = _normalize(lam)
    if m.rows != m.cols or sum(lam) != m.rows:
        raise ShapeError(f"partition {lam} does not match a {m.rows}x{m.cols} matrix")
    _check_cap(m.rows, cap)
    if m.rows == 0:
        return ONE
    acc = ZERO
    for mu, s in class_sums(m).items():
        chi = character(lam, mu)
        if chi:
            acc = acc + s * chi
    return acc


def all_immanants(m: PolyMatrix, cap: Optional[int] = IMMANANT_CAP) -> Dict[Partition, QPoly]:
    """Immanants for every partition of the order, sharing one pass over permutations."""
    _check_cap(m.rows, cap)
    sums = class_sums(m)
    out = {}
    for lam in partitions(m.rows):
        acc = ZERO
        for mu, s in sums.items():
            chi = character(lam, mu)
            if chi:
                acc = acc + s * chi
        out[lam] = acc
    return out


def _conjecture_rows(n: int, k: int, data: Optional[RecurrenceData]):
    H = hankel(n, data)
    rows = []
    for I in combinations(range(n + 1), k):
        for J in combinations(range(n + 1), k):
            imms = all_immanants(submatrix(H, I, J))
            rows.append((I, J, imms))
    return rows


def verify_conjecture(
    n: int,
    kmax: int,
    data: Optional[RecurrenceData] = None,
    jobs: int = 1,
) -> Certificate:
    """Check ``Imm_lam H_{I,J} >=_q 0`` for every square submatrix of order ``<= kmax``."""
    if kmax < 1 or kmax > min(n + 1, IMMANANT_CAP):
        raise CapExceeded(f"kmax={kmax} must lie in 1..min(n+1, {IMMANANT_CAP})")
    start = time.perf_counter()
    subject = {"matrix": "hankel", "n": n, "kmax": kmax}
    if data is not None:
        subject["data"] = data.to_json()
    cert = Certificate(subject)
    ks = range(1, kmax + 1)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            batches = list(pool.map(_conjecture_rows, [n] * len(ks), ks, [data] * len(ks)))
    else:
        batches = [_conjecture_rows(n, k, data) for k in ks]
    for batch in batches:
        for I, J, imms in batch:
            for lam, value in imms.items():
                cert.add(
                    f"immanant_k{len(I)}",
                    {"I": list(I), "J": list(J), "lambda": list(lam)},
                    value,
                    ZERO,
                    passed=value.is_q_nonnegative(),
                    witness={"I": list(I), "J": list(J), "lambda": list(lam)},
                )
    cert.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return cert.finalize()
