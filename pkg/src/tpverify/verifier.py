"""End-to-end certifications built on the constructions and involutions."""
from __future__ import annotations

import os
import time
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from .certificate import Certificate
from .constructions import (
    TYPE_B_WEIGHTS,
    LBWeights,
    SegmentedNetwork,
    b_sinks,
    b_sources,
    build_b,
    build_h,
    build_lb,
    generalized_weights,
    lb_sinks,
    lb_sources,
)
from .errors import CapExceeded, NetworkError
from .involution import h_fixed, lb_fixed, phi_h, phi_lb
from .netgraph import FamilyEnumerator, Network, PathFamily, VertexId, path_matrix, raw
from .polymat import DET_CAP, PolyMatrix, all_minors, det, matmul, submatrix, transpose
from .qpoly import ZERO, poly_sum
from .seqmat import (
    coefficient_matrix,
    cs_matrix,
    generalized_data,
    hankel,
    lb_matrix,
    t_matrix,
)

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    env = os.environ.get("TPVERIFY_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def index_pairs(size: int, kmax: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for k in range(1, min(kmax, size) + 1):
        for I in combinations(range(size), k):
            for J in combinations(range(size), k):
                yield I, J


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def verify_tp(matrix: PolyMatrix, max_order: int, cap: Optional[int] = DET_CAP, subject=None) -> Certificate:
    """Every minor of order ``<= max_order`` must be q-nonnegative."""
    if cap is not None and max_order > cap:
        raise CapExceeded(f"max_order {max_order} exceeds determinant cap {cap}")
    start = time.perf_counter()
    cert = Certificate(subject or {"matrix": "custom", "shape": list(matrix.shape), "max_order": max_order})
    for (I, J), value in all_minors(matrix, max_order).items():
        cert.add(
            f"minor_order_{len(I)}",
            {"I": list(I), "J": list(J)},
            value,
            ZERO,
            passed=value.is_q_nonnegative(),
            witness={"I": list(I), "J": list(J), "det": value.to_json()},
        )
    cert.elapsed_ms = _ms(start)
    return cert.finalize()


def _involution_checks(
    cert: Certificate,
    inputs: dict,
    families: List[PathFamily],
    phi,
    is_fixed,
) -> List[PathFamily]:
    """Record involution, sign-reversal and fixed-point checks; return the fixed points."""
    fixed = []
    bad_involution = bad_sign = bad_fixed = None
    cancelled = ZERO
    for fam in families:
        image = phi(fam)
        if image == fam:
            if not is_fixed(fam) and bad_fixed is None:
                bad_fixed = fam
            fixed.append(fam)
            continue
        if is_fixed(fam) and bad_fixed is None:
            bad_fixed = fam
        if phi(image) != fam and bad_involution is None:
            bad_involution = fam
        if image.weight != -fam.weight and bad_sign is None:
            bad_sign = fam
        cancelled = cancelled + fam.weight
    cert.add("involution", inputs, len(families) if bad_involution is None else 0, len(families),
             witness=None if bad_involution is None else bad_involution.to_json())
    cert.add("sign_reversing", inputs, cancelled, ZERO, passed=bad_sign is None and cancelled == ZERO,
             witness=None if bad_sign is None else bad_sign.to_json())
    cert.add("fixed_set", inputs, len(fixed), len([f for f in families if is_fixed(f)]),
             passed=bad_fixed is None, witness=None if bad_fixed is None else bad_fixed.to_json())
    neg = [f for f in fixed if not f.weight.is_q_nonnegative()]
    cert.add("fixed_nonnegative", inputs, poly_sum(f.weight for f in fixed), ZERO, passed=not neg,
             witness=neg[0].to_json() if neg else None)
    return fixed


def verify_thm32(
    n: int,
    I: Sequence[int],
    J: Sequence[int],
    budget: Optional[int] = None,
    weights: LBWeights = TYPE_B_WEIGHTS,
    L: Optional[PolyMatrix] = None,
    cap: Optional[int] = DET_CAP,
) -> Certificate:
    """``det L_{I,J}`` against the network determinant, all families, and the fixed points."""
    start = time.perf_counter()
    I, J = tuple(I), tuple(J)
    if L is None:
        L = lb_matrix(n)
    sub = submatrix(L, I, J)
    net = build_lb(n, weights)
    U = [raw("P", i) for i in I]
    V = [raw("P'", j) for j in J]
    inputs = {"n": n, "I": list(I), "J": list(J)}
    cert = Certificate({"claim": "coefficient-matrix minors", "n": n, "I": list(I), "J": list(J)})
    algebraic = det(sub, cap=cap)
    network = det(path_matrix(net, U, V), cap=cap)
    families = FamilyEnumerator(budget if budget is not None else default_budget()).families(net, U, V)
    fixed = _involution_checks(cert, inputs, families, lambda f: phi_lb(net, f), lb_fixed)
    cert.add("det_vs_network_det", inputs, algebraic, network)
    cert.add("det_vs_families", inputs, algebraic, poly_sum(f.weight for f in families))
    cert.add("det_vs_fixed_points", inputs, algebraic, poly_sum(f.weight for f in fixed))
    cert.elapsed_ms = _ms(start)
    return cert.finalize()


def verify_main(
    n: int,
    I: Sequence[int],
    J: Sequence[int],
    budget: Optional[int] = None,
    seg: Optional[SegmentedNetwork] = None,
    H: Optional[PolyMatrix] = None,
    weights: LBWeights = TYPE_B_WEIGHTS,
    cap: Optional[int] = DET_CAP,
) -> Certificate:
    """``det H_{I,J}`` against all families and the fixed points of the Hankel involution."""
    start = time.perf_counter()
    I, J = tuple(I), tuple(J)
    if seg is None:
        seg = build_h(n, weights)
    if H is None:
        H = hankel(n)
    inputs = {"n": n, "I": list(I), "J": list(J)}
    cert = Certificate({"claim": "Hankel minors", "n": n, "I": list(I), "J": list(J)})
    algebraic = det(submatrix(H, I, J), cap=cap)
    U, V = seg.sources_for(I), seg.sinks_for(J)
    families = FamilyEnumerator(budget if budget is not None else default_budget()).families(seg.net, U, V)
    fixed = _involution_checks(cert, inputs, families, lambda f: phi_h(f, seg, weights), h_fixed(seg))
    cert.add("det_vs_network_det", inputs, algebraic, det(path_matrix(seg.net, U, V), cap=cap))
    cert.add("det_vs_families", inputs, algebraic, poly_sum(f.weight for f in families))
    cert.add("det_vs_fixed_points", inputs, algebraic, poly_sum(f.weight for f in fixed))
    cert.elapsed_ms = _ms(start)
    return cert.finalize()


def _matrix_checks(cert: Certificate, name: str, inputs: dict, got: PolyMatrix, want: PolyMatrix) -> None:
    if got.shape != want.shape:
        cert.add(name, dict(inputs, shape=list(got.shape)), 0, 1, passed=False)
        return
    for i in range(got.rows):
        for j in range(got.cols):
            cert.add(name, dict(inputs, i=i, j=j), got[i, j], want[i, j])


@lru_cache(maxsize=8)
def _hankel_context(n: int, case: Optional[int], e: Optional[int], f: Optional[int]):
    """Network, matrix and weights shared by every (I, J) of one sweep, once per process."""
    if case is None:
        return build_h(n), hankel(n), TYPE_B_WEIGHTS
    weights = generalized_weights(case, e, f)
    data = generalized_data(case, e, f, 2 * n + 2)
    return build_h(n, weights, data), hankel(n, data), weights


def _main_sweep_task(args):
    n, I, J, budget, case, e, f = args
    seg, H, weights = _hankel_context(n, case, e, f)
    return verify_main(n, I, J, budget, seg, H, weights)


def sweep_main(
    n: int,
    kmax: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
    generalized: Optional[Tuple[int, int, int]] = None,
) -> Certificate:
    """``verify_main`` over every ``(I, J)`` with ``|I| = |J| <= kmax``."""
    start = time.perf_counter()
    kmax = n + 1 if kmax is None else kmax
    case, e, f = generalized or (None, None, None)
    tasks = [(n, I, J, budget, case, e, f) for I, J in index_pairs(n + 1, kmax)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_main_sweep_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        parts = [_main_sweep_task(t) for t in tasks]
    subject = {"claim": "Hankel minors", "n": n, "kmax": kmax}
    if generalized:
        subject.update(case=case, e=e, f=f)
    cert = Certificate.merge(subject, parts)
    cert.elapsed_ms = _ms(start)
    return cert


def sweep_thm32(n: int, kmax: int, budget: Optional[int] = None) -> Certificate:
    start = time.perf_counter()
    L = lb_matrix(n)
    parts = [verify_thm32(n, I, J, budget, L=L) for I, J in index_pairs(n + 2, kmax)]
    cert = Certificate.merge({"claim": "coefficient-matrix minors", "n": n, "kmax": kmax}, parts)
    cert.elapsed_ms = _ms(start)
    return cert


def verify_thm43(case: int, e: int, f: int, n: int, budget: Optional[int] = None, jobs: int = 1) -> Certificate:
    """Consistency, gluing, involution and positivity checks for one generalized weighting."""
    start = time.perf_counter()
    weights = generalized_weights(case, e, f)
    data = generalized_data(case, e, f, 2 * n + 2)
    inputs = {"case": case, "e": e, "f": f, "n": n}
    cert = Certificate({"claim": "generalized weightings", **inputs})

    for m in range(n + 1):
        net = build_lb(m, weights)
        _matrix_checks(cert, "coefficient_matrix", {"m": m},
                       path_matrix(net, lb_sources(m), lb_sinks(m)), coefficient_matrix(data, m))
    C = cs_matrix(data, n)
    _matrix_checks(cert, "triangle_network", {"n": n},
                   path_matrix(build_b(n, weights), b_sources(n), b_sinks(n)), C)
    if n >= 1:
        Cprev = cs_matrix(data, n - 1)
        padded = PolyMatrix.from_rows(
            [[1] + [0] * n] + [[0] + r for r in Cprev.to_rows()]
        )
        _matrix_checks(cert, "gluing_law", {"n": n}, matmul(padded, coefficient_matrix(data, n - 1)), C)
    H = hankel(n, data)
    seg = build_h(n, weights, data)
    _matrix_checks(cert, "hankel_factorization", {"n": n}, matmul(matmul(C, t_matrix(n, data)), transpose(C)), H)
    _matrix_checks(cert, "hankel_network", {"n": n}, seg.path_matrix(), H)

    tp = verify_tp(H, n + 1)
    cert.checks.extend(tp.checks)
    sweep = sweep_main(n, budget=budget, jobs=jobs, generalized=(case, e, f))
    cert.checks.extend(sweep.checks)
    cert.elapsed_ms = _ms(start)
    return cert.finalize()


def verify_compatibility(net: Network, U: Sequence[VertexId], V: Sequence[VertexId], budget: Optional[int] = None) -> bool:
    """True iff no nonintersecting family joins ``U`` to a non-identity rearrangement of ``V``."""
    if len(U) != len(V):
        raise NetworkError(f"{len(U)} sources but {len(V)} sinks")
    enum = FamilyEnumerator(budget if budget is not None else default_budget())
    ident = tuple(range(len(V)))
    for perm in permutations(range(len(V))):
        if perm == ident:
            continue
        if enum.families(net, list(U), [V[p] for p in perm]):
            return False
    return True


def verify_lgv(net: Network, U: Sequence[VertexId], V: Sequence[VertexId], budget: Optional[int] = None,
               cap: Optional[int] = DET_CAP, subject=None) -> Certificate:
    start = time.perf_counter()
    cert = Certificate(subject or {"check": "lgv"})
    lhs = det(path_matrix(net, U, V), cap=cap)
    fams = FamilyEnumerator(budget if budget is not None else default_budget()).families(net, U, V)
    cert.add("lgv", {"U": [str(u) for u in U], "V": [str(v) for v in V]}, lhs, poly_sum(f.weight for f in fams))
    cert.elapsed_ms = _ms(start)
    return cert
