"""The concrete planar networks: the coefficient network, its gluings, and the Hankel network.

Unlabelled coefficient networks use ``P_i``, ``Q_i``, ``P'_i`` (row ``i`` drawn at
height ``-i``, paths move weakly upward).  Layered networks use
``P^(i)_j`` at ``(2i, j)`` and ``Q^(i)_j`` at ``(2i+1, j)``; the mirrored half of
the Hankel network uses ``Pbar``/``Qbar``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NetworkError, ParameterError
from .netgraph import Arc, Network, Vertex, VertexId, path_matrix, raw
from .polymat import PolyMatrix
from .qpoly import ONE, QPoly
from .seqmat import RecurrenceData, check_generalized_params, generalized_data, t_matrix, type_b_data


@dataclass(frozen=True)
class LBWeights:
    """Arc weights of the coefficient network that may differ from 1."""

    first_diag: QPoly  # P_1 -> Q_0
    diag: QPoly  # P_i -> Q_{i-1}, i >= 2
    shortcut: QPoly  # P_1 -> P'_0
    left: QPoly  # Q_1 -l-> P'_0
    right: QPoly  # Q_1 -r-> P'_0


TYPE_B_WEIGHTS = LBWeights(QPoly((0, 1)), QPoly((0, 1)), QPoly((-1,)), ONE, ONE)


def generalized_weights(case: int, e: int, f: int) -> LBWeights:
    check_generalized_params(case, e, f)
    if case == 1:
        return LBWeights(QPoly((0, e)), QPoly((0, 1)), QPoly((-e,)), QPoly((e,)), QPoly((f - e,)))
    return LBWeights(QPoly((0, e)), QPoly((0, e)), QPoly((-1,)), ONE, QPoly((f - 1,)))


def build_lb(n: int, weights: LBWeights = TYPE_B_WEIGHTS) -> Network:
    """Coefficient network truncated to rows ``0..n+1``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    rows = range(n + 2)
    verts = []
    for i in rows:
        verts += [
            Vertex(raw("P", i), 0, -i),
            Vertex(raw("Q", i), 1, -i),
            Vertex(raw("P'", i), 2, -i),
        ]
    P = lambda i: raw("P", i)
    Qv = lambda i: raw("Q", i)
    Pp = lambda i: raw("P'", i)
    arcs = []
    for i in rows:
        arcs.append(Arc(P(i), Qv(i)))
        arcs.append(Arc(Qv(i), Pp(i)))
        if i >= 1:
            arcs.append(Arc(P(i), Qv(i - 1), weights.first_diag if i == 1 else weights.diag))
        if i >= 2:
            arcs.append(Arc(Qv(i), Pp(i - 1)))
    arcs += [
        Arc(P(1), Pp(0), weights.shortcut),
        Arc(Qv(1), Pp(0), weights.left, "l"),
        Arc(Qv(1), Pp(0), weights.right, "r"),
    ]
    return Network(verts, arcs)


def reweight_generalized(case: int, e: int, f: int, n: int = 1) -> Network:
    return build_lb(n, generalized_weights(case, e, f))


def lb_sources(n: int) -> List[VertexId]:
    return [raw("P", i) for i in range(n + 2)]


def lb_sinks(n: int) -> List[VertexId]:
    return [raw("P'", i) for i in range(n + 2)]


def map_network(
    net: Network,
    vmap: Callable[[VertexId], VertexId],
    coords: Callable[[Vertex], Tuple[object, object]],
    reverse: bool = False,
) -> Network:
    verts = []
    for v in net.vertices.values():
        x, y = coords(v)
        verts.append(Vertex(vmap(v.id), x, y))
    arcs = []
    for a in net.arcs:
        t, h = vmap(a.tail), vmap(a.head)
        if reverse:
            t, h = h, t
        arcs.append(Arc(t, h, a.weight, a.tag))
    return Network(verts, arcs)


def relabel_vertex(v: VertexId, n: int) -> VertexId:
    if v.level >= 0:
        raise NetworkError(f"{v} is already layered")
    row = n + 1 - v.row
    if v.kind == "P":
        return VertexId("P", n, row)
    if v.kind == "Q":
        return VertexId("Q", n, row)
    if v.kind == "P'":
        return VertexId("P", n + 1, row)
    raise NetworkError(f"cannot relabel {v}")


def unrelabel_vertex(v: VertexId, level: int) -> VertexId:
    """Inverse of :func:`relabel_vertex` for the piece sitting between ``level`` and ``level+1``."""
    n = level
    row = n + 1 - v.row
    if v.kind == "P" and v.level == n:
        return raw("P", row)
    if v.kind == "Q" and v.level == n:
        return raw("Q", row)
    if v.kind == "P" and v.level == n + 1:
        return raw("P'", row)
    raise NetworkError(f"{v} does not belong to the piece at level {level}")


def _layer_coords(v: VertexId) -> Tuple[int, int]:
    if v.kind == "P":
        return 2 * v.level, v.row
    if v.kind == "Q":
        return 2 * v.level + 1, v.row
    raise NetworkError(f"no layered position for {v}")


def relabel_lb(net: Network, n: int) -> Network:
    """Layered labels: ``P_i -> P^(n)_{n+1-i}``, ``Q_i -> Q^(n)_{n+1-i}``, ``P'_i -> P^(n+1)_{n+1-i}``."""
    return map_network(
        net,
        lambda v: relabel_vertex(v, n),
        lambda v: _layer_coords(relabel_vertex(v.id, n)),
    )


def glue(
    nets: Sequence[Network],
    boundaries: Sequence[Tuple[Sequence[VertexId], Sequence[VertexId]]] = (),
) -> Network:
    """Place networks in succession, identifying sinks of one with sources of the next.

    ``boundaries[i]`` is ``(sinks of nets[i], sources of nets[i+1])``; the
    source vertices are renamed to the matching sink vertices.
    """
    if not nets:
        raise NetworkError("nothing to glue")
    if len(boundaries) != len(nets) - 1:
        raise NetworkError(f"{len(nets)} networks need {len(nets) - 1} boundaries")
    verts: Dict[VertexId, Vertex] = dict(nets[0].vertices)
    arcs: List[Arc] = list(nets[0].arcs)
    for (sinks, sources), prev, nxt in zip(boundaries, nets, nets[1:]):
        sinks, sources = list(sinks), list(sources)
        if len(sinks) != len(sources):
            raise NetworkError(f"boundary of {len(sinks)} sinks against {len(sources)} sources")
        prev.require(*sinks)
        nxt.require(*sources)
        for v in sinks:
            if not prev.is_sink(v):
                raise NetworkError(f"{v} is not a sink of the left network")
        for v in sources:
            if not nxt.is_source(v):
                raise NetworkError(f"{v} is not a source of the right network")
        rename = dict(zip(sources, sinks))
        for v in nxt.vertices.values():
            if v.id in rename:
                continue
            if v.id in verts:
                raise NetworkError(f"vertex {v.id} appears in two pieces off the boundary")
            verts[v.id] = v
        for a in nxt.arcs:
            arcs.append(Arc(rename.get(a.tail, a.tail), rename.get(a.head, a.head), a.weight, a.tag))
    return Network(verts.values(), arcs)


def b_sources(n: int) -> List[VertexId]:
    return [VertexId("P", 0, n - i) for i in range(n + 1)]


def b_sinks(n: int) -> List[VertexId]:
    return [VertexId("P", n, n - i) for i in range(n + 1)]


def _pad_rails(net: Network, n: int) -> Network:
    """Add the weight-1 rails ``P^(i)_{n+1} -> P^(i+1)_{n+1}`` for ``0 <= i < n``."""
    verts = list(net.vertices.values())
    verts += [Vertex(VertexId("P", i, n + 1), 2 * i, n + 1) for i in range(n + 1)]
    arcs = list(net.arcs)
    arcs += [Arc(VertexId("P", i, n + 1), VertexId("P", i + 1, n + 1)) for i in range(n)]
    return Network(verts, arcs)


def build_b(n: int, weights: LBWeights = TYPE_B_WEIGHTS) -> Network:
    """Network for the ``(n+1) x (n+1)`` triangle block, built by repeated gluing.

    ``build_b(0)`` is the single vertex ``P^(0)_0``.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if n == 0:
        return Network([Vertex(VertexId("P", 0, 0), 0, 0)], [])
    net = relabel_lb(build_lb(0, weights), 0)
    for m in range(1, n):
        padded = _pad_rails(net, m)
        piece = relabel_lb(build_lb(m, weights), m)
        boundary = [VertexId("P", m, m + 1 - i) for i in range(m + 2)]
        net = glue([padded, piece], [(boundary, boundary)])
    return net


_MIRROR = {"P": "Pbar", "Q": "Qbar", "Pbar": "P", "Qbar": "Q"}


def mirror_vertex(v: VertexId) -> VertexId:
    try:
        return VertexId(_MIRROR[v.kind], v.level, v.row)
    except KeyError:
        raise NetworkError(f"cannot mirror {v}") from None


def reflect(net: Network, axis_x) -> Network:
    """Mirror about ``x = axis_x``, reverse every arc, swap ``P <-> Pbar`` and ``Q <-> Qbar``.

    Arc weights and ``l``/``r`` tags are carried over from the preimage.
    """
    axis = Fraction(axis_x)

    def coords(v: Vertex):
        x = 2 * axis - Fraction(v.x)
        return (int(x) if x.denominator == 1 else x), v.y

    return map_network(net, mirror_vertex, coords, reverse=True)


def build_bt(n: int, weights: LBWeights = TYPE_B_WEIGHTS) -> Network:
    return reflect(build_b(n, weights), Fraction(4 * n + 1, 2))


def build_t(n: int, data: Optional[RecurrenceData] = None) -> Network:
    """Parallel rails ``P^(n)_{n-c} -> Pbar^(n)_{n-c}`` weighted by ``T[c][c]``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    T = t_matrix(n, data)
    verts, arcs = [], []
    for c in range(n + 1):
        row = n - c
        left, right = VertexId("P", n, row), VertexId("Pbar", n, row)
        verts += [Vertex(left, 2 * n, row), Vertex(right, 2 * n + 1, row)]
        arcs.append(Arc(left, right, T[c, c]))
    return Network(verts, arcs)


def t_sources(n: int) -> List[VertexId]:
    return [VertexId("P", n, n - i) for i in range(n + 1)]


def t_sinks(n: int) -> List[VertexId]:
    return [VertexId("Pbar", n, n - i) for i in range(n + 1)]


def bt_sources(n: int) -> List[VertexId]:
    return t_sinks(n)


def bt_sinks(n: int) -> List[VertexId]:
    return [VertexId("Pbar", 0, n - i) for i in range(n + 1)]


@dataclass(frozen=True)
class Segment:
    kind: str  # "forward", "diagonal" or "mirrored"
    index: int
    vertices: Tuple[VertexId, ...]
    arcs: Tuple[Arc, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "vertices": [str(v) for v in self.vertices]}


def segment_key(arc: Arc, n: int) -> Tuple[str, int]:
    """Which of the ``2n+1`` segments of the Hankel network an arc lies in."""
    t = arc.tail
    if t.kind == "P" and t.level == n:
        return ("diagonal", 0)
    if t.kind in ("P", "Q"):
        return ("forward", t.level + 1)
    if t.kind == "Pbar":
        return ("mirrored", t.level)
    if t.kind == "Qbar":
        return ("mirrored", t.level + 1)
    raise NetworkError(f"arc {arc.id} is not part of a Hankel network")


@dataclass
class SegmentedNetwork:
    """Hankel network plus its division into forward, diagonal and mirrored segments."""

    net: Network
    n: int
    sources: Tuple[VertexId, ...]
    sinks: Tuple[VertexId, ...]
    segments: Tuple[Segment, ...]
    boundaries: Tuple[Tuple[VertexId, ...], ...]

    def row_source(self, i: int) -> VertexId:
        return self.sources[i]

    def col_sink(self, j: int) -> VertexId:
        return self.sinks[j]

    def sources_for(self, I: Sequence[int]) -> List[VertexId]:
        return [self.sources[i] for i in I]

    def sinks_for(self, J: Sequence[int]) -> List[VertexId]:
        return [self.sinks[j] for j in J]

    def segment_position(self, arc: Arc) -> int:
        kind, idx = segment_key(arc, self.n)
        if kind == "forward":
            return idx - 1
        if kind == "diagonal":
            return self.n
        return 2 * self.n + 1 - idx

    def path_matrix(self) -> PolyMatrix:
        return path_matrix(self.net, self.sources, self.sinks)

    def to_json(self) -> dict:
        data = self.net.to_json()
        data["segments"] = [s.to_json() for s in self.segments]
        data["sources"] = [str(v) for v in self.sources]
        data["sinks"] = [str(v) for v in self.sinks]
        return data


def build_h(
    n: int,
    weights: LBWeights = TYPE_B_WEIGHTS,
    data: Optional[RecurrenceData] = None,
) -> SegmentedNetwork:
    """Hankel network ``B_n`` | ``T_n`` | ``B_n^t`` with sources ``P^(0)_n..P^(0)_0``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if data is None and weights == TYPE_B_WEIGHTS:
        data = type_b_data(max(n, 1))
    B = build_b(n, weights)
    T = build_t(n, data)
    Bt = reflect(B, Fraction(4 * n + 1, 2))
    net = glue([B, T, Bt], [(b_sinks(n), t_sources(n)), (t_sinks(n), bt_sources(n))])

    buckets: Dict[int, List[Arc]] = {}
    verts: Dict[int, set] = {}
    seg = SegmentedNetwork(net, n, tuple(b_sources(n)), tuple(bt_sinks(n)), (), ())
    for a in net.arcs:
        pos = seg.segment_position(a)
        buckets.setdefault(pos, []).append(a)
        verts.setdefault(pos, set()).update((a.tail, a.head))
    segments = []
    for pos in range(2 * n + 1):
        if pos < n:
            kind, idx = "forward", pos + 1
        elif pos == n:
            kind, idx = "diagonal", 0
        else:
            kind, idx = "mirrored", 2 * n + 1 - pos
        segments.append(Segment(kind, idx, tuple(sorted(verts.get(pos, ()))), tuple(buckets.get(pos, ()))))
    boundaries = []
    for i in range(1, n + 1):
        boundaries.append(tuple(VertexId("P", i, n - c) for c in range(n + 1)))
    for i in range(n, 0, -1):
        boundaries.append(tuple(VertexId("Pbar", i, n - c) for c in range(n + 1)))
    seg.segments = tuple(segments)
    seg.boundaries = tuple(boundaries)
    return seg


def build_h_generalized(case: int, e: int, f: int, n: int) -> SegmentedNetwork:
    return build_h(n, generalized_weights(case, e, f), generalized_data(case, e, f, 2 * n + 2))
