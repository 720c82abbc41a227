"""Weighted acyclic digraphs, path enumeration and the LGV determinant check."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import BudgetExceeded, NetworkError
from .polymat import DET_CAP, PolyMatrix, det
from .qpoly import ONE, ZERO, QPoly, poly_prod, poly_sum

TAGS = (None, "l", "r")


class VertexId(NamedTuple):
    """Structured vertex name.

    ``kind`` is one of ``P``, ``Q``, ``P'`` (unlabelled coefficient network)
    or ``P``, ``Q``, ``Pbar``, ``Qbar`` (layered networks, where ``level`` is
    the superscript and ``row`` the subscript).  Unlabelled vertices use
    ``level = -1``.
    """

    kind: str
    level: int
    row: int

    def __str__(self) -> str:
        if self.level < 0:
            return f"{self.kind}_{self.row}"
        return f"{self.kind}^({self.level})_{self.row}"

    @property
    def label(self) -> str:
        base = {"Pbar": r"\bar{P}", "Qbar": r"\bar{Q}"}.get(self.kind, self.kind)
        if self.level < 0:
            return f"{base}_{{{self.row}}}"
        return f"{base}^{{({self.level})}}_{{{self.row}}}"

    @classmethod
    def parse(cls, text: str) -> "VertexId":
        m = re.fullmatch(r"(P'|P|Q|Pbar|Qbar)(?:\^\((\d+)\))?_(\d+)", text)
        if not m:
            raise NetworkError(f"unparseable vertex id {text!r}")
        kind, level, row = m.groups()
        return cls(kind, -1 if level is None else int(level), int(row))


def raw(kind: str, row: int) -> VertexId:
    return VertexId(kind, -1, row)


@dataclass(frozen=True)
class Arc:
    tail: VertexId
    head: VertexId
    weight: QPoly = ONE
    tag: Optional[str] = None

    @property
    def key(self) -> Tuple[VertexId, VertexId, str]:
        return (self.tail, self.head, self.tag or "")

    @property
    def id(self) -> str:
        return f"{self.tail}->{self.head}" + (f"#{self.tag}" if self.tag else "")


@dataclass(frozen=True)
class Path:
    start: VertexId
    arcs: Tuple[Arc, ...] = ()

    @property
    def end(self) -> VertexId:
        return self.arcs[-1].head if self.arcs else self.start

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return (self.start,) + tuple(a.head for a in self.arcs)

    @property
    def weight(self) -> QPoly:
        return poly_prod(a.weight for a in self.arcs)

    def sort_key(self):
        return tuple(a.key for a in self.arcs)

    def __str__(self) -> str:
        out = str(self.start)
        for a in self.arcs:
            out += f" -{a.tag}-> " if a.tag else " -> "
            out += str(a.head)
        return out

    def to_json(self) -> list:
        return [a.id for a in self.arcs] if self.arcs else [str(self.start)]


@dataclass(frozen=True)
class PathFamily:
    paths: Tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __getitem__(self, i):
        return self.paths[i]

    @property
    def weight(self) -> QPoly:
        return poly_prod(p.weight for p in self.paths)

    def is_nonintersecting(self) -> bool:
        seen = set()
        for p in self.paths:
            vs = set(p.vertices)
            if vs & seen:
                return False
            seen |= vs
        return True

    def __str__(self) -> str:
        return "(" + "; ".join(str(p) for p in self.paths) + ")"

    def to_json(self) -> list:
        return [p.to_json() for p in self.paths]


@dataclass(frozen=True)
class Vertex:
    id: VertexId
    x: object
    y: object

    @property
    def label(self) -> str:
        return self.id.label


class Network:
    """Finite weighted acyclic digraph with optional parallel arcs.

    Parallel arcs between one ordered pair must carry distinct ``l``/``r``
    tags; at most two are allowed.  Networks are immutable once built.
    """

    def __init__(self, vertices: Iterable[Vertex], arcs: Iterable[Arc]):
        self.vertices: Dict[VertexId, Vertex] = {}
        for v in vertices:
            if v.id in self.vertices:
                raise NetworkError(f"duplicate vertex {v.id}")
            self.vertices[v.id] = v
        arcs = sorted(arcs, key=lambda a: a.key)
        by_pair: Dict[Tuple[VertexId, VertexId], List[Arc]] = {}
        self._arcs: Dict[tuple, Arc] = {}
        for a in arcs:
            if a.tail not in self.vertices or a.head not in self.vertices:
                raise NetworkError(f"arc {a.id} has an endpoint outside the network")
            if a.tag not in TAGS:
                raise NetworkError(f"arc {a.id} has invalid tag {a.tag!r}")
            if a.key in self._arcs:
                raise NetworkError(f"duplicate arc {a.id}")
            self._arcs[a.key] = a
            by_pair.setdefault((a.tail, a.head), []).append(a)
        for pair, group in by_pair.items():
            if len(group) > 2:
                raise NetworkError(f"more than two parallel arcs {pair[0]} -> {pair[1]}")
            if len(group) == 2 and {a.tag for a in group} != {"l", "r"}:
                raise NetworkError(f"parallel arcs {pair[0]} -> {pair[1]} need tags l and r")
        self.arcs: Tuple[Arc, ...] = tuple(arcs)
        self.out_arcs: Dict[VertexId, List[Arc]] = {v: [] for v in self.vertices}
        self.in_arcs: Dict[VertexId, List[Arc]] = {v: [] for v in self.vertices}
        for a in self.arcs:
            self.out_arcs[a.tail].append(a)
            self.in_arcs[a.head].append(a)
        self.topo_order: Tuple[VertexId, ...] = self._toposort()
        self._index = {v: i for i, v in enumerate(self.topo_order)}
        self._path_cache: Dict[Tuple[VertexId, VertexId], List[Path]] = {}
        self._gf_cache: Dict[VertexId, Dict[VertexId, QPoly]] = {}

    def _toposort(self) -> Tuple[VertexId, ...]:
        indeg = {v: len(self.in_arcs[v]) for v in self.vertices}
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for a in self.out_arcs[v]:
                indeg[a.head] -= 1
                if indeg[a.head] == 0:
                    ready.append(a.head)
        if len(order) != len(self.vertices):
            raise NetworkError("network contains a directed cycle")
        return tuple(order)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def arc(self, tail: VertexId, head: VertexId, tag: Optional[str] = None) -> Arc:
        try:
            return self._arcs[(tail, head, tag or "")]
        except KeyError:
            raise NetworkError(f"no arc {tail} -> {head} with tag {tag!r}") from None

    def has_arc(self, tail: VertexId, head: VertexId, tag: Optional[str] = None) -> bool:
        return (tail, head, tag or "") in self._arcs

    def is_source(self, v: VertexId) -> bool:
        return not self.in_arcs[v]

    def is_sink(self, v: VertexId) -> bool:
        return not self.out_arcs[v]

    def require(self, *vs: VertexId) -> None:
        for v in vs:
            if v not in self.vertices:
                raise NetworkError(f"unknown vertex {v}")

    def vertex_bit(self, v: VertexId) -> int:
        return 1 << self._index[v]

    def path_mask(self, path: Path) -> int:
        mask = 0
        for v in path.vertices:
            mask |= 1 << self._index[v]
        return mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs == other.arcs

    def __repr__(self) -> str:
        return f"Network({len(self.vertices)} vertices, {len(self.arcs)} arcs)"

    def to_json(self) -> dict:
        verts = sorted(self.vertices.values(), key=lambda v: v.id)
        return {
            "vertices": [
                {"id": str(v.id), "label": v.label, "x": _num(v.x), "y": _num(v.y)} for v in verts
            ],
            "arcs": [
                {
                    "id": a.id,
                    "tail": str(a.tail),
                    "head": str(a.head),
                    "weight": a.weight.to_json(),
                    "tag": a.tag,
                }
                for a in self.arcs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Network":
        verts = [Vertex(VertexId.parse(v["id"]), v["x"], v["y"]) for v in data["vertices"]]
        arcs = [
            Arc(VertexId.parse(a["tail"]), VertexId.parse(a["head"]), QPoly.from_json(a["weight"]), a["tag"])
            for a in data["arcs"]
        ]
        return cls(verts, arcs)


def _num(x):
    if isinstance(x, int):
        return x
    if float(x).is_integer():
        return int(x)
    return float(x)


def _reaching(net: Network, v: VertexId) -> set:
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for a in net.in_arcs[w]:
            if a.tail not in seen:
                seen.add(a.tail)
                stack.append(a.tail)
    return seen


def enumerate_paths(net: Network, u: VertexId, v: VertexId) -> List[Path]:
    """All directed ``u -> v`` paths, lexicographic in their arc-id sequence.

    ``u == v`` yields the single zero-length path of weight 1.
    """
    net.require(u, v)
    cached = net._path_cache.get((u, v))
    if cached is not None:
        return cached
    good = _reaching(net, v)
    out: List[Path] = []
    if u in good:
        stack: List[Arc] = []

        def walk(w: VertexId) -> None:
            if w == v:
                out.append(Path(u, tuple(stack)))
                return
            for a in net.out_arcs[w]:
                if a.head in good:
                    stack.append(a)
                    walk(a.head)
                    stack.pop()

        walk(u)
    net._path_cache[(u, v)] = out
    return out


def _gf_to(net: Network, v: VertexId) -> Dict[VertexId, QPoly]:
    table = net._gf_cache.get(v)
    if table is None:
        table = {v: ONE}
        for w in reversed(net.topo_order):
            if w == v:
                continue
            acc = ZERO
            for a in net.out_arcs[w]:
                sub = table.get(a.head)
                if sub:
                    acc = acc + a.weight * sub
            if acc:
                table[w] = acc
        net._gf_cache[v] = table
    return table


def gf(net: Network, u: VertexId, v: VertexId) -> QPoly:
    """Sum of path weights from ``u`` to ``v``, by dynamic programming."""
    net.require(u, v)
    return _gf_to(net, v).get(u, ZERO)


def gf_by_enumeration(net: Network, u: VertexId, v: VertexId) -> QPoly:
    return poly_sum(p.weight for p in enumerate_paths(net, u, v))


def path_matrix(net: Network, U: Sequence[VertexId], V: Sequence[VertexId]) -> PolyMatrix:
    if not U or not V:
        raise NetworkError("path matrix needs at least one source and one sink")
    net.require(*U, *V)
    return PolyMatrix(len(U), len(V), [gf(net, u, v) for u in U for v in V])


@dataclass
class FamilyEnumerator:
    """Backtracking enumerator that counts candidate extensions against a budget."""

    budget: Optional[int] = None
    extensions: int = field(default=0)

    def charge(self, n: int = 1) -> None:
        self.extensions += n
        if self.budget is not None and self.extensions > self.budget:
            raise BudgetExceeded(
                f"enumeration exceeded budget of {self.budget} candidate extensions; "
                "try a smaller n or k, or raise --budget"
            )

    def families(self, net: Network, U: Sequence[VertexId], V: Sequence[VertexId]) -> List[PathFamily]:
        if len(U) != len(V):
            raise NetworkError(f"{len(U)} sources but {len(V)} sinks")
        net.require(*U, *V)
        choices = []
        for u, v in zip(U, V):
            paths = enumerate_paths(net, u, v)
            if not paths:
                return []
            choices.append([(p, net.path_mask(p)) for p in paths])
        out: List[PathFamily] = []
        chosen: List[Path] = []
        k = len(choices)

        def extend(i: int, used: int) -> None:
            if i == k:
                out.append(PathFamily(tuple(chosen)))
                return
            options = choices[i]
            self.charge(len(options))
            for p, mask in options:
                if mask & used:
                    continue
                chosen.append(p)
                extend(i + 1, used | mask)
                chosen.pop()

        extend(0, 0)
        return out


def enumerate_families(
    net: Network, U: Sequence[VertexId], V: Sequence[VertexId], budget: Optional[int] = None
) -> List[PathFamily]:
    """Nonintersecting families with ``p_i : U[i] -> V[i]``, in lexicographic order."""
    return FamilyEnumerator(budget).families(net, U, V)


def gf_families(families: Iterable[PathFamily]) -> QPoly:
    return poly_sum(f.weight for f in families)


class LGVResult(NamedTuple):
    lhs: QPoly
    rhs: QPoly
    equal: bool


def lgv_check(
    net: Network,
    U: Sequence[VertexId],
    V: Sequence[VertexId],
    cap: Optional[int] = DET_CAP,
    budget: Optional[int] = None,
) -> LGVResult:
    if len(U) != len(V):
        raise NetworkError(f"{len(U)} sources but {len(V)} sinks")
    lhs = det(path_matrix(net, U, V), cap=cap)
    rhs = gf_families(enumerate_families(net, U, V, budget))
    return LGVResult(lhs, rhs, lhs == rhs)
