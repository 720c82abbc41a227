"""Sign-reversing involutions on nonintersecting families.

``phi_lb`` acts on families in the unlabelled coefficient network and follows
the case split of its definition literally: the one-path swap, the identity
cases, the ``P_1 -> P'_0`` / ``P_1 -> Q_1 -l-> P'_0`` swap, and the staircase
exchange between a shortcut-led run and a run ending in a crossing step.
``phi_h`` lifts it segment by segment to the Hankel network.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .constructions import (
    TYPE_B_WEIGHTS,
    LBWeights,
    SegmentedNetwork,
    build_lb,
    map_network,
    mirror_vertex,
    relabel_vertex,
    unrelabel_vertex,
)
from .errors import InvolutionError, NetworkError
from .netgraph import Network, Path, PathFamily, VertexId, raw

P1, P2, P3 = "P1", "P2", "P3"


@dataclass(frozen=True)
class PropertyTag:
    kind: Optional[str]  # P1, P2, P3 or None
    l: Optional[int] = None  # staircase length for P3
    segment: Optional[int] = None
    mirrored: bool = False

    def __str__(self) -> str:
        if self.kind is None:
            return "None"
        name = self.kind
        if self.segment is not None:
            name = f"{'Pbar' if self.mirrored else 'P'}{self.kind[1]}^({self.segment})"
        return name if self.l is None else f"{name}[l={self.l}]"


NONE_TAG = PropertyTag(None)


# -- path shapes in the unlabelled network ---------------------------------


def _shape(path: Path) -> Tuple[Tuple[VertexId, ...], Tuple[Optional[str], ...]]:
    return path.vertices, tuple(a.tag for a in path.arcs)


def is_shortcut(path: Path) -> bool:
    return _shape(path) == ((raw("P", 1), raw("P'", 0)), (None,))


def is_left_detour(path: Path) -> bool:
    return _shape(path) == ((raw("P", 1), raw("Q", 1), raw("P'", 0)), (None, "l"))


def is_step_up(path: Path, m: int) -> bool:
    """``P_m -> Q_{m-1} -> P'_{m-1}``."""
    return _shape(path) == ((raw("P", m), raw("Q", m - 1), raw("P'", m - 1)), (None, None))


def is_crossing(path: Path, m: int) -> bool:
    """``P_m -> Q_m -> P'_{m-1}`` (exists for ``m >= 2``)."""
    return _shape(path) == ((raw("P", m), raw("Q", m), raw("P'", m - 1)), (None, None))


def make_path(net: Network, vertices: Sequence[VertexId], tags: Optional[Sequence[Optional[str]]] = None) -> Path:
    if tags is None:
        tags = [None] * (len(vertices) - 1)
    arcs = tuple(net.arc(t, h, tag) for t, h, tag in zip(vertices, vertices[1:], tags))
    return Path(vertices[0], arcs)


def family_rows(family: PathFamily) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    return tuple(p.start.row for p in family), tuple(p.end.row for p in family)


def _check_context(family: PathFamily, I, J) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    for p in family:
        if p.start.kind != "P" or p.end.kind != "P'" or p.start.level >= 0:
            raise NetworkError(f"path {p} does not run from a P_i to a P'_j")
    rows, cols = family_rows(family)
    if I is not None and tuple(I) != rows:
        raise NetworkError(f"family starts at rows {rows}, expected {tuple(I)}")
    if J is not None and tuple(J) != cols:
        raise NetworkError(f"family ends at rows {cols}, expected {tuple(J)}")
    return rows, cols


def _staircase_length(family: PathFamily) -> Optional[int]:
    """``l`` such that ``p_1..p_{l-1}`` are step-ups and ``p_l`` is a crossing, if any."""
    if not family.paths or not is_step_up(family[0], 1):
        return None
    m = 2
    while m <= len(family) and is_step_up(family[m - 1], m):
        m += 1
    if m <= len(family) and is_crossing(family[m - 1], m):
        return m
    return None


def classify_lb(family: PathFamily, I=None, J=None) -> PropertyTag:
    """Tag a family in the unlabelled network with the property it satisfies."""
    _check_context(family, I, J)
    if not family.paths:
        return NONE_TAG
    first = family[0]
    hits = []
    if is_shortcut(first):
        hits.append(PropertyTag(P1))
    if is_left_detour(first):
        hits.append(PropertyTag(P2))
    l = _staircase_length(family)
    if l is not None:
        hits.append(PropertyTag(P3, l))
    if len(hits) > 1:
        raise InvolutionError(f"family {family} matches several properties: {hits}")
    return hits[0] if hits else NONE_TAG


def _replace(family: PathFamily, changes: dict) -> PathFamily:
    return PathFamily(tuple(changes.get(i, p) for i, p in enumerate(family.paths)))


def phi_lb(net: Network, family: PathFamily, I=None, J=None) -> PathFamily:
    """The involution on ``N(P_I, P'_J)`` in the unlabelled network ``net``."""
    rows, cols = _check_context(family, I, J)
    tag = classify_lb(family)
    k = len(family)
    if k == 0:
        return family
    shortcut = lambda: make_path(net, [raw("P", 1), raw("P'", 0)])
    detour = lambda: make_path(net, [raw("P", 1), raw("Q", 1), raw("P'", 0)], [None, "l"])

    if k == 1:
        if tag.kind == P1:
            return _replace(family, {0: detour()})
        if tag.kind == P2:
            return _replace(family, {0: shortcut()})
        if tag.kind is not None:
            raise InvolutionError(f"single path {family} cannot satisfy {tag}")
        return family

    i1, j1 = rows[0], cols[0]
    if i1 == 0 or i1 >= 2 or (i1 == 1 and j1 == 1):
        # identity subcase: all three property classes are empty
        if tag.kind is not None:
            raise InvolutionError(f"{family} satisfies {tag} in an identity subcase")
        return family
    if not (i1 == 1 and j1 == 0):
        raise InvolutionError(f"no subcase covers I={rows}, J={cols}")
    i2, j2 = rows[1], cols[1]
    if i2 >= 3 or j2 >= 2:
        if tag.kind == P3:
            raise InvolutionError(f"{family} satisfies P3 although i2={i2}, j2={j2}")
        if tag.kind == P1:
            return _replace(family, {0: detour()})
        if tag.kind == P2:
            return _replace(family, {0: shortcut()})
        return family
    if not (i2 == 2 and j2 == 1):
        raise InvolutionError(f"no subcase covers I={rows}, J={cols}")

    if tag.kind == P1:
        if not is_step_up(family[1], 2):
            return _replace(family, {0: detour()})
        l = 2
        while l + 1 <= k and is_step_up(family[l], l + 1):
            l += 1
        return _replace(
            family,
            {
                0: make_path(net, [raw("P", 1), raw("Q", 0), raw("P'", 0)]),
                l - 1: make_path(net, [raw("P", l), raw("Q", l), raw("P'", l - 1)]),
            },
        )
    if tag.kind == P2:
        return _replace(family, {0: shortcut()})
    if tag.kind == P3:
        l = tag.l
        return _replace(
            family,
            {
                0: shortcut(),
                l - 1: make_path(net, [raw("P", l), raw("Q", l - 1), raw("P'", l - 1)]),
            },
        )
    return family


# -- segments of the Hankel network ------------------------------------------


@dataclass(frozen=True)
class SegmentedFamily:
    """Per-segment restrictions of one family, in segment order."""

    family: PathFamily
    pieces: Tuple[PathFamily, ...]
    n: int

    def forward(self, i: int) -> PathFamily:
        return self.pieces[i - 1]

    @property
    def diagonal(self) -> PathFamily:
        return self.pieces[self.n]

    def mirrored(self, i: int) -> PathFamily:
        return self.pieces[2 * self.n + 1 - i]

    def replace(self, pos: int, piece: PathFamily) -> "SegmentedFamily":
        pieces = list(self.pieces)
        pieces[pos] = piece
        return SegmentedFamily(recompose(pieces), tuple(pieces), self.n)


def decompose(family: PathFamily, seg: SegmentedNetwork) -> SegmentedFamily:
    nseg = 2 * seg.n + 1
    split: List[List[Path]] = [[] for _ in range(nseg)]
    for p in family:
        runs: List[list] = [[] for _ in range(nseg)]
        last = -1
        for a in p.arcs:
            pos = seg.segment_position(a)
            if pos < last:
                raise NetworkError(f"path {p} moves backwards through the segments")
            last = pos
            runs[pos].append(a)
        cur = p.start
        for pos in range(nseg):
            if not runs[pos]:
                raise NetworkError(f"path {p} skips segment {pos}")
            if runs[pos][0].tail != cur:
                raise NetworkError(f"path {p} is not contiguous at segment {pos}")
            piece = Path(cur, tuple(runs[pos]))
            split[pos].append(piece)
            cur = piece.end
    pieces = tuple(PathFamily(tuple(s)) for s in split)
    return SegmentedFamily(family, pieces, seg.n)


def recompose(pieces: Sequence[PathFamily]) -> PathFamily:
    k = len(pieces[0])
    paths = []
    for c in range(k):
        start = pieces[0][c].start
        arcs: tuple = ()
        for piece in pieces:
            sub = piece[c]
            if arcs and sub.start != arcs[-1].head:
                raise NetworkError("segment pieces do not meet at their boundary")
            arcs += sub.arcs
        paths.append(Path(start, arcs))
    return PathFamily(tuple(paths))


@lru_cache(maxsize=None)
def _raw_lb(m: int, weights: LBWeights) -> Network:
    return build_lb(m, weights)


def _transport(path: Path, vmap: Callable[[VertexId], VertexId], target: Network, reverse: bool) -> Path:
    verts = [vmap(v) for v in path.vertices]
    tags = [a.tag for a in path.arcs]
    if reverse:
        verts.reverse()
        tags.reverse()
    return make_path(target, verts, tags)


def _preimage(piece: PathFamily, net: Network) -> PathFamily:
    return PathFamily(tuple(_transport(p, mirror_vertex, net, True) for p in piece))


def _is_rail(path: Path, i: int) -> bool:
    return len(path.arcs) == 1 and path.start.kind == "P" and path.start.row > i and path.end.row == path.start.row


def _split_rails(piece: PathFamily, i: int) -> Tuple[Tuple[Path, ...], Tuple[Path, ...]]:
    m = 0
    while m < len(piece) and piece[m].start.row > i:
        if not _is_rail(piece[m], i):
            raise NetworkError(f"component {piece[m]} of segment {i} starts on a rail row but is not a rail")
        m += 1
    for p in piece.paths[m:]:
        if p.start.row > i:
            raise NetworkError(f"rail component {p} is out of order in segment {i}")
    return piece.paths[:m], piece.paths[m:]


def _forward_net(net: Network) -> Network:
    """The whole network mirrored back, so preimages of mirrored pieces have arcs to point at."""
    cached = getattr(net, "_forward_mirror", None)
    if cached is None:
        cached = map_network(net, mirror_vertex, lambda v: (v.x, v.y), reverse=True)
        net._forward_mirror = cached
    return cached


def classify_segment(piece: PathFamily, i: int, mirrored: bool = False, net: Optional[Network] = None) -> PropertyTag:
    """Tag a segment piece directly from the layered-label property patterns.

    Mirrored pieces are judged by their preimage under the reflection, which
    needs ``net`` to rebuild the preimage arcs.
    """
    if mirrored:
        if net is None:
            raise ValueError("mirrored pieces need the ambient network")
        memo = _memo(net, "_classify_memo")
        key = (piece, i)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = _classify_forward(_preimage(piece, _forward_net(net)), i, True)
        return hit
    return _classify_forward(piece, i, False)


def _classify_forward(piece: PathFamily, i: int, mirrored: bool) -> PropertyTag:
    P = lambda lvl, r: VertexId("P", lvl, r)
    Qv = lambda lvl, r: VertexId("Q", lvl, r)
    lo, hi = i - 1, i
    shapes = [_shape(p) for p in piece]
    hits = []
    for shape in shapes:
        if shape == ((P(lo, i - 1), P(hi, i)), (None,)):
            hits.append(PropertyTag(P1, segment=i, mirrored=mirrored))
        if shape == ((P(lo, i - 1), Qv(lo, i - 1), P(hi, i)), (None, "l")):
            hits.append(PropertyTag(P2, segment=i, mirrored=mirrored))
    plain = (None, None)
    for j in range(len(shapes)):
        for l in range(2, len(shapes) - j + 1):
            last = shapes[j + l - 1]
            if last != ((P(lo, i - l), Qv(lo, i - l), P(hi, i - l + 1)), plain):
                continue
            if all(
                shapes[m] == ((P(lo, i - 1 - (m - j)), Qv(lo, i - (m - j)), P(hi, i - (m - j))), plain)
                for m in range(j, j + l - 1)
            ):
                hits.append(PropertyTag(P3, l, segment=i, mirrored=mirrored))
    if len(hits) > 1:
        raise InvolutionError(f"segment piece {piece} matches several properties: {hits}")
    return hits[0] if hits else NONE_TAG


def phi_segment(
    piece: PathFamily,
    i: int,
    mirrored: bool,
    net: Network,
    weights: LBWeights = TYPE_B_WEIGHTS,
) -> PathFamily:
    """Lift of ``phi_lb`` to forward segment ``i`` (or its mirror image).

    Rails pass through untouched; the remaining components are read as a
    family in the unlabelled coefficient network of order ``i - 1``.
    """
    memo = _memo(net, "_phi_segment_memo")
    key = (piece, i, mirrored, weights)
    hit = memo.get(key)
    if hit is None:
        hit = memo[key] = _phi_segment(piece, i, mirrored, net, weights)
    return hit


def _memo(net: Network, name: str) -> dict:
    memo = getattr(net, name, None)
    if memo is None:
        memo = {}
        setattr(net, name, memo)
    return memo


def _phi_segment(piece, i, mirrored, net, weights):
    level = i - 1
    forward = _preimage(piece, _forward_net(net)) if mirrored else piece
    ambient = _forward_net(net) if mirrored else net
    rails, core = _split_rails(forward, i)
    if not core:
        return piece
    lb = _raw_lb(level, weights)
    down = lambda v: unrelabel_vertex(v, level)
    up = lambda v: relabel_vertex(v, level)
    raw_family = PathFamily(tuple(_transport(p, down, lb, False) for p in core))
    image = phi_lb(lb, raw_family)
    if image == raw_family:
        return piece
    lifted = tuple(_transport(p, up, ambient, False) for p in image)
    for old, new in zip(core, lifted):
        if (old.start, old.end) != (new.start, new.end):
            raise InvolutionError(f"segment map moved an endpoint: {old} -> {new}")
    result = PathFamily(rails + lifted)
    if mirrored:
        result = PathFamily(tuple(_transport(p, mirror_vertex, net, True) for p in result))
    return result


def phi_h(family: PathFamily, seg: SegmentedNetwork, weights: LBWeights = TYPE_B_WEIGHTS) -> PathFamily:
    """Involution on ``N(P_I, Pbar_J)`` in the Hankel network.

    Acts at the first forward segment whose piece is moved by its segment map;
    failing that, at the mirrored segment with the largest index.
    """
    sf = decompose(family, seg)
    n = seg.n
    for i in range(1, n + 1):
        piece = sf.forward(i)
        image = phi_segment(piece, i, False, seg.net, weights)
        if image != piece:
            return sf.replace(i - 1, image).family
    for i in range(n, 0, -1):
        piece = sf.mirrored(i)
        image = phi_segment(piece, i, True, seg.net, weights)
        if image != piece:
            return sf.replace(2 * n + 1 - i, image).family
    return family


def classify_h(family: PathFamily, seg: SegmentedNetwork) -> List[PropertyTag]:
    """Tags of every non-fixed segment piece, forward segments first."""
    sf = decompose(family, seg)
    tags = []
    for i in range(1, seg.n + 1):
        t = classify_segment(sf.forward(i), i)
        if t.kind is not None:
            tags.append(t)
    for i in range(seg.n, 0, -1):
        t = classify_segment(sf.mirrored(i), i, True, seg.net)
        if t.kind is not None:
            tags.append(t)
    return tags


def fixed_points(families: Iterable[PathFamily], is_fixed: Callable[[PathFamily], bool]) -> List[PathFamily]:
    return [f for f in families if is_fixed(f)]


def lb_fixed(family: PathFamily) -> bool:
    return classify_lb(family).kind is None


def h_fixed(seg: SegmentedNetwork) -> Callable[[PathFamily], bool]:
    return lambda family: not classify_h(family, seg)
