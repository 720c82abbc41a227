from itertools import combinations

import pytest

from tpverify.constructions import build_h, build_lb
from tpverify.errors import NetworkError
from tpverify.involution import (
    NONE_TAG,
    P1,
    P2,
    P3,
    classify_h,
    classify_lb,
    classify_segment,
    decompose,
    is_step_up,
    lb_fixed,
    make_path,
    phi_h,
    phi_lb,
    phi_segment,
    recompose,
)
from tpverify.netgraph import PathFamily, enumerate_families, raw
from tpverify.polymat import det, submatrix
from tpverify.qpoly import ONE, QPoly, poly_sum
from tpverify.seqmat import hankel

NET = build_lb(3)
P = lambda i: raw("P", i)
Qv = lambda i: raw("Q", i)
Pp = lambda i: raw("P'", i)


def fam(*paths):
    return PathFamily(tuple(paths))


def path(*vs, tags=None):
    return make_path(NET, vs, tags)


SHORTCUT = path(P(1), Pp(0))
DETOUR = path(P(1), Qv(1), Pp(0), tags=[None, "l"])


def test_classify_examples():
    assert classify_lb(fam(SHORTCUT), (1,), (0,)).kind == P1
    assert classify_lb(fam(DETOUR)).kind == P2
    tag = classify_lb(fam(path(P(1), Qv(0), Pp(0)), path(P(2), Qv(2), Pp(1))), (1, 2), (0, 1))
    assert tag.kind == P3 and tag.l == 2
    assert classify_lb(fam(path(P(1), Qv(0), Pp(0)))) == NONE_TAG


def test_classify_rejects_bad_context():
    with pytest.raises(NetworkError):
        classify_lb(fam(SHORTCUT), (2,), (0,))


def test_k1_swap():
    assert phi_lb(NET, fam(SHORTCUT)) == fam(DETOUR)
    assert phi_lb(NET, fam(DETOUR)) == fam(SHORTCUT)
    fixed = fam(path(P(1), Qv(0), Pp(0)))
    assert phi_lb(NET, fixed) == fixed


def test_staircase_exchange():
    n11 = fam(SHORTCUT, path(P(2), Qv(1), Pp(1)))
    n3 = fam(path(P(1), Qv(0), Pp(0)), path(P(2), Qv(2), Pp(1)))
    assert phi_lb(NET, n11) == n3
    assert phi_lb(NET, n3) == n11
    assert n3.weight == -n11.weight


def test_fixed_set_for_single_pair():
    fams = enumerate_families(NET, [P(1)], [Pp(0)])
    assert len(fams) == 4
    fixed = [f for f in fams if phi_lb(NET, f) == f]
    assert {str(f) for f in fixed} == {"(P_1 -> Q_0 -> P'_0)", "(P_1 -> Q_1 -r-> P'_0)"}
    assert poly_sum(f.weight for f in fixed) == QPoly([1, 1])


def _pairs(size, kmax):
    for k in range(1, kmax + 1):
        for I in combinations(range(size), k):
            for J in combinations(range(size), k):
                yield I, J


@pytest.mark.parametrize("n", [2, 3])
def test_partition_law(n):
    net = build_lb(n)
    for I, J in _pairs(n + 2, 3):
        if I[:2] != (1, 2) or J[:2] != (0, 1):
            continue
        fams = enumerate_families(net, [P(i) for i in I], [Pp(j) for j in J])
        tags = {f: classify_lb(f) for f in fams}
        n1 = [f for f in fams if tags[f].kind == P1]
        n11 = {f for f in n1 if is_step_up(f[1], 2)}
        n12 = {f for f in n1 if f not in n11}
        n2 = {f for f in fams if tags[f].kind == P2}
        n3 = {f for f in fams if tags[f].kind == P3}
        assert {phi_lb(net, f) for f in n11} == n3
        assert {phi_lb(net, f) for f in n12} == n2


@pytest.mark.parametrize("n", range(3))
def test_lb_involution_small(n):
    net = build_lb(n)
    for I, J in _pairs(n + 2, 3):
        fams = enumerate_families(net, [P(i) for i in I], [Pp(j) for j in J])
        for f in fams:
            g = phi_lb(net, f)
            assert phi_lb(net, g) == f
            assert (g == f) == lb_fixed(f)
            if g != f:
                assert g.weight == -f.weight
            else:
                assert f.weight.is_q_nonnegative()


def test_decompose_roundtrip_and_weights():
    for n in (1, 2):
        seg = build_h(n)
        for I, J in _pairs(n + 1, n + 1):
            for f in enumerate_families(seg.net, seg.sources_for(I), seg.sinks_for(J)):
                sf = decompose(f, seg)
                assert len(sf.pieces) == 2 * n + 1
                assert recompose(sf.pieces) == f
                prod = ONE
                for piece in sf.pieces:
                    prod = prod * piece.weight
                assert prod == f.weight


def test_segment_detection_matches_motion():
    for n in (1, 2):
        seg = build_h(n)
        for I, J in _pairs(n + 1, n + 1):
            for f in enumerate_families(seg.net, seg.sources_for(I), seg.sinks_for(J)):
                sf = decompose(f, seg)
                for i in range(1, n + 1):
                    piece = sf.forward(i)
                    moved = phi_segment(piece, i, False, seg.net) != piece
                    assert moved == (classify_segment(piece, i).kind is not None)
                    piece = sf.mirrored(i)
                    moved = phi_segment(piece, i, True, seg.net) != piece
                    assert moved == (classify_segment(piece, i, True, seg.net).kind is not None)


@pytest.mark.parametrize("n", range(3))
def test_h_involution(n):
    seg = build_h(n)
    H = hankel(n)
    for I, J in _pairs(n + 1, n + 1):
        fams = enumerate_families(seg.net, seg.sources_for(I), seg.sinks_for(J))
        fixed = []
        for f in fams:
            g = phi_h(f, seg)
            assert phi_h(g, seg) == f
            if g == f:
                assert not classify_h(f, seg)
                fixed.append(f)
            else:
                assert g.weight == -f.weight
        assert poly_sum(f.weight for f in fixed) == det(submatrix(H, I, J))


def test_single_path_n1_has_three_pieces():
    seg = build_h(1)
    f = enumerate_families(seg.net, seg.sources_for((0,)), seg.sinks_for((0,)))[0]
    assert len(decompose(f, seg).pieces) == 3
