"""Independent reference computations used by the tests.

Nothing here calls into the determinant, path or character code under test:
polynomials and determinants go through sympy, paths through networkx, and
characters through the Frobenius formula.
"""
from __future__ import annotations

from itertools import permutations, product
from math import comb

import networkx as nx
import sympy

from tpverify.qpoly import QPoly

q = sympy.Symbol("q")


def to_sym(p: QPoly):
    return sum((c * q**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def from_sym(expr) -> QPoly:
    expr = sympy.expand(expr)
    if expr == 0:
        return QPoly(())
    return QPoly(tuple(int(c) for c in reversed(sympy.Poly(expr, q).all_coeffs())))


def sym_matrix(m):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: to_sym(m[i, j]))


def det_oracle(m) -> QPoly:
    if m.rows == 0:
        return QPoly((1,))
    return from_sym(sym_matrix(m).det(method="berkowitz"))


def permanent_oracle(m) -> QPoly:
    total = sympy.Integer(0)
    for perm in permutations(range(m.rows)):
        term = sympy.Integer(1)
        for i, j in enumerate(perm):
            term *= to_sym(m[i, j])
        total += term
    return from_sym(total)


def narayana_oracle(n: int) -> QPoly:
    return QPoly(tuple(comb(n, k) ** 2 for k in range(n + 1)))


def hankel_oracle(n: int):
    return [[narayana_oracle(i + j) for j in range(n + 1)] for i in range(n + 1)]


# -- paths ---------------------------------------------------------------


def to_nx(net) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(net.vertices)
    for a in net.arcs:
        g.add_edge(a.tail, a.head, key=a.tag or "", weight=to_sym(a.weight))
    return g


def paths_oracle(g: nx.MultiDiGraph, u, v):
    """List of (vertex set, sympy weight) for every u -> v path."""
    if u == v:
        return [({u}, sympy.Integer(1))]
    out = []
    for edges in nx.all_simple_edge_paths(g, u, v):
        w = sympy.Integer(1)
        verts = {u}
        for tail, head, key in edges:
            w *= g.edges[tail, head, key]["weight"]
            verts.add(head)
        out.append((verts, w))
    return out


def path_gf_oracle(net, u, v) -> QPoly:
    return from_sym(sum((w for _, w in paths_oracle(to_nx(net), u, v)), sympy.Integer(0)))


def family_gf_oracle(net, U, V):
    """Sum of weights of vertex-disjoint families by brute force over path tuples."""
    g = to_nx(net)
    options = [paths_oracle(g, u, v) for u, v in zip(U, V)]
    total = sympy.Integer(0)
    count = 0
    for combo in product(*options):
        seen = set()
        ok = True
        for verts, _ in combo:
            if seen & verts:
                ok = False
                break
            seen |= verts
        if ok:
            count += 1
            w = sympy.Integer(1)
            for _, pw in combo:
                w *= pw
            total += w
    return from_sym(total), count


# -- characters ------------------------------------------------------------


def character_oracle(lam, mu) -> int:
    """Frobenius formula: coefficient of x^(lam + delta) in a_delta * p_mu."""
    k = sum(lam)
    length = k
    xs = sympy.symbols(f"x0:{length}")
    lam = list(lam) + [0] * (length - len(lam))
    vandermonde = sympy.Integer(1)
    for i in range(length):
        for j in range(i + 1, length):
            vandermonde *= xs[i] - xs[j]
    power_sums = sympy.Integer(1)
    for part in mu:
        power_sums *= sum(x**part for x in xs)
    poly = sympy.Poly(sympy.expand(vandermonde * power_sums), *xs)
    exps = tuple(lam[i] + length - 1 - i for i in range(length))
    return int(poly.coeff_monomial(exps))


def immanant_oracle(m, lam, char) -> QPoly:
    total = sympy.Integer(0)
    for perm in permutations(range(m.rows)):
        seen = [False] * m.rows
        cycles = []
        for s in range(m.rows):
            if seen[s]:
                continue
            c, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                c += 1
            cycles.append(c)
        term = sympy.Integer(char(tuple(lam), tuple(sorted(cycles, reverse=True))))
        for i, j in enumerate(perm):
            term *= to_sym(m[i, j])
        total += term
    return from_sym(total)
