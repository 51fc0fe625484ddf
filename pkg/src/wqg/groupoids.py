"""Finite groups and groupoids, and the weak Hopf *-algebras they generate."""
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .algebra import AlgebraPresentation, tensor_presentation
from .coalgebra import Comultiplication
from .errors import InvalidGroupTable, InvalidGroupoid


@dataclass(frozen=True, eq=False)
class GroupoidPresentation:
    """Arrows with source/target units; compose[(g, h)] = gh is defined iff source(g) = target(h)."""
    arrows: tuple
    units: tuple
    source: dict
    target: dict
    compose: dict
    inverse: dict

    def composable(self, g, h):
        return self.source[g] == self.target[h]


def validate_groupoid(G):
    arrows = set(G.arrows)
    if len(arrows) != len(G.arrows):
        raise InvalidGroupoid("duplicate arrow labels")
    if not set(G.units) <= arrows:
        raise InvalidGroupoid("units must be arrows")
    for u in G.units:
        if G.source[u] != u or G.target[u] != u:
            raise InvalidGroupoid(f"unit {u} must be its own source and target")
    for g in G.arrows:
        if G.source[g] not in G.units or G.target[g] not in G.units:
            raise InvalidGroupoid(f"arrow {g} has a source or target that is not a unit")
        for h in G.arrows:
            defined = (g, h) in G.compose
            if defined != G.composable(g, h):
                raise InvalidGroupoid(f"composition of {g} and {h} is wrongly (un)defined")
            if defined:
                gh = G.compose[(g, h)]
                if G.target[gh] != G.target[g] or G.source[gh] != G.source[h]:
                    raise InvalidGroupoid(f"{g}{h} has the wrong endpoints")
        if G.compose[(G.target[g], g)] != g or G.compose[(g, G.source[g])] != g:
            raise InvalidGroupoid(f"unit laws fail at {g}")
        gi = G.inverse[g]
        if G.compose.get((g, gi)) != G.target[g] or G.compose.get((gi, g)) != G.source[g]:
            raise InvalidGroupoid(f"inverse law fails at {g}")
    for (g, h), gh in G.compose.items():
        for k in G.arrows:
            if G.composable(h, k):
                if G.compose[(gh, k)] != G.compose[(g, G.compose[(h, k)])]:
                    raise InvalidGroupoid(f"associativity fails at ({g}, {h}, {k})")
    return G


def pair_groupoid(points):
    """Arrows (i, j) from j to i on points 1..N, with (i, j)(j, k) = (i, k)."""
    pts = list(range(1, points + 1))
    arrows = tuple(f"({i},{j})" for i in pts for j in pts)
    lab = {(i, j): f"({i},{j})" for i in pts for j in pts}
    units = tuple(lab[(i, i)] for i in pts)
    source = {lab[(i, j)]: lab[(j, j)] for i in pts for j in pts}
    target = {lab[(i, j)]: lab[(i, i)] for i in pts for j in pts}
    compose = {(lab[(i, j)], lab[(j, k)]): lab[(i, k)] for i in pts for j in pts for k in pts}
    inverse = {lab[(i, j)]: lab[(j, i)] for i in pts for j in pts}
    return validate_groupoid(GroupoidPresentation(arrows, units, source, target, compose, inverse))


def validate_group_table(table):
    t = np.asarray(table)
    n = t.shape[0]
    if t.shape != (n, n) or n == 0:
        raise InvalidGroupTable("table must be square and non-empty")
    if not np.all((t >= 0) & (t < n)):
        raise InvalidGroupTable("entries must index group elements")
    for row in list(t) + list(t.T):
        if len(set(row.tolist())) != n:
            raise InvalidGroupTable("table is not a Latin square")
    ids = [e for e in range(n) if all(t[e, g] == g and t[g, e] == g for g in range(n))]
    if len(ids) != 1:
        raise InvalidGroupTable("no identity element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    raise InvalidGroupTable("table is not associative")
    return t, ids[0]


def group_as_groupoid(table, labels=None):
    t, e = validate_group_table(table)
    n = t.shape[0]
    labels = labels or [f"g{i}" for i in range(n)]
    u = labels[e]
    inv = {labels[a]: labels[int(np.where(t[a] == e)[0][0])] for a in range(n)}
    compose = {(labels[a], labels[b]): labels[t[a, b]] for a in range(n) for b in range(n)}
    return validate_groupoid(GroupoidPresentation(tuple(labels), (u,), {g: u for g in labels},
                                                  {g: u for g in labels}, compose, inv))


def disjoint_union(G1, G2):
    def tag(p, g):
        return f"{p}:{g}"
    arrows = tuple(tag("a", g) for g in G1.arrows) + tuple(tag("b", g) for g in G2.arrows)
    units = tuple(tag("a", u) for u in G1.units) + tuple(tag("b", u) for u in G2.units)
    src, tgt, comp, inv = {}, {}, {}, {}
    for p, G in (("a", G1), ("b", G2)):
        for g in G.arrows:
            src[tag(p, g)] = tag(p, G.source[g])
            tgt[tag(p, g)] = tag(p, G.target[g])
            inv[tag(p, g)] = tag(p, G.inverse[g])
        for (g, h), gh in G.compose.items():
            comp[(tag(p, g), tag(p, h))] = tag(p, gh)
    return validate_groupoid(GroupoidPresentation(arrows, units, src, tgt, comp, inv))


def cyclic_group_table(n):
    return np.add.outer(np.arange(n), np.arange(n)) % n


def symmetric_group_table(k):
    """Multiplication table of S_k with (p q)(x) = p(q(x)); element 0 is the identity."""
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.array([[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms])
    return table, ["".join(str(v + 1) for v in p) for p in perms]


def _comult_from(n, entries):
    D = np.zeros((n, n, n), dtype=complex)
    for (i, j, k), v in entries.items():
        D[i, j, k] += v
    return D


def gen_groupoid_convolution(G, name="convolution"):
    """Basis e^g with e^g e^h = e^{gh} when composable, Delta(e^g) = e^g (x) e^g, (e^g)* = e^{g^-1}."""
    validate_groupoid(G)
    idx = {g: i for i, g in enumerate(G.arrows)}
    n = len(G.arrows)
    mult = np.zeros((n, n, n), dtype=complex)
    for (g, h), gh in G.compose.items():
        mult[idx[g], idx[h], idx[gh]] = 1
    star = np.zeros((n, n), dtype=complex)
    for g in G.arrows:
        star[idx[G.inverse[g]], idx[g]] = 1
    unit = np.zeros(n, dtype=complex)
    for u in G.units:
        unit[idx[u]] = 1
    P = AlgebraPresentation(name, G.arrows, mult, star, unit)
    D = _comult_from(n, {(i, i, i): 1 for i in range(n)})
    return P, Comultiplication(P, D)


def gen_groupoid_function(G, name="function"):
    """Indicator basis, pointwise product, Delta(d_g) = sum over hk = g of d_h (x) d_k."""
    validate_groupoid(G)
    idx = {g: i for i, g in enumerate(G.arrows)}
    n = len(G.arrows)
    mult = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        mult[i, i, i] = 1
    P = AlgebraPresentation(name, G.arrows, mult, np.eye(n, dtype=complex), np.ones(n, dtype=complex))
    D = _comult_from(n, {(idx[h], idx[k], idx[g]): 1 for (h, k), g in G.compose.items()})
    return P, Comultiplication(P, D)


def gen_group_algebra(table, labels=None, name="group"):
    """Group algebra with Delta(l_g) = l_g (x) l_g and l_g* = l_{g^-1}."""
    G = group_as_groupoid(table, labels)
    return gen_groupoid_convolution(G, name)


def weighted_trace(G, weights):
    """phi(e^g) = w(g) on units, zero elsewhere: a left integral on the convolution algebra."""
    w = dict(zip(G.units, weights))
    return np.array([w.get(g, 0.0) for g in G.arrows], dtype=complex)


def source_weighted_sum(G, weights):
    """phi_u(f) = sum_g u(source g) f(g): a left integral on the function algebra."""
    u = dict(zip(G.units, weights))
    return np.array([u[G.source[g]] for g in G.arrows], dtype=complex)


def direct_sum(pair1, pair2, name=None):
    (P1, D1), (P2, D2) = pair1, pair2
    n1, n2 = P1.dim, P2.dim
    n = n1 + n2
    mult = np.zeros((n, n, n), dtype=complex)
    mult[:n1, :n1, :n1] = P1.mult
    mult[n1:, n1:, n1:] = P2.mult
    star = np.zeros((n, n), dtype=complex)
    star[:n1, :n1] = P1.star
    star[n1:, n1:] = P2.star
    unit = np.concatenate([P1.unit, P2.unit])
    labels = tuple(f"a:{l}" for l in P1.labels) + tuple(f"b:{l}" for l in P2.labels)
    P = AlgebraPresentation(name or f"{P1.name}+{P2.name}", labels, mult, star, unit)
    D = np.zeros((n, n, n), dtype=complex)
    D[:n1, :n1, :n1] = D1.tensor
    D[n1:, n1:, n1:] = D2.tensor
    return P, Comultiplication(P, D)


def tensor(pair1, pair2, name=None):
    (P1, D1), (P2, D2) = pair1, pair2
    P = tensor_presentation(P1, P2, name)
    n1, n2 = P1.dim, P2.dim
    # coefficient of (e_a (x) e_c) (x) (e_b (x) e_d) in Delta(e_i (x) e_j)
    D = np.einsum("abi,cdj->acbdij", D1.tensor, D2.tensor).reshape(n1 * n2, n1 * n2, n1 * n2)
    return P, Comultiplication(P, D)


def bundled_examples():
    """The generator families used throughout the acceptance suite, by name."""
    s3, s3_labels = symmetric_group_table(3)
    pg2, pg3 = pair_groupoid(2), pair_groupoid(3)
    return {
        "Z2": gen_group_algebra(cyclic_group_table(2), ["e", "g"], "C[Z2]"),
        "Z3": gen_group_algebra(cyclic_group_table(3), ["e", "g", "g2"], "C[Z3]"),
        "S3": gen_group_algebra(s3, s3_labels, "C[S3]"),
        "pair2_conv": gen_groupoid_convolution(pg2, "conv(pair2)"),
        "pair3_conv": gen_groupoid_convolution(pg3, "conv(pair3)"),
        "pair2_fun": gen_groupoid_function(pg2, "fun(pair2)"),
        "pair3_fun": gen_groupoid_function(pg3, "fun(pair3)"),
    }
