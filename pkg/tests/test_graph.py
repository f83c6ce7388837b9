import random

import networkx as nx
import numpy as np
import pytest

from hassepairs.errors import (
    BadDiscriminant,
    CharacteristicDegree,
    DegreeSetMismatch,
    EmptySet,
    MixedTypes,
    UnequalCycles,
    UnknownDegree,
    VertexEscapes,
)
from hassepairs.field import make_field
from hassepairs.forms import class_number, kronecker_class_number, reduced_forms
from hassepairs.graph import (
    IsogenyGraph,
    build_graph,
    edge_multiplicities,
    floor_vertices,
    frobenius_cycles,
    frobenius_edges,
    graphs_isomorphic,
    to_dot,
)
from hassepairs.modpoly import ModularPolynomialStore, bundled_modpoly_dir
from hassepairs.pairs import classify_pair
from hassepairs.sweep import ordinary_pairs, pair_graphs, pair_sets

STORE = ModularPolynomialStore(bundled_modpoly_dir())


def labels(G, adj_row):
    return {G.labels[v]: int(m) for v, m in enumerate(adj_row) if m}


def test_edge_multiplicity_examples():
    F7 = make_field(7)
    assert edge_multiplicities(F7(0), 2, F7, [F7(0), F7(2)], STORE) == {F7(2): 3}
    F = make_field(587)
    verts = [F(v) for v in (22, 203, 279, 354, 415, 427, 477, 576)]
    assert edge_multiplicities(F(415), 5, F, verts, STORE) == {F(22): 1, F(279): 1}
    assert edge_multiplicities(F(415), 7, F, verts, STORE) == {F(203): 1, F(354): 1}
    with pytest.raises(CharacteristicDegree):
        edge_multiplicities(F7(0), 7, F7, [F7(0)], STORE)
    with pytest.raises(UnknownDegree):
        edge_multiplicities(F7(0), 23, F7, [F7(0)], STORE)


def test_frobenius_edges():
    S1, _ = pair_sets(22801, 22501)
    F = S1[0].j.field
    perm = frobenius_edges([c.j for c in S1], F)
    assert all(k == v for k, v in perm.items())
    F625 = make_field(5, 4)
    g = F625.gen
    with pytest.raises(VertexEscapes):
        frobenius_edges([g], F625)


def _undirected_components(M):
    # sizes of components of the symmetric 0/1 pattern of M
    G = nx.Graph()
    G.add_nodes_from(range(len(M)))
    G.add_edges_from((int(u), int(v)) for u, v in zip(*np.nonzero(M)))
    return sorted(len(c) for c in nx.connected_components(G)), G


def test_graph_625_587():
    G1, G2 = pair_graphs(625, 587, (5, 7, 11), STORE)
    for G in (G1, G2):
        assert len(G) == 8
        comps, H = _undirected_components(G.adj[7])
        if G.field.p != 5:
            comps5, H5 = _undirected_components(G.adj[5])
            assert comps5 == [4, 4] and all(d == 2 for _, d in H5.degree())
        assert comps == [8] and all(d == 2 for _, d in H.degree())
        M11 = G.adj[11]
        assert (M11.sum(axis=1) == 1).all() and (M11 == M11.T).all() and not np.diag(M11).any()
    assert graphs_isomorphic(G1, G2) is not None


def test_graph_1021_1069():
    G1, G2 = pair_graphs(1021, 1069, (3, 5), STORE)
    for G in (G1, G2):
        assert len(G) == 13
        z = G.labels.index("0")
        assert int(G.adj[3][z, z]) == 1
        bundles = [int(m) for v, m in enumerate(G.adj[5][z]) if m and v != z]
        assert bundles == [3, 3]
    assert graphs_isomorphic(G1, G2) is not None


def test_graph_4_7_not_isomorphic():
    G1, G2 = pair_graphs(4, 7, (2,), STORE, allow_supersingular=True)
    assert len(G1) == len(G2) == 2
    assert labels(G2, G2.adj[2][G2.labels.index("0")]) == {"2": 3}
    assert graphs_isomorphic(G1, G2) is None


def test_single_vertex_loop():
    for q1, q2 in ((2, 4), (4, 8)):
        G1, G2 = pair_graphs(q1, q2, (2,), STORE)
        for G in (G1, G2):
            assert len(G) == 1 and frobenius_cycles(G) == (1, 1)
            assert to_dot(G).count("->") == 1
        assert graphs_isomorphic(G1, G2) is not None


def test_graph_22801_22501():
    G1, G2 = pair_graphs(22801, 22501, (3, 17, 19), STORE)
    assert frobenius_cycles(G1) == (1, 5) and frobenius_cycles(G2) == (1, 5)
    assert graphs_isomorphic(G1, G2) is not None


def test_build_errors():
    with pytest.raises(EmptySet):
        build_graph([], (2,), STORE)
    S1, S2 = pair_sets(4, 7)
    with pytest.raises(MixedTypes):
        build_graph(S1 + S2[:0], (2,), STORE)
    G1, _ = pair_graphs(625, 587, (5,), STORE)
    _, H2 = pair_graphs(625, 587, (7,), STORE)
    with pytest.raises(DegreeSetMismatch):
        graphs_isomorphic(G1, H2)


def test_iso_self_and_dot_determinism():
    G1, G2 = pair_graphs(1021, 1069, (3, 5), STORE)
    sigma = graphs_isomorphic(G1, G1)
    assert sigma is not None
    assert to_dot(G1) == to_dot(pair_graphs(1021, 1069, (3, 5), STORE)[0])


def test_dot_collapses_opposite_edges():
    _, G2 = pair_graphs(4, 7, (2,), STORE, allow_supersingular=True)
    dot = to_dot(G2)
    assert dot.count("v0 -> v1 [color=black, dir=none") == 1
    assert dot.count('v0 -> v1 [color=black, label="2"]') == 2
    assert "v1 -> v0" not in dot


def test_unequal_cycles_raise():
    G = IsogenyGraph(make_field(7), [0, 1, 2], ["a", "b", "c"], (2,), {2: np.zeros((3, 3), int)}, None, [1, 0, 2])
    with pytest.raises(UnequalCycles):
        frobenius_cycles(G)


# ---- isomorphism search against networkx


def _to_nx(G):
    H = nx.DiGraph()
    H.add_nodes_from(range(len(G)))
    for (u, v, ell), m in G.edges.items():
        if H.has_edge(u, v):
            H[u][v]["w"] = H[u][v]["w"] + ((ell, m),)
        else:
            H.add_edge(u, v, w=((ell, m),))
    return H


def _nx_iso(G1, G2):
    return nx.is_isomorphic(_to_nx(G1), _to_nx(G2), edge_match=lambda a, b: sorted(a["w"]) == sorted(b["w"]))


def _perturbed(G, rng):
    adj = {ell: M.copy() for ell, M in G.adj.items()}
    ell = rng.choice(G.degrees)
    u, v = rng.randrange(len(G)), rng.randrange(len(G))
    adj[ell][u, v] += 1
    return IsogenyGraph(G.field, G.vertices, G.labels, G.degrees, adj, G.side, G.frobenius)


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(3)
    recs = [r for r in ordinary_pairs(700)]
    for r in rng.sample(recs, 40):
        G1, G2 = pair_graphs(r.q1.q, r.q2.q, (2, 3, 5), STORE)
        assert (graphs_isomorphic(G1, G2) is not None) == _nx_iso(G1, G2)
        H = _perturbed(G2, rng)
        assert (graphs_isomorphic(G1, H) is not None) == _nx_iso(G1, H)


def test_isomorphism_bijection_is_valid():
    G1, G2 = pair_graphs(625, 587, (2, 3, 5, 7, 11), STORE)
    sigma = graphs_isomorphic(G1, G2)
    idx = [G2.labels.index(sigma[lab]) for lab in G1.labels]
    for ell in G1.degrees:
        assert np.array_equal(G2.adj[ell][np.ix_(idx, idx)], G1.adj[ell])


# ---- per-pair structural properties on a sample of the sweep


@pytest.fixture(scope="module")
def sample_graphs():
    out = []
    for r in ordinary_pairs(1200):
        out.append((r, *pair_graphs(r.q1.q, r.q2.q, (2, 3, 5, 7, 11, 13), STORE)))
    return out


def test_out_degree_bound(sample_graphs):
    for _, G1, G2 in sample_graphs:
        for G in (G1, G2):
            for ell in G.degrees:
                if ell != G.field.p:
                    assert (G.adj[ell].sum(axis=1) <= ell + 1).all()


def test_dual_symmetry(sample_graphs):
    for _, G1, G2 in sample_graphs:
        for G in (G1, G2):
            F = G.field
            ok = np.array([v != F(0) and v != F(1728) for v in G.vertices])
            for ell in G.degrees:
                M = G.adj[ell][np.ix_(ok, ok)]
                assert np.array_equal(M, M.T)


def test_j0_triple_bundles(sample_graphs):
    for r, G1, G2 in sample_graphs:
        if r.fundamental_D != -3:
            continue
        for G in (G1, G2):
            z = G.labels.index("0") if "0" in G.labels else G.labels.index(":".join(["0"] * G.field.a))
            for ell in G.degrees:
                if ell == G.field.p:
                    continue
                row = G.adj[ell][z]
                assert all(int(m) == 3 for v, m in enumerate(row) if m and v != z)


def test_frobenius_on_floor(sample_graphs):
    for r, G1, G2 in sample_graphs:
        h = class_number(r.delta)
        lengths = []
        for G in (G1, G2):
            floor = floor_vertices(G, r.conductor_f, STORE)
            if floor is None:
                continue
            iota, n = frobenius_cycles(G, floor)
            assert iota * n == h == len(floor)
            assert G.field.a % iota == 0
            lengths.append(iota)
            if r.conductor_f == 1:
                assert frobenius_cycles(G) == (iota, n)


# ---- class numbers


def test_class_number_examples():
    assert class_number(-3) == 1
    assert class_number(-979) == 8
    assert class_number(-75) == 2 and reduced_forms(-75) == [(1, 1, 19), (3, 3, 7)]
    assert kronecker_class_number(-1875) == 13 == class_number(-3) + class_number(-75) + class_number(-1875)
    assert kronecker_class_number(-979) == 8 and kronecker_class_number(-3) == 1
    with pytest.raises(BadDiscriminant):
        class_number(-5)
    with pytest.raises(BadDiscriminant):
        class_number(8)


def test_reduced_forms_are_reduced():
    for d in range(-3, -3000, -1):
        if d % 4 not in (0, 1):
            continue
        for a, b, c in reduced_forms(d):
            assert b * b - 4 * a * c == d
            assert abs(b) <= a <= c
            if abs(b) == a or a == c:
                assert b >= 0


def test_vertex_counts(sample_graphs):
    for r, G1, G2 in sample_graphs:
        assert len(G1) == len(G2) == kronecker_class_number(r.delta)


def test_delta_matches_record():
    assert classify_pair(22801, 22501).delta == -603
