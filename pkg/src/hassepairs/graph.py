"""Coloured isogeny multigraphs G_B(E) on j-invariants, exact isomorphism
search and Frobenius cycle structure."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .curves import CurveClass, CurveModel, _iso_char2_j0, _iso_char3_j0, is_supersingular, j_set
from .errors import (
    CharacteristicDegree,
    DegreeSetMismatch,
    EmptySet,
    HasseError,
    MixedTypes,
    UnequalCycles,
    UnknownDegree,
    VertexEscapes,
)
from .field import FieldElement, FiniteField
from .forms import class_number, kronecker_class_number  # noqa: F401  (re-export)
from .modpoly import SUPPORTED_DEGREES, ModularPolynomialStore

DOT_COLORS = {2: "black", 3: "green", 5: "blue", 7: "red", 11: "darkgreen", 13: "purple", 17: "teal", 19: "olive"}


class UnsupportedGraph(HasseError, ValueError):
    pass


@dataclass
class IsogenyGraph:
    """Vertices in canonical order; ``adj[l][u, v]`` is the multiplicity of
    colour-l edges u -> v."""

    field: FiniteField
    vertices: list
    labels: list[str]
    degrees: tuple[int, ...]
    adj: dict[int, np.ndarray]
    side: str | None = None
    frobenius: list[int] | None = dc_field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> dict[tuple[int, int, int], int]:
        out = {}
        for ell in self.degrees:
            M = self.adj[ell]
            for u, v in zip(*np.nonzero(M)):
                out[(int(u), int(v), ell)] = int(M[u, v])
        return dict(sorted(out.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])))

    def out_degree(self, u: int, ell: int) -> int:
        return int(self.adj[ell][u].sum())

    def to_json(self) -> dict:
        return {
            "field": {"p": self.field.p, "a": self.field.a, "modulus": list(self.field.modulus)},
            "side": self.side,
            "degrees": list(self.degrees),
            "vertices": self.labels,
            "edges": [
                {"from": self.labels[u], "to": self.labels[v], "degree": ell, "mult": m}
                for (u, v, ell), m in self.edges.items()
            ],
        }


# -------------------------------------------------------------- edges


def _frobenius_map(vertex_idx: Sequence[int], field: FiniteField) -> list[int]:
    T = field.tables
    pos = {v: i for i, v in enumerate(vertex_idx)}
    images = T.power(np.asarray(vertex_idx, dtype=np.int64), field.p)
    out = []
    for v, w in zip(vertex_idx, images):
        if int(w) not in pos:
            raise VertexEscapes(f"{field.from_index(v)}^p = {field.from_index(int(w))} leaves the vertex set")
        out.append(pos[int(w)])
    return out


def frobenius_edges(vertex_set: Iterable[FieldElement], field: FiniteField) -> dict[FieldElement, FieldElement]:
    """j -> j^p on the vertex set."""
    verts = list(vertex_set)
    perm = _frobenius_map([v.index for v in verts], field)
    return {v: verts[perm[i]] for i, v in enumerate(verts)}


def _frobenius_adjacency(perm: list[int]) -> np.ndarray:
    """Frobenius u -> F(u) plus its dual u -> F^{-1}(u), one edge each."""
    n = len(perm)
    M = np.zeros((n, n), dtype=np.int64)
    for u, w in enumerate(perm):
        M[u, w] += 1
        M[w, u] += 1
    return M


def edge_multiplicities(
    j: FieldElement, ell: int, field: FiniteField, vertex_set: Iterable[FieldElement], store: ModularPolynomialStore
) -> dict[FieldElement, int]:
    """Roots of Phi_l(j, Y) inside ``vertex_set`` with multiplicities."""
    if ell == field.p:
        raise CharacteristicDegree(f"l = {ell} is the characteristic: use frobenius_edges")
    if ell not in SUPPORTED_DEGREES:
        raise UnknownDegree(f"no modular polynomial of degree {ell}")
    verts = list(vertex_set)
    M = store[ell].multiplicity_matrix(field.tables, [j.index], [v.index for v in verts])[0]
    return {v: int(m) for v, m in zip(verts, M) if m}


# -------------------------------------------------------------- construction


def _class_frobenius(classes: Sequence[CurveClass]) -> list[int]:
    """Frobenius on isomorphism classes (coefficients raised to the p-th power)."""
    F = classes[0].model.field
    p = F.p
    out = []
    for c in classes:
        m = c.model
        img = CurveModel(F, *(x.frobenius() for x in m.coeffs))
        hits = []
        for k, d in enumerate(classes):
            if d.j != c.j.frobenius():
                continue
            if p == 2 and m.a1.is_zero():
                same = _iso_char2_j0(img, d.model)
            elif p == 3 and m.a2.is_zero() and (d.j.is_zero()):
                same = _iso_char3_j0(img, d.model)
            else:
                raise UnsupportedGraph("class-level Frobenius only for j = 0 in characteristic 2 and 3")
            if same:
                hits.append(k)
        if len(hits) != 1:
            raise VertexEscapes(f"Frobenius image of class {c.model} matched {len(hits)} classes")
        out.append(hits[0])
    return out


def build_graph(
    classes: Sequence[CurveClass],
    B: Iterable[int],
    store: ModularPolynomialStore,
    side: str | None = None,
    allow_supersingular: bool = False,
) -> IsogenyGraph:
    """G_B of a set of classes: colour l edges from Phi_l, or Frobenius and its
    dual when l is the characteristic."""
    if not classes:
        raise EmptySet("no classes")
    F = classes[0].model.field
    degrees = tuple(sorted(set(B)))
    ss = {is_supersingular(c) for c in classes}
    if len(ss) > 1:
        raise MixedTypes("ordinary and supersingular classes mixed")
    supersingular = ss.pop()
    if supersingular and not allow_supersingular:
        raise MixedTypes("supersingular sets are only built on request")

    if not supersingular:
        verts = j_set(list(classes))
        labels = [v.serialize() for v in verts]
        idx = [v.index for v in verts]
        frob = _frobenius_map(idx, F)
    else:
        # one vertex per class; repeated j-invariants get a class suffix
        verts = list(classes)
        js = [c.j.serialize() for c in verts]
        labels = [f"{s}#{js[:k].count(s)}" if js.count(s) > 1 else s for k, s in enumerate(js)]
        idx = [c.j.index for c in verts]
        frob = _class_frobenius(verts)

    adj = {}
    for ell in degrees:
        if ell == F.p:
            adj[ell] = _frobenius_adjacency(frob)
            continue
        if ell not in SUPPORTED_DEGREES:
            raise UnknownDegree(f"no modular polynomial of degree {ell}")
        if supersingular and len(set(idx)) < len(idx):
            raise UnsupportedGraph("Phi-edges need distinct j-invariants")
        adj[ell] = store[ell].multiplicity_matrix(F.tables, idx, idx)
    return IsogenyGraph(F, verts, labels, degrees, adj, side, frob)


# -------------------------------------------------------------- isomorphism


def _refine(mats1, mats2, c1, c2):
    """Joint colour refinement of two graphs; returns new colour arrays."""
    n1 = len(c1)
    while True:
        sigs = []
        for mats, col in ((mats1, c1), (mats2, c2)):
            for u in range(len(col)):
                parts = [int(col[u])]
                for M in mats:
                    row, colm = M[u], M[:, u]
                    out_nb = tuple(sorted((int(row[v]), int(col[v])) for v in np.flatnonzero(row)))
                    in_nb = tuple(sorted((int(colm[v]), int(col[v])) for v in np.flatnonzero(colm)))
                    parts.append((out_nb, in_nb, int(M[u, u])))
                sigs.append(tuple(parts))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = np.array([palette[s] for s in sigs], dtype=np.int64)
        n1c, n2c = new[:n1], new[n1:]
        if len(palette) == len(set(np.concatenate([c1, c2]).tolist())):
            return n1c, n2c
        c1, c2 = n1c, n2c


def _balanced(c1, c2) -> bool:
    return sorted(c1.tolist()) == sorted(c2.tolist())


def _search(mats1, mats2, c1, c2):
    c1, c2 = _refine(mats1, mats2, c1, c2)
    if not _balanced(c1, c2):
        return None
    counts = np.bincount(c1)
    multi = [c for c in range(len(counts)) if counts[c] > 1]
    if not multi:
        sigma = np.empty(len(c1), dtype=np.int64)
        pos2 = {int(c): v for v, c in enumerate(c2)}
        for u, c in enumerate(c1):
            sigma[u] = pos2[int(c)]
        for M1, M2 in zip(mats1, mats2):
            if not np.array_equal(M2[np.ix_(sigma, sigma)], M1):
                return None
        return sigma
    cell = min(multi, key=lambda c: (counts[c], c))
    u = int(np.flatnonzero(c1 == cell)[0])
    fresh = int(max(c1.max(), c2.max())) + 1
    for v in np.flatnonzero(c2 == cell):
        d1, d2 = c1.copy(), c2.copy()
        d1[u] = fresh
        d2[v] = fresh
        res = _search(mats1, mats2, d1, d2)
        if res is not None:
            return res
    return None


def graphs_isomorphic(G1: IsogenyGraph, G2: IsogenyGraph) -> dict[str, str] | None:
    """A colour- and multiplicity-preserving vertex bijection, or None."""
    if tuple(G1.degrees) != tuple(G2.degrees):
        raise DegreeSetMismatch(f"{G1.degrees} vs {G2.degrees}")
    if len(G1) != len(G2):
        return None
    mats1 = [G1.adj[ell] for ell in G1.degrees]
    mats2 = [G2.adj[ell] for ell in G2.degrees]
    n = len(G1)
    sigma = _search(mats1, mats2, np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
    if sigma is None:
        return None
    return {G1.labels[u]: G2.labels[int(sigma[u])] for u in range(n)}


# -------------------------------------------------------------- Frobenius


def frobenius_cycle_lengths(G: IsogenyGraph, subset: Iterable[int] | None = None) -> list[int]:
    """Cycle lengths of Frobenius on the vertices (or on a Frobenius-stable subset)."""
    perm = G.frobenius
    todo = range(len(perm)) if subset is None else sorted(subset)
    seen = set()
    lengths = []
    for s in todo:
        if s in seen:
            continue
        k, u = 0, s
        while u not in seen:
            seen.add(u)
            u = perm[u]
            k += 1
        if u != s:
            raise VertexEscapes("subset is not stable under Frobenius")
        lengths.append(k)
    if subset is not None and not seen <= set(todo):
        raise VertexEscapes("subset is not stable under Frobenius")
    return lengths


def frobenius_cycles(G: IsogenyGraph, subset: Iterable[int] | None = None) -> tuple[int, int]:
    """(iota, number of cycles) of Frobenius on the vertices; all cycles must
    have the same length."""
    lengths = frobenius_cycle_lengths(G, subset)
    if len(set(lengths)) != 1:
        raise UnequalCycles(f"Frobenius cycle lengths {sorted(lengths)}")
    return lengths[0], len(lengths)


def floor_vertices(G: IsogenyGraph, conductor: int, store: ModularPolynomialStore) -> list[int] | None:
    """Vertices whose endomorphism ring is the full order O_Delta.

    For every prime l | f such a vertex sits on the floor of its l-volcano,
    where Phi_l(j, Y) has a single root among the vertices (the ascending
    edge).  Needs Phi_l for every l | f; returns None otherwise.
    """
    from .arith import factorint

    F = G.field
    if G.frobenius is None or any(isinstance(v, CurveClass) for v in G.vertices):
        return None
    idx = [v.index for v in G.vertices]
    keep = np.ones(len(idx), dtype=bool)
    for ell in factorint(conductor):
        if ell == F.p or ell not in SUPPORTED_DEGREES:
            return None
        M = store[ell].multiplicity_matrix(F.tables, idx, idx)
        keep &= M.sum(axis=1) == 1
    return [int(i) for i in np.flatnonzero(keep)]


# -------------------------------------------------------------- DOT


def to_dot(G: IsogenyGraph, name: str = "G") -> str:
    """Deterministic DOT; opposite edges of one colour are drawn as one
    undirected edge."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for i, lab in enumerate(G.labels):
        lines.append(f'  v{i} [label="{lab}"];')
    for ell in G.degrees:
        color = DOT_COLORS.get(ell, "gray")
        M = G.adj[ell]
        n = len(G)
        for u in range(n):
            for v in range(u, n):
                if u == v:
                    m = int(M[u, u])
                    und, dirs = m // 2, [(u, u, m % 2)]
                else:
                    a, b = int(M[u, v]), int(M[v, u])
                    und = min(a, b)
                    dirs = [(u, v, a - und), (v, u, b - und)]
                for _ in range(und):
                    lines.append(f'  v{u} -> v{v} [color={color}, dir=none, label="{ell}"];')
                for x, y, k in dirs:
                    for _ in range(k):
                        lines.append(f'  v{x} -> v{y} [color={color}, label="{ell}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(G: IsogenyGraph) -> str:
    return json.dumps(G.to_json(), separators=(",", ":"))
