"""Frozen worked examples and a runner that re-derives each one.

Fixture file: UTF-8 JSON lines, one case per line.  Keys:

``name``        short identifier
``pair``        [q1, q2]
``statuses``    expected [e1, e2] status ("ordinary", "supersingular", "empty")
``delta``       expected discriminant, or null when not asserted
``splits``      optional expected [split1, split2]
``sides``       two objects, each optionally holding ``count`` (number of
                classes), ``js`` (j-invariants as integers, prime fields) or
                ``prime_subfield_js`` (j-invariants lying in F_p inside an
                extension field, as residues; repeated for repeated classes)
``graph``       null or {degrees, vertices: [n1, n2], isomorphic, optional
                allow_supersingular, cycles: [[iota, n], [iota, n]],
                edges: [[side, from, to, degree, mult], ...]}
``source``      where the example comes from
``note``        optional free text carried into the report
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graph import frobenius_cycles, graphs_isomorphic
from .modpoly import ModularPolynomialStore, default_store
from .pairs import classify_pair
from .sweep import pair_graphs, pair_sets


@dataclass(frozen=True)
class FixtureCase:
    name: str
    pair: tuple[int, int]
    statuses: tuple[str, str]
    delta: int | None
    splits: tuple[str, str] | None
    sides: tuple[dict, dict]
    graph: dict | None
    source: str
    note: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "FixtureCase":
        return cls(
            name=d["name"],
            pair=tuple(d["pair"]),
            statuses=tuple(d["statuses"]),
            delta=d.get("delta"),
            splits=tuple(d["splits"]) if d.get("splits") else None,
            sides=tuple(d.get("sides") or ({}, {})),
            graph=d.get("graph"),
            source=d["source"],
            note=d.get("note"),
        )


def fixture_path() -> Path:
    return Path(str(resources.files("hassepairs") / "data" / "fixtures.jsonl"))


def load_fixtures(path: str | Path | None = None) -> list[FixtureCase]:
    with open(Path(path) if path else fixture_path(), encoding="utf-8") as fh:
        return [FixtureCase.from_dict(json.loads(s)) for s in fh if s.strip()]


@dataclass(frozen=True)
class FixtureResult:
    name: str
    source: str
    passed: bool
    failures: tuple[str, ...]
    note: str | None

    def as_dict(self) -> dict:
        d = {"name": self.name, "source": self.source, "passed": self.passed, "failures": list(self.failures)}
        if self.note:
            d["note"] = self.note
        return d


def _check_side(k: int, expect: dict, classes) -> list[str]:
    bad = []
    if "count" in expect and len(classes) != expect["count"]:
        bad.append(f"E{k}: {len(classes)} classes, expected {expect['count']}")
    if "js" in expect:
        got = sorted({int(c.j.serialize()) for c in classes})
        if got != sorted(set(expect["js"])):
            bad.append(f"E{k}: j-set {got}, expected {sorted(set(expect['js']))}")
    if "prime_subfield_js" in expect:
        if not all(c.j.in_prime_field for c in classes):
            bad.append(f"E{k}: some j outside the prime field")
        else:
            got = sorted(c.j.index for c in classes)
            if got != sorted(expect["prime_subfield_js"]):
                bad.append(f"E{k}: j-values {got}, expected {sorted(expect['prime_subfield_js'])}")
    return bad


def _check_graph(g: dict, q1: int, q2: int, store: ModularPolynomialStore) -> list[str]:
    bad = []
    G1, G2 = pair_graphs(q1, q2, g["degrees"], store, g.get("allow_supersingular", False))
    if [len(G1), len(G2)] != g["vertices"]:
        bad.append(f"vertex counts {[len(G1), len(G2)]}, expected {g['vertices']}")
    iso = graphs_isomorphic(G1, G2) is not None
    if iso != g["isomorphic"]:
        bad.append(f"isomorphic={iso}, expected {g['isomorphic']}")
    if "cycles" in g:
        got = [list(frobenius_cycles(G)) for G in (G1, G2)]
        if got != g["cycles"]:
            bad.append(f"Frobenius cycles {got}, expected {g['cycles']}")
    for side, u, v, ell, m in g.get("edges", []):
        G = G1 if side == 1 else G2
        if u not in G.labels or v not in G.labels:
            bad.append(f"E{side}: vertex {u} or {v} missing")
            continue
        got = int(G.adj[ell][G.labels.index(u), G.labels.index(v)])
        if got != m:
            bad.append(f"E{side}: {u}->{v} degree {ell} multiplicity {got}, expected {m}")
    return bad


def evaluate(case: FixtureCase, store: ModularPolynomialStore | None = None) -> FixtureResult:
    store = store or default_store()
    q1, q2 = case.pair
    bad: list[str] = []
    try:
        rec = classify_pair(q1, q2)
        got = (rec.e1_status.value, rec.e2_status.value)
        if got != case.statuses:
            bad.append(f"statuses {got}, expected {case.statuses}")
        if case.delta is not None and rec.delta != case.delta:
            bad.append(f"delta {rec.delta}, expected {case.delta}")
        if case.splits and (rec.split1.value, rec.split2.value) != case.splits:
            bad.append(f"splits {(rec.split1.value, rec.split2.value)}, expected {case.splits}")
        if any(case.sides):
            S = pair_sets(q1, q2) if "empty" not in case.statuses else ([], [])
            for k, (expect, classes) in enumerate(zip(case.sides, S), 1):
                bad += _check_side(k, expect, classes)
        if case.graph:
            bad += _check_graph(case.graph, q1, q2, store)
    except Exception as exc:  # reported, not raised
        bad.append(f"{type(exc).__name__}: {exc}")
    return FixtureResult(case.name, case.source, not bad, tuple(bad), case.note)


def run_fixture_suite(
    path: str | Path | None = None, store: ModularPolynomialStore | None = None
) -> list[FixtureResult]:
    return [evaluate(c, store) for c in load_fixtures(path)]
