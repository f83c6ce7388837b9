"""Both curve sets of a Hasse pair, their graphs, and the pair-by-pair sweep."""

from __future__ import annotations

import multiprocessing
import os
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from .curves import CurveClass, enumerate_set
from .errors import UnequalCycles
from .field import field_of_order
from .forms import class_number, kronecker_class_number
from .graph import IsogenyGraph, build_graph, floor_vertices, frobenius_cycle_lengths, graphs_isomorphic
from .modpoly import ModularPolynomialStore, default_store
from .pairs import PairRecord, Status, classify_pair, enumerate_hasse_pairs

DEFAULT_DEGREES = (2, 3, 5, 7, 11, 13)


def pair_sets(q1: int, q2: int) -> tuple[list[CurveClass], list[CurveClass]]:
    """E1 over F_q1 with q2 points and E2 over F_q2 with q1 points."""
    return enumerate_set(field_of_order(q1), q2), enumerate_set(field_of_order(q2), q1)


def pair_graphs(
    q1: int,
    q2: int,
    degrees: Iterable[int] = DEFAULT_DEGREES,
    store: ModularPolynomialStore | None = None,
    allow_supersingular: bool = False,
) -> tuple[IsogenyGraph, IsogenyGraph]:
    store = store or default_store()
    S1, S2 = pair_sets(q1, q2)
    B = tuple(degrees)
    return (
        build_graph(S1, B, store, "E1", allow_supersingular),
        build_graph(S2, B, store, "E2", allow_supersingular),
    )


@dataclass(frozen=True)
class PairCheck:
    q1: int
    q2: int
    delta: int
    conductor: int
    vertices: tuple[int, int]
    kronecker_h: int
    isomorphic: bool
    floor_h: int
    floor_sizes: tuple[int, int] | None
    floor_cycles: tuple[tuple[int, int], tuple[int, int]] | None
    whole_cycles_equal: tuple[bool, bool]

    @property
    def ok(self) -> bool:
        """Isomorphic graphs, vertex counts equal to the Kronecker class
        number, and (when checkable) equal-length Frobenius cycles on the
        floor covering h(Delta) vertices."""
        if not self.isomorphic or set(self.vertices) != {self.kronecker_h}:
            return False
        if self.floor_cycles is None:
            return True
        return all(i * n == self.floor_h for i, n in self.floor_cycles)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _side_cycles(G: IsogenyGraph, floor: list[int] | None) -> tuple[int, int] | None:
    if floor is None:
        return None
    lengths = frobenius_cycle_lengths(G, floor)
    if len(set(lengths)) != 1:
        raise UnequalCycles(f"{G.side}: floor cycle lengths {sorted(lengths)}")
    return lengths[0], len(lengths)


def check_pair(
    q1: int,
    q2: int,
    degrees: Iterable[int] = DEFAULT_DEGREES,
    store: ModularPolynomialStore | None = None,
) -> PairCheck:
    store = store or default_store()
    rec = classify_pair(q1, q2)
    G1, G2 = pair_graphs(q1, q2, degrees, store)
    iso = graphs_isomorphic(G1, G2) is not None
    f = rec.conductor_f
    F1, F2 = floor_vertices(G1, f, store), floor_vertices(G2, f, store)
    if F1 is None or F2 is None:
        floor_sizes, cycles = None, None
    else:
        floor_sizes = (len(F1), len(F2))
        cycles = (_side_cycles(G1, F1), _side_cycles(G2, F2))
    whole = tuple(len(set(frobenius_cycle_lengths(G))) == 1 for G in (G1, G2))
    return PairCheck(
        q1=q1,
        q2=q2,
        delta=rec.delta,
        conductor=f,
        vertices=(len(G1), len(G2)),
        kronecker_h=kronecker_class_number(rec.delta),
        isomorphic=iso,
        floor_h=class_number(rec.delta),
        floor_sizes=floor_sizes,
        floor_cycles=cycles,
        whole_cycles_equal=whole,
    )


def ordinary_pairs(max_q: int) -> list[PairRecord]:
    """Ordinary Hasse pairs q1 < q2 <= max_q (each unordered pair once)."""
    return [
        r
        for r in enumerate_hasse_pairs(max_q)
        if r.e1_status is Status.ORDINARY and r.e2_status is Status.ORDINARY
    ]


_WORKER_STORE: ModularPolynomialStore | None = None


def _init_worker(directory: str) -> None:
    global _WORKER_STORE
    _WORKER_STORE = ModularPolynomialStore(directory)


def _work(args) -> PairCheck:
    q1, q2, degrees = args
    return check_pair(q1, q2, degrees, _WORKER_STORE)


def default_jobs() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover
        return max(1, os.cpu_count() or 1)


def sweep(
    max_q: int,
    degrees: Iterable[int] = DEFAULT_DEGREES,
    jobs: int = 1,
    store: ModularPolynomialStore | None = None,
) -> Iterator[PairCheck]:
    """check_pair over every ordinary pair up to max_q, yielded in pair order
    whatever the number of workers."""
    store = store or default_store()
    B = tuple(sorted(set(degrees)))
    tasks = [(r.q1.q, r.q2.q, B) for r in ordinary_pairs(max_q)]
    if jobs <= 1:
        for q1, q2, _ in tasks:
            yield check_pair(q1, q2, B, store)
        return
    method = "fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn"
    ctx = multiprocessing.get_context(method)
    with ctx.Pool(jobs, initializer=_init_worker, initargs=(str(store.directory),)) as pool:
        yield from pool.imap(_work, tasks, chunksize=8)

