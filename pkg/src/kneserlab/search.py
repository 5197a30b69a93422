"""Exhaustive search for extremal families on small Kneser graphs.

The engine walks the k-sets in lexicographic order and branches on
including or excluding each one.  It minimises either the maximum degree
(over non-intersecting families) or the number of edges, and prunes with

* the incumbent: objectives only grow as sets are added, and
* a counting bound: the ``r`` sets still to be added each gain at least as
  many neighbours as they already have among the chosen sets, so the
  cheapest ``r`` candidates bound the final objective from below.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetError, DomainError
from .kneser import Family
from .setkit import Params, binom, enumerate_all, to_elements, to_mask

DEFAULT_NODES = 50_000_000
DEFAULT_SECONDS = 600.0
COVER_BUDGET = 2_000_000


@dataclass(frozen=True)
class Budget:
    max_nodes: int = DEFAULT_NODES
    max_seconds: float = DEFAULT_SECONDS

    @classmethod
    def from_env(cls, max_seconds: float = DEFAULT_SECONDS) -> "Budget":
        raw = os.environ.get("KNESERLAB_BUDGET_NODES")
        return cls(int(raw) if raw else DEFAULT_NODES, max_seconds)


@dataclass
class SearchResult:
    objective: str
    params: Params
    m: int
    optimum: int | None
    witness: Family | None
    nodes_explored: int
    proven_optimal: bool
    budget_used: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.params.n,
            "k": self.params.k,
            "objective": self.objective,
            "optimum": self.optimum,
            "witness": [list(s) for s in self.witness.sets()] if self.witness else None,
            "nodes": self.nodes_explored,
            "proven_optimal": self.proven_optimal,
        }


class _OutOfBudget(Exception):
    pass


class _Engine:
    def __init__(self, p: Params, m: int, objective: str, budget: Budget,
                 need_edge: bool, floor: int, first: int | None = None):
        self.p = p
        self.first = first
        self.m = m
        self.objective = objective
        self.budget = budget
        self.need_edge = need_edge
        self.floor = floor
        self.verts = list(enumerate_all(p))
        N = len(self.verts)
        self.adj = [0] * N
        for i, a in enumerate(self.verts):
            for j, b in enumerate(self.verts):
                if not a & b:
                    self.adj[i] |= 1 << j
        self.best: int | None = None
        self.best_set = 0
        self.nodes = 0
        self.start = 0.0

    def run(self) -> None:
        """Search all families, or only those whose lex-first member is ``first``."""
        self.start = time.monotonic()
        deg = [0] * len(self.verts)
        self._dfs(self.first or 0, 0, deg, 0, 0, 0)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.nodes & 0xFFF == 0 and time.monotonic() - self.start > self.budget.max_seconds:
            raise _OutOfBudget

    def _done(self) -> bool:
        return self.best is not None and self.best <= self.floor

    def _dfs(self, v: int, chosen: int, deg: list, count: int, top: int, edges: int) -> None:
        self._tick()
        need = self.m - count
        value = top if self.objective == "max-degree" else edges
        if need == 0:
            if self.need_edge and edges == 0:
                return
            if self.best is None or value < self.best:
                self.best, self.best_set = value, chosen
            return
        N = len(self.verts)
        if N - v < need:
            return
        if self.best is not None:
            if value >= self.best:
                return
            gains = sorted((self.adj[u] & chosen).bit_count() for u in range(v, N))[:need]
            if self.objective == "max-degree":
                bound = max(top, gains[-1])
            else:
                bound = edges + sum(gains)
            if bound >= self.best:
                return
        # include v
        nb = self.adj[v] & chosen
        dv = nb.bit_count()
        new_top = max(top, dv)
        bits = nb
        while bits:
            low = bits & -bits
            u = low.bit_length() - 1
            deg[u] += 1
            if deg[u] > new_top:
                new_top = deg[u]
            bits ^= low
        deg[v] = dv
        self._dfs(v + 1, chosen | (1 << v), deg, count + 1, new_top, edges + dv)
        bits = nb
        while bits:
            low = bits & -bits
            deg[low.bit_length() - 1] -= 1
            bits ^= low
        deg[v] = 0
        if self._done():
            return
        if count == 0 and self.first is not None:
            return
        self._dfs(v + 1, chosen, deg, count, top, edges)


def _branch(args):
    eng = _Engine(*args)
    try:
        eng.run()
        proven = True
    except _OutOfBudget:
        proven = False
    return eng.best, eng.best_set, eng.nodes, proven


def _solve(objective: str, m: int, p: Params, budget: Budget | None, symmetric: bool,
           jobs: int, need_edge: bool, floor: int) -> SearchResult:
    budget = budget or Budget.from_env()
    start = time.monotonic()
    if symmetric:
        # relabelling puts [1..k] (vertex 0) into any nonempty family
        tasks = [(p, m, objective, budget, need_edge, floor, 0)]
    elif jobs > 1:
        tasks = [(p, m, objective, budget, need_edge, floor, i) for i in range(p.total - m + 1)]
    else:
        tasks = [(p, m, objective, budget, need_edge, floor, None)]
    if len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_branch, tasks))
    else:
        outcomes = [_branch(tasks[0])]
    best, best_set = None, 0
    for value, chosen, _, _ in outcomes:
        if value is not None and (best is None or value < best):
            best, best_set = value, chosen
    nodes = sum(o[2] for o in outcomes)
    proven = all(o[3] for o in outcomes)
    verts = list(enumerate_all(p))
    witness = None
    if best is not None:
        witness = Family(p, tuple(verts[i] for i in range(len(verts)) if best_set >> i & 1))
    used = {"max_nodes": budget.max_nodes, "max_seconds": budget.max_seconds,
            "nodes": nodes, "seconds": round(time.monotonic() - start, 3)}
    return SearchResult(objective, p, m, best, witness, nodes, proven, used)


def min_max_degree(m: int, p: Params, budget: Budget | None = None, symmetric: bool = False,
                   jobs: int = 1) -> SearchResult:
    """d(m, n, k): least maximum degree of a non-intersecting family of ``m`` k-sets."""
    p.require_disjoint_pairs()
    if not (2 <= m <= p.total):
        raise DomainError(f"need 2 <= m <= C(n,k), got m={m}")
    return _solve("max-degree", m, p, budget, symmetric, jobs, need_edge=True, floor=1)


def min_edges(m: int, p: Params, budget: Budget | None = None, symmetric: bool = False,
              jobs: int = 1) -> SearchResult:
    """Least number of disjoint pairs in a family of ``m`` k-sets."""
    if not (1 <= m <= p.total):
        raise DomainError(f"need 1 <= m <= C(n,k), got m={m}")
    floor = 1 if p.n >= 2 * p.k and m > binom(p.n - 1, p.k - 1) else 0
    return _solve("edges", m, p, budget, symmetric, jobs, need_edge=False, floor=floor)


@dataclass(frozen=True)
class CoverStructure:
    S: tuple[int, ...]
    size: int
    residual: int
    element_counts: dict


def find_cover_structure(f: Family, t_max: int) -> list[CoverStructure]:
    """For each size 0..t_max, the lex-first set S minimising |f(S-bar)|."""
    if t_max > 6:
        raise BudgetError("find_cover_structure supports t_max <= 6")
    if t_max < 0:
        raise DomainError("t_max must be nonnegative")
    used = 0
    for m in f.members:
        used |= m
    candidates = list(to_elements(used))
    spare = [x for x in range(1, f.n + 1) if x not in candidates]
    out = []
    for s in range(t_max + 1):
        if binom(len(candidates), s) > COVER_BUDGET:
            raise BudgetError(f"C({len(candidates)},{s}) candidate sets exceeds budget")
        if s <= len(candidates):
            pool = combinations(candidates, s)
        else:
            # every occurring element is taken; pad with unused ones
            pool = [tuple(sorted(candidates + spare[:s - len(candidates)]))]
        best = None
        for S in pool:
            mask = to_mask(S)
            residual = sum(1 for a in f.members if not a & mask)
            if best is None or residual < best[0]:
                best = (residual, S)
        residual, S = best
        counts = {x: sum(1 for a in f.members if a >> (x - 1) & 1) for x in S}
        out.append(CoverStructure(S, s, residual, counts))
    return out
