"""Pebble distributions, moves, and the exact solvability search.

The solver decides t-solvability by depth-first search over distributions
with a transposition table, after a stack of cheap checks: target already
covered, a single vertex rich enough to pay the full 2^d toll, a greedy
run, and the exact-rational potential cutoff. Pebbling and t-pebbling
numbers are computed by sweeping all distributions of size k upward from a
certified lower bound; level monotonicity (adding a pebble never breaks
solvability) makes the first all-solvable level the answer.

All arithmetic that feeds a pruning decision is exact integer arithmetic;
no floating point is involved anywhere in the search.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from math import comb
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (BudgetExceeded, InsufficientPebbles, InvalidParameter,
                     NotAdjacent, UnknownVertex)
from .graphs import Graph, VertexLabel, parse_label

# ---------------------------------------------------------------------------
# Distributions and moves


class Distribution:
    """Non-negative pebble counts on vertices; zero counts are omitted."""

    __slots__ = ("counts", "total")

    def __init__(self, counts: dict[VertexLabel, int] | None = None):
        clean: dict[VertexLabel, int] = {}
        for lab, c in (counts or {}).items():
            if c < 0:
                raise InvalidParameter(f"negative pebble count on {lab}")
            if c > 0:
                clean[lab] = c
        self.counts = clean
        self.total = sum(clean.values())

    def get(self, lab: VertexLabel) -> int:
        return self.counts.get(lab, 0)

    def vector(self, g: Graph) -> list[int]:
        vec = [0] * g.n
        for lab, c in self.counts.items():
            vec[g.index_of(lab)] = c
        return vec

    @classmethod
    def from_vector(cls, g: Graph, vec: Sequence[int]) -> "Distribution":
        return cls({g.vertices[i]: int(c) for i, c in enumerate(vec) if c})

    def restricted(self, labels) -> "Distribution":
        keep = set(labels)
        return Distribution({lab: c for lab, c in self.counts.items() if lab in keep})

    def adding(self, lab: VertexLabel, k: int = 1) -> "Distribution":
        new = dict(self.counts)
        new[lab] = new.get(lab, 0) + k
        return Distribution(new)

    def to_json_dict(self) -> dict:
        return {"counts": {str(lab): c for lab, c in sorted(
            self.counts.items(), key=lambda kv: str(kv[0]))}}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Distribution":
        return cls({parse_label(s): int(c) for s, c in data["counts"].items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Distribution) and self.counts == other.counts

    def __repr__(self) -> str:
        inner = ", ".join(f"{lab}:{c}" for lab, c in sorted(
            self.counts.items(), key=lambda kv: str(kv[0])))
        return f"Distribution({{{inner}}}, total={self.total})"


@dataclass(frozen=True)
class Move:
    """One pebbling move: two pebbles leave ``src``, one lands on ``dst``."""

    src: VertexLabel
    dst: VertexLabel

    def __str__(self) -> str:
        return f"{self.src} -> {self.dst}"


class MoveSequence:
    """An ordered, replayable list of pebbling moves."""

    __slots__ = ("moves",)

    def __init__(self, moves: Sequence[Move] = ()):
        self.moves = tuple(moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __eq__(self, other) -> bool:
        return isinstance(other, MoveSequence) and self.moves == other.moves

    def to_json_list(self) -> list:
        return [[str(m.src), str(m.dst)] for m in self.moves]

    @classmethod
    def from_json_list(cls, data: list) -> "MoveSequence":
        return cls([Move(parse_label(a), parse_label(b)) for a, b in data])

    def __repr__(self) -> str:
        return f"MoveSequence({len(self.moves)} moves)"


def apply_move(g: Graph, d: Distribution, m: Move) -> Distribution:
    """Apply one move: src loses 2, dst gains 1, total drops by exactly 1."""
    a, b = g.index_of(m.src), g.index_of(m.dst)
    if not g.has_edge(a, b):
        raise NotAdjacent(f"{m.src} and {m.dst} are not adjacent")
    if d.get(m.src) < 2:
        raise InsufficientPebbles(f"{m.src} holds {d.get(m.src)} pebbles, need 2")
    new = dict(d.counts)
    new[m.src] -= 2
    new[m.dst] = new.get(m.dst, 0) + 1
    return Distribution(new)


def replay(g: Graph, d: Distribution, seq: MoveSequence) -> Distribution:
    """Replay a move sequence from d, validating every step."""
    cur = d
    for m in seq:
        cur = apply_move(g, cur, m)
    return cur


# ---------------------------------------------------------------------------
# Potential


def potential(g: Graph, d: Distribution, target: VertexLabel) -> Fraction:
    """Sum of p(v) * 2^-dist(v, target), exactly.

    Non-increasing under pebbling moves, so a value below t certifies that
    the distribution is not t-solvable for the target.
    """
    ti = g.index_of(target)
    dist = g.distances_from(ti)
    ecc = max(dist)
    num = 0
    for lab, c in d.counts.items():
        num += c << (ecc - dist[g.index_of(lab)])
    return Fraction(num, 1 << ecc)


# ---------------------------------------------------------------------------
# Budgets


DEFAULT_NODE_BUDGET = 5_000_000
NODE_BUDGET_ENV = "PEBBLEKIT_NODE_BUDGET"
TIME_BUDGET_ENV = "PEBBLEKIT_TIME_BUDGET"


class Budget:
    """Caps on explored nodes and wall time; exhaustion raises, never guesses."""

    __slots__ = ("node_cap", "deadline", "nodes", "t0")

    def __init__(self, node_cap: Optional[int] = None, seconds: Optional[float] = None):
        self.node_cap = node_cap
        self.t0 = time.monotonic()
        self.deadline = self.t0 + seconds if seconds else None
        self.nodes = 0

    @classmethod
    def from_env(cls) -> "Budget":
        nodes = int(os.environ.get(NODE_BUDGET_ENV, DEFAULT_NODE_BUDGET))
        seconds = os.environ.get(TIME_BUDGET_ENV)
        return cls(nodes, float(seconds) if seconds else None)

    def charge(self, n: int = 1) -> None:
        self.nodes += n
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise BudgetExceeded(f"node budget of {self.node_cap} exhausted",
                                 nodes_explored=self.nodes,
                                 elapsed=time.monotonic() - self.t0)
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted",
                                 nodes_explored=self.nodes,
                                 elapsed=time.monotonic() - self.t0)


# ---------------------------------------------------------------------------
# Core solver (index/array form)


@dataclass
class SolveOutcome:
    solvable: bool
    witness: Optional[MoveSequence]
    nodes_explored: int


def _next_hop(g: Graph, dist: Sequence[int], v: int) -> int:
    # deterministic: smallest-index neighbor strictly closer to the target
    for w in g.neighbors[v]:
        if dist[w] == dist[v] - 1:
            return w
    raise AssertionError("BFS distances inconsistent")


def _drain_route(g: Graph, counts: list[int], dist: Sequence[int],
                 v: int, moves: list[tuple[int, int]]) -> None:
    """Push floor-halves of v's pile step by step toward the target,
    absorbing whatever lies on the route. Mutates counts and moves."""
    cur = v
    while dist[cur] > 0:
        nxt = _next_hop(g, dist, cur)
        k = counts[cur] // 2
        if k == 0:
            return
        counts[cur] -= 2 * k
        counts[nxt] += k
        moves.extend([(cur, nxt)] * k)
        cur = nxt


def _greedy_counts(g: Graph, counts: list[int], target: int, t: int,
                   dist: Sequence[int]) -> Optional[list[tuple[int, int]]]:
    """Richest-vertex-first greedy; mutates counts. None means inconclusive."""
    moves: list[tuple[int, int]] = []
    while counts[target] < t:
        best = -1
        best_key = None
        for v in range(len(counts)):
            if v != target and counts[v] >= 2:
                key = (counts[v], -dist[v], -v)
                if best_key is None or key > best_key:
                    best_key = key
                    best = v
        if best < 0:
            return None
        nxt = _next_hop(g, dist, best)
        counts[best] -= 2
        counts[nxt] += 1
        moves.append((best, nxt))
    return moves


def _solve_counts(g: Graph, counts: list[int], target: int, t: int,
                  budget: Optional[Budget]) -> tuple[bool, Optional[list[tuple[int, int]]], int]:
    """Exact t-solvability on a count vector. Returns (solvable, moves, nodes)."""
    if counts[target] >= t:
        return True, [], 0
    dist = g.distances_from(target)
    ecc = max(dist)
    goal = t << ecc
    weights = [1 << (ecc - d) for d in dist]

    # single rich vertex
    for v, c in enumerate(counts):
        if v != target and c >> dist[v] >= t - counts[target]:
            work = list(counts)
            moves: list[tuple[int, int]] = []
            _drain_route(g, work, dist, v, moves)
            if work[target] >= t:
                return True, moves, 0

    # greedy
    work = list(counts)
    greedy = _greedy_counts(g, work, target, t, dist)
    if greedy is not None:
        return True, greedy, 0

    # potential cutoff: below t means provably unsolvable
    pot = sum(c * w for c, w in zip(counts, weights))
    if pot < goal:
        return False, None, 0

    # memoized depth-first search; transposition table keys are the raw
    # count vectors (totals in a sweep are < 256, so bytes packing applies)
    failed: set = set()
    nodes = 0
    small = sum(counts) < 256
    nbrs = g.neighbors

    def dfs(cnt: list[int]) -> Optional[list[tuple[int, int]]]:
        nonlocal nodes
        if cnt[target] >= t:
            return []
        key = bytes(cnt) if small else tuple(cnt)
        if key in failed:
            return None
        nodes += 1
        if budget is not None:
            budget.charge()
        pot = sum(c * w for c, w in zip(cnt, weights))
        if pot < goal:
            failed.add(key)
            return None
        cand = []
        for a in range(len(cnt)):
            if a != target and cnt[a] >= 2:
                da = dist[a]
                ca = cnt[a]
                for b in nbrs[a]:
                    cand.append((-ca, -(da - dist[b]), a, b))
        cand.sort()
        for _, _, a, b in cand:
            cnt[a] -= 2
            cnt[b] += 1
            sub = dfs(cnt)
            cnt[a] += 2
            cnt[b] -= 1
            if sub is not None:
                return [(a, b)] + sub
        failed.add(key)
        return None

    result = dfs(list(counts))
    if result is None:
        return False, None, nodes
    return True, result, nodes


def _moves_to_sequence(g: Graph, moves: list[tuple[int, int]]) -> MoveSequence:
    verts = g.vertices
    return MoveSequence([Move(verts[a], verts[b]) for a, b in moves])


def is_solvable(g: Graph, d: Distribution, target: VertexLabel, t: int = 1,
                budget: Optional[Budget] = None) -> SolveOutcome:
    """Decide whether some move sequence leaves >= t pebbles on the target."""
    if t < 1:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    ti = g.index_of(target)
    for lab in d.counts:
        if lab not in g:
            raise UnknownVertex(f"distribution mentions unknown vertex {lab}")
    ok, moves, nodes = _solve_counts(g, d.vector(g), ti, t, budget)
    witness = _moves_to_sequence(g, moves) if ok else None
    return SolveOutcome(ok, witness, nodes)


# ---------------------------------------------------------------------------
# Enumeration of distributions (weak compositions, colexicographic)


def weak_compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All weak compositions of k into ``parts`` parts, in colexicographic
    order (the last coordinate is the most significant and rises last...
    i.e. tuples sort by comparing the highest-index differing coordinate)."""
    if parts == 1:
        yield (k,)
        return
    for last in range(k + 1):
        for rest in weak_compositions(k - last, parts - 1):
            yield rest + (last,)


def enumerate_distributions(g: Graph, k: int) -> Iterator[Distribution]:
    """Every distribution of exactly k pebbles on V(g), colex order, lazily."""
    if k < 0:
        raise InvalidParameter(f"k must be >= 0, got {k}")
    for vec in weak_compositions(k, g.n):
        yield Distribution.from_vector(g, vec)


# Composition arrays are shared across the per-target loops of a sweep.
_COMP_CACHE: dict[tuple[int, int], np.ndarray] = {}
_COMP_CACHE_MAX = 3


def _compositions_array(k: int, parts: int) -> np.ndarray:
    """All weak compositions of k into ``parts`` parts as an int16 array,
    rows in the same colex order as :func:`weak_compositions`."""
    key = (k, parts)
    hit = _COMP_CACHE.get(key)
    if hit is not None:
        return hit

    memo: dict[tuple[int, int], np.ndarray] = {}

    def build(kk: int, pp: int) -> np.ndarray:
        got = memo.get((kk, pp))
        if got is not None:
            return got
        if pp == 1:
            out = np.array([[kk]], dtype=np.int16)
        else:
            blocks = []
            for last in range(kk + 1):
                rest = build(kk - last, pp - 1)
                col = np.full((rest.shape[0], 1), last, dtype=np.int16)
                blocks.append(np.hstack([rest, col]))
            out = np.vstack(blocks)
        memo[(kk, pp)] = out
        return out

    arr = build(k, parts)
    arr.setflags(write=False)
    if len(_COMP_CACHE) >= _COMP_CACHE_MAX:
        _COMP_CACHE.pop(next(iter(_COMP_CACHE)))
    _COMP_CACHE[key] = arr
    return arr


# ---------------------------------------------------------------------------
# Level sweeps


@dataclass
class SweepResult:
    all_solvable: bool
    counterexample: Optional[Distribution]
    checked: int


def sweep_level(g: Graph, k: int, target: VertexLabel, t: int = 1,
                budget: Optional[Budget] = None,
                checkpoint: Optional["SweepCheckpoint"] = None) -> SweepResult:
    """Decide whether every distribution of size k is t-solvable for target.

    The vectorized path classifies whole levels at once: rows with enough
    pebbles already on the target, rows where one vertex can pay the 2^d
    toll alone, and rows whose exact potential falls below t (these are
    certified unsolvable without search). The rest go through the solver.
    """
    ti = g.index_of(target)
    count = comb(k + g.n - 1, g.n - 1)
    if budget is not None:
        budget.charge(count)
    if checkpoint is not None:
        return _sweep_level_python(g, k, ti, t, budget, checkpoint)

    arr = _compositions_array(k, g.n)
    dist = g.distances_from(ti)
    ecc = max(dist)
    goal = t << ecc

    pot = np.zeros(arr.shape[0], dtype=np.int64)
    for v in range(g.n):
        pot += arr[:, v].astype(np.int64) << (ecc - dist[v])
    unsolv = pot < goal
    if unsolv.any():
        idx = int(np.argmax(unsolv))
        return SweepResult(False, Distribution.from_vector(g, arr[idx]), idx + 1)

    solved = arr[:, ti] >= t
    thresh = np.array([min(t << dist[v], k + 1) for v in range(g.n)], dtype=np.int16)
    solved |= (arr >= thresh[None, :]).any(axis=1)

    for idx in np.nonzero(~solved)[0]:
        ok, _, _ = _solve_counts(g, [int(c) for c in arr[idx]], ti, t, budget)
        if not ok:
            return SweepResult(False, Distribution.from_vector(g, arr[idx]), int(idx) + 1)
    return SweepResult(True, None, count)


def _sweep_level_python(g: Graph, k: int, ti: int, t: int,
                        budget: Optional[Budget],
                        checkpoint: "SweepCheckpoint") -> SweepResult:
    gen = weak_compositions(k, g.n)
    start = checkpoint.resume(g, k, ti, t)
    checked = start
    for vec in islice(gen, start, None):
        ok, _, _ = _solve_counts(g, list(vec), ti, t, budget)
        checked += 1
        if not ok:
            checkpoint.record(checked, "counterexample")
            return SweepResult(False, Distribution.from_vector(g, vec), checked)
        if checked % 10000 == 0:
            checkpoint.record(checked, "all-solvable-so-far")
    checkpoint.record(checked, "all-solvable")
    return SweepResult(True, None, checked)


class SweepCheckpoint:
    """Resumable cursor for a long level sweep, persisted as JSON."""

    def __init__(self, path: str):
        self.path = path
        self._header: dict | None = None

    def resume(self, g: Graph, k: int, target_idx: int, t: int) -> int:
        header = {"graph_hash": graph_hash(g), "k": k, "target": target_idx, "t": t}
        self._header = header
        if os.path.exists(self.path):
            with open(self.path) as fh:
                data = json.load(fh)
            if all(data.get(key) == val for key, val in header.items()):
                return int(data.get("cursor", 0))
        return 0

    def record(self, cursor: int, verdict: str) -> None:
        data = dict(self._header or {})
        data["cursor"] = cursor
        data["running_verdict"] = verdict
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, self.path)


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(g.to_json().encode()).hexdigest()


# ---------------------------------------------------------------------------
# Pebbling numbers


@dataclass
class PebblingReport:
    value: int
    t: int
    per_target: dict[VertexLabel, int]
    witness: Optional[tuple[Distribution, VertexLabel]]  # unsolvable at size value-1
    distributions_checked: int = 0
    restricted_targets: bool = False


def _certified_floor(g: Graph, ti: int, t: int) -> int:
    """A size k such that an unsolvable size-(k-1) distribution provably
    exists: one pebble on every other vertex (no move is possible), or
    t*2^ecc - 1 pebbles at full distance (potential < t)."""
    return max(g.n, t << g.eccentricity(ti))


def _floor_witness(g: Graph, ti: int, t: int) -> Distribution:
    dist = g.distances_from(ti)
    ecc = max(dist)
    if (t << ecc) >= g.n:
        far = dist.index(ecc)
        return Distribution({g.vertices[far]: (t << ecc) - 1})
    return Distribution({g.vertices[v]: 1 for v in range(g.n) if v != ti})


def pebbling_number_vertex(g: Graph, v: VertexLabel, t: int = 1,
                           budget: Optional[Budget] = None) -> int:
    """f_t(g, v): least k such that every size-k distribution is t-solvable."""
    return compute_pebbling(g, targets=[v], t=t, budget=budget).value


def pebbling_number(g: Graph, targets: Optional[Sequence[VertexLabel]] = None,
                    budget: Optional[Budget] = None) -> int:
    """f(g), optionally restricted to a user-asserted representative list."""
    return compute_pebbling(g, targets=targets, t=1, budget=budget).value


def t_pebbling_number(g: Graph, t: int,
                      targets: Optional[Sequence[VertexLabel]] = None,
                      budget: Optional[Budget] = None) -> int:
    """f_t(g): least k making every size-k distribution t-solvable everywhere."""
    return compute_pebbling(g, targets=targets, t=t, budget=budget).value


def compute_pebbling(g: Graph, targets: Optional[Sequence[VertexLabel]] = None,
                     t: int = 1, budget: Optional[Budget] = None,
                     checkpoint: Optional[SweepCheckpoint] = None) -> PebblingReport:
    """Exact (t-)pebbling number by upward level sweeps per target."""
    if t < 1:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    restricted = targets is not None
    target_list = list(targets) if targets is not None else list(g.vertices)
    per_target: dict[VertexLabel, int] = {}
    best_witness: Optional[tuple[Distribution, VertexLabel]] = None
    best_value = 0
    checked = 0
    for lab in target_list:
        ti = g.index_of(lab)
        k = _certified_floor(g, ti, t)
        last_cx: Optional[Distribution] = None
        while True:
            res = sweep_level(g, k, lab, t, budget=budget, checkpoint=checkpoint)
            checked += res.checked
            if res.all_solvable:
                break
            last_cx = res.counterexample
            k += 1
        per_target[lab] = k
        if k > best_value:
            best_value = k
            best_witness = ((last_cx if last_cx is not None else _floor_witness(g, ti, t)), lab)
    return PebblingReport(best_value, t, per_target, best_witness, checked, restricted)


# ---------------------------------------------------------------------------
# Generic lower bound with certified witnesses


def lower_bound(g: Graph) -> tuple[int, list[tuple[Distribution, VertexLabel]]]:
    """max(|V|, 2^D) with two unsolvable witness distributions, both
    re-certified by the exact solver."""
    diam = g.diameter()
    value = max(g.n, 1 << diam)
    far_from = 0
    dist = g.distances_from(0)
    for v in range(g.n):
        dv = g.distances_from(v)
        if max(dv) == diam:
            far_from = v
            dist = dv
            break
    target = g.vertices[far_from]
    far = g.vertices[dist.index(diam)]
    witnesses = []
    if g.n >= 2:
        ones = Distribution({lab: 1 for lab in g.vertices if lab != target})
        witnesses.append((ones, target))
    if diam >= 1:
        pile = Distribution({far: (1 << diam) - 1})
        witnesses.append((pile, target))
    for d, tgt in witnesses:
        outcome = is_solvable(g, d, tgt, 1)
        if outcome.solvable:
            raise AssertionError("lower-bound witness unexpectedly solvable")
    return value, witnesses
