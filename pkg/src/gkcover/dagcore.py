"""DAG representation, chain/antichain/path certification, and k-norms.

Vertices are dense 0-based ids. Reachability is reflexive: every vertex
reaches itself, so a single vertex is both a chain and an antichain.
"""

from __future__ import annotations

import graphlib
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    CycleError,
    NotAntichainError,
    NotChainError,
    NotPartitionError,
    OverlapError,
)

# Transitive-closure bitsets are only cached up to this size; certifying
# larger graphs falls back to per-query DFS.
CLOSURE_CACHE_LIMIT = 4096


@dataclass(frozen=True)
class Chain:
    """Vertices pairwise comparable, stored in reachability order."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class Antichain:
    """Vertices pairwise unreachable from one another."""

    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset[int]:
        return self.vertices


@dataclass(frozen=True)
class GraphPath:
    """Vertices connected by consecutive edges of the graph."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


Member = Union[Chain, Antichain, GraphPath]


@dataclass(frozen=True)
class Family:
    """A collection of members, optionally vertex-disjoint.

    Every member must be non-empty. When ``disjoint`` is set, sharing a
    vertex between members raises OverlapError.
    """

    members: tuple[Member, ...]
    disjoint: bool = False

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for m in self.members:
            vs = m.vertex_set()
            if not vs:
                raise ValueError("family members must be non-empty")
            if self.disjoint:
                for v in vs:
                    if v in seen:
                        raise OverlapError(v)
                seen.update(vs)

    def __len__(self) -> int:
        return len(self.members)

    def covered(self) -> set[int]:
        out: set[int] = set()
        for m in self.members:
            out.update(m.vertex_set())
        return out

    def coverage(self) -> int:
        return len(self.covered())


class Dag:
    """Immutable DAG over vertices 0..n-1 with a cached topological order."""

    def __init__(self, n: int, edges: tuple[tuple[int, int], ...], topo: tuple[int, ...]):
        self.n = n
        self.edges = edges
        self.topo = topo
        self.topo_pos = [0] * n
        for i, v in enumerate(topo):
            self.topo_pos[v] = i
        self.succ: list[list[int]] = [[] for _ in range(n)]
        self.pred: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            self.succ[u].append(v)
            self.pred[v].append(u)
        self.edge_set = frozenset(edges)
        self._closure: list[int] | None = None
        self._closure_lock = threading.Lock()

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, edges={len(self.edges)})"

    def closure(self) -> list[int]:
        """Descendant bitsets (self included), built lazily under a lock."""
        if self._closure is None:
            with self._closure_lock:
                if self._closure is None:
                    desc = [0] * self.n
                    for v in reversed(self.topo):
                        mask = 1 << v
                        for w in self.succ[v]:
                            mask |= desc[w]
                        desc[v] = mask
                    self._closure = desc
        return self._closure


def build_dag(n: int, edges: Iterable[tuple[int, int]]) -> Dag:
    """Validate an edge list and return a Dag.

    Out-of-range endpoints raise IndexError, self-loops and directed
    cycles raise CycleError, duplicate edges are dropped.
    """
    if n < 0:
        raise IndexError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    dedup: list[tuple[int, int]] = []
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise CycleError(f"self-loop at vertex {u}")
        if (u, v) not in seen:
            seen.add((u, v))
            dedup.append((u, v))
    ts = graphlib.TopologicalSorter({v: [] for v in range(n)})
    for u, v in dedup:
        ts.add(v, u)
    try:
        topo = tuple(ts.static_order())
    except graphlib.CycleError as exc:
        raise CycleError(f"edge list contains a cycle: {exc.args[1]}") from exc
    return Dag(n, tuple(dedup), topo)


def reachable(dag: Dag, u: int, v: int) -> bool:
    """True when v can be reached from u (reflexively)."""
    if u == v:
        return True
    if dag._closure is not None:
        return bool(dag._closure[u] >> v & 1)
    if dag.topo_pos[u] > dag.topo_pos[v]:
        return False
    stack = [u]
    seen = {u}
    while stack:
        x = stack.pop()
        for w in dag.succ[x]:
            if w == v:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _pair_reaches(dag: Dag, u: int, v: int) -> bool:
    if dag.n <= CLOSURE_CACHE_LIMIT:
        return bool(dag.closure()[u] >> v & 1)
    return reachable(dag, u, v)


def certify_antichain(dag: Dag, vertices: Iterable[int]) -> Antichain:
    """Check pairwise unreachability; raise NotAntichainError with a witness."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < dag.n:
            raise IndexError(f"vertex {v} out of range for n={dag.n}")
    order = sorted(vs, key=lambda v: dag.topo_pos[v])
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            if _pair_reaches(dag, u, v):
                raise NotAntichainError(u, v)
    return Antichain(frozenset(vs))


def certify_chain(dag: Dag, vertices: Sequence[int]) -> Chain:
    """Check consecutive reachability; raise NotChainError at the first gap."""
    seq = tuple(vertices)
    for v in seq:
        if not 0 <= v < dag.n:
            raise IndexError(f"vertex {v} out of range for n={dag.n}")
    seen: set[int] = set()
    for i in range(len(seq)):
        if seq[i] in seen:
            raise NotChainError(seq[i], seq[i])
        seen.add(seq[i])
        if i > 0 and not _pair_reaches(dag, seq[i - 1], seq[i]):
            raise NotChainError(seq[i - 1], seq[i])
    return Chain(seq)


def certify_path(dag: Dag, vertices: Sequence[int]) -> GraphPath:
    """Check that consecutive vertices are joined by edges of the graph."""
    seq = tuple(vertices)
    for v in seq:
        if not 0 <= v < dag.n:
            raise IndexError(f"vertex {v} out of range for n={dag.n}")
    for i in range(1, len(seq)):
        if (seq[i - 1], seq[i]) not in dag.edge_set:
            raise NotChainError(seq[i - 1], seq[i])
    return GraphPath(seq)


def knorm_partition(family: Family, n: int, k: int) -> int:
    """Sum of min(|member|, k) over a partition of all n vertices."""
    counts = [0] * n
    for m in family.members:
        for v in m.vertex_set():
            counts[v] += 1
    if any(c != 1 for c in counts):
        bad = next(v for v, c in enumerate(counts) if c != 1)
        raise NotPartitionError(f"vertex {bad} is covered {counts[bad]} times")
    return sum(min(len(m), k) for m in family.members)


def knorm_collection(members: Sequence[Member], n: int, k: int) -> int:
    """Uncovered vertex count plus k per member, for a (possibly
    overlapping) collection."""
    covered: set[int] = set()
    for m in members:
        covered.update(m.vertex_set())
    return (n - len(covered)) + k * len(members)


def partition_completion(family: Family, n: int, member_type: type | None = None) -> Family:
    """Extend disjoint members to a partition by adding singletons."""
    covered: set[int] = set()
    for m in family.members:
        for v in m.vertex_set():
            if v in covered:
                raise OverlapError(v)
            covered.add(v)
    if member_type is None:
        member_type = type(family.members[0]) if family.members else Antichain
    singles: list[Member] = []
    for v in range(n):
        if v not in covered:
            if member_type is Antichain:
                singles.append(Antichain(frozenset([v])))
            elif member_type is Chain:
                singles.append(Chain((v,)))
            else:
                singles.append(GraphPath((v,)))
    return Family(family.members + tuple(singles), disjoint=True)
