"""Greedy maximum-coverage procedures for chains and antichains.

Chains come from a longest-path dynamic program over the uncovered set;
antichains come from minimum flows on a vertex-split network, warm-started
round to round. Tie-breaking is deterministic throughout: predecessor ties
prefer the smallest vertex id, endpoint ties prefer a still-uncovered
vertex, then the smallest id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dagcore import (
    Antichain,
    Chain,
    Dag,
    Family,
    GraphPath,
    certify_antichain,
    certify_chain,
    partition_completion,
)
from .errors import NotMinimumError
from .flowcore import (
    INF,
    Arc,
    Flow,
    FlowNetwork,
    MinFlowResult,
    check_feasible,
    min_flow,
    residual,
    zero_flow,
)


@dataclass
class UncoveredSet:
    """Vertices not yet covered by any emitted member."""

    vertices: set[int]

    @classmethod
    def full(cls, n: int) -> "UncoveredSet":
        return cls(set(range(n)))

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def remove_all(self, vs: Iterable[int]) -> None:
        self.vertices.difference_update(vs)


@dataclass
class GreedyRound:
    member: tuple[int, ...]
    gain: int
    remaining: int
    flow_value: Optional[int] = None
    searches: int = 0
    pushes: int = 0


@dataclass
class GreedyTrace:
    rounds: list[GreedyRound] = field(default_factory=list)
    stop_reason: str = ""
    init_searches: int = 0
    init_pushes: int = 0
    exhausted_early: bool = False

    def gains(self) -> list[int]:
        return [r.gain for r in self.rounds]

    def assert_monotone(self) -> None:
        g = self.gains()
        assert all(g[i] >= g[i + 1] for i in range(len(g) - 1)), \
            f"greedy gains increased: {g}"


def max_coverage_path(dag: Dag, uncovered: set[int]) -> GraphPath:
    """Path visiting the most uncovered vertices.

    score(v) = [v uncovered] + best predecessor score; the endpoint is
    the highest score, preferring uncovered vertices, then smaller ids;
    backtracking takes the smallest-id predecessor of maximum score and
    stops when no predecessor improves on zero.
    """
    n = dag.n
    if n == 0:
        return GraphPath(())
    score = [0] * n
    for v in dag.topo:
        best = 0
        for u in dag.pred[v]:
            if score[u] > best:
                best = score[u]
        score[v] = (1 if v in uncovered else 0) + best
    end = 0
    end_key = (-1, -1)
    for v in range(n):
        key = (score[v], 1 if v in uncovered else 0)
        if key > end_key:
            end_key = key
            end = v
    seq = [end]
    cur = end
    while True:
        best_u = -1
        best_s = 0
        for u in dag.pred[cur]:
            if score[u] > best_s or (score[u] == best_s and best_s > 0 and u < best_u):
                best_s = score[u]
                best_u = u
        if best_u < 0 or best_s <= 0:
            break
        seq.append(best_u)
        cur = best_u
    return GraphPath(tuple(reversed(seq)))


def greedy_k_chains(dag: Dag, k: int) -> tuple[Family, GreedyTrace]:
    """k rounds of best-path selection, each chain the path's uncovered part."""
    uncovered = UncoveredSet.full(dag.n)
    members: list[Chain] = []
    trace = GreedyTrace()
    for _ in range(k):
        path = max_coverage_path(dag, uncovered.vertices)
        picked = [v for v in path.vertices if v in uncovered]
        trace.rounds.append(GreedyRound(tuple(path.vertices), len(picked), max(0, len(uncovered) - len(picked))))
        if picked:
            members.append(certify_chain(dag, picked))
            uncovered.remove_all(picked)
        else:
            trace.exhausted_early = True
    trace.stop_reason = "U empty" if not uncovered.vertices else "k reached"
    trace.assert_monotone()
    return Family(tuple(members), disjoint=True), trace


def greedy_weighted_chain_cover(dag: Dag, k: int) -> tuple[Family, Family, GreedyTrace]:
    """Pick paths while their uncovered gain exceeds k, then singletons.

    Returns the chosen paths as a collection and the chain partition they
    induce (path remnants plus singleton chains for everything left).
    """
    uncovered = UncoveredSet.full(dag.n)
    paths: list[GraphPath] = []
    chains: list[Chain] = []
    trace = GreedyTrace()
    while uncovered.vertices:
        path = max_coverage_path(dag, uncovered.vertices)
        picked = [v for v in path.vertices if v in uncovered]
        if len(picked) <= k:
            trace.stop_reason = "gain <= threshold"
            break
        trace.rounds.append(GreedyRound(tuple(path.vertices), len(picked), len(uncovered) - len(picked)))
        paths.append(path)
        chains.append(certify_chain(dag, picked))
        uncovered.remove_all(picked)
    else:
        trace.stop_reason = "U empty"
    trace.assert_monotone()
    collection = Family(tuple(paths))
    partition = partition_completion(Family(tuple(chains), disjoint=True), dag.n, Chain)
    return collection, partition, trace


@dataclass
class SubsetNetwork:
    """Vertex-split flow network whose minimum value is the largest
    antichain inside U.

    Nodes: v_in = 2v, v_out = 2v+1, s = 2n, t = 2n+1. Arc ids: vertex v
    owns entry 3v, gadget 3v+1, exit 3v+2; edge arcs follow in edge-list
    order. The gadget arc carries lower bound 1 exactly when v is in U.
    """

    net: FlowNetwork
    n: int
    in_subset: frozenset[int]

    def entry(self, v: int) -> int:
        return 3 * v

    def gadget(self, v: int) -> int:
        return 3 * v + 1

    def exit(self, v: int) -> int:
        return 3 * v + 2

    def edge_arc(self, j: int) -> int:
        return 3 * self.n + j


def build_subset_network(dag: Dag, subset: set[int] | frozenset[int]) -> SubsetNetwork:
    n = dag.n
    s, t = 2 * n, 2 * n + 1
    arcs: list[Arc] = []
    for v in range(n):
        arcs.append(Arc(s, 2 * v, 0, INF, 0))
        arcs.append(Arc(2 * v, 2 * v + 1, 1 if v in subset else 0, INF, 0))
        arcs.append(Arc(2 * v + 1, t, 0, INF, 0))
    for (u, v) in dag.edges:
        arcs.append(Arc(2 * u + 1, 2 * v, 0, INF, 0))
    return SubsetNetwork(FlowNetwork(2 * n + 2, arcs, s, t), n, frozenset(subset))


def cover_paths(dag: Dag, subset: set[int]) -> list[GraphPath]:
    """Best-path rounds until the subset is exhausted."""
    left = set(subset)
    out: list[GraphPath] = []
    while left:
        p = max_coverage_path(dag, left)
        out.append(p)
        left.difference_update(p.vertices)
    return out


def path_cover_flow(sub: SubsetNetwork, paths: list[GraphPath]) -> Flow:
    """Route one unit along each path; feasible whenever the paths cover U."""
    edge_index = {}
    for j in range(len(sub.net.arcs) - 3 * sub.n):
        a = sub.net.arcs[3 * sub.n + j]
        edge_index[(a.tail // 2, a.head // 2)] = 3 * sub.n + j
    f = zero_flow(sub.net)
    for p in paths:
        vs = p.vertices
        f.values[sub.entry(vs[0])] += 1
        for i, v in enumerate(vs):
            f.values[sub.gadget(v)] += 1
            if i + 1 < len(vs):
                f.values[edge_index[(v, vs[i + 1])]] += 1
        f.values[sub.exit(vs[-1])] += 1
    check_feasible(sub.net, f)
    return f


def _extract_antichain(dag: Dag, sub: SubsetNetwork, f: Flow) -> Antichain:
    """Sink-side tight-cut read-off of a minimum flow.

    With V_t the nodes reachable from t in the residual graph, the
    vertices of U whose out-copy is inside V_t but whose in-copy is not
    form a maximum antichain within U, of size equal to the flow value.
    """
    res = residual(sub.net, f)
    reach = [False] * sub.net.m
    reach[sub.net.t] = True
    stack = [sub.net.t]
    while stack:
        x = stack.pop()
        for ai in res.out[x]:
            a = res.arcs[ai]
            if a.cap > 0 and not reach[a.head]:
                reach[a.head] = True
                stack.append(a.head)
    if reach[sub.net.s]:
        raise NotMinimumError("a decrementing path remains; the flow is not minimum")
    picked = [v for v in sub.in_subset if reach[2 * v + 1] and not reach[2 * v]]
    ac = certify_antichain(dag, picked)
    assert len(ac) == f.value(sub.net), \
        f"extracted {len(ac)} vertices from a flow of value {f.value(sub.net)}"
    return ac


def max_antichain_in_subset(dag: Dag, subset: set[int] | frozenset[int], fmin: Flow) -> Antichain:
    """Read a maximum antichain within the subset off a minimum flow."""
    sub = build_subset_network(dag, subset)
    return _extract_antichain(dag, sub, fmin)


def minimum_path_cover(dag: Dag) -> tuple[int, MinFlowResult]:
    """Exact minimum number of paths covering every vertex."""
    if dag.n == 0:
        return 0, MinFlowResult(Flow([]), 0, 0)
    sub = build_subset_network(dag, set(range(dag.n)))
    f0 = path_cover_flow(sub, cover_paths(dag, set(range(dag.n))))
    result = min_flow(sub.net, f0)
    return result.flow.value(sub.net), result


def greedy_k_antichains(dag: Dag, k: int) -> tuple[Family, GreedyTrace]:
    """k rounds of maximum antichain among the still-uncovered vertices.

    Round 1 reduces a constructed path-cover flow to a minimum flow;
    later rounds reuse the previous flow, which stays feasible because
    lower bounds only relax as U shrinks.
    """
    n = dag.n
    uncovered = UncoveredSet.full(n)
    members: list[Antichain] = []
    trace = GreedyTrace()
    flow_prev: Optional[Flow] = None
    f1_value: Optional[int] = None
    last_value: Optional[int] = None
    round1_pushes = 0
    total_searches = 0
    for i in range(k):
        if not uncovered.vertices:
            trace.rounds.append(GreedyRound((), 0, 0))
            trace.exhausted_early = True
            continue
        sub = build_subset_network(dag, uncovered.vertices)
        if flow_prev is None:
            flow_prev = path_cover_flow(sub, cover_paths(dag, set(range(n))))
        result = min_flow(sub.net, flow_prev)
        flow_prev = result.flow
        total_searches += result.searches
        if i == 0:
            round1_pushes = result.pushes
            f1_value = result.flow.value(sub.net)
        last_value = result.flow.value(sub.net)
        ac = _extract_antichain(dag, sub, result.flow)
        members.append(ac)
        trace.rounds.append(GreedyRound(
            tuple(sorted(ac.vertices)), len(ac), len(uncovered) - len(ac),
            flow_value=last_value, searches=result.searches, pushes=result.pushes))
        uncovered.remove_all(ac.vertices)
    trace.stop_reason = "U empty" if not uncovered.vertices else "k reached"
    if f1_value is not None and last_value is not None:
        assert total_searches - round1_pushes <= k + f1_value - last_value, \
            "decrementing-path searches exceed the warm-start bound"
    trace.assert_monotone()
    return Family(tuple(members), disjoint=True), trace


def greedy_antichain_cover(dag: Dag, k: int) -> tuple[Family, Family, GreedyTrace]:
    """Take maximum antichains while they are larger than k, then singletons.

    Returns the taken antichains and the full partition (taken members
    plus singleton antichains for whatever remains).
    """
    n = dag.n
    uncovered = UncoveredSet.full(n)
    members: list[Antichain] = []
    trace = GreedyTrace()
    flow_prev: Optional[Flow] = None
    while uncovered.vertices:
        sub = build_subset_network(dag, uncovered.vertices)
        if flow_prev is None:
            flow_prev = path_cover_flow(sub, cover_paths(dag, set(range(n))))
        result = min_flow(sub.net, flow_prev)
        flow_prev = result.flow
        ac = _extract_antichain(dag, sub, result.flow)
        if len(ac) <= k:
            trace.stop_reason = "gain <= threshold"
            break
        members.append(ac)
        trace.rounds.append(GreedyRound(
            tuple(sorted(ac.vertices)), len(ac), len(uncovered) - len(ac),
            flow_value=result.flow.value(sub.net),
            searches=result.searches, pushes=result.pushes))
        uncovered.remove_all(ac.vertices)
    else:
        trace.stop_reason = "U empty"
    trace.assert_monotone()
    taken = Family(tuple(members), disjoint=True)
    partition = partition_completion(taken, n, Antichain)
    return taken, partition, trace
