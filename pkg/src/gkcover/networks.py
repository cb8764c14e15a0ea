"""Circulation networks whose minimum cost solves the coverage problems.

Each vertex v splits into v_in = 2v and v_out = 2v+1 joined by two
parallel arcs: a unit-capacity arc of cost -1 that pays for covering v,
and a free overflow arc. A return arc t->s closes the circulation; its
cost (problem Alpha) or capacity (problem Beta) carries k. The minimum
cost then equals alpha_k - n, respectively -beta_k, and chain and
antichain witnesses are read off the decomposition and the residual
shortest-path labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dagcore import (
    Antichain,
    Chain,
    Dag,
    Family,
    GraphPath,
    certify_antichain,
    certify_chain,
    knorm_collection,
    knorm_partition,
    partition_completion,
)
from .errors import DegenerateError, NotChainError
from .flowcore import (
    INF,
    Arc,
    Flow,
    FlowNetwork,
    NetworkPath,
    decompose,
    find_negative_cycle,
    min_cost_circulation,
    residual,
    shortest_distances,
    zero_flow,
)
from .greedy import greedy_k_chains, greedy_weighted_chain_cover

ALPHA = "alpha"
BETA = "beta"


@dataclass
class GkNetwork:
    """Problem network plus the arc-id conventions of its gadgets.

    Vertex v owns arc ids 4v..4v+3: entry (s, v_in), cover arc e1
    (v_in, v_out; capacity 1, cost -1), overflow arc e2 (v_in, v_out),
    exit (v_out, t). Edge arcs follow in edge-list order, the return
    arc is last.
    """

    net: FlowNetwork
    kind: str
    k: int
    n: int
    dag: Dag

    def entry(self, v: int) -> int:
        return 4 * v

    def e1(self, v: int) -> int:
        return 4 * v + 1

    def e2(self, v: int) -> int:
        return 4 * v + 2

    def exit(self, v: int) -> int:
        return 4 * v + 3

    def ts(self) -> int:
        return self.net.ts_arc  # type: ignore[return-value]

    def gadget_vertex(self, arc_id: int) -> Optional[int]:
        """Vertex whose e1 or e2 this arc is, else None."""
        if arc_id < 4 * self.n and arc_id % 4 in (1, 2):
            return arc_id // 4
        return None


def build_network(dag: Dag, k: int, kind: str) -> GkNetwork:
    if kind not in (ALPHA, BETA):
        raise ValueError(f"unknown network kind {kind!r}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = dag.n
    s, t = 2 * n, 2 * n + 1
    arcs: list[Arc] = []
    for v in range(n):
        arcs.append(Arc(s, 2 * v, 0, INF, 0))
        arcs.append(Arc(2 * v, 2 * v + 1, 0, 1, -1))
        arcs.append(Arc(2 * v, 2 * v + 1, 0, INF, 0))
        arcs.append(Arc(2 * v + 1, t, 0, INF, 0))
    for (u, v) in dag.edges:
        arcs.append(Arc(2 * u + 1, 2 * v, 0, INF, 0))
    if kind == ALPHA:
        arcs.append(Arc(t, s, 0, INF, k))
    else:
        arcs.append(Arc(t, s, 0, k, 0))
    net = FlowNetwork(2 * n + 2, arcs, s, t, ts_arc=len(arcs) - 1)
    return GkNetwork(net, kind, k, n, dag)


@dataclass
class GkSolution:
    """A certified witness family together with its objective value."""

    problem: str
    k: int
    family: Family
    value: int
    synthetic_members: tuple[int, ...] = ()


@dataclass
class SolveStats:
    warm: bool
    iterations: int
    initial_cost: int
    final_cost: int
    no_negative_cycle: bool
    decompose_exact: bool
    cancel_bound_ok: bool


# Test telemetry: how often a path remnant failed chain certification and
# had to be split. Expected to stay at zero.
_split_fallbacks = 0


def split_fallback_count() -> int:
    return _split_fallbacks


def reset_split_fallbacks() -> None:
    global _split_fallbacks
    _split_fallbacks = 0


def chains_from_paths(dag: Dag, paths: Sequence[GraphPath]) -> Family:
    """Disjoint chains from possibly overlapping paths.

    Each vertex is kept by the earliest path that visits it; remnants
    are certified, and a remnant that somehow fails certification is
    split at the failure point (counted, never observed).
    """
    global _split_fallbacks
    seen: set[int] = set()
    members: list[Chain] = []
    for p in paths:
        remnant = [v for v in p.vertices if v not in seen]
        seen.update(remnant)
        if not remnant:
            continue
        try:
            members.append(certify_chain(dag, remnant))
        except NotChainError:
            _split_fallbacks += 1
            run = [remnant[0]]
            for v in remnant[1:]:
                try:
                    certify_chain(dag, [run[-1], v])
                    run.append(v)
                except NotChainError:
                    members.append(certify_chain(dag, run))
                    run = [v]
            members.append(certify_chain(dag, run))
    return Family(tuple(members), disjoint=True)


def _assert_gadget_invariant(gk: GkNetwork, f: Flow) -> None:
    for v in range(gk.n):
        if f.values[gk.e2(v)] > 0:
            assert f.values[gk.e1(v)] == 1, \
                f"overflow used at vertex {v} while its cover arc is empty"


def _route_paths(gk: GkNetwork, paths: Sequence[Sequence[int]]) -> Flow:
    """Unit of circulation per vertex sequence, cover arc first."""
    edge_index: dict[tuple[int, int], int] = {}
    base = 4 * gk.n
    for j in range(len(gk.net.arcs) - base - 1):
        a = gk.net.arcs[base + j]
        edge_index[(a.tail // 2, a.head // 2)] = base + j
    f = zero_flow(gk.net)
    for p in paths:
        f.values[gk.entry(p[0])] += 1
        for i, v in enumerate(p):
            if f.values[gk.e1(v)] == 0:
                f.values[gk.e1(v)] += 1
            else:
                f.values[gk.e2(v)] += 1
            if i + 1 < len(p):
                f.values[edge_index[(v, p[i + 1])]] += 1
        f.values[gk.exit(p[-1])] += 1
        f.values[gk.ts()] += 1
    return f


def _dag_paths(gk: GkNetwork, net_paths: Sequence[NetworkPath]) -> list[GraphPath]:
    out: list[GraphPath] = []
    for np_ in net_paths:
        vs = [gk.gadget_vertex(ai) for ai in np_.arcs]
        out.append(GraphPath(tuple(v for v in vs if v is not None)))
    return out


def _decompose_exact(gk: GkNetwork, f: Flow, net_paths: Sequence[NetworkPath]) -> bool:
    counts = [0] * len(gk.net.arcs)
    for np_ in net_paths:
        for ai in np_.arcs:
            counts[ai] += 1
    return all(counts[i] == f.values[i]
               for i in range(len(counts)) if i != gk.net.ts_arc)


def height_levels(dag: Dag) -> list[set[int]]:
    """Antichain layers by longest chain ending at each vertex."""
    depth = [0] * dag.n
    for v in dag.topo:
        d = 0
        for u in dag.pred[v]:
            d = max(d, depth[u] + 1)
        depth[v] = d
    height = max(depth, default=-1) + 1
    levels: list[set[int]] = [set() for _ in range(height)]
    for v in range(dag.n):
        levels[depth[v]].add(v)
    return levels


def extract_antichains(gk: GkNetwork, f: Flow) -> Family:
    """Antichain levels from residual shortest-path labels.

    Vertex v lands in level d(v_in) - d(t) whenever d(v_in) > d(v_out);
    level indices run 1..d(s)-d(t). For problem Alpha a circulation that
    routes nothing is degenerate and raised to the caller.
    """
    if gk.n == 0:
        return Family((), disjoint=True)
    if gk.kind == ALPHA and f.values[gk.ts()] == 0:
        raise DegenerateError("no circulation through the return arc")
    res = residual(gk.net, f)
    d = shortest_distances(res, gk.net.s)
    dt = d[gk.net.t]
    assert dt is not None and d[gk.net.s] == 0
    h = -dt
    if gk.kind == ALPHA:
        assert h == gk.k, f"label spread {h} differs from k={gk.k}"
    else:
        # The optimal antichain collection may hold more than k members
        # (each costs k against uncovered vertices, not a cardinality cap).
        assert h >= 0, f"label spread {h} negative"
    buckets: dict[int, list[int]] = {}
    for v in range(gk.n):
        din, dout = d[2 * v], d[2 * v + 1]
        assert din is not None and dout is not None
        if din > dout:
            level = din - dt
            assert 1 <= level <= h, f"selected level {level} outside 1..{h}"
            buckets.setdefault(level, []).append(v)
    members = [certify_antichain(gk.dag, buckets[i])
               for i in sorted(buckets) if buckets[i]]
    return Family(tuple(members), disjoint=True)


@dataclass
class AlphaResult:
    alpha: int
    ma: GkSolution
    mps: GkSolution
    mcp: GkSolution
    stats: SolveStats


@dataclass
class BetaResult:
    beta: int
    mp: GkSolution
    mc: GkSolution
    mas: GkSolution
    map: GkSolution
    stats: SolveStats


def normalize_beta(gk: GkNetwork, f: Flow) -> Flow:
    """Pad the circulation to route exactly k units, at zero extra cost.

    Spare units go through vertex 0's overflow arc, so the cost and the
    cover arcs are untouched. No-op on the empty graph.
    """
    assert gk.kind == BETA
    out = f.copy()
    if gk.n == 0:
        return out
    pad = gk.k - out.values[gk.ts()]
    assert pad >= 0
    if pad:
        out.values[gk.entry(0)] += pad
        out.values[gk.e2(0)] += pad
        out.values[gk.exit(0)] += pad
        out.values[gk.ts()] += pad
    assert out.cost(gk.net) == f.cost(gk.net)
    return out


def solve_alpha(dag: Dag, k: int, warm: bool = True) -> AlphaResult:
    """Maximum coverage by k disjoint antichains, with its dual witnesses.

    Returns the antichain family (MA-k), the path collection whose
    k-norm matches (MPS-k), and the chain partition completing it
    (MCP-k); all three values equal alpha_k.
    """
    gk = build_network(dag, k, ALPHA)
    n = dag.n
    if warm and n > 0:
        collection, _, _ = greedy_weighted_chain_cover(dag, k)
        f0 = _route_paths(gk, [p.vertices for p in collection.members])
    else:
        f0 = zero_flow(gk.net)
    circ = min_cost_circulation(gk.net, f0)
    f = circ.flow
    _assert_gadget_invariant(gk, f)
    no_neg = find_negative_cycle(residual(gk.net, f)) is None
    alpha_k = circ.final_cost + n
    net_paths = decompose(gk.net, f)
    exact = _decompose_exact(gk, f, net_paths)
    dag_paths = _dag_paths(gk, net_paths)
    mps_family = Family(tuple(dag_paths))
    mps_value = knorm_collection(mps_family.members, n, k)
    assert mps_value == alpha_k, f"path collection norm {mps_value} != alpha {alpha_k}"
    chain_family = chains_from_paths(dag, dag_paths)
    if f.values[gk.ts()] > 0:
        assert all(len(c) >= k for c in chain_family.members), \
            "an extracted chain is shorter than k"
    mcp_family = partition_completion(chain_family, n, Chain)
    mcp_value = knorm_partition(mcp_family, n, k)
    assert mcp_value == alpha_k, f"chain partition norm {mcp_value} != alpha {alpha_k}"
    try:
        ma_family = extract_antichains(gk, f)
    except DegenerateError:
        levels = height_levels(dag)
        assert len(levels) <= k
        ma_family = Family(tuple(
            certify_antichain(dag, lv) for lv in levels), disjoint=True)
    ma_value = ma_family.coverage()
    assert ma_value == alpha_k, f"antichain coverage {ma_value} != alpha {alpha_k}"
    assert len(ma_family) <= k
    stats = SolveStats(warm, circ.iterations, circ.initial_cost,
                       circ.final_cost, no_neg, exact,
                       circ.iterations <= circ.initial_cost - circ.final_cost)
    return AlphaResult(
        alpha_k,
        GkSolution("MA-k", k, ma_family, ma_value),
        GkSolution("MPS-k", k, mps_family, mps_value),
        GkSolution("MCP-k", k, mcp_family, mcp_value),
        stats)


def solve_beta(dag: Dag, k: int, warm: bool = False) -> BetaResult:
    """Maximum coverage by k disjoint chains, with its dual witnesses.

    Returns k paths (MP-k, padded with synthetic single-vertex paths if
    the circulation used fewer), the chains they induce (MC-k), the
    antichain collection whose k-norm matches (MAS-k), and its
    completion to a partition (MAP-k); all four values equal beta_k.
    """
    gk = build_network(dag, k, BETA)
    n = dag.n
    if warm and n > 0:
        _, trace = greedy_k_chains(dag, k)
        seed_paths = [r.member for r in trace.rounds if r.gain > 0]
        f0 = _route_paths(gk, seed_paths)
    else:
        f0 = zero_flow(gk.net)
    circ = min_cost_circulation(gk.net, f0)
    f = circ.flow
    _assert_gadget_invariant(gk, f)
    no_neg = find_negative_cycle(residual(gk.net, f)) is None
    beta_k = -circ.final_cost
    fN = normalize_beta(gk, f)
    net_paths = decompose(gk.net, fN)
    exact = _decompose_exact(gk, fN, net_paths)
    if n > 0:
        assert len(net_paths) == k, f"expected k={k} paths, got {len(net_paths)}"
    dag_paths = _dag_paths(gk, net_paths)
    synthetic = tuple(
        i for i, np_ in enumerate(net_paths)
        if len(np_.arcs) == 3 and np_.arcs[1] == gk.e2(0))
    mp_family = Family(tuple(dag_paths))
    mp_value = mp_family.coverage()
    assert mp_value == beta_k, f"path coverage {mp_value} != beta {beta_k}"
    mc_family = chains_from_paths(dag, dag_paths)
    mc_value = mc_family.coverage()
    assert mc_value == beta_k, f"chain coverage {mc_value} != beta {beta_k}"
    assert len(mc_family) <= k
    mas_family = extract_antichains(gk, fN)
    mas_value = knorm_collection(mas_family.members, n, k)
    assert mas_value == beta_k, f"antichain collection norm {mas_value} != beta {beta_k}"
    map_family = partition_completion(mas_family, n, Antichain)
    map_value = knorm_partition(map_family, n, k)
    assert map_value == beta_k, f"antichain partition norm {map_value} != beta {beta_k}"
    stats = SolveStats(warm, circ.iterations, circ.initial_cost,
                       circ.final_cost, no_neg, exact,
                       circ.iterations <= circ.initial_cost - circ.final_cost)
    return BetaResult(
        beta_k,
        GkSolution("MP-k", k, mp_family, mp_value, synthetic),
        GkSolution("MC-k", k, mc_family, mc_value),
        GkSolution("MAS-k", k, mas_family, mas_value),
        GkSolution("MAP-k", k, map_family, map_value),
        stats)


def recompute_value(dag: Dag, sol: GkSolution) -> int:
    """Recompute a solution's objective from its family alone."""
    n = dag.n
    if sol.problem in ("MA-k", "MC-k", "MP-k"):
        return sol.family.coverage()
    if sol.problem in ("MPS-k", "MAS-k"):
        return knorm_collection(sol.family.members, n, sol.k)
    if sol.problem in ("MCP-k", "MAP-k"):
        return knorm_partition(sol.family, n, sol.k)
    raise ValueError(f"unknown problem tag {sol.problem!r}")
