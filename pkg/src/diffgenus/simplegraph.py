"""Simple undirected graphs with the operations the genus pipeline needs:
induced subgraphs, complete-multipartite recognition, complete-bipartite
subgraph search, genus-preserving homeomorphic reduction, block
decomposition, and girth/bipartiteness."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


class SimpleGraph:
    """Labeled undirected simple graph on vertices 0..n-1."""

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[Sequence] = None,
    ):
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels length must equal vertex count")
            self.labels = list(labels)
        else:
            self.labels = list(range(n))

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range")
        self.adj[u].add(v)
        self.adj[v].add(u)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for u in range(self.n):
            m = 0
            for v in self.adj[u]:
                m |= 1 << v
            masks[u] = m
        return masks

    def copy(self) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges(), labels=list(self.labels))

    def checksum(self) -> str:
        """Hex digest identifying the graph up to labels (vertex ids + edges)."""
        payload = f"{self.n};" + ";".join(f"{u},{v}" for u, v in self.edges())
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    def __repr__(self) -> str:
        return f"<SimpleGraph n={self.n} m={self.edge_count}>"

    # constructors ---------------------------------------------------------

    @staticmethod
    def complete(n: int) -> "SimpleGraph":
        return SimpleGraph(n, combinations(range(n), 2))

    @staticmethod
    def complete_bipartite(m: int, n: int) -> "SimpleGraph":
        return SimpleGraph(m + n, ((i, m + j) for i in range(m) for j in range(n)))

    @staticmethod
    def complete_multipartite(parts: Sequence[int]) -> "SimpleGraph":
        total = sum(parts)
        bounds = []
        start = 0
        for p in parts:
            bounds.append((start, start + p))
            start += p
        edges = []
        for i, (a0, a1) in enumerate(bounds):
            for b0, b1 in bounds[i + 1 :]:
                edges.extend((a, b) for a in range(a0, a1) for b in range(b0, b1))
        return SimpleGraph(total, edges)

    @staticmethod
    def cycle(n: int) -> "SimpleGraph":
        return SimpleGraph(n, ((i, (i + 1) % n) for i in range(n)))

    @staticmethod
    def path(n: int) -> "SimpleGraph":
        return SimpleGraph(n, ((i, i + 1) for i in range(n - 1)))


def induced_subgraph(g: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    """Subgraph on the given vertices with exactly the edges inside them.

    Vertices are renumbered 0..k-1 in ascending original order; labels carry
    over.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    index = {v: i for i, v in enumerate(vs)}
    sub = SimpleGraph(len(vs), labels=[g.labels[v] for v in vs])
    for u in vs:
        for w in g.adj[u]:
            if u < w and w in index:
                sub.add_edge(index[u], index[w])
    return sub


def complete_multipartite_parts(g: SimpleGraph) -> Optional[list[int]]:
    """Sorted part sizes when g is complete multipartite, else None.

    A graph is complete multipartite exactly when its complement is a
    disjoint union of cliques; the parts are the complement's components.
    """
    if g.n == 0:
        return []
    comp_adj = [set(range(g.n)) - g.adj[v] - {v} for v in range(g.n)]
    seen = [False] * g.n
    parts = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in comp_adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comp_set = set(comp)
        for x in comp:
            if not comp_set - comp_adj[x] == {x}:
                return None  # complement component is not a clique
        parts.append(len(comp))
    return sorted(parts)


BIPARTITE_SIDE_CAP = 4


def find_complete_bipartite(
    g: SimpleGraph, m: int, n: int
) -> Optional[tuple[list[int], list[int]]]:
    """Search for disjoint vertex sets A (|A|=m) and B (|B|=n) with every A-B
    edge present (extra edges are allowed; this is subgraph containment).

    The small side is capped at 4; deterministic first-found order.
    """
    if m < 1 or n < 1:
        raise ValueError("part sizes must be positive")
    if m > BIPARTITE_SIDE_CAP:
        raise ValueError(f"small side {m} exceeds cap {BIPARTITE_SIDE_CAP}")
    masks = g.adjacency_masks()
    candidates = [v for v in range(g.n) if g.degree(v) >= n]

    def rec(start: int, chosen: list[int], common: int) -> Optional[tuple[list[int], list[int]]]:
        if len(chosen) == m:
            avail = common
            for c in chosen:
                avail &= ~(1 << c)
            if avail.bit_count() >= n:
                b_side = []
                while avail and len(b_side) < n:
                    low = avail & -avail
                    b_side.append(low.bit_length() - 1)
                    avail ^= low
                return list(chosen), b_side
            return None
        for i in range(start, len(candidates)):
            v = candidates[i]
            new_common = common & masks[v]
            if new_common.bit_count() < n:
                continue
            chosen.append(v)
            found = rec(i + 1, chosen, new_common)
            if found:
                return found
            chosen.pop()
        return None

    return rec(0, [], (1 << g.n) - 1)


# ---------------------------------------------------------------------------
# Homeomorphic reduction


@dataclass
class ReductionLog:
    """Replayable record of a homeomorphic reduction.

    Step kinds: removed_isolated(v), removed_degree_one(v),
    suppressed_degree_two(v, u, w), dropped_parallel(u, v), dropped_loop(v).
    vertex_map sends surviving original ids to output ids.
    """

    steps: list[tuple] = field(default_factory=list)
    vertex_map: dict[int, int] = field(default_factory=dict)


def reduce_homeomorphic(g: SimpleGraph) -> tuple[SimpleGraph, ReductionLog]:
    """Iteratively delete isolated and degree-1 vertices and suppress
    degree-2 vertices, dropping any parallel edges this creates.

    The output has the same genus and crosscap as the input. Trees and
    cycles reduce to the empty graph.
    """
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    log = ReductionLog()
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            deg = len(adj[v])
            if deg == 0:
                log.steps.append(("removed_isolated", v))
                del adj[v]
                changed = True
            elif deg == 1:
                (u,) = adj[v]
                adj[u].discard(v)
                del adj[v]
                log.steps.append(("removed_degree_one", v))
                changed = True
            elif deg == 2:
                u, w = sorted(adj[v])
                adj[u].discard(v)
                adj[w].discard(v)
                del adj[v]
                log.steps.append(("suppressed_degree_two", v, u, w))
                if w in adj[u]:
                    log.steps.append(("dropped_parallel", u, w))
                else:
                    adj[u].add(w)
                    adj[w].add(u)
                changed = True
    survivors = sorted(adj)
    log.vertex_map = {v: i for i, v in enumerate(survivors)}
    out = SimpleGraph(len(survivors), labels=[g.labels[v] for v in survivors])
    for v in survivors:
        for w in adj[v]:
            if v < w:
                out.add_edge(log.vertex_map[v], log.vertex_map[w])
    return out, log


def replay_reduction(g: SimpleGraph, log: ReductionLog) -> SimpleGraph:
    """Apply a recorded reduction step list to g; used to audit logs."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    for step in log.steps:
        kind = step[0]
        if kind == "removed_isolated":
            (_, v) = step
            if adj[v]:
                raise ValueError(f"replay: vertex {v} is not isolated")
            del adj[v]
        elif kind == "removed_degree_one":
            (_, v) = step
            (u,) = adj[v]
            adj[u].discard(v)
            del adj[v]
        elif kind == "suppressed_degree_two":
            (_, v, u, w) = step
            if adj[v] != {u, w}:
                raise ValueError(f"replay: vertex {v} neighbors mismatch")
            adj[u].discard(v)
            adj[w].discard(v)
            del adj[v]
            if w not in adj[u]:
                adj[u].add(w)
                adj[w].add(u)
        elif kind == "dropped_parallel":
            pass  # suppression above already kept the single copy
        elif kind == "dropped_loop":
            pass
        else:
            raise ValueError(f"replay: unknown step {kind}")
    survivors = sorted(adj)
    vmap = {v: i for i, v in enumerate(survivors)}
    out = SimpleGraph(len(survivors), labels=[g.labels[v] for v in survivors])
    for v in survivors:
        for w in adj[v]:
            if v < w:
                out.add_edge(vmap[v], vmap[w])
    return out


# ---------------------------------------------------------------------------
# Blocks and girth


def block_decomposition(g: SimpleGraph) -> tuple[list[SimpleGraph], list[int]]:
    """Maximal 2-connected subgraphs plus bridges, and the cut vertices.

    Every edge lands in exactly one block; a bridge becomes a K2 block.
    Block graphs inherit the original labels.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    edge_stack: list[tuple[int, int]] = []
    blocks_edges: list[list[tuple[int, int]]] = []
    cuts: set[int] = set()
    timer = 0

    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue  # the unique tree edge back to the parent
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while edge_stack:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (u, v):
                            break
                    blocks_edges.append(comp)
                    if u != root:
                        cuts.add(u)
        if root_children > 1:
            cuts.add(root)

    blocks = []
    for comp in blocks_edges:
        vs = sorted({x for e in comp for x in e})
        index = {x: i for i, x in enumerate(vs)}
        b = SimpleGraph(len(vs), labels=[g.labels[x] for x in vs])
        for u, v in comp:
            b.add_edge(index[u], index[v])
        blocks.append(b)
    return blocks, sorted(cuts)


def girth_and_bipartite(g: SimpleGraph) -> tuple[float, bool]:
    """Shortest cycle length (math.inf for forests) and bipartiteness."""
    import math as _math
    from collections import deque

    best = _math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        dq = deque([s])
        while dq:
            v = dq.popleft()
            if 2 * dist[v] >= best:
                break
            for w in g.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    dq.append(w)
                elif parent[v] != w and parent[w] != v:
                    cyc = dist[v] + dist[w] + 1
                    if cyc < best:
                        best = cyc

    color = [-1] * g.n
    bipartite = True
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack and bipartite:
            v = stack.pop()
            for w in g.adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    bipartite = False
                    break
    return best, bipartite
