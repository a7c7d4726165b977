"""Power graph, enhanced power graph, and their difference for a finite group.

Vertex labels are (element index, element order) pairs so that exported
graphs stay readable; the difference graph drops the identity and every
other isolated vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupTable, cyclic_subgroups, maximal_cyclic_subgroups
from .simplegraph import SimpleGraph


@dataclass
class GroupGraph:
    kind: str  # "power" | "enhanced" | "difference"
    graph: SimpleGraph
    group: GroupTable

    def element_of(self, vertex: int) -> int:
        return self.graph.labels[vertex][0]


def _power_rows(g: GroupTable) -> list[int]:
    """Bitmask adjacency of the power relation: x ~ y iff one generates the
    other (x != y)."""
    n = g.order
    spans = [g.cyclic_span(x) for x in range(n)]
    rows = [0] * n
    for x in range(n):
        m = rows[x]
        for y in spans[x]:
            m |= 1 << y
            rows[y] |= 1 << x
        rows[x] = m
    for x in range(n):
        rows[x] &= ~(1 << x)
    return rows


def _enhanced_rows(g: GroupTable) -> list[int]:
    """Bitmask adjacency of the common-cyclic-subgroup relation."""
    n = g.order
    rows = [0] * n
    for sub in maximal_cyclic_subgroups(g):
        mask = 0
        for y in sub.members:
            mask |= 1 << y
        for x in sub.members:
            rows[x] |= mask
    for x in range(n):
        rows[x] &= ~(1 << x)
    return rows


def _graph_from_rows(g: GroupTable, rows: list[int], vertices: list[int], kind: str) -> GroupGraph:
    index = {e: i for i, e in enumerate(vertices)}
    labels = [(e, g.element_order(e)) for e in vertices]
    graph = SimpleGraph(len(vertices), labels=labels)
    for e in vertices:
        m = rows[e]
        while m:
            low = m & -m
            y = low.bit_length() - 1
            m ^= low
            if y > e and y in index:
                graph.add_edge(index[e], index[y])
    return GroupGraph(kind, graph, g)


def power_graph(g: GroupTable) -> GroupGraph:
    return _graph_from_rows(g, _power_rows(g), list(range(g.order)), "power")


def enhanced_power_graph(g: GroupTable) -> GroupGraph:
    return _graph_from_rows(g, _enhanced_rows(g), list(range(g.order)), "enhanced")


def difference_graph(g: GroupTable) -> GroupGraph:
    """Enhanced-power edges that are not power edges, isolated vertices
    (always including the identity) removed."""
    power = _power_rows(g)
    enhanced = _enhanced_rows(g)
    diff = [enhanced[x] & ~power[x] for x in range(g.order)]
    diff[0] = 0  # the identity is power-adjacent to everything
    for x in range(1, g.order):
        diff[x] &= ~1
    vertices = [x for x in range(1, g.order) if diff[x]]
    return _graph_from_rows(g, diff, vertices, "difference")


def vertex_membership(g: GroupTable, x: int) -> bool:
    """Predicate for membership in the difference graph's vertex set,
    computed from subgroup structure rather than from the graph.

    A non-identity x is excluded exactly when its span is a maximal cyclic
    subgroup or every cyclic subgroup containing x has prime-power order.
    The identity returns False by convention.
    """
    if x == 0:
        return False
    span = g.cyclic_span(x)
    maximal = {s.members for s in maximal_cyclic_subgroups(g)}
    if span in maximal:
        return False
    containers = [s for s in cyclic_subgroups(g) if x in s.members]
    if all(_is_prime_power(s.order) for s in containers):
        return False
    return True


def _is_prime_power(n: int) -> bool:
    if n == 1:
        return True
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            return n == 1
        d += 1
    return True
