"""Genus and crosscap computation: planarity, Euler-formula and subgraph
lower bounds, exhaustive branch-and-bound over rotation systems (with edge
signs for nonorientable surfaces), and a greedy-insertion/local-search
heuristic that produces verified embedding certificates.

The Euler genus of an embedding scheme is 2 - V + E - F on each component;
orientable genus is half the minimum over all-positive schemes, crosscap the
minimum over unbalanced schemes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

import networkx as nx

from .embeddings import EmbeddingScheme, make_scheme, trace_faces
from .simplegraph import (
    SimpleGraph,
    block_decomposition,
    find_complete_bipartite,
    girth_and_bipartite,
    induced_subgraph,
    reduce_homeomorphic,
)

ORIENTABLE = "orientable"
NONORIENTABLE = "nonorientable"


@dataclass
class SearchBudget:
    """Effort knobs for the exact and heuristic searches."""

    exhaustive_cap: int = 10_000_000  # max rotation-configuration space for BnB
    node_cap: int = 3_000_000        # safety abort on explored BnB nodes
    restarts: int = 64
    moves_per_restart: int = 20_000
    seed: int = 0
    lower_stop: Optional[int] = None  # stop once the lower bound reaches this


DEFAULT_BUDGET = SearchBudget()


@dataclass
class GenusResult:
    surface: str
    lower: int
    upper: Optional[int]
    exact: bool
    certificate: Optional[EmbeddingScheme] = None
    certificate_graph: Optional[SimpleGraph] = None
    provenance: list[str] = field(default_factory=list)

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None


@dataclass
class KuratowskiWitness:
    kind: str  # "K5" or "K3,3"
    branch_vertices: list[int]
    edges: list[tuple[int, int]]


@dataclass
class PlanarityResult:
    planar: bool
    scheme: Optional[EmbeddingScheme] = None
    witness: Optional[KuratowskiWitness] = None


# ---------------------------------------------------------------------------
# Formulas and bounds


def formula_oracle(kind: str, params: tuple[int, ...], surface: str) -> int:
    """Closed-form genus/crosscap of complete and complete bipartite graphs,
    including the crosscap-3 exception at K7."""
    if surface not in (ORIENTABLE, NONORIENTABLE):
        raise ValueError(f"unknown surface {surface!r}")
    if kind == "complete":
        (n,) = params
        if n < 3:
            raise ValueError("complete-graph formulas need n >= 3")
        if surface == ORIENTABLE:
            return -((n - 3) * (n - 4) // -12)
        if n == 7:
            return 3
        return -((n - 3) * (n - 4) // -6)
    if kind == "complete_bipartite":
        m, n = params
        if m < 2 or n < 2:
            raise ValueError("bipartite formulas need m, n >= 2")
        if surface == ORIENTABLE:
            return -((m - 2) * (n - 2) // -4)
        return -((m - 2) * (n - 2) // -2)
    raise ValueError(f"unknown graph family {kind!r}")


def euler_lower_bound(g: SimpleGraph, surface: str) -> int:
    """Euler-formula bound: F <= 2E/girth caps the face count, so the Euler
    genus is at least 2 - V + E - floor(2E/girth). Needs a connected input;
    the girth refinement is only sound without degree-1 vertices, so those
    fall back to the trivial face bound."""
    if not g.is_connected():
        raise ValueError("euler_lower_bound needs a connected graph")
    e = g.edge_count
    if e == 0:
        return 0
    girth, _ = girth_and_bipartite(g)
    if math.isinf(girth):
        f_max = 1
    elif min(g.degree(v) for v in range(g.n)) >= 2:
        f_max = (2 * e) // int(girth)
    else:
        f_max = e
    e_min = 2 - g.n + e - f_max
    if surface == ORIENTABLE:
        return max(0, math.ceil(e_min / 2))
    return max(0, e_min)


_SUBGRAPH_CANDIDATE_CAP = 16


def bipartite_subgraph_bound(g: SimpleGraph, surface: str) -> tuple[int, Optional[str]]:
    """Best lower bound obtainable from a complete bipartite subgraph with
    small side <= 4, found among the highest-degree vertices. Returns the
    bound and a witness description like "K_{3,10}"."""
    if g.n == 0 or g.edge_count == 0:
        return 0, None
    masks = g.adjacency_masks()
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    cands = order[:_SUBGRAPH_CANDIDATE_CAP]
    best, desc = 0, None
    for m in (2, 3, 4):
        if len(cands) < m:
            break
        for subset in combinations(cands, m):
            common = (1 << g.n) - 1
            for v in subset:
                common &= masks[v]
            for v in subset:
                common &= ~(1 << v)
            n_side = common.bit_count()
            if n_side < 2:
                continue
            val = formula_oracle("complete_bipartite", (m, n_side), surface)
            if val > best:
                best, desc = val, f"K_{{{m},{n_side}}}"
    return best, desc


def rotation_space_size(g: SimpleGraph) -> int:
    """Number of rotation systems after anchoring each vertex's cyclic order
    and halving by the global reflection."""
    total = 1
    for v in range(g.n):
        total *= math.factorial(max(g.degree(v) - 1, 0))
    return max(1, total // 2)


# ---------------------------------------------------------------------------
# Planarity (library-backed; the embedding it returns is re-verified here)


def is_planar(g: SimpleGraph) -> PlanarityResult:
    """Planarity with a genus-0 scheme as a yes-witness or a Kuratowski
    subdivision as a no-witness."""
    if g.edge_count == 0:
        scheme = make_scheme(g, [[] for _ in range(g.n)])
        return PlanarityResult(True, scheme=scheme)
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(G, counterexample=False)
    if ok:
        rotations = [list(emb.neighbors_cw_order(v)) if g.adj[v] else [] for v in range(g.n)]
        scheme = make_scheme(g, rotations)
        trace = trace_faces(g, scheme)
        assert trace.euler_genus == 0 and trace.orientable
        return PlanarityResult(True, scheme=scheme)
    _, counter = nx.check_planarity(G, counterexample=True)
    branch = sorted(v for v in counter.nodes if counter.degree(v) >= 3)
    kind = "K5" if any(counter.degree(v) >= 4 for v in branch) else "K3,3"
    edges = sorted(tuple(sorted(e)) for e in counter.edges)
    return PlanarityResult(False, witness=KuratowskiWitness(kind, branch, edges))


# ---------------------------------------------------------------------------
# Fast evaluators used by the searches


class _DartIndex:
    def __init__(self, g: SimpleGraph):
        self.g = g
        self.edges = g.edges()
        self.m = len(self.edges)
        self.dart: dict[tuple[int, int], int] = {}
        self.head = [0] * (2 * self.m)
        for i, (u, v) in enumerate(self.edges):
            self.dart[(u, v)] = 2 * i
            self.dart[(v, u)] = 2 * i + 1
            self.head[2 * i] = v
            self.head[2 * i + 1] = u
        comps = g.connected_components()
        self.base = 2 * len(comps) - g.n + self.m
        self.isolated = sum(1 for c in comps if len(c) == 1 and not g.adj[c[0]])


class _OrientableEvaluator:
    """Partial rotation system over plain darts; counts closed faces and
    darts not yet on a closed face."""

    def __init__(self, idx: _DartIndex):
        self.idx = idx
        self.nxt = [-1] * (2 * idx.m)
        self._stamp = [0] * (2 * idx.m)
        self._tick = 0

    def assign(self, v: int, rotation: list[int]) -> None:
        dart = self.idx.dart
        nxt = self.nxt
        d = len(rotation)
        for i, u in enumerate(rotation):
            nxt[dart[(u, v)]] = dart[(v, rotation[(i + 1) % d])]

    def unassign(self, v: int, rotation: list[int]) -> None:
        dart = self.idx.dart
        nxt = self.nxt
        for u in rotation:
            nxt[dart[(u, v)]] = -1

    def stats(self) -> tuple[int, int]:
        """(closed_faces, open_darts)."""
        nxt = self.nxt
        total = len(nxt)
        self._tick += 1
        tick = self._tick
        stamp = self._stamp
        closed = 0
        open_darts = 0
        for d0 in range(total):
            if stamp[d0] == tick:
                continue
            path = []
            d = d0
            while d != -1 and stamp[d] != tick:
                stamp[d] = tick
                path.append(d)
                d = nxt[d]
            if d == -1:
                open_darts += len(path)
            elif d == d0 and path:
                closed += 1
            else:
                # ran into an already-stamped dart: every dart has a unique
                # predecessor, so this only happens when d0's chain feeds a
                # previously counted structure; treat as open prefix
                if d in path:
                    # closed cycle found mid-path: cycle part closed, prefix open
                    k = path.index(d)
                    open_darts += k
                    closed += 1
                else:
                    open_darts += len(path)
        return closed, open_darts

    def euler(self) -> int:
        closed, open_darts = self.stats()
        assert open_darts == 0, "euler() on a partial assignment"
        return self.idx.base - (closed + self.idx.isolated)


class _SignedEvaluator:
    """Partial rotation system with edge signs over (dart, orientation)
    states; face count is half the state-cycle count."""

    def __init__(self, idx: _DartIndex, signs: list[int]):
        self.idx = idx
        self.signs = list(signs)  # per edge index
        self.nxt = [-1] * (4 * idx.m)
        self._stamp = [0] * (4 * idx.m)
        self._tick = 0
        self._rotation_of: dict[int, list[int]] = {}

    def _set_states_for_dart(self, u: int, v: int) -> None:
        """Fill transitions of both orientation states of dart u->v; head v
        must have an assigned rotation."""
        idx = self.idx
        rot = self._rotation_of[v]
        d = idx.dart[(u, v)]
        s = self.signs[d // 2]
        i = rot.index(u)
        deg = len(rot)
        succ = rot[(i + 1) % deg]
        pred = rot[(i - 1) % deg]
        # o = +1 state
        o2 = s
        w = succ if o2 == 1 else pred
        self.nxt[2 * d] = 2 * idx.dart[(v, w)] + (0 if o2 == 1 else 1)
        # o = -1 state
        o2 = -s
        w = succ if o2 == 1 else pred
        self.nxt[2 * d + 1] = 2 * idx.dart[(v, w)] + (0 if o2 == 1 else 1)

    def assign(self, v: int, rotation: list[int]) -> None:
        self._rotation_of[v] = list(rotation)
        for u in rotation:
            self._set_states_for_dart(u, v)

    def unassign(self, v: int, rotation: list[int]) -> None:
        del self._rotation_of[v]
        for u in rotation:
            d = self.idx.dart[(u, v)]
            self.nxt[2 * d] = -1
            self.nxt[2 * d + 1] = -1

    def set_edge_sign(self, edge_index: int, sign: int) -> None:
        self.signs[edge_index] = sign
        u, v = self.idx.edges[edge_index]
        if v in self._rotation_of:
            self._set_states_for_dart(u, v)
        if u in self._rotation_of:
            self._set_states_for_dart(v, u)

    def stats(self) -> tuple[int, int]:
        """(closed_faces, open_states); closed state cycles come in mirror
        pairs, hence the halving."""
        nxt = self.nxt
        total = len(nxt)
        self._tick += 1
        tick = self._tick
        stamp = self._stamp
        cycles = 0
        open_states = 0
        for s0 in range(total):
            if stamp[s0] == tick:
                continue
            path = []
            s = s0
            while s != -1 and stamp[s] != tick:
                stamp[s] = tick
                path.append(s)
                s = nxt[s]
            if s == -1:
                open_states += len(path)
            elif s == s0 and path:
                cycles += 1
            else:
                if s in path:
                    open_states += path.index(s)
                    cycles += 1
                else:
                    open_states += len(path)
        assert cycles % 2 == 0, "state cycles must pair up"
        return cycles // 2, open_states

    def euler(self) -> int:
        closed, open_states = self.stats()
        assert open_states == 0, "euler() on a partial assignment"
        return self.idx.base - (closed + self.idx.isolated)


# ---------------------------------------------------------------------------
# Exhaustive search (branch and bound)


def _assignment_order(g: SimpleGraph) -> list[int]:
    """Highest degree first, then grow through assigned neighborhoods so
    partial faces close early."""
    remaining = set(range(g.n))
    order = []
    while remaining:
        if not order:
            pick = max(remaining, key=lambda v: (g.degree(v), -v))
        else:
            assigned = set(order)
            pick = max(
                remaining,
                key=lambda v: (sum(1 for w in g.adj[v] if w in assigned), g.degree(v), -v),
            )
        order.append(pick)
        remaining.discard(pick)
    return order


def _rotation_candidates(g: SimpleGraph, v: int, quotient_reflection: bool):
    nbrs = g.neighbors(v)
    if len(nbrs) <= 2:
        yield list(nbrs)
        return
    anchor, rest = nbrs[0], nbrs[1:]
    for perm in permutations(rest):
        if quotient_reflection and perm[0] > perm[-1]:
            continue
        yield [anchor, *perm]


class _BnBAbort(Exception):
    pass


def _bnb_min_euler(
    g: SimpleGraph,
    evaluator,
    order: list[int],
    min_face_len: int,
    stop_at: int,
    node_cap: int,
    parity_even: bool,
    initial_best: Optional[int] = None,
) -> tuple[Optional[int], Optional[list[list[int]]], bool]:
    """Branch and bound over rotations for a fixed evaluator (signs, if any,
    are already frozen inside it). Returns (best_euler, best_rotations,
    completed); completed is False when the node cap aborted the search.
    best_rotations stays None when nothing beats initial_best."""
    best_euler: Optional[int] = initial_best
    best_rot: Optional[list[list[int]]] = None
    current: dict[int, list[int]] = {}
    nodes = 0
    state_unit = 2 if isinstance(evaluator, _SignedEvaluator) else 1

    def bound_after_partial() -> int:
        closed, open_count = evaluator.stats()
        extra = open_count // (min_face_len * state_unit)
        return evaluator.idx.base - (closed + extra + evaluator.idx.isolated)

    def rec(k: int) -> None:
        nonlocal best_euler, best_rot, nodes
        if best_euler is not None and best_euler <= stop_at:
            raise _BnBAbort  # cannot do better than the known lower bound
        if k == len(order):
            e = evaluator.euler()
            if parity_even and e % 2:
                raise AssertionError("orientable scheme with odd euler genus")
            if best_euler is None or e < best_euler:
                best_euler = e
                best_rot = [list(current[v]) for v in range(g.n)]
            return
        v = order[k]
        for rot in _rotation_candidates(g, v, quotient_reflection=(k == 0)):
            nodes += 1
            if nodes > node_cap:
                raise _BnBAbort
            evaluator.assign(v, rot)
            current[v] = rot
            lb = bound_after_partial()
            if parity_even and lb % 2:
                lb += 1
            if best_euler is None or lb < best_euler:
                rec(k + 1)
            evaluator.unassign(v, rot)
            del current[v]

    completed = True
    try:
        rec(0)
    except _BnBAbort:
        completed = nodes <= node_cap and best_euler is not None and best_euler <= stop_at
    return best_euler, best_rot, completed


def _exhaustive_orientable(g: SimpleGraph, budget: SearchBudget, lower_euler: int):
    idx = _DartIndex(g)
    ev = _OrientableEvaluator(idx)
    order = _assignment_order(g)
    mfl = 3 if min(g.degree(v) for v in range(g.n)) >= 2 else 2
    return _bnb_min_euler(g, ev, order, mfl, lower_euler, budget.node_cap, parity_even=True)


def _cotree_edges(g: SimpleGraph) -> list[int]:
    """Indices (into g.edges()) of edges outside a BFS spanning forest."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    seen = [False] * g.n
    tree: set[int] = set()
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    tree.add(index[(v, w) if v < w else (w, v)])
                    queue.append(w)
    return [i for i in range(len(edges)) if i not in tree]


def _exhaustive_nonorientable(g: SimpleGraph, budget: SearchBudget, lower_euler: int):
    """Minimum Euler genus over unbalanced schemes: spanning-tree signs are
    fixed +1, every nonempty negative pattern on co-tree edges is tried."""
    idx = _DartIndex(g)
    order = _assignment_order(g)
    mfl = 3 if min(g.degree(v) for v in range(g.n)) >= 2 else 2
    cotree = _cotree_edges(g)
    best: Optional[int] = None
    best_rot = None
    best_signs = None
    completed = True
    for pattern in range(1, 1 << len(cotree)):
        signs = [1] * idx.m
        for bit, ei in enumerate(cotree):
            if pattern >> bit & 1:
                signs[ei] = -1
        ev = _SignedEvaluator(idx, signs)
        e, rot, done = _bnb_min_euler(
            g, ev, order, mfl, lower_euler, budget.node_cap,
            parity_even=False, initial_best=best,
        )
        completed = completed and done
        if rot is not None and (best is None or e < best):
            best, best_rot, best_signs = e, rot, signs
            if best <= lower_euler:
                break
    return best, best_rot, best_signs, completed


# ---------------------------------------------------------------------------
# Heuristic search


def _greedy_insertion_rotations(g: SimpleGraph, rng: random.Random, shuffle: bool) -> list[list[int]]:
    """Insert edges one at a time, each at the cyclic positions that keep the
    running Euler genus smallest. Cheap and a strong starting point."""
    edge_order = g.edges()
    if shuffle:
        rng.shuffle(edge_order)
    rotations: list[list[int]] = [[] for _ in range(g.n)]
    placed: list[tuple[int, int]] = []

    def partial_euler() -> int:
        sub = SimpleGraph(g.n, placed)
        idx = _DartIndex(sub)
        ev = _OrientableEvaluator(idx)
        for v in range(g.n):
            if rotations[v]:
                ev.assign(v, rotations[v])
        closed, open_darts = ev.stats()
        assert open_darts == 0
        return idx.base - (closed + idx.isolated)

    for u, v in edge_order:
        placed.append((u, v))
        slots_u = max(1, len(rotations[u]))
        slots_v = max(1, len(rotations[v]))
        best = None
        for i in range(slots_u):
            for j in range(slots_v):
                rotations[u].insert(i, v)
                rotations[v].insert(j, u)
                e = partial_euler()
                if best is None or e < best[0]:
                    best = (e, i, j)
                rotations[u].remove(v)
                rotations[v].remove(u)
                if best[0] == 0:
                    break
            if best[0] == 0:
                break
        _, i, j = best
        rotations[u].insert(i, v)
        rotations[v].insert(j, u)
    return rotations


def _random_rotations(g: SimpleGraph, rng: random.Random) -> list[list[int]]:
    out = []
    for v in range(g.n):
        rot = g.neighbors(v)
        rng.shuffle(rot)
        out.append(rot)
    return out


_SA_T_START = 1.5
_SA_T_END = 0.02
_SA_SIGN_MOVE_P = 0.2


def heuristic_embedding(
    g: SimpleGraph,
    target: int,
    surface: str,
    seed: int = 0,
    budget: Optional[SearchBudget] = None,
) -> Optional[EmbeddingScheme]:
    """Annealed local search for a scheme achieving exactly the target genus
    or crosscap. Starts alternate between greedy edge insertion and random
    rotations; moves relocate one neighbor within one rotation, or flip one
    co-tree edge sign on nonorientable surfaces (the scheme is kept
    unbalanced throughout). Uphill moves are accepted with probability
    exp(-delta/T) under a geometric cooling schedule per restart.

    Any returned scheme has been re-verified by face tracing. None means the
    budget ran out; that is a valid outcome, not an error.
    """
    budget = budget or DEFAULT_BUDGET
    if surface == ORIENTABLE and target == 0:
        res = is_planar(g)
        return res.scheme if res.planar else None
    if surface == NONORIENTABLE and target < 1:
        raise ValueError("nonorientable target must be at least 1")
    target_euler = 2 * target if surface == ORIENTABLE else target
    rng = random.Random(seed)
    idx = _DartIndex(g)
    cotree = _cotree_edges(g)
    if surface == NONORIENTABLE and not cotree:
        return None  # forests have no unbalanced scheme
    movable = [v for v in range(g.n) if g.degree(v) >= 3]
    if not movable and surface == ORIENTABLE:
        # rotations are forced; the single scheme either hits or misses
        rotations = [g.neighbors(v) for v in range(g.n)]
        ev = _OrientableEvaluator(idx)
        for v in range(g.n):
            ev.assign(v, rotations[v])
        if ev.euler() != target_euler:
            return None
        return _verified_scheme(g, idx, rotations, None, seed, target_euler, surface)
    cooling = (_SA_T_END / _SA_T_START) ** (1.0 / max(1, budget.moves_per_restart))

    for restart in range(budget.restarts):
        if restart % 2 == 0:
            rotations = _greedy_insertion_rotations(g, rng, shuffle=restart > 0)
        else:
            rotations = _random_rotations(g, rng)
        if surface == ORIENTABLE:
            ev = _OrientableEvaluator(idx)
        else:
            signs = [1] * idx.m
            for ei in rng.sample(cotree, rng.randrange(1, min(4, len(cotree) + 1))):
                signs[ei] = -1
            ev = _SignedEvaluator(idx, signs)
        for v in range(g.n):
            ev.assign(v, rotations[v])
        current = ev.euler()
        temp = _SA_T_START

        for _ in range(budget.moves_per_restart):
            if current == target_euler:
                break
            temp *= cooling
            if not movable and surface == ORIENTABLE:
                break  # rotations are forced; nothing to search
            if surface == NONORIENTABLE and (not movable or rng.random() < _SA_SIGN_MOVE_P):
                ei = cotree[rng.randrange(len(cotree))]
                negatives = sum(1 for i in cotree if ev.signs[i] == -1)
                if ev.signs[ei] == -1 and negatives == 1:
                    continue  # keep at least one negative co-tree sign
                ev.set_edge_sign(ei, -ev.signs[ei])
                e = ev.euler()
                if e <= current or rng.random() < math.exp((current - e) / temp):
                    current = e
                else:
                    ev.set_edge_sign(ei, -ev.signs[ei])
            else:
                v = movable[rng.randrange(len(movable))]
                rot = rotations[v]
                i = rng.randrange(len(rot))
                j = rng.randrange(len(rot))
                if i == j:
                    continue
                moved = rot[i]
                trial = rot[:i] + rot[i + 1 :]
                trial.insert(j, moved)
                ev.unassign(v, rot)
                ev.assign(v, trial)
                e = ev.euler()
                if e <= current or rng.random() < math.exp((current - e) / temp):
                    rotations[v] = trial
                    current = e
                else:
                    ev.unassign(v, trial)
                    ev.assign(v, rot)

        if current == target_euler:
            signs_list = ev.signs if surface == NONORIENTABLE else None
            return _verified_scheme(g, idx, rotations, signs_list, seed, target_euler, surface)
    return None


def _verified_scheme(g, idx, rotations, signs, seed, target_euler, surface):
    sign_map = None
    if signs is not None:
        sign_map = {idx.edges[i]: signs[i] for i in range(idx.m)}
    scheme = make_scheme(g, rotations, sign_map, seed=seed)
    trace = trace_faces(g, scheme)
    if trace.euler_genus != target_euler or trace.orientable != (surface == ORIENTABLE):
        return None
    return scheme


# ---------------------------------------------------------------------------
# Exact computations


def exact_genus(g: SimpleGraph, budget: Optional[SearchBudget] = None) -> GenusResult:
    """Orientable genus of a connected graph: lower bounds, then heuristic
    witness search at the bound, then exhaustive branch-and-bound when the
    configuration space fits the budget."""
    return _exact_surface(g, ORIENTABLE, budget or DEFAULT_BUDGET)


def exact_crosscap(g: SimpleGraph, budget: Optional[SearchBudget] = None) -> GenusResult:
    """Nonorientable genus (crosscap) of a connected graph; the search is
    restricted to unbalanced schemes, with planarity handled separately."""
    return _exact_surface(g, NONORIENTABLE, budget or DEFAULT_BUDGET)


def _exact_surface(g: SimpleGraph, surface: str, budget: SearchBudget) -> GenusResult:
    if g.edge_count == 0:
        return GenusResult(surface, 0, 0, True, provenance=["empty graph"])
    if not g.is_connected():
        raise ValueError("exact search needs a connected graph")

    planar = is_planar(g)
    if planar.planar:
        return GenusResult(
            surface, 0, 0, True,
            certificate=planar.scheme, certificate_graph=g,
            provenance=["planar embedding found"],
        )

    prov = [f"nonplanar ({planar.witness.kind} subdivision)"]
    lower = 1
    elb = euler_lower_bound(g, surface)
    if elb > lower:
        lower = elb
        prov.append(f"euler bound {elb}")
    sub_bound, sub_desc = bipartite_subgraph_bound(g, surface)
    if sub_bound > lower:
        lower = sub_bound
        prov.append(f"subgraph {sub_desc} bound {sub_bound}")

    if budget.lower_stop is not None and lower >= budget.lower_stop:
        prov.append(f"stopped at lower bound >= {budget.lower_stop}")
        return GenusResult(surface, lower, None, False, provenance=prov)

    scheme = heuristic_embedding(g, lower, surface, seed=budget.seed, budget=budget)
    if scheme is not None:
        prov.append(f"heuristic certificate at {lower} (seed {budget.seed})")
        return GenusResult(
            surface, lower, lower, True,
            certificate=scheme, certificate_graph=g, provenance=prov,
        )

    # the heuristic missed the bound: settle exhaustively if affordable
    space = rotation_space_size(g)
    if surface == NONORIENTABLE:
        space *= max(1, (1 << len(_cotree_edges(g))) - 1)
    if space <= budget.exhaustive_cap:
        lower_euler = 2 * lower if surface == ORIENTABLE else lower
        if surface == ORIENTABLE:
            best, rot, done = _exhaustive_orientable(g, budget, lower_euler)
            signs = None
        else:
            best, rot, signs, done = _exhaustive_nonorientable(g, budget, lower_euler)
        if done and best is not None:
            value = best // 2 if surface == ORIENTABLE else best
            sign_map = None
            if signs is not None:
                edges = g.edges()
                sign_map = {edges[i]: signs[i] for i in range(len(edges))}
            cert = make_scheme(g, rot, sign_map, seed=budget.seed)
            prov.append(f"exhaustive search ({space} configurations)")
            return GenusResult(
                surface, value, value, True,
                certificate=cert, certificate_graph=g, provenance=prov,
            )
        prov.append("exhaustive search aborted by node cap")

    # bounds only: push the upper bound down with a short ladder
    upper = None
    cert = None
    for t in range(lower + 1, lower + 5):
        scheme = heuristic_embedding(g, t, surface, seed=budget.seed, budget=budget)
        if scheme is not None:
            upper, cert = t, scheme
            prov.append(f"heuristic upper bound {t}")
            break
    if upper is None and surface == NONORIENTABLE:
        inner = SearchBudget(
            exhaustive_cap=budget.exhaustive_cap,
            node_cap=budget.node_cap,
            restarts=max(4, budget.restarts // 4),
            moves_per_restart=budget.moves_per_restart,
            seed=budget.seed,
        )
        orient = _exact_surface(g, ORIENTABLE, inner)
        if orient.upper is not None:
            upper = 2 * orient.upper + 1
            prov.append(f"orientable-doubling upper bound {upper}")
    return GenusResult(
        surface, lower, upper, False,
        certificate=cert, certificate_graph=g if cert else None, provenance=prov,
    )


# ---------------------------------------------------------------------------
# Orchestrator


def genus_of_graph(
    g: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    surface: str = ORIENTABLE,
) -> GenusResult:
    """Full pipeline: split into components, reduce homeomorphically, split
    the orientable case into blocks (genus adds over blocks and components),
    and run the exact machinery on each piece. Crosscap is computed per
    reduced component without block splitting, which is not sound for it.
    """
    budget = budget or DEFAULT_BUDGET
    if g.n == 0 or g.edge_count == 0:
        return GenusResult(surface, 0, 0, True, provenance=["empty graph"])

    comps = g.connected_components()
    results: list[GenusResult] = []
    prov: list[str] = []
    pieces: list[tuple[SimpleGraph, GenusResult]] = []

    for ci, comp in enumerate(comps):
        if len(comp) == 1:
            continue
        sub = induced_subgraph(g, comp)
        planar = is_planar(sub)
        if planar.planar:
            prov.append(f"component {ci}: planar")
            res = GenusResult(surface, 0, 0, True, certificate=planar.scheme,
                              certificate_graph=sub, provenance=["planar"])
            results.append(res)
            continue

        # bounds on the unreduced component also bound the component's value
        # (reduction can e.g. break bipartiteness and weaken the girth bound)
        comp_lower = max(1, euler_lower_bound(sub, surface))
        sub_bound, sub_desc = bipartite_subgraph_bound(sub, surface)
        comp_lower = max(comp_lower, sub_bound)
        prov.append(
            f"component {ci}: euler/subgraph lower bound {comp_lower}"
            + (f" ({sub_desc})" if sub_bound == comp_lower and sub_desc else "")
        )
        if budget.lower_stop is not None and comp_lower >= budget.lower_stop:
            prov.append(f"component {ci}: stopped at lower bound >= {budget.lower_stop}")
            results.append(GenusResult(surface, comp_lower, None, False, provenance=[]))
            continue

        reduced, _ = reduce_homeomorphic(sub)
        prov.append(
            f"component {ci}: reduced {sub.n}->{reduced.n} vertices,"
            f" {sub.edge_count}->{reduced.edge_count} edges"
        )
        sub_results: list[GenusResult] = []
        if surface == ORIENTABLE:
            blocks, _ = block_decomposition(reduced)
            for bi, block in enumerate(blocks):
                block_red, _ = reduce_homeomorphic(block)
                if block_red.edge_count == 0:
                    continue
                res = _exact_surface(block_red, surface, budget)
                prov.append(f"component {ci} block {bi}: {_describe(res)}")
                sub_results.append(res)
                pieces.append((block_red, res))
        else:
            res = _exact_surface(reduced, surface, budget)
            prov.append(f"component {ci}: {_describe(res)}")
            sub_results.append(res)
            pieces.append((reduced, res))

        lower = max(comp_lower, sum(r.lower for r in sub_results))
        uppers = [r.upper for r in sub_results]
        upper = sum(uppers) if uppers and all(u is not None for u in uppers) else None
        exact = bool(sub_results) and all(r.exact for r in sub_results)
        if exact and upper is not None and upper < lower:
            raise AssertionError(
                f"component bound {lower} exceeds exact block sum {upper}"
            )
        exact = exact and upper == lower
        comp_res = GenusResult(surface, lower, upper, exact)
        if len(sub_results) == 1:
            comp_res.certificate = sub_results[0].certificate
            comp_res.certificate_graph = sub_results[0].certificate_graph
        results.append(comp_res)

    if not results:
        return GenusResult(surface, 0, 0, True, provenance=prov + ["all components planar/trivial"])

    lower = sum(r.lower for r in results)
    uppers = [r.upper for r in results]
    upper = sum(uppers) if all(u is not None for u in uppers) else None
    exact = all(r.exact for r in results)
    if surface == NONORIENTABLE and len([r for r in results if r.lower > 0 or not r.exact]) > 1:
        # crosscap is not additive over components; fall back to a bracket
        lower = max(r.lower for r in results)
        exact = False
        prov.append("multiple nonplanar components: crosscap bracketed, not exact")

    with_cert = [r for r in results if r.certificate is not None]
    certificate = None
    certificate_graph = None
    if len(with_cert) == 1 and exact:
        certificate = with_cert[0].certificate
        certificate_graph = with_cert[0].certificate_graph
    return GenusResult(surface, lower, upper, exact,
                       certificate=certificate, certificate_graph=certificate_graph,
                       provenance=prov)


def _describe(res: GenusResult) -> str:
    if res.exact:
        return f"exact {res.lower} [{'; '.join(res.provenance)}]"
    up = res.upper if res.upper is not None else "?"
    return f"bounds [{res.lower}, {up}] [{'; '.join(res.provenance)}]"


def derived_subgraphs(g: SimpleGraph) -> list[SimpleGraph]:
    """The graphs the pipeline may bind a certificate to: the graph itself,
    each component, their reductions, and each block of those reductions,
    reduced again. Used to match a certificate back to its graph by checksum."""
    out = [g]
    for comp in g.connected_components():
        if len(comp) < 2:
            continue
        sub = induced_subgraph(g, comp)
        out.append(sub)
        reduced, _ = reduce_homeomorphic(sub)
        out.append(reduced)
        blocks, _ = block_decomposition(reduced)
        for block in blocks:
            out.append(block)
            block_red, _ = reduce_homeomorphic(block)
            out.append(block_red)
    seen = set()
    unique = []
    for h in out:
        c = h.checksum()
        if c not in seen:
            seen.add(c)
            unique.append(h)
    return unique
