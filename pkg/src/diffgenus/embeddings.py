"""Embedding schemes (rotation systems with edge signs) and face tracing.

A scheme assigns each vertex a cyclic order of its neighbors and each edge a
sign; all-positive signs describe an orientable embedding, and any negative
signature on a cycle makes the surface nonorientable. Faces are traced by
walking darts: after crossing an edge the walk turns to the next neighbor
clockwise or counterclockwise according to the product of signs seen so far.
The traversal runs on (dart, orientation) states; face boundary walks come in
mirror pairs, so the face count is half the orbit count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .simplegraph import SimpleGraph


class SchemeError(ValueError):
    """Scheme does not fit the graph (bad rotation, missing sign, ...)."""


class CertificateMismatch(SchemeError):
    """Certificate was issued for a different graph (checksum mismatch)."""


@dataclass(frozen=True)
class EmbeddingScheme:
    """Rotations plus edge signs, bound to a graph by checksum."""

    rotations: tuple[tuple[int, ...], ...]
    signs: tuple[tuple[int, int, int], ...]  # (u, v, sign) with u < v
    graph_checksum: str
    seed: Optional[int] = None

    def sign_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): s for u, v, s in self.signs}

    def is_all_positive(self) -> bool:
        return all(s == 1 for _, _, s in self.signs)

    def to_json_dict(self, surface: str, genus: int) -> dict:
        return {
            "graph_checksum": self.graph_checksum,
            "surface": surface,
            "genus": genus,
            "rotations": [list(r) for r in self.rotations],
            "signs": [{"u": u, "v": v, "s": s} for u, v, s in self.signs],
            "seed": self.seed if self.seed is not None else 0,
        }


def make_scheme(
    g: SimpleGraph,
    rotations: Sequence[Sequence[int]],
    signs: Optional[Mapping[tuple[int, int], int]] = None,
    seed: Optional[int] = None,
) -> EmbeddingScheme:
    """Validate rotations/signs against g and freeze them into a scheme."""
    if len(rotations) != g.n:
        raise SchemeError(f"expected {g.n} rotations, got {len(rotations)}")
    rots = []
    for v, rot in enumerate(rotations):
        if sorted(rot) != g.neighbors(v):
            raise SchemeError(f"rotation at {v} is not a permutation of its neighbors")
        rots.append(tuple(int(x) for x in rot))
    edge_list = g.edges()
    sign_map = dict(signs) if signs else {}
    out_signs = []
    for u, v in edge_list:
        s = int(sign_map.pop((u, v), 1))
        if s not in (-1, 1):
            raise SchemeError(f"sign of edge ({u},{v}) must be +-1")
        out_signs.append((u, v, s))
    if sign_map:
        raise SchemeError(f"signs given for non-edges: {sorted(sign_map)}")
    return EmbeddingScheme(tuple(rots), tuple(out_signs), g.checksum(), seed)


@dataclass
class FaceTrace:
    faces: list[list[tuple[int, int]]]
    face_count: int
    euler_genus: int
    orientable: bool


def trace_faces(g: SimpleGraph, scheme: EmbeddingScheme) -> FaceTrace:
    """Trace all facial walks of the scheme and report the Euler genus
    2c - V + E - F (c = number of components) and orientability.

    Raises CertificateMismatch when the scheme belongs to another graph.
    """
    if scheme.graph_checksum != g.checksum():
        raise CertificateMismatch("scheme checksum does not match graph")
    for v, rot in enumerate(scheme.rotations):
        if sorted(rot) != g.neighbors(v):
            raise SchemeError(f"rotation at {v} is not a permutation of its neighbors")

    sign = scheme.sign_map()
    succ: list[dict[int, int]] = [dict() for _ in range(g.n)]
    pred: list[dict[int, int]] = [dict() for _ in range(g.n)]
    for v, rot in enumerate(scheme.rotations):
        d = len(rot)
        for i, u in enumerate(rot):
            succ[v][u] = rot[(i + 1) % d]
            pred[v][u] = rot[(i - 1) % d]

    def esign(u: int, v: int) -> int:
        return sign[(u, v) if u < v else (v, u)]

    # states: (u, v, o) -- dart u->v about to be consumed, orientation o
    visited: set[tuple[int, int, int]] = set()
    faces: list[list[tuple[int, int]]] = []
    for v0 in range(g.n):
        for u0 in scheme.rotations[v0]:
            for o0 in (1, -1):
                if (v0, u0, o0) in visited:
                    continue
                walk = []
                state = (v0, u0, o0)
                while state not in visited:
                    visited.add(state)
                    u, v, o = state
                    walk.append((u, v))
                    # mirror state of this step belongs to the reverse walk
                    o2 = o * esign(u, v)
                    visited.add((v, u, -o2))
                    w = succ[v][u] if o2 == 1 else pred[v][u]
                    state = (v, w, o2)
                faces.append(walk)

    edge_total = g.edge_count
    assert sum(len(f) for f in faces) == 2 * edge_total, "face lengths must sum to 2E"
    comps = g.connected_components()
    isolated = sum(1 for c in comps if len(c) == 1 and not g.adj[c[0]])
    face_count = len(faces) + isolated
    euler_genus = 2 * len(comps) - g.n + edge_total - face_count
    return FaceTrace(faces, face_count, euler_genus, _is_balanced(g, sign))


def _is_balanced(g: SimpleGraph, sign: Mapping[tuple[int, int], int]) -> bool:
    """A sign assignment is balanced iff every cycle has positive product,
    i.e. vertex potentials can make all edges positive."""
    pot = [0] * g.n
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                sw = sign[(v, w) if v < w else (w, v)]
                want = pot[v] ^ (sw < 0)
                if not seen[w]:
                    seen[w] = True
                    pot[w] = want
                    stack.append(w)
                elif pot[w] != want:
                    return False
    return True


def verify_certificate(
    g: SimpleGraph, scheme: EmbeddingScheme, surface: str, genus: int
) -> bool:
    """True iff the scheme embeds g in the claimed surface: an orientable
    claim needs a balanced scheme with Euler genus 2*genus, a nonorientable
    claim an unbalanced scheme with Euler genus equal to the crosscap.

    Graph/scheme mismatches raise; a wrong claim just returns False.
    """
    trace = trace_faces(g, scheme)
    if surface == "orientable":
        return trace.orientable and trace.euler_genus == 2 * genus
    if surface == "nonorientable":
        if genus == 0:
            return trace.orientable and trace.euler_genus == 0
        return (not trace.orientable) and trace.euler_genus == genus
    raise ValueError(f"unknown surface {surface!r}")


# ---------------------------------------------------------------------------
# Certificate files


def certificate_to_json(scheme: EmbeddingScheme, surface: str, genus: int) -> str:
    return json.dumps(scheme.to_json_dict(surface, genus), indent=2, sort_keys=True)


def certificate_from_json(text: str) -> tuple[EmbeddingScheme, str, int]:
    doc = json.loads(text)
    for key in ("graph_checksum", "surface", "genus", "rotations", "signs"):
        if key not in doc:
            raise SchemeError(f"certificate missing field {key!r}")
    scheme = EmbeddingScheme(
        rotations=tuple(tuple(int(x) for x in rot) for rot in doc["rotations"]),
        signs=tuple((int(e["u"]), int(e["v"]), int(e["s"])) for e in doc["signs"]),
        graph_checksum=str(doc["graph_checksum"]),
        seed=int(doc.get("seed", 0)),
    )
    return scheme, str(doc["surface"]), int(doc["genus"])
