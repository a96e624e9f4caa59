"""Nagata decompositions: verification and heuristic search.

A decomposition witnesses "Nagata dimension <= m at scale r with constant
c": m+1 collections of vertex subsets that jointly cover the graph, are
r-separated within each collection, and have diameter at most c*r each.

verify_decomposition checks the three conditions exactly and is the sound
part of the story.  find_nagata_decomposition is a heuristic: it carves
the graph into bounded-diameter clusters around farthest-point-sampled
centers, then tries to (m+1)-color the cluster conflict graph (edge iff
two clusters are closer than r).  A search failure is NOT a proof that no
decomposition exists and is always labeled "not found (heuristic)".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import INF, ConnectivityGraph


@dataclass(frozen=True)
class Decomposition:
    """m+1 collections of vertex subsets with claimed scale r and constant c."""

    collections: tuple[tuple[frozenset[int], ...], ...]
    r: float
    c: float

    @property
    def m(self) -> int:
        return len(self.collections) - 1

    @property
    def blocks(self) -> list[frozenset[int]]:
        return [b for coll in self.collections for b in coll]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "c": self.c,
            "collections": [[sorted(b) for b in coll] for coll in self.collections],
        }


@dataclass
class DecompositionCheck:
    """Outcome of verify_decomposition: a certificate or the first violation."""

    valid: bool
    checks: list[str] = field(default_factory=list)
    violation: Optional[str] = None
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        doc = {"valid": self.valid, "checks": list(self.checks)}
        if self.violation is not None:
            doc["violation"] = self.violation
            doc["witness"] = self.witness
        return doc


def _diameter_of(g: ConnectivityGraph, block: frozenset[int]):
    """Max pairwise distance inside a block, measured in the full graph metric."""
    verts = sorted(block)
    worst = 0
    for i, u in enumerate(verts):
        row = g.distances_from(u)
        for v in verts[i + 1 :]:
            d = row[v]
            if d is INF:
                return INF
            worst = max(worst, d)
    return worst


def verify_decomposition(g: ConnectivityGraph, d: Decomposition) -> DecompositionCheck:
    """Exact check of cover, per-collection r-separation, and c*r-boundedness."""
    n = g.vertex_count
    for coll in d.collections:
        for block in coll:
            for v in block:
                if not (0 <= v < n):
                    raise ValueError(f"decomposition references vertex {v}, n={n}")
    checks = []

    covered = set()
    for coll in d.collections:
        for block in coll:
            covered |= block
    if covered != set(range(n)):
        missing = min(set(range(n)) - covered)
        return DecompositionCheck(
            valid=False,
            checks=checks,
            violation="uncovered-vertex",
            witness={"vertex": missing},
        )
    checks.append(f"cover: union of all blocks equals V ({n} vertices)")

    for i, coll in enumerate(d.collections):
        blocks = [b for b in coll if b]
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                dist = g.set_distance(blocks[a], blocks[b])
                if dist < d.r:
                    return DecompositionCheck(
                        valid=False,
                        checks=checks,
                        violation="under-separated-pair",
                        witness={
                            "collection": i,
                            "block_a": sorted(blocks[a]),
                            "block_b": sorted(blocks[b]),
                            "distance": dist,
                        },
                    )
        checks.append(f"separation: collection {i + 1} is {d.r}-separated ({len(blocks)} blocks)")

    bound = d.c * d.r
    for i, coll in enumerate(d.collections):
        for block in coll:
            if not block:
                continue
            diam = _diameter_of(g, block)
            if diam > bound:
                return DecompositionCheck(
                    valid=False,
                    checks=checks,
                    violation="oversized-block",
                    witness={
                        "collection": i,
                        "block": sorted(block),
                        "diameter": diam,
                        "bound": bound,
                    },
                )
    checks.append(f"boundedness: every block has diameter <= c*r = {bound}")
    return DecompositionCheck(valid=True, checks=checks)


@dataclass
class SearchFailure:
    """Per-c diagnostics for an unsuccessful (heuristic) search."""

    c_values: list[float]
    diagnostics: dict[float, str]
    odd_cycle: Optional[list[list[int]]] = None

    label = "not found (heuristic)"

    def as_dict(self) -> dict:
        doc = {
            "found": False,
            "label": self.label,
            "c_values_tried": list(self.c_values),
            "diagnostics": {str(c): msg for c, msg in self.diagnostics.items()},
        }
        if self.odd_cycle is not None:
            doc["odd_cycle_witness"] = self.odd_cycle
        return doc


def _carve_clusters(g: ConnectivityGraph, radius: int) -> list[frozenset[int]]:
    """Greedy ball carving around farthest-point-sampled centers.

    First center is vertex 0; each next center maximizes the minimum
    distance to all previous centers (unreachable counts as farthest),
    ties broken by smallest index.  Deterministic.
    """
    n = g.vertex_count
    remaining = set(range(n))
    centers: list[int] = []
    clusters: list[frozenset[int]] = []
    min_dist = [math.inf] * n
    while remaining:
        if not centers:
            center = min(remaining)
        else:
            center = max(sorted(remaining), key=lambda v: min_dist[v])
        centers.append(center)
        row = g.distances_from(center)
        for v in range(n):
            if row[v] < min_dist[v]:
                min_dist[v] = row[v]
        cluster = frozenset(v for v in g.ball(center, radius) if v in remaining)
        clusters.append(cluster)
        remaining -= cluster
    return clusters


def _conflict_graph(g: ConnectivityGraph, clusters: Sequence[frozenset[int]], r) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in clusters]
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            if g.set_distance(clusters[i], clusters[j]) < r:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _two_color(adj: Sequence[set[int]]):
    """BFS 2-coloring; returns (colors, None) or (None, odd_cycle_vertices)."""
    n = len(adj)
    color = [-1] * n
    parent = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in sorted(adj[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _odd_cycle(parent, u, w)
    return color, None


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    path_u, path_v = [u], [v]
    seen = {u: 0}
    x = u
    while parent[x] != -1:
        x = parent[x]
        seen[x] = len(path_u)
        path_u.append(x)
    x = v
    while x not in seen:
        x = parent[x]
        path_v.append(x)
    cut = seen[x]
    return path_u[: cut + 1] + path_v[::-1]


def _dsatur_coloring(adj: Sequence[set[int]], num_colors: int):
    n = len(adj)
    color = [-1] * n
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if color[v] != -1:
                continue
            sat = len({color[w] for w in adj[v] if color[w] != -1})
            key = (sat, len(adj[v]), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        used = {color[w] for w in adj[best]}
        free = [c for c in range(num_colors) if c not in used]
        if not free:
            return None
        color[best] = free[0]
    return color


def _exact_coloring(adj: Sequence[set[int]], num_colors: int, limit: int = 24):
    n = len(adj)
    if n > limit:
        return None
    color = [-1] * n
    order = sorted(range(n), key=lambda v: -len(adj[v]))

    def backtrack(pos: int):
        if pos == n:
            return list(color)
        v = order[pos]
        used = {color[w] for w in adj[v] if color[w] != -1}
        for c in range(num_colors):
            if c not in used:
                color[v] = c
                result = backtrack(pos + 1)
                if result is not None:
                    return result
                color[v] = -1
        return None

    return backtrack(0)


def find_nagata_decomposition(
    g: ConnectivityGraph, m: int, r, c_max
) -> Decomposition | SearchFailure:
    """Search for a valid decomposition with the smallest feasible c <= c_max.

    For each c on the half-integer grid, clusters are carved at ball radius
    max(1, floor(c*r/2)) (sweeping down to radius 1), rejected if any
    cluster exceeds diameter c*r, and the cluster conflict graph is
    (m+1)-colored: exact bipartiteness test for m = 1, edge-freeness for
    m = 0, DSATUR plus exact fallback otherwise.  The first success is
    verified before being returned.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if r < 2:
        raise ValueError("search requires scale r >= 2")
    if c_max < 0.5:
        raise ValueError("c_max must be at least 1/2")
    c_values = []
    c = 0.5
    while c <= c_max + 1e-9:
        c_values.append(c)
        c += 0.5
    diagnostics: dict[float, str] = {}
    odd_cycle_witness = None
    for c in c_values:
        bound = c * r
        top_radius = max(1, math.floor(bound / 2))
        reasons = []
        done = None
        for radius in range(top_radius, 0, -1):
            clusters = _carve_clusters(g, radius)
            oversized = [cl for cl in clusters if _diameter_of(g, cl) > bound]
            if oversized:
                reasons.append(
                    f"radius {radius}: carved cluster exceeds diameter bound {bound}"
                )
                continue
            adj = _conflict_graph(g, clusters, r)
            if m == 0:
                if any(adj[i] for i in range(len(adj))):
                    reasons.append(f"radius {radius}: conflict graph has edges, m=0 needs none")
                    continue
                colors = [0] * len(clusters)
            elif m == 1:
                colors, cycle = _two_color(adj)
                if colors is None:
                    cycle_blocks = [sorted(clusters[i]) for i in cycle]
                    odd_cycle_witness = cycle_blocks
                    reasons.append(
                        f"radius {radius}: conflict graph not bipartite "
                        f"(odd cycle through {len(cycle)} clusters)"
                    )
                    continue
            else:
                colors = _dsatur_coloring(adj, m + 1)
                if colors is None:
                    colors = _exact_coloring(adj, m + 1)
                if colors is None:
                    reasons.append(f"radius {radius}: no (m+1)-coloring found")
                    continue
            collections: list[list[frozenset[int]]] = [[] for _ in range(m + 1)]
            for i, cl in enumerate(clusters):
                collections[colors[i]].append(cl)
            candidate = Decomposition(
                collections=tuple(tuple(coll) for coll in collections), r=float(r), c=float(c)
            )
            check = verify_decomposition(g, candidate)
            if check.valid:
                done = candidate
                break
            reasons.append(f"radius {radius}: verifier rejected ({check.violation})")
        if done is not None:
            return done
        diagnostics[c] = "; ".join(reasons) if reasons else "no carving attempted"
    return SearchFailure(c_values=c_values, diagnostics=diagnostics, odd_cycle=odd_cycle_witness)
