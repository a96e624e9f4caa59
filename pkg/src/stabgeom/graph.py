"""Connectivity graphs of stabilizer codes and their metric services.

The connectivity graph has one vertex per qubit and an edge wherever two
qubits appear together in some generator's support.  Distances are
unweighted BFS shortest paths; unreachable pairs report math.inf (never a
large finite integer).  Non-integer ball radii floor to integers, so a
radius-1/2 ball is the center alone.
"""

from __future__ import annotations

import math
import threading
from collections import deque
from typing import Iterable

from .code import StabilizerCode

INF = math.inf

_ALL_PAIRS_CACHE_LIMIT = 4096  # memoize BFS rows only up to this vertex count


class ConnectivityGraph:
    """Immutable undirected graph on vertices 0..n-1 with BFS distance services."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self._n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            a, b = (u, v) if u < v else (v, u)
            edge_set.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self._edges = frozenset(edge_set)
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._rows: dict[int, tuple] = {}
        self._lock = threading.Lock()

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree_sequence(self) -> list[int]:
        return sorted((len(a) for a in self._adj), reverse=True)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise ValueError(f"vertex {v} out of range for n={self._n}")

    def _bfs_row(self, source: int) -> tuple:
        dist = [INF] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if dist[w] is INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return tuple(dist)

    def distances_from(self, source: int) -> tuple:
        """BFS distance row; rows are memoized (graphs here are desk scale)."""
        self._check_vertex(source)
        row = self._rows.get(source)
        if row is None:
            row = self._bfs_row(source)
            if self._n <= _ALL_PAIRS_CACHE_LIMIT:
                with self._lock:
                    self._rows.setdefault(source, row)
        return row

    def distance(self, u: int, v: int):
        self._check_vertex(v)
        return self.distances_from(u)[v]

    def ball(self, center: int, r) -> frozenset[int]:
        """Vertices at distance <= floor(r) from center."""
        self._check_vertex(center)
        if r < 0:
            raise ValueError("radius must be non-negative")
        radius = math.floor(r)
        row = self.distances_from(center)
        return frozenset(v for v in range(self._n) if row[v] <= radius)

    def boundary(self, subset: Iterable[int]) -> set[tuple[int, int]]:
        """Edges with exactly one endpoint in the subset."""
        u = set(int(v) for v in subset)
        for v in u:
            self._check_vertex(v)
        return {(a, b) for (a, b) in self._edges if (a in u) != (b in u)}

    def set_distance(self, a: Iterable[int], b: Iterable[int]):
        """min over u in a, v in b of dist(u, v); inf when unreachable."""
        sa = set(int(v) for v in a)
        sb = set(int(v) for v in b)
        if not sa or not sb:
            raise ValueError("set_distance requires non-empty sets")
        for v in sa | sb:
            self._check_vertex(v)
        if sa & sb:
            return 0
        # multi-source BFS from a until first hit in b
        dist = {v: 0 for v in sa}
        queue = deque(sa)
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w in sb:
                        return dist[w]
                    queue.append(w)
        return INF

    def b_max(self, r) -> int:
        """Maximum ball size at radius r over all centers."""
        if self._n == 0:
            return 0
        return max(len(self.ball(v, r)) for v in range(self._n))

    def diameter(self):
        """Max pairwise distance; inf when disconnected, 0 for a single vertex."""
        if self._n == 0:
            return 0
        best = 0
        for v in range(self._n):
            row = self.distances_from(v)
            m = max(row)
            if m is INF:
                return INF
            best = max(best, m)
        return best

    def connected(self) -> bool:
        return self.diameter() is not INF

    def __repr__(self) -> str:
        return f"ConnectivityGraph(n={self._n}, edges={self.edge_count})"


def build_connectivity_graph(code: StabilizerCode) -> ConnectivityGraph:
    """Clique-union graph over generator supports; independent of generator order."""
    edges = set()
    for g in code.generators:
        supp = sorted(g.support)
        for i in range(len(supp)):
            for j in range(i + 1, len(supp)):
                edges.add((supp[i], supp[j]))
    return ConnectivityGraph(code.n, edges)


def path_graph(n: int) -> ConnectivityGraph:
    return ConnectivityGraph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> ConnectivityGraph:
    """rows x cols lattice, vertices indexed row-major."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return ConnectivityGraph(rows * cols, edges)


def complete_graph(n: int) -> ConnectivityGraph:
    return ConnectivityGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
