"""The graph on non-central G-classes of N, joined when their sizes share a prime."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Union

import numpy as np

from .perm import GClass, PermGroup, g_classes_in

UNREACHABLE = -1


@dataclass(frozen=True)
class ClassGraph:
    classes: tuple[GClass, ...]  # every G-class of N, central ones included
    vertices: tuple[GClass, ...]
    adjacency: np.ndarray  # bool, no self-loops
    distances: np.ndarray  # int, UNREACHABLE across components
    group_order: int

    def distance(self, i: int, j: int) -> float:
        d = int(self.distances[i, j])
        return float("inf") if d == UNREACHABLE else d

    @property
    def edges(self) -> list[tuple[int, int]]:
        n = len(self.vertices)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.adjacency[i, j]]


@dataclass(frozen=True)
class GraphSummary:
    vertex_count: int
    components: tuple[tuple[int, ...], ...]
    diameter: Union[int, str]  # a number, or "disconnected" / "empty"

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components) == 1

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "components": [list(c) for c in self.components],
            "diameter": self.diameter,
        }


def _bfs(adj: list[list[int]], src: int) -> list[int]:
    dist = [UNREACHABLE] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def graph_from_classes(classes, group_order: int) -> ClassGraph:
    verts = tuple(c for c in classes if c.size > 1)
    n = len(verts)
    adjacency = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if verts[i].primes & verts[j].primes:
                adjacency[i, j] = adjacency[j, i] = True
    adj = [np.flatnonzero(adjacency[i]).tolist() for i in range(n)]
    distances = np.array([_bfs(adj, i) for i in range(n)], dtype=np.int64).reshape(n, n)
    return ClassGraph(tuple(classes), verts, adjacency, distances, group_order)


def build_graph(G: PermGroup, N: PermGroup) -> ClassGraph:
    return graph_from_classes(g_classes_in(G, N), G.order)


def summarize(graph: ClassGraph) -> GraphSummary:
    n = len(graph.vertices)
    if n == 0:
        return GraphSummary(0, (), "empty")
    comps = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        comp = tuple(int(j) for j in np.flatnonzero(graph.distances[i] != UNREACHABLE))
        seen.update(comp)
        comps.append(comp)
    if len(comps) > 1:
        return GraphSummary(n, tuple(comps), "disconnected")
    return GraphSummary(n, tuple(comps), int(graph.distances.max()))


def isolated_pairs(graph: ClassGraph) -> list[tuple[int, int]]:
    """Vertex pairs (X, Y) such that every vertex size is coprime to |X| or to |Y|."""
    sizes = [v.size for v in graph.vertices]
    n = len(sizes)
    return [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if all(gcd(z, sizes[i]) == 1 or gcd(z, sizes[j]) == 1 for z in sizes)
    ]


def far_pairs(graph: ClassGraph) -> list[tuple[int, int]]:
    """Vertex pairs at distance at least 3 or in different components."""
    n = len(graph.vertices)
    d = graph.distances
    return [(i, j) for i in range(n) for j in range(i + 1, n) if d[i, j] == UNREACHABLE or d[i, j] >= 3]


def components_complete(graph: ClassGraph, summary: GraphSummary) -> list[tuple[int, ...]]:
    """Components that are not complete graphs."""
    return [c for c in summary.components if any(not graph.adjacency[i, j] for i in c for j in c if i < j)]


def size_graph(graph: ClassGraph) -> tuple[list[int], list[tuple[int, int]]]:
    """Collapse vertices of equal size: distinct sizes, joined when they share a prime."""
    sizes = sorted({v.size for v in graph.vertices})
    edges = [(a, b) for k, a in enumerate(sizes) for b in sizes[k + 1:] if gcd(a, b) > 1]
    return sizes, edges


def graph_document(graph: ClassGraph) -> dict:
    s = summarize(graph)
    return {
        "group_order": graph.group_order,
        "vertices": [
            {"id": i, "size": v.size, "primes": sorted(v.primes), "rep": str(v.representative)}
            for i, v in enumerate(graph.vertices)
        ],
        "edges": [list(e) for e in graph.edges],
        "summary": s.to_dict(),
    }


def export_graph(graph: ClassGraph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(graph_document(graph), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        lines = ["graph classes {"]
        for i, v in enumerate(graph.vertices):
            lines.append(f'  v{i} [label="size={v.size} rep={v.representative}"];')
        for i, j in graph.edges:
            lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r} (expected dot or json)")
