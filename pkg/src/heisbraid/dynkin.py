"""Finite graphs with an edge orientation: the vertex pairing <i,j> and
the antisymmetric sign eps_{ij} used throughout the algebra layer.

Vertex ids are opaque strings; reports order them lexicographically.
"""

from __future__ import annotations


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class DynkinGraph:
    """Simply laced graph (no loops, no multiple edges) with orientation."""

    def __init__(self, vertex_ids, oriented_edges):
        ids = [str(v) for v in vertex_ids]
        self.vertices = tuple(sorted(set(ids)))
        if len(self.vertices) != len(ids):
            raise GraphError("duplicate vertex id")
        vset = set(self.vertices)
        self._eps = {}
        edges = set()
        for src, dst in oriented_edges:
            src, dst = str(src), str(dst)
            if src not in vset or dst not in vset:
                raise UnknownVertex(f"edge ({src},{dst}) references undeclared vertex")
            if src == dst:
                raise LoopEdge(f"loop at {src}")
            key = frozenset((src, dst))
            if key in edges:
                raise DuplicateEdge(f"edge {{{src},{dst}}} oriented twice")
            edges.add(key)
            self._eps[(src, dst)] = 1
            self._eps[(dst, src)] = -1
        self.edges = frozenset(edges)

    def check_vertex(self, i):
        i = str(i)
        if i not in self.vertices:
            raise UnknownVertex(i)
        return i

    def pairing(self, i, j):
        """<i,j>: 2 on the diagonal, -1 across an edge, 0 otherwise."""
        i, j = self.check_vertex(i), self.check_vertex(j)
        if i == j:
            return 2
        return -1 if frozenset((i, j)) in self.edges else 0

    def epsilon(self, i, j):
        """eps_{ij} = +-1 across an edge (+ in the oriented direction), else 0."""
        i, j = self.check_vertex(i), self.check_vertex(j)
        return self._eps.get((i, j), 0)

    def adjacent(self, i):
        i = self.check_vertex(i)
        return sorted(j for j in self.vertices if j != i and frozenset((i, j)) in self.edges)

    def key(self):
        """Canonical hashable form (used for cache keys)."""
        return (self.vertices, tuple(sorted((s, d) for (s, d), e in self._eps.items() if e == 1)))

    def __repr__(self):
        arrows = ", ".join(f"{s}->{d}" for (s, d), e in sorted(self._eps.items()) if e == 1)
        return f"DynkinGraph({list(self.vertices)}; {arrows})"


def build_graph(vertex_ids, oriented_edges):
    return DynkinGraph(vertex_ids, oriented_edges)


def parse_graph(text):
    """Text format: one directive per line, `vertex <id>` or `edge <src> <dst>`.

    Edge direction gives the orientation.  Blank lines and `#` comments
    are ignored.
    """
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    return DynkinGraph(vertices, edges)


def load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def preset(name):
    """Built-in graphs: A1, A2, A3, D4, A1xA1, affineA2 (oriented triangle)."""
    name = name.strip()
    presets = {
        "A1": (["1"], []),
        "A2": (["1", "2"], [("1", "2")]),
        "A3": (["1", "2", "3"], [("1", "2"), ("2", "3")]),
        "D4": (["0", "1", "2", "3"], [("0", "1"), ("0", "2"), ("0", "3")]),
        "A1xA1": (["1", "2"], []),
        "affineA2": (["0", "1", "2"], [("0", "1"), ("1", "2"), ("2", "0")]),
    }
    if name not in presets:
        raise GraphError(f"unknown preset {name!r}; known: {sorted(presets)}")
    return DynkinGraph(*presets[name])


def graph_from_spec(source):
    """Preset name or path to a graph file."""
    try:
        return preset(source)
    except GraphError:
        import os

        if os.path.exists(source):
            return load_graph(source)
        raise
