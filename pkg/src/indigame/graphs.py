"""Graph representation, structural primitives and pair I/O.

Vertices are non-negative integers; colours are positive integers.  All
values are immutable after construction, so they can be shared freely
across threads and used as dictionary keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InvalidSpecError, PairParseError, ValidationError

Colour = int
ColourSet = frozenset  # of positive ints
Edge = tuple  # (u, v) with u < v


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with stable integer vertex ids."""

    vertices: tuple
    edges: frozenset
    meta: Mapping = field(default_factory=dict, compare=False, hash=False)

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple], meta: Mapping | None = None) -> "Graph":
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"loop at vertex {u} is not allowed")
            if u not in vset or v not in vset:
                raise ValidationError(f"edge ({u},{v}) uses an undeclared vertex")
            norm.add(_norm_edge(u, v))
        return Graph(vs, frozenset(norm), dict(meta or {}))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> frozenset:
        return self.adjacency[v]

    def closed_neighbourhood(self, v: int) -> frozenset:
        return self.adjacency[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def induced_subgraph(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        missing = keep - set(self.vertices)
        if missing:
            raise ValidationError(f"induced subgraph on undeclared vertices {sorted(missing)}")
        edges = [e for e in self.edges if e[0] in keep and e[1] in keep]
        return Graph.build(keep, edges)

    def remove_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return self.induced_subgraph(set(self.vertices) - drop)

    def add_vertex(self, v: int, neighbours: Iterable[int]) -> "Graph":
        if v in self.vertices:
            raise ValidationError(f"vertex {v} already present")
        edges = set(self.edges) | {_norm_edge(v, u) for u in neighbours}
        return Graph.build(set(self.vertices) | {v}, edges)

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def is_regular(self) -> bool:
        degs = {self.degree(v) for v in self.vertices}
        return len(degs) <= 1

    def is_complete(self) -> bool:
        n = self.n
        return self.m == n * (n - 1) // 2

    def fresh_vertex(self) -> int:
        return max(self.vertices, default=-1) + 1


@dataclass(frozen=True)
class ListAssignment:
    """Total map vertex id -> finite set of positive colours."""

    lists: Mapping  # vertex -> frozenset of colours

    @staticmethod
    def build(lists: Mapping) -> "ListAssignment":
        norm = {}
        for v, cs in lists.items():
            cs = frozenset(int(c) for c in cs)
            if any(c < 1 for c in cs):
                raise ValidationError(f"vertex {v} has a non-positive colour")
            norm[int(v)] = cs
        return ListAssignment(norm)

    @staticmethod
    def uniform(g: Graph, colours: Iterable[int]) -> "ListAssignment":
        cs = frozenset(colours)
        return ListAssignment.build({v: cs for v in g.vertices})

    def get(self, v: int) -> frozenset:
        return self.lists[v]

    def domain(self) -> frozenset:
        return frozenset(self.lists)

    def universe(self) -> frozenset:
        out = set()
        for cs in self.lists.values():
            out |= cs
        return frozenset(out)

    def max_colour(self) -> int:
        return max((c for cs in self.lists.values() for c in cs), default=0)

    def with_list(self, v: int, colours: Iterable[int]) -> "ListAssignment":
        new = dict(self.lists)
        new[v] = frozenset(colours)
        return ListAssignment.build(new)

    def restrict(self, vs: Iterable[int]) -> "ListAssignment":
        keep = set(vs)
        return ListAssignment({v: cs for v, cs in self.lists.items() if v in keep})

    def shift(self, offset: int) -> "ListAssignment":
        return ListAssignment({v: frozenset(c + offset for c in cs) for v, cs in self.lists.items()})


@dataclass(frozen=True)
class LabeledPair:
    """A (graph, list assignment) pair; ``lists`` is None for graph-only files."""

    graph: Graph
    lists: ListAssignment | None

    @staticmethod
    def build(graph: Graph, lists: ListAssignment | Mapping | None) -> "LabeledPair":
        if lists is None:
            return LabeledPair(graph, None)
        if not isinstance(lists, ListAssignment):
            lists = ListAssignment.build(lists)
        if lists.domain() != frozenset(graph.vertices):
            raise ValidationError("list domain does not match the vertex set")
        return LabeledPair(graph, lists)

    @property
    def lists_absent(self) -> bool:
        return self.lists is None

    def list_of(self, v: int) -> frozenset:
        if self.lists is None:
            raise ValidationError("pair carries no list assignment")
        return self.lists.get(v)

    def is_degree_list(self) -> bool:
        return self.lists is not None and all(
            len(self.lists.get(v)) >= self.graph.degree(v) for v in self.graph.vertices
        )

    def is_tight(self) -> bool:
        return self.lists is not None and all(
            len(self.lists.get(v)) == self.graph.degree(v) for v in self.graph.vertices
        )

    def induced(self, vs: Iterable[int]) -> "LabeledPair":
        keep = set(vs)
        g = self.graph.induced_subgraph(keep)
        return LabeledPair(g, None if self.lists is None else self.lists.restrict(keep))


@dataclass(frozen=True)
class BlowupSpec:
    """Base graph plus a positive multiplicity per base vertex."""

    base: Graph
    multiplicity: Mapping

    def validate(self) -> None:
        for v in self.base.vertices:
            p = self.multiplicity.get(v)
            if p is None or int(p) < 1:
                raise InvalidSpecError(f"multiplicity of vertex {v} must be a positive integer")


def blow_up(spec: BlowupSpec) -> Graph:
    """Replace every base vertex v by a clique of size p(v), joined along base edges.

    The blow-up vertex for (v, i) gets a dense id; its provenance is kept in
    ``meta['blowup']`` as id -> (base vertex, index).
    """
    spec.validate()
    base, p = spec.base, spec.multiplicity
    ids = {}
    nxt = 0
    for v in base.vertices:
        for i in range(int(p[v])):
            ids[(v, i)] = nxt
            nxt += 1
    edges = []
    for v in base.vertices:
        k = int(p[v])
        for i in range(k):
            for j in range(i + 1, k):
                edges.append((ids[(v, i)], ids[(v, j)]))
    for u, v in base.edges:
        for i in range(int(p[u])):
            for j in range(int(p[v])):
                edges.append((ids[(u, i)], ids[(v, j)]))
    meta = {"blowup": {str(i): [v, k] for (v, k), i in ids.items()}}
    return Graph.build(range(nxt), edges, meta)


# ---------------------------------------------------------------------------
# structural primitives


def connected_components(g: Graph) -> list:
    """Partition of the vertex set into connected components (sorted tuples)."""
    seen = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        stack, comp = [root], set()
        seen.add(root)
        while stack:
            v = stack.pop()
            comp.add(v)
            for u in g.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


def cut_vertices(g: Graph) -> frozenset:
    """Articulation points by iterative DFS lowpoint."""
    disc, low = {}, {}
    cuts = set()
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        stack = [(root, None, iter(g.adjacency[root]))]
        disc[root] = low[root] = timer = timer + 1
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if u in disc:
                    low[v] = min(low[v], disc[u])
                else:
                    timer += 1
                    disc[u] = low[u] = timer
                    if v == root:
                        root_children += 1
                    stack.append((u, v, iter(g.adjacency[u])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    w = stack[-1][0]
                    low[w] = min(low[w], low[v])
                    if w != root and low[v] >= disc[w]:
                        cuts.add(w)
        if root_children >= 2:
            cuts.add(root)
    return frozenset(cuts)


def find_adjacent_twins(g: Graph) -> list:
    """All unordered pairs {x, y} with N[x] = N[y] and xy an edge."""
    buckets = {}
    for v in g.vertices:
        buckets.setdefault(g.closed_neighbourhood(v), []).append(v)
    out = []
    for members in buckets.values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                out.append((x, y))
    return sorted(out)


def find_degree2_triples(g: Graph) -> list:
    """Induced paths [v1, v2, v3] whose three vertices all have degree 2.

    Reported once per centre vertex, with v1 < v3.
    """
    out = []
    for v2 in g.vertices:
        if g.degree(v2) != 2:
            continue
        a, b = sorted(g.adjacency[v2])
        if g.degree(a) == 2 and g.degree(b) == 2 and not g.has_edge(a, b):
            out.append((a, v2, b))
    return sorted(out)


def _degree2_paths_through(g: Graph, u: int, v: int) -> list:
    """Paths u .. v of length >= 2 whose internal vertices all have degree 2."""
    paths = []
    for s in g.adjacency[u]:
        if s == v or g.degree(s) != 2:
            continue
        path = [u, s]
        prev, cur = u, s
        while True:
            nxt = next(iter(g.adjacency[cur] - {prev}))
            if nxt == v:
                paths.append(tuple(path + [v]))
                break
            if g.degree(nxt) != 2:
                break
            path.append(nxt)
            prev, cur = cur, nxt
    # each path is discovered once per direction from u; they are vertex-disjoint
    uniq = {}
    for p in paths:
        uniq[frozenset(p[1:-1])] = p
    return list(uniq.values())


def find_pseudo_twins(g: Graph) -> list:
    """Adjacent pseudo-twin pairs with their index k.

    An edge uv qualifies when the k odd cycles of length >= 5 through uv whose
    internal vertices all have degree 2 (the maximal such family) leave equal
    neighbourhoods behind: N(u) minus the cycles equals N(v) minus the cycles.
    k = 0 degenerates to adjacent twins.
    """
    out = []
    twin_pairs = set(find_adjacent_twins(g))
    for u, v in sorted(g.edges):
        cycles = [
            p for p in _degree2_paths_through(g, u, v)
            if len(p) - 1 >= 4 and (len(p) - 1) % 2 == 0  # path length >= 4, even => odd cycle >= 5
        ]
        if cycles:
            covered = {x for p in cycles for x in p}
            if (g.adjacency[u] - covered) == (g.adjacency[v] - covered):
                out.append(((u, v), len(cycles)))
        elif (u, v) in twin_pairs:
            out.append(((u, v), 0))
    return sorted(out)


# ---------------------------------------------------------------------------
# canonical form of labelled pairs


def _refine(adj: list, cells: list) -> list:
    """Equitable refinement of an ordered partition against adjacency bitmasks."""
    cells = [tuple(c) for c in cells]
    changed = True
    while changed:
        changed = False
        masks = [0] * len(cells)
        for i, c in enumerate(cells):
            m = 0
            for x in c:
                m |= 1 << x
            masks[i] = m
        new_cells = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {}
            for x in c:
                key = tuple(bin(adj[x] & m).count("1") for m in masks)
                sig.setdefault(key, []).append(x)
            if len(sig) == 1:
                new_cells.append(c)
            else:
                changed = True
                for key in sorted(sig):
                    new_cells.append(tuple(sig[key]))
        cells = new_cells
    return cells


def _certificate(adj: list, order: list, n_vertices: int) -> bytes:
    pos = {x: i for i, x in enumerate(order)}
    total = len(order)
    bits = 0
    idx = 0
    for i in range(total):
        ai = adj[order[i]]
        for j in range(i + 1, total):
            bits = (bits << 1) | ((ai >> order[j]) & 1)
            idx += 1
    nbytes = (idx + 7) // 8
    return bytes([n_vertices, total - n_vertices]) + bits.to_bytes(max(nbytes, 1), "big")


def _canonical_search(adj: list, cells: list, n_vertices: int) -> tuple:
    """Smallest certificate over the individualization-refinement tree.

    Two prunings keep symmetric inputs polynomial in practice: a subtree
    whose first completed branch matches the best certificate of an already
    finished subtree is automorphic to it and returns immediately, and
    siblings lying in the orbit of an explored sibling (under automorphisms
    discovered from equal-certificate leaves) are skipped.
    """
    box = {"best": None, "order": None}
    gens: list = []

    def leaf(order):
        cert = _certificate(adj, order, n_vertices)
        if box["best"] is None or cert < box["best"]:
            box["best"], box["order"] = cert, order
        elif cert == box["best"] and order != box["order"]:
            gens.append({a: b for a, b in zip(box["order"], order)})
        return cert, order

    def covered(x, explored, prefix):
        usable = [s for s in gens if all(s[p] == p for p in prefix)]
        if not usable:
            return False
        orbit = set(explored)
        grew = True
        while grew:
            grew = False
            for s in usable:
                for y in list(orbit):
                    z = s[y]
                    if z not in orbit:
                        orbit.add(z)
                        grew = True
        return x in orbit

    def search(cells, prefix):
        cells = _refine(adj, cells)
        if all(len(c) == 1 for c in cells):
            return leaf([c[0] for c in cells])
        entry_best = box["best"]
        target_idx = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: len(cells[i]),
        )
        tc = cells[target_idx]
        explored: list = []
        result = None
        for x in tc:
            if explored and covered(x, explored, prefix):
                continue
            explored.append(x)
            branch = (
                cells[:target_idx]
                + [(x,), tuple(y for y in tc if y != x)]
                + cells[target_idx + 1:]
            )
            cert, order = search(branch, prefix + (x,))
            if entry_best is not None and cert == entry_best:
                # this subtree is automorphic to a completed one; its minimum
                # is already known
                return cert, order
            if result is None or cert < result[0]:
                result = (cert, order)
        return result

    return search(cells, ())


def canonical_form(pair: LabeledPair, mark: int | None = None) -> tuple:
    """Exact canonical form of a pair under relabelling and colour permutation.

    Returns (key bytes, canonical vertex order).  ``mark`` optionally
    distinguishes one vertex (used for positions where a vertex is picked).
    """
    g = pair.graph
    verts = list(g.vertices)
    n = len(verts)
    vid = {v: i for i, v in enumerate(verts)}
    colours = sorted(pair.lists.universe()) if pair.lists is not None else []
    cid = {c: n + i for i, c in enumerate(colours)}
    total = n + len(colours)
    adj = [0] * total
    for u, v in g.edges:
        adj[vid[u]] |= 1 << vid[v]
        adj[vid[v]] |= 1 << vid[u]
    if pair.lists is not None:
        for v in verts:
            for c in pair.lists.get(v):
                adj[vid[v]] |= 1 << cid[c]
                adj[cid[c]] |= 1 << vid[v]
    vertex_cell = tuple(range(n))
    cells = []
    if mark is not None:
        mi = vid[mark]
        cells.append((mi,))
        vertex_cell = tuple(i for i in range(n) if i != mi)
    if vertex_cell:
        cells.append(vertex_cell)
    # keys must separate graph-only from listed pairs, and marked from unmarked
    flag = (b"L" if pair.lists is not None else b"G") + (b"M" if mark is not None else b"-")
    if colours:
        cells.append(tuple(range(n, total)))
    if total == 0:
        return flag + b"\x00", ()
    cert, order = _canonical_search(adj, cells, n)
    back = {i: v for v, i in vid.items()}
    vertex_order = tuple(back[i] for i in order if i < n)
    return flag + cert, vertex_order


def canonical_key(pair: LabeledPair, mark: int | None = None) -> bytes:
    """Memoization key: equal for pairs identical up to relabelling + colour permutation."""
    return canonical_form(pair, mark)[0]


# ---------------------------------------------------------------------------
# pair file I/O


def pair_to_json(pair: LabeledPair) -> dict:
    doc = {
        "vertices": list(pair.graph.vertices),
        "edges": [list(e) for e in sorted(pair.graph.edges)],
    }
    if pair.lists is not None:
        doc["lists"] = {str(v): sorted(pair.lists.get(v)) for v in pair.graph.vertices}
    if pair.graph.meta:
        doc["meta"] = dict(pair.graph.meta)
    return doc


def pair_from_json(doc: dict) -> LabeledPair:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ValidationError("pair document must be an object with a 'vertices' field")
    graph = Graph.build(doc["vertices"], doc.get("edges", []), doc.get("meta"))
    lists = doc.get("lists")
    if lists is None:
        return LabeledPair(graph, None)
    return LabeledPair.build(graph, {int(v): cs for v, cs in lists.items()})


def write_pair(pair: LabeledPair, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pair_to_json(pair), fh, indent=1, sort_keys=False)
        fh.write("\n")


def read_pair(path: str) -> LabeledPair:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PairParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
    return pair_from_json(doc)
