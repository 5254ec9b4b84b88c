"""Structural recognition of indicated degree-choosability.

Two independent routes are provided and tested against each other:

* ``reduce_recognize`` — worklist of reverse graph operations (delete one of
  a pair of adjacent twins, contract a degree-2 triple, split at a cut
  vertex); the graph is not indicated degree-choosable iff every terminal
  piece is a single vertex.

* ``is_expanded_gallai_tree`` — direct decomposition into expanded blocks
  (maximal connected induced subgraphs with no clique-cut) with each block a
  complete graph or a blow-up of an odd cycle, together with the attachment
  conditions that make the decomposition equivalent to reducibility.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field

from .errors import ResourceLimitError, ValidationError
from .graphs import (
    Graph,
    connected_components,
    cut_vertices,
    find_adjacent_twins,
    find_degree2_triples,
)


# ---------------------------------------------------------------------------
# reverse-reduction recognizer


def _contract_triple(g: Graph, triple: tuple) -> Graph | None:
    v1, v2, v3 = triple
    a = next(iter(g.adjacency[v1] - {v2}))
    b = next(iter(g.adjacency[v3] - {v2}))
    if a == b:
        return None  # contraction would need a parallel edge; feature irreducible
    w = g.fresh_vertex()
    h = g.remove_vertices([v1, v2, v3])
    return h.add_vertex(w, [a, b])


def reduce_recognize(g: Graph, rng: random.Random | None = None) -> bool:
    """True iff g is NOT indicated degree-choosable (reverse reductions reach K1).

    ``rng`` randomizes the reduction schedule; the verdict is schedule
    independent (tested property).
    """
    if not g.is_connected():
        raise ValidationError("reduce_recognize expects a connected graph")
    pieces = [g]
    while pieces:
        h = pieces.pop()
        while True:
            if h.n == 1:
                break
            twins = find_adjacent_twins(h)
            triples = [t for t in find_degree2_triples(h) if _contract_triple(h, t) is not None]
            moves = [("twin", t) for t in twins] + [("triple", t) for t in triples]
            if moves:
                kind, t = moves[0] if rng is None else rng.choice(moves)
                h = h.remove_vertices([t[1]]) if kind == "twin" else _contract_triple(h, t)
                continue
            cuts = sorted(cut_vertices(h))
            if cuts:
                v = cuts[0] if rng is None else rng.choice(cuts)
                rest = h.remove_vertices([v])
                for comp in connected_components(rest):
                    pieces.append(h.induced_subgraph(set(comp) | {v}))
                break
            return False
    return True


# ---------------------------------------------------------------------------
# clique minimal separator decomposition (atoms)


def _mcs_m(g: Graph):
    """Minimal triangulation via MCS-M.

    Returns the elimination order, the madj sets in the triangulation H, and
    the separator-generator flags (weight did not increase between
    consecutively numbered vertices).
    """
    unnumbered = set(g.vertices)
    weight = {v: 0 for v in g.vertices}
    order = []  # filled back to front; order[0] eliminated first
    madj = {v: set() for v in g.vertices}
    flagged = set()
    prev_weight = None
    for _ in range(g.n):
        v = max(unnumbered, key=lambda u: (weight[u], -u))
        if prev_weight is not None and weight[v] <= prev_weight:
            flagged.add(v)
        prev_weight = weight[v]
        unnumbered.discard(v)
        # u is reachable when some v-u path has all internal weights < w(u):
        # Dijkstra on the min over paths of the max internal weight.
        cost = {v: -1}
        heap = [(-1, v)]
        reached = set()
        while heap:
            c, x = heapq.heappop(heap)
            if c > cost.get(x, float("inf")):
                continue
            for y in g.adjacency[x]:
                if y not in unnumbered:
                    continue
                through = c if x == v else max(c, weight[x])
                if through < cost.get(y, float("inf")):
                    cost[y] = through
                    if through < weight[y]:
                        reached.add(y)
                    heapq.heappush(heap, (through, y))
        for u in reached:
            weight[u] += 1
            madj[u].add(v)
        order.append(v)
    order.reverse()
    return order, madj, flagged


def atom_decomposition(g: Graph):
    """Atoms (expanded blocks) and the clique minimal separators used to split.

    Returns (list of frozensets, list of frozensets).  The atoms are exactly
    the maximal connected induced subgraphs of g with no clique-cut.
    """
    if g.n == 0:
        return [], []
    if not g.is_connected():
        raise ValidationError("atom decomposition expects a connected graph")
    order, madj, flagged = _mcs_m(g)
    remaining = set(g.vertices)
    atoms, seps = [], []
    for x in order:
        if x not in flagged or x not in remaining:
            continue
        s = madj[x]
        if s and s <= remaining and g.is_clique(s):
            comp = _component_avoiding(g, remaining - s, x)
            if comp | s != remaining:
                atoms.append(frozenset(comp | s))
                seps.append(frozenset(s))
                remaining -= comp
    atoms.append(frozenset(remaining))
    return atoms, seps


def _component_avoiding(g: Graph, allowed: set, start: int) -> set:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if u in allowed and u not in comp:
                comp.add(u)
                stack.append(u)
    return comp


def _is_clique_cut(g: Graph, k: frozenset) -> bool:
    rest = set(g.vertices) - k
    if not rest:
        return False
    comp = _component_avoiding(g, rest, next(iter(rest)))
    return comp != rest


def _is_elementary(g: Graph, k: frozenset) -> bool:
    """Every clique vertex individually reconnects two separated vertices."""
    rest = set(g.vertices) - k
    comp_of = {}
    cid = 0
    for v in rest:
        if v in comp_of:
            continue
        for u in _component_avoiding(g, rest, v):
            comp_of[u] = cid
        cid += 1
    if cid < 2:
        return False
    for z in k:
        touched = {comp_of[u] for u in g.adjacency[z] if u in comp_of}
        if len(touched) < 2:
            return False
    return True


def clique_cuts(g: Graph, cap: int = 64):
    """All containment-minimal clique-cuts with their elementary flag.

    Exact enumeration via minimal-separator generation; desk scale only.
    """
    if not g.is_connected():
        raise ValidationError("clique_cuts expects a connected graph")
    if g.n > cap:
        raise ResourceLimitError(f"clique_cuts capped at {cap} vertices, got {g.n}")
    seps = set()
    queue = []
    for v in g.vertices:
        blocked = g.closed_neighbourhood(v)
        for comp in connected_components(g.remove_vertices(blocked)) if len(blocked) < g.n else []:
            s = frozenset(u for u in g.vertices if any(w in g.adjacency[u] for w in comp)) - frozenset(comp)
            if s and _is_clique_cut(g, s):
                if s not in seps:
                    seps.add(s)
                    queue.append(s)
    while queue:
        s = queue.pop()
        for x in s:
            blocked = set(s) | g.adjacency[x]
            for comp in connected_components(g.remove_vertices(blocked)) if len(blocked) < g.n else []:
                t = frozenset(u for u in g.vertices if any(w in g.adjacency[u] for w in comp)) - frozenset(comp)
                if t and t not in seps and _is_clique_cut(g, t):
                    seps.add(t)
                    queue.append(t)
        if len(seps) > 20000:
            raise ResourceLimitError("minimal separator enumeration exceeded its budget")
    cliques = [s for s in seps if g.is_clique(s)]
    minimal = [s for s in cliques if not any(t < s for t in cliques)]
    return sorted(((tuple(sorted(s)), _is_elementary(g, s)) for s in minimal))


# ---------------------------------------------------------------------------
# block classification


@dataclass(frozen=True)
class BlockInfo:
    vertices: frozenset
    kind: str  # "complete" | "odd_cycle_blowup" | "other"
    base_cycle: tuple = ()  # classes (frozensets) in cyclic order, blow-up blocks only
    root_cliques: tuple = ()  # elementary K(u)+K(v) clique-cuts over base edges

    @property
    def root_clique(self) -> frozenset | None:
        return self.root_cliques[0] if len(self.root_cliques) == 1 else None

    @property
    def multiplicities(self):
        return tuple(len(c) for c in self.base_cycle)


@dataclass
class Decomposition:
    blocks: list
    clique_cuts: list = field(default_factory=list)  # (frozenset, elementary flag)

    def block_kinds(self):
        return [b.kind for b in self.blocks]


def _twin_classes(g: Graph, vs: frozenset) -> list:
    sub = g.induced_subgraph(vs)
    buckets = {}
    for v in sub.vertices:
        buckets.setdefault(sub.closed_neighbourhood(v), []).append(v)
    return [frozenset(b) for b in buckets.values()]


def _classify_atom(g: Graph, vs: frozenset) -> BlockInfo:
    sub = g.induced_subgraph(vs)
    if sub.is_complete():
        return BlockInfo(vs, "complete")
    classes = _twin_classes(g, vs)
    if len(classes) < 5 or len(classes) % 2 == 0:
        return BlockInfo(vs, "other")
    rep = {next(iter(c)): c for c in classes}
    reps = list(rep)
    quotient = Graph.build(
        range(len(reps)),
        [
            (i, j)
            for i in range(len(reps))
            for j in range(i + 1, len(reps))
            if sub.has_edge(reps[i], reps[j])
        ],
    )
    if any(quotient.degree(v) != 2 for v in quotient.vertices) or not quotient.is_connected():
        return BlockInfo(vs, "other")
    cycle = [0]
    prev = None
    while len(cycle) < len(reps):
        nxt = next(iter(quotient.adjacency[cycle[-1]] - ({prev} if prev is not None else set())))
        prev = cycle[-1]
        cycle.append(nxt)
    base = tuple(rep[reps[i]] for i in cycle)
    return BlockInfo(vs, "odd_cycle_blowup", base)


def _attachment_analysis(blocks: list):
    """How blocks intersect each other.

    Returns (clean, families, straddles): ``families`` maps a block to the
    intersections lying inside one of its blow-up classes (or anywhere, for
    complete blocks); ``straddles`` maps a blow-up block to the base edges
    fully covered by an intersection (its root-clique candidates).  ``clean``
    is False when some intersection fits neither shape.
    """
    families = {id(b): [] for b in blocks}
    straddles = {id(b): {} for b in blocks}
    clean = True
    for bi, b in enumerate(blocks):
        for cj in range(bi + 1, len(blocks)):
            c = blocks[cj]
            s = b.vertices & c.vertices
            if not s:
                continue
            for one in (b, c):
                if one.kind == "complete":
                    families[id(one)].append(s)
                    continue
                if one.kind != "odd_cycle_blowup":
                    continue
                classes = one.base_cycle
                touched = [k for k, cl in enumerate(classes) if cl & s]
                if len(touched) == 1:
                    families[id(one)].append(s)
                elif len(touched) == 2:
                    k1, k2 = touched
                    m = len(classes)
                    adjacent = (k2 - k1) % m in (1, m - 1)
                    if adjacent and s == classes[k1] | classes[k2]:
                        straddles[id(one)][frozenset((k1, k2))] = frozenset(s)
                    else:
                        clean = False
                else:
                    clean = False
    return clean, families, straddles


def expanded_blocks(g: Graph, cap: int | None = 64) -> Decomposition:
    """Expanded blocks of g, classified, with root cliques attached.

    A blow-up block's root cliques are the base-edge cliques K(u)+K(v) that
    some other block meets in full; this is where rooted fans hang.
    """
    if cap is not None and g.n > cap:
        raise ResourceLimitError(f"expanded_blocks capped at {cap} vertices, got {g.n}")
    atoms, seps = atom_decomposition(g)
    blocks = [_classify_atom(g, vs) for vs in atoms]
    _, _, straddles = _attachment_analysis(blocks)
    blocks = [
        BlockInfo(b.vertices, b.kind, b.base_cycle,
                  tuple(sorted(set(straddles[id(b)].values()), key=sorted)))
        if b.kind == "odd_cycle_blowup" else b
        for b in blocks
    ]
    cut_list = sorted({s for s in seps}, key=sorted)
    return Decomposition(blocks, [(s, _is_elementary(g, s)) for s in cut_list])


def _laminar(sets: list) -> bool:
    for i, s in enumerate(sets):
        for t in sets[i + 1:]:
            if s & t and not (s <= t or t <= s):
                return False
    return True


def is_expanded_gallai_tree(g: Graph, cap: int | None = None) -> bool:
    """Decomposition-based recognizer, equivalent to ``reduce_recognize``.

    Beyond the block-shape and at-most-one-root-clique conditions, block
    attachments are constrained to what the graph operations can produce:
    every intersection of two expanded blocks lies inside a single blow-up
    class or equals a full K(u)+K(v) over a base edge, at most one base edge
    per block carries such straddles, straddling blocks partition the shared
    clique identically, and the attachment family inside any class (or inside
    a complete block) is laminar.
    """
    if not g.is_connected():
        raise ValidationError("is_expanded_gallai_tree expects a connected graph")
    if cap is not None and g.n > cap:
        raise ResourceLimitError(f"is_expanded_gallai_tree capped at {cap} vertices")
    atoms, _ = atom_decomposition(g)
    blocks = [_classify_atom(g, vs) for vs in atoms]
    if any(b.kind == "other" for b in blocks):
        return False
    clean, families, straddles = _attachment_analysis(blocks)
    if not clean:
        return False
    for b in blocks:
        if b.kind != "odd_cycle_blowup":
            continue
        edges = straddles[id(b)]
        if len(edges) > 1:
            return False
        # straddling blocks must split the shared clique into the same classes
        for edge in edges:
            (k1, k2) = sorted(edge)
            shared = b.base_cycle[k1] | b.base_cycle[k2]
            for c in blocks:
                if c is b or c.kind != "odd_cycle_blowup":
                    continue
                if b.vertices & c.vertices == shared:
                    parts = {cl & shared for cl in c.base_cycle if cl & shared}
                    if parts != {b.base_cycle[k1], b.base_cycle[k2]}:
                        return False
    for b in blocks:
        if b.kind == "complete":
            if not _laminar(families[id(b)]):
                return False
        else:
            for cl in b.base_cycle:
                inside = [s for s in families[id(b)] if s <= cl]
                if any(not (s <= cl) and (s & cl) for s in families[id(b)]):
                    return False
                if not _laminar(inside):
                    return False
    return True
