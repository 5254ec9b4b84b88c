"""Constructions of infeasible pairs.

The three closure operations (duplicate, triple, vertex-sum) with full
precondition checking, replayable traces rooted at (K1, empty list), the
example families, witness-list synthesis for reducible graphs, and the
embedding of any such graph into a regular one with the same property.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass

from .errors import PairParseError, PreconditionError, ValidationError
from .graphs import (
    Graph,
    LabeledPair,
    ListAssignment,
    connected_components,
    cut_vertices,
    find_adjacent_twins,
    find_degree2_triples,
)
from .recognize import reduce_recognize


def _require_lists(pair: LabeledPair) -> ListAssignment:
    if pair.lists is None:
        raise ValidationError("operation needs a pair with lists")
    return pair.lists


# ---------------------------------------------------------------------------
# the three operations


def duplicate(pair: LabeledPair, v: int, c: int) -> LabeledPair:
    """Add a twin of v; colour c joins every list in N[v] and the twin's list."""
    la = _require_lists(pair)
    g = pair.graph
    if v not in g.vertices:
        raise PreconditionError(f"vertex {v} not in the graph")
    if c < 1:
        raise PreconditionError("duplication colour must be positive")
    for x in sorted(g.closed_neighbourhood(v)):
        if c in la.get(x):
            raise PreconditionError(f"colour {c} already on vertex {x} in N[{v}]")
    twin = g.fresh_vertex()
    h = g.add_vertex(twin, g.closed_neighbourhood(v))
    lists = {x: la.get(x) for x in g.vertices}
    for x in g.closed_neighbourhood(v):
        lists[x] = lists[x] | {c}
    lists[twin] = la.get(v) | {c}
    return LabeledPair.build(h, lists)


def triple(pair: LabeledPair, v: int) -> LabeledPair:
    """Replace a degree-2 vertex by an induced path of three copies of it."""
    la = _require_lists(pair)
    g = pair.graph
    if v not in g.vertices:
        raise PreconditionError(f"vertex {v} not in the graph")
    if g.degree(v) != 2:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, tripling needs degree 2")
    a, b = sorted(g.adjacency[v])
    base = g.fresh_vertex()
    v1, v2, v3 = base, base + 1, base + 2
    h = g.remove_vertices([v])
    h = h.add_vertex(v1, [a])
    h = h.add_vertex(v2, [v1])
    h = h.add_vertex(v3, [v2, b])
    lists = {x: la.get(x) for x in h.vertices if x < base}
    lists[v1] = lists[v2] = lists[v3] = la.get(v)
    return LabeledPair.build(h, lists)


def vertex_sum(p1: LabeledPair, v1: int, p2: LabeledPair, v2: int,
               shift: int | None = None, raw_colours: bool = False):
    """Glue p2 onto p1 by identifying v2 with v1.

    Returns (pair, shift used, map from p2 vertex ids to result ids).  The
    second operand's colours are shifted when needed so the identified lists
    are disjoint, unless ``raw_colours`` demands the colours as given.
    """
    la1, la2 = _require_lists(p1), _require_lists(p2)
    if v1 not in p1.graph.vertices or v2 not in p2.graph.vertices:
        raise PreconditionError("sum vertices must exist in their operands")
    if raw_colours:
        shift = 0
    elif shift is None:
        shift = 0 if not (la1.get(v1) & la2.get(v2)) else max(la1.max_colour(), 0)
    la2 = la2.shift(shift)
    overlap = la1.get(v1) & la2.get(v2)
    if overlap:
        raise PreconditionError(
            f"identified lists share colours {sorted(overlap)}; shift or relabel first"
        )
    nxt = p1.graph.fresh_vertex()
    remap = {}
    for x in sorted(p2.graph.vertices):
        if x == v2:
            remap[x] = v1
        else:
            remap[x] = nxt
            nxt += 1
    verts = set(p1.graph.vertices) | set(remap.values())
    edges = set(p1.graph.edges) | {tuple(sorted((remap[a], remap[b]))) for a, b in p2.graph.edges}
    lists = {x: la1.get(x) for x in p1.graph.vertices}
    for x in p2.graph.vertices:
        if x == v2:
            lists[v1] = la1.get(v1) | la2.get(v2)
        else:
            lists[remap[x]] = la2.get(x)
    return LabeledPair.build(Graph.build(verts, edges), lists), shift, remap


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class ConstructionStep:
    op: str  # "dup" | "triple" | "sum"
    v: int | None = None
    c: int | None = None
    other: "ConstructionTrace | None" = None
    v1: int | None = None
    v2: int | None = None
    shift: int | None = None

    def to_json(self):
        if self.op == "dup":
            return {"op": "dup", "v": self.v, "c": self.c}
        if self.op == "triple":
            return {"op": "triple", "v": self.v}
        return {"op": "sum", "other": self.other.to_json(), "v1": self.v1,
                "v2": self.v2, "shift": self.shift}


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple = ()

    def to_json(self):
        return [s.to_json() for s in self.steps]

    def __len__(self):
        return len(self.steps)


def k1_pair() -> LabeledPair:
    return LabeledPair.build(Graph.build([0], []), {0: frozenset()})


def replay(trace: ConstructionTrace, base_dir: str | None = None) -> LabeledPair:
    """Replay a trace from (K1, empty list), checking every precondition."""
    pair = k1_pair()
    for idx, step in enumerate(trace.steps):
        try:
            if step.op == "dup":
                pair = duplicate(pair, step.v, step.c)
            elif step.op == "triple":
                pair = triple(pair, step.v)
            elif step.op == "sum":
                other = replay(step.other, base_dir)
                pair, _, _ = vertex_sum(pair, step.v1, other, step.v2, shift=step.shift)
            else:
                raise ValidationError(f"unknown op {step.op!r}")
        except (PreconditionError, ValidationError) as exc:
            raise PreconditionError(f"step {idx} ({step.op}): {exc}") from exc
    return pair


def trace_from_json(doc, base_dir: str | None = None) -> ConstructionTrace:
    if not isinstance(doc, list):
        raise ValidationError("a trace document is a JSON array of steps")
    steps = []
    for item in doc:
        op = item.get("op")
        if op == "dup":
            steps.append(ConstructionStep("dup", v=int(item["v"]), c=int(item["c"])))
        elif op == "triple":
            steps.append(ConstructionStep("triple", v=int(item["v"])))
        elif op == "sum":
            other = item["other"]
            if isinstance(other, str):
                path = other if os.path.isabs(other) else os.path.join(base_dir or ".", other)
                sub = read_trace(path)
            else:
                sub = trace_from_json(other, base_dir)
            steps.append(ConstructionStep("sum", other=sub, v1=int(item["v1"]),
                                          v2=int(item["v2"]), shift=item.get("shift")))
        else:
            raise ValidationError(f"unknown op {op!r} in trace")
    return ConstructionTrace(tuple(steps))


def write_trace(trace: ConstructionTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(trace.to_json(), fh, indent=1)
        fh.write("\n")


def read_trace(path: str) -> ConstructionTrace:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PairParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
    return trace_from_json(doc, os.path.dirname(os.path.abspath(path)))


class TraceBuilder:
    """Incrementally applies operations, recording the replayable trace."""

    def __init__(self):
        self.pair = k1_pair()
        self.steps: list = []

    @property
    def trace(self) -> ConstructionTrace:
        return ConstructionTrace(tuple(self.steps))

    def fresh_colour(self, around: int) -> int:
        g = self.pair.graph
        la = self.pair.lists
        used = set()
        for x in g.closed_neighbourhood(around):
            used |= la.get(x)
        c = 1
        while c in used:
            c += 1
        return c

    def dup(self, v: int, c: int | None = None) -> int:
        if c is None:
            c = self.fresh_colour(v)
        self.pair = duplicate(self.pair, v, c)
        self.steps.append(ConstructionStep("dup", v=v, c=c))
        return max(self.pair.graph.vertices)

    def triple(self, v: int):
        before = self.pair.graph.fresh_vertex()
        self.pair = triple(self.pair, v)
        self.steps.append(ConstructionStep("triple", v=v))
        return before, before + 1, before + 2

    def sum(self, other: "TraceBuilder", v1: int, v2: int) -> dict:
        pair, shift, remap = vertex_sum(self.pair, v1, other.pair, v2)
        self.pair = pair
        self.steps.append(ConstructionStep("sum", other=other.trace, v1=v1, v2=v2, shift=shift))
        return remap


# ---------------------------------------------------------------------------
# generators: paper families


def gen_complete(n: int):
    """(K_n, the same n-1 colours everywhere), built by n-1 duplications."""
    if n < 1:
        raise ValidationError("n must be positive")
    b = TraceBuilder()
    for c in range(1, n):
        b.dup(0, c)
    return b


def gen_cycle(n: int):
    """Odd n: (C_n, two identical colours) as a trace.  Even n: graph only."""
    if n < 3:
        raise ValidationError("cycles need at least 3 vertices")
    if n % 2 == 0:
        g = Graph.build(range(n), [(i, (i + 1) % n) for i in range(n)])
        return LabeledPair(g, None)
    b = gen_complete(3)
    cur = 0
    for _ in range((n - 3) // 2):
        _, v2, _ = b.triple(cur)
        cur = v2
    return b


@dataclass
class ThetaInfo:
    builder: TraceBuilder
    hubs: tuple
    paths: list  # one list of interior vertex ids per even path, in path order


def gen_theta(*lengths: int) -> ThetaInfo:
    """Generalized theta with one length-1 path and the given even lengths.

    Lists follow the star-then-duplicate construction: hubs get [m+1], the
    interiors of the i-th even path get {i, m+1}.
    """
    if len(lengths) < 2 or lengths[0] != 1:
        raise ValidationError("gen_theta expects lengths (1, 2k1, ..., 2km)")
    evens = lengths[1:]
    if any(l < 2 or l % 2 for l in evens):
        raise ValidationError("every non-edge path length must be a positive even number")
    m = len(evens)
    b = TraceBuilder()
    centre = 0
    leaves = []
    for _ in range(m):
        arm = TraceBuilder()
        arm.dup(0)  # K2 with a single colour
        remap = b.sum(arm, centre, 0)
        leaves.append(remap[1])
    hub2 = b.dup(centre, m + 1)
    paths = [[leaf] for leaf in leaves]
    for i, length in enumerate(evens):
        for _ in range((length - 2) // 2):
            mid = paths[i][len(paths[i]) // 2]
            v1, v2, v3 = b.triple(mid)
            k = paths[i].index(mid)
            # orient the new path segment consistently with its neighbours
            prev = paths[i][k - 1] if k > 0 else centre
            first = v1 if b.pair.graph.has_edge(v1, prev) else v3
            last = v3 if first == v1 else v1
            paths[i][k:k + 1] = [first, v2, last]
    return ThetaInfo(b, (centre, hub2), paths)


def gen_gallai_tree(blocks) -> TraceBuilder:
    """Assemble a Gallai tree from ('complete'|'odd_cycle', size, attach) specs.

    ``attach`` is a vertex id of the partial graph (None for the first
    block).  Lists come out as the union of per-block colour sets.
    """
    b = None
    for kind, size, attach in blocks:
        if kind == "complete":
            piece = gen_complete(size)
        elif kind == "odd_cycle":
            if size % 2 == 0:
                raise ValidationError("odd_cycle blocks need odd size")
            piece = gen_cycle(size)
        else:
            raise ValidationError(f"unknown block kind {kind!r}")
        if b is None:
            b = piece
            if attach is not None:
                raise ValidationError("first block cannot attach")
        else:
            if attach is None or attach not in b.pair.graph.vertices:
                raise ValidationError("attach vertex must exist")
            b.sum(piece, attach, min(piece.pair.graph.vertices))
    if b is None:
        raise ValidationError("at least one block is required")
    return b


def gen_c5_blowup(k: int) -> LabeledPair:
    """C5[k]: every vertex of the 5-cycle blown into a k-clique; graph only."""
    from .graphs import BlowupSpec, blow_up

    if k < 1:
        raise ValidationError("k must be positive")
    c5 = Graph.build(range(5), [(i, (i + 1) % 5) for i in range(5)])
    return LabeledPair(blow_up(BlowupSpec(c5, {v: k for v in range(5)})), None)


def gen_example6(n: int, m: int) -> TraceBuilder:
    """Blow-up of C_{6n+3} by m with uniform lists [3m-1], built by duplication.

    The duplication colours follow the period-3 schedule around the cycle, so
    every final list is the same set of 3m-1 colours.
    """
    if n < 1 or m < 1:
        raise ValidationError("need n >= 1 and m >= 1")
    length = 6 * n + 3
    b = gen_cycle(length)
    order = _cycle_order(b.pair.graph)
    classes = [
        [3 + j * (m - 1) + t for t in range(m - 1)]
        for j in range(3)
    ]
    for pos, v in enumerate(order):
        for c in classes[pos % 3]:
            b.dup(v, c)
    want = frozenset(range(1, 3 * m - 1 + 1))
    assert all(b.pair.lists.get(v) == want for v in b.pair.graph.vertices)
    return b


def _cycle_order(g: Graph) -> list:
    start = g.vertices[0]
    order = [start]
    prev = None
    while len(order) < g.n:
        nxt = min(x for x in g.adjacency[order[-1]] if x != prev)
        prev = order[-1]
        order.append(nxt)
    return order


def gen_fig5_cubic() -> TraceBuilder:
    """The 10-vertex cubic graph with uniform 3-colour lists.

    Built from the (1,4,4)-theta by duplicating the two middle interiors.
    """
    info = gen_theta(1, 4, 4)
    b = info.builder
    b.dup(info.paths[0][1], 2)
    b.dup(info.paths[1][1], 1)
    assert all(len(b.pair.lists.get(v)) == 3 for v in b.pair.graph.vertices)
    return b


def gen_fig14a(k: int) -> LabeledPair:
    """(3k+1)-regular assembly: 2k+1 cycle-blow-up copies strung on K_{2k+1}.

    Each copy is C5[p] with p = (k+1, k, k+1, k+1, k); the i-th hub vertex is
    joined to the whole first clique of the i-th copy.  Not IC-Brooks.
    """
    if k < 1:
        raise ValidationError("k must be positive")
    from .graphs import BlowupSpec, blow_up

    c5 = Graph.build(range(5), [(i, (i + 1) % 5) for i in range(5)])
    p = {0: k + 1, 1: k, 2: k + 1, 3: k + 1, 4: k}
    copy = blow_up(BlowupSpec(c5, p))
    hub_n = 2 * k + 1
    verts = list(range(hub_n))
    edges = [(i, j) for i in range(hub_n) for j in range(i + 1, hub_n)]
    offset = hub_n
    for i in range(hub_n):
        remap = {v: v + offset for v in copy.vertices}
        verts.extend(remap.values())
        edges.extend((remap[a], remap[b]) for a, b in copy.edges)
        kv1 = [remap[v] for v in copy.vertices if copy.meta["blowup"][str(v)][0] == 0]
        edges.extend((i, x) for x in kv1)
        offset += copy.n
    g = Graph.build(verts, edges, {"family": "fig14a", "k": k})
    assert g.is_regular() and g.degree(g.vertices[0]) == 3 * k + 1
    return LabeledPair(g, None)


def gen_fig14b(k: int) -> LabeledPair:
    """3k-regular assembly (k >= 2): three C7 blow-ups joined through one vertex."""
    if k < 2:
        raise ValidationError("the 3k-regular family needs k >= 2")
    from .graphs import BlowupSpec, blow_up

    c7 = Graph.build(range(7), [(i, (i + 1) % 7) for i in range(7)])
    p = {0: k, 1: k, 2: k + 1, 3: k, 4: k, 5: k + 1, 6: k}
    copy = blow_up(BlowupSpec(c7, p))
    verts = [0]
    edges = []
    offset = 1
    for _ in range(3):
        remap = {v: v + offset for v in copy.vertices}
        verts.extend(remap.values())
        edges.extend((remap[a], remap[b]) for a, b in copy.edges)
        kv1 = [remap[v] for v in copy.vertices if copy.meta["blowup"][str(v)][0] == 0]
        edges.extend((0, x) for x in kv1)
        offset += copy.n
    g = Graph.build(verts, edges, {"family": "fig14b", "k": k})
    assert g.is_regular() and g.degree(0) == 3 * k
    return LabeledPair(g, None)


# ---------------------------------------------------------------------------
# generators: indicated degree-choosable families (forbidden structures)


def gen_theta_plus(k1: int, k2: int, k3: int, chords=()) -> Graph:
    """Theta on paths of lengths k1,k2,k3 >= 2 plus chords from deep P1
    interiors to P3 interiors."""
    if min(k1, k2, k3) < 2:
        raise ValidationError("theta-plus paths need length >= 2")
    u, w = 0, 1
    verts = [u, w]
    edges = []
    interiors = []
    nxt = 2
    for L in (k1, k2, k3):
        path = []
        prev = u
        for _ in range(L - 1):
            verts.append(nxt)
            edges.append((prev, nxt))
            path.append(nxt)
            prev = nxt
            nxt += 1
        edges.append((prev, w))
        interiors.append(path)
    for i, j in chords:
        if i < 1 or i >= len(interiors[0]):
            raise ValidationError("chord endpoint on P1 must skip the first interior")
        if j < 0 or j >= len(interiors[2]):
            raise ValidationError("chord endpoint outside P3 interiors")
        edges.append((interiors[0][i], interiors[2][j]))
    return Graph.build(verts, edges)


def gen_double_chorded_cycle(length: int, chord1, chord2) -> Graph:
    """Cycle with two non-crossing chords i<j <= s<t (0-based positions)."""
    i, j = chord1
    s, t = chord2
    if not (0 <= i < j <= s < t < length):
        raise ValidationError("chords must satisfy i < j <= s < t")
    for a, b in (chord1, chord2):
        if b - a < 2 or (a == 0 and b == length - 1):
            raise ValidationError(f"({a},{b}) is not a chord of the cycle")
    edges = [(x, (x + 1) % length) for x in range(length)] + [(i, j), (s, t)]
    return Graph.build(range(length), edges)


def gen_near_odd_wheel(cycle_len: int, attach) -> Graph:
    """Odd cycle of length >= 5 plus an apex on the given positions.

    Needs >= 4 attachments, or 2-3 attachments that are not consecutive."""
    if cycle_len < 5 or cycle_len % 2 == 0:
        raise ValidationError("base must be an odd cycle of length >= 5")
    attach = sorted(set(attach))
    if any(a < 0 or a >= cycle_len for a in attach):
        raise ValidationError("attachment positions outside the cycle")
    t = len(attach)
    if t < 2:
        raise ValidationError("need at least two attachments")
    if t in (2, 3):
        gaps = [(b - a) % cycle_len for a, b in zip(attach, attach[1:] + attach[:1])]
        if max(gaps) == cycle_len - (t - 1):
            # attachments form one contiguous arc: not a near odd-wheel
            raise ValidationError("2-3 attachments must not be consecutive")
    apex = cycle_len
    edges = [(x, (x + 1) % cycle_len) for x in range(cycle_len)] + [(apex, a) for a in attach]
    return Graph.build(range(cycle_len + 1), edges)


# ---------------------------------------------------------------------------
# witness lists and the regular embedding


def _witness(g: Graph):
    """(builder, map g-vertex -> built-vertex) for a reducible connected graph."""
    if g.n == 1:
        b = TraceBuilder()
        return b, {g.vertices[0]: 0}
    twins = find_adjacent_twins(g)
    if twins:
        u, v = twins[0]
        b, m = _witness(g.remove_vertices([v]))
        m[v] = b.dup(m[u])
        return b, m
    for t in find_degree2_triples(g):
        v1, v2, v3 = t
        a = next(iter(g.adjacency[v1] - {v2}))
        bb = next(iter(g.adjacency[v3] - {v2}))
        if a == bb:
            continue
        w = g.fresh_vertex()
        h = g.remove_vertices([v1, v2, v3]).add_vertex(w, [a, bb])
        b, m = _witness(h)
        n1, n2, n3 = b.triple(m[w])
        if b.pair.graph.has_edge(n1, m[a]):
            m[v1], m[v2], m[v3] = n1, n2, n3
        else:
            m[v1], m[v2], m[v3] = n3, n2, n1
        del m[w]
        return b, m
    cuts = sorted(cut_vertices(g))
    if not cuts:
        raise ValidationError("graph is irreducible; no witness list exists")
    v = cuts[0]
    comps = connected_components(g.remove_vertices([v]))
    first = set(comps[0]) | {v}
    rest = set(g.vertices) - set(comps[0])
    b1, m1 = _witness(g.induced_subgraph(first))
    b2, m2 = _witness(g.induced_subgraph(rest))
    remap = b1.sum(b2, m1[v], m2[v])
    m = dict(m1)
    for x, built in m2.items():
        if x != v:
            m[x] = remap[built]
    return b1, m


def witness_list(g: Graph):
    """A tight list making (g, L) infeasible, plus its construction trace.

    Returns None when g is indicated degree-choosable.  Certified post-hoc by
    the reverse-reduction decider.
    """
    if not g.is_connected():
        raise ValidationError("witness_list expects a connected graph")
    if not reduce_recognize(g):
        return None
    b, m = _witness(g)
    la = ListAssignment({x: b.pair.lists.get(m[x]) for x in g.vertices})
    pair = LabeledPair.build(g, la)
    from .solver import INFEASIBLE, decide_pair_fast

    if decide_pair_fast(pair) != INFEASIBLE:
        raise AssertionError("witness construction produced a feasible pair")
    return la, b.trace


def _embed_gadget_h(r: int) -> tuple:
    """The r-regular-except-w piece: theta with long paths thickened."""
    u, v, w = 0, 1, 2
    verts = [u, v, w]
    edges = [(u, v), (u, w), (v, w)]
    nxt = 3
    for _ in range(r - 2):
        a = nxt
        clique = list(range(nxt + 1, nxt + r))
        bvert = nxt + r
        nxt += r + 1
        verts.extend([a, bvert] + clique)
        edges.append((u, a))
        edges.extend((a, x) for x in clique)
        edges.extend((x, y) for xi, x in enumerate(clique) for y in clique[xi + 1:])
        edges.extend((x, bvert) for x in clique)
        edges.append((bvert, v))
    return Graph.build(verts, edges), w


def _embed_gadget_q(r: int) -> tuple:
    """k copies of the H piece folded at the shared vertex, plus a pendant t."""
    k = (r - 1) // 2
    h, w = _embed_gadget_h(r)
    s, t = 0, 1
    verts = [s, t]
    edges = [(s, t)]
    nxt = 2
    for _ in range(k):
        remap = {}
        for x in sorted(h.vertices):
            if x == w:
                remap[x] = s
            else:
                remap[x] = nxt
                nxt += 1
        verts.extend(remap[x] for x in h.vertices if x != w)
        edges.extend((remap[a], remap[b]) for a, b in h.edges)
    return Graph.build(verts, edges), t


def embed_into_ic_brooks(g: Graph) -> tuple:
    """An r-regular graph with the same non-choosability containing g induced.

    Returns (graph, embedding) where the embedding is the identity on g's
    vertices.  r is the smallest odd integer >= 3 covering the witness-list
    colours of g.
    """
    if not g.is_connected():
        raise ValidationError("embed_into_ic_brooks expects a connected graph")
    wl = witness_list(g)
    if wl is None:
        raise PreconditionError("input is indicated degree-choosable; nothing to embed")
    la, _ = wl
    r = max(3, la.max_colour(), g.max_degree())
    if r % 2 == 0:
        r += 1
    q, t = _embed_gadget_q(r)
    verts = list(g.vertices)
    edges = list(g.edges)
    nxt = g.fresh_vertex()
    for x in g.vertices:
        for _ in range(r - g.degree(x)):
            remap = {}
            for y in sorted(q.vertices):
                if y == t:
                    remap[y] = x
                else:
                    remap[y] = nxt
                    nxt += 1
            verts.extend(remap[y] for y in q.vertices if y != t)
            edges.extend((remap[a], remap[b]) for a, b in q.edges)
    out = Graph.build(verts, edges, {"embedded": list(g.vertices), "r": r})
    embedding = {x: x for x in g.vertices}
    return out, embedding


# ---------------------------------------------------------------------------
# random traces for soundness testing


def random_trace(rng: random.Random, max_vertices: int = 12, sum_depth: int = 2) -> TraceBuilder:
    """A random replayable trace whose result stays within the size bound."""
    b = TraceBuilder()
    steps = rng.randint(1, 3 * max_vertices)
    for _ in range(steps):
        g = b.pair.graph
        room = max_vertices - g.n
        ops = []
        if room >= 1:
            ops.append("dup")
        if room >= 2 and any(g.degree(v) == 2 for v in g.vertices):
            ops.append("triple")
        if room >= 1 and sum_depth > 0:
            ops.append("sum")
        if not ops:
            break
        op = rng.choice(ops)
        if op == "dup":
            v = rng.choice(g.vertices)
            la = b.pair.lists
            used = set()
            for x in g.closed_neighbourhood(v):
                used |= la.get(x)
            choices = [c for c in range(1, la.max_colour() + 2) if c not in used]
            b.dup(v, rng.choice(choices))
        elif op == "triple":
            v = rng.choice([v for v in g.vertices if g.degree(v) == 2])
            b.triple(v)
        else:
            other = random_trace(rng, max_vertices=max(1, room), sum_depth=sum_depth - 1)
            b.sum(other, rng.choice(g.vertices), rng.choice(other.pair.graph.vertices))
    return b
