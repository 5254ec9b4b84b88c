"""Brooks-type decisions for the indicated chromatic number.

A connected graph has indicated chromatic number Delta+1 exactly when it is
a regular expanded Gallai-tree admitting an infeasible degree-list inside
[Delta].  That list-existence question decomposes over clique-cuts; at each
rooted fan (odd cycles sharing one edge, blown up) it reduces to a multifold
colouring of the base's square with prescribed set sizes and palettes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError, ResourceLimitError, ValidationError
from .graphs import Graph
from .recognize import BlockInfo, expanded_blocks, is_expanded_gallai_tree


@dataclass(frozen=True)
class SharedEdgeFan:
    """k odd cycles sharing the anchor edge, with blow-up class sizes.

    ``anchor_u`` and ``anchor_v`` are the two anchor classes (vertex tuples
    of the host graph); ``cycles`` holds each cycle's interior classes in
    path order from the u side to the v side.
    """

    anchor_u: tuple
    anchor_v: tuple
    cycles: tuple  # tuple of tuples of vertex-tuples

    @property
    def k(self) -> int:
        return len(self.cycles)

    def base_classes(self):
        out = [("u", self.anchor_u), ("v", self.anchor_v)]
        for ci, cyc in enumerate(self.cycles):
            for pi, cls in enumerate(cyc):
                out.append(((ci, pi), cls))
        return out

    def blowup_size(self) -> int:
        return sum(len(cls) for _, cls in self.base_classes())


@dataclass(frozen=True)
class MultifoldColouring:
    """Colour sets on the fan's base classes, disjoint at distance <= 2."""

    assignment: dict  # base key -> frozenset of colours

    def to_json(self):
        return {str(k): sorted(v) for k, v in sorted(self.assignment.items(), key=lambda t: str(t[0]))}


def _fan_conflicts(fan: SharedEdgeFan):
    """Pairs of base keys at distance <= 2 in the fan's base graph."""
    keys = ["u", "v"]
    adj = {"u": {"v"}, "v": {"u"}}
    for ci, cyc in enumerate(fan.cycles):
        prev = "u"
        for pi in range(len(cyc)):
            k = (ci, pi)
            keys.append(k)
            adj.setdefault(k, set()).add(prev)
            adj[prev].add(k)
            prev = k
        adj[prev].add("v")
        adj["v"].add(prev)
    conflicts = set()
    for a in keys:
        reach = set(adj[a])
        for b in adj[a]:
            reach |= adj[b]
        reach.discard(a)
        for b in reach:
            conflicts.add(frozenset((a, b)))
    return keys, conflicts


def _anchor_region(fan: SharedEdgeFan):
    region = {"u", "v"}
    for ci, cyc in enumerate(fan.cycles):
        region.add((ci, 0))
        region.add((ci, len(cyc) - 1))
    return region


def multifold_colour(fan: SharedEdgeFan, r: int, s: int) -> MultifoldColouring | None:
    """Exact search for the palette-constrained multifold colouring.

    Sizes are class size minus one; the palette is [s] minus the k+1 base
    colours on the closed anchor neighbourhood and [r] minus {i, k+1} on the
    remaining classes of the i-th cycle.  Returns None only after exhausting
    the space.
    """
    if r < s:
        raise ValidationError("need r >= s")
    k = fan.k
    if k < 1:
        raise ValidationError("a fan needs at least one cycle")
    keys, conflicts = _fan_conflicts(fan)
    region = _anchor_region(fan)
    sizes = {}
    palettes = {}
    class_of = dict(fan.base_classes())
    for key in keys:
        sizes[key] = len(class_of[key]) - 1
        if key in region:
            palettes[key] = frozenset(range(1, s + 1)) - frozenset(range(1, k + 2))
        else:
            ci = key[0]
            palettes[key] = frozenset(range(1, r + 1)) - {ci + 1, k + 1}
    order = sorted((key for key in keys if sizes[key] > 0),
                   key=lambda key: (-sizes[key], str(key)))
    neighbours = {key: set() for key in keys}
    for pair in conflicts:
        a, b = tuple(pair)
        neighbours[a].add(b)
        neighbours[b].add(a)
    assignment: dict = {}

    def feasible_ahead(idx):
        for key in order[idx:]:
            used = set()
            for nb in neighbours[key]:
                used |= assignment.get(nb, set())
            if len(palettes[key] - used) < sizes[key]:
                return False
        return True

    def rec(idx):
        if idx == len(order):
            return True
        key = order[idx]
        used = set()
        for nb in neighbours[key]:
            used |= assignment.get(nb, set())
        avail = sorted(palettes[key] - used)
        for combo in combinations(avail, sizes[key]):
            assignment[key] = frozenset(combo)
            if feasible_ahead(idx + 1) and rec(idx + 1):
                return True
            del assignment[key]
        return False

    if not rec(0):
        return None
    full = {key: assignment.get(key, frozenset()) for key in keys}
    return MultifoldColouring(full)


# ---------------------------------------------------------------------------
# fan extraction


def _fan_from_blocks(g: Graph, blocks: list, anchor: frozenset) -> SharedEdgeFan:
    """Assemble the fan of all blocks whose root clique equals ``anchor``."""
    split = None
    cycles = []
    for b in blocks:
        base = list(b.base_cycle)
        m = len(base)
        for i in range(m):
            x, y = base[i], base[(i + 1) % m]
            if x | y == anchor:
                # walking on from y yields the interiors from the y side
                rest = [base[(i + 1 + j) % m] for j in range(1, m - 1)]
                if split is None:
                    split = (frozenset(x), frozenset(y))
                if (frozenset(x), frozenset(y)) == split:
                    interiors = list(reversed(rest))
                elif (frozenset(y), frozenset(x)) == split:
                    interiors = rest
                else:
                    raise ValidationError("fan blocks split the root clique differently")
                cycles.append(tuple(tuple(sorted(cls)) for cls in interiors))
                break
        else:
            raise ValidationError("block does not carry the requested root clique")
    u_cls, v_cls = split
    cycles.sort(key=lambda cyc: (len(cyc), cyc))
    return SharedEdgeFan(tuple(sorted(u_cls)), tuple(sorted(v_cls)), tuple(cycles))


def _single_block_fan(b: BlockInfo) -> SharedEdgeFan:
    base = list(b.base_cycle)
    u_cls, v_cls = base[0], base[1]
    interiors = base[2:]
    return SharedEdgeFan(
        tuple(sorted(u_cls)),
        tuple(sorted(v_cls)),
        (tuple(tuple(sorted(cls)) for cls in reversed(interiors)),),
    )


def extract_H_K(g: Graph, K) -> tuple:
    """(fan, t_K, Q_K vertex set) for a clique-cut carrying rooted blocks."""
    K = frozenset(K)
    dec = expanded_blocks(g, cap=None)
    rooted = [b for b in dec.blocks
              if b.kind == "odd_cycle_blowup" and b.root_clique == K]
    if not rooted:
        raise PreconditionError("no expanded block has this clique as its root clique")
    fan = _fan_from_blocks(g, rooted, K)
    t_k = len(frozenset.intersection(*(g.adjacency[z] for z in K)) - K)
    h_vertices = set(K)
    for b in rooted:
        h_vertices |= b.vertices
    from .graphs import connected_components

    rest = g.remove_vertices(K)
    q_vertices = set(K)
    for comp in connected_components(rest):
        if any(v in h_vertices for v in comp):
            q_vertices |= set(comp)
    return fan, t_k, frozenset(q_vertices)


# ---------------------------------------------------------------------------
# list existence within a bounded colour universe


def list_existence(g: Graph, r: int) -> bool:
    """Whether some infeasible degree-list of g fits inside [r].

    The decision recurses over the clique-cut tree: cuts carrying no rooted
    fan split the question into independent pieces; otherwise the innermost
    rooted fan must admit the palette-restricted multifold colouring with
    s = r - t_K, and the remainder recurses.
    """
    if not g.is_connected():
        raise ValidationError("list_existence expects a connected graph")
    if g.max_degree() > r:
        raise ValidationError("r must dominate the maximum degree")
    if not is_expanded_gallai_tree(g, cap=None):
        raise PreconditionError("list_existence is defined on expanded Gallai-trees")
    memo: dict = {}
    return _lx(g, r, memo)


def _lx(g: Graph, r: int, memo: dict) -> bool:
    key = frozenset(g.vertices)
    hit = memo.get(key)
    if hit is not None:
        return hit
    result = _lx_inner(g, r, memo)
    memo[key] = result
    return result


def _lx_inner(g: Graph, r: int, memo: dict) -> bool:
    from .graphs import connected_components

    dec = expanded_blocks(g, cap=None)
    blocks = dec.blocks
    if len(blocks) == 1:
        b = blocks[0]
        if b.kind == "complete":
            return r >= g.n - 1
        if b.kind != "odd_cycle_blowup":
            raise PreconditionError("piece is not an expanded Gallai-tree block")
        return multifold_colour(_single_block_fan(b), r, r) is not None
    roots = {}
    for b in blocks:
        if b.kind == "odd_cycle_blowup" and b.root_clique is not None:
            roots.setdefault(b.root_clique, []).append(b)
    cuts = {s for s, _ in dec.clique_cuts} | set(roots)
    fanless = sorted((c for c in cuts if c not in roots), key=sorted)
    if fanless:
        sep = fanless[0]
        rest = g.remove_vertices(sep)
        return all(
            _lx(g.induced_subgraph(set(comp) | sep), r, memo)
            for comp in connected_components(rest)
        )
    # every available cut carries a fan: handle an innermost one
    best = None
    for anchor, rooted in roots.items():
        fan, t_k, q_vertices = extract_H_K(g, anchor)
        if best is None or len(q_vertices) < len(best[3]):
            best = (anchor, rooted, fan, q_vertices, t_k)
    anchor, rooted, fan, q_vertices, t_k = best
    h_vertices = set(anchor)
    for b in rooted:
        h_vertices |= b.vertices
    if q_vertices != frozenset(h_vertices):
        raise PreconditionError("innermost fan still contains other clique-cuts")
    if multifold_colour(fan, r, r - t_k) is None:
        return False
    remainder = g.induced_subgraph(set(g.vertices) - (h_vertices - set(anchor)))
    return _lx(remainder, r, memo)


def is_ic_brooks(g: Graph) -> bool:
    """Whether the indicated chromatic number equals the maximum degree plus one."""
    if not g.is_connected():
        raise ValidationError("is_ic_brooks expects a connected graph")
    if not g.is_regular():
        return False
    if not is_expanded_gallai_tree(g, cap=None):
        return False
    if g.n == 1:
        return True
    return list_existence(g, g.max_degree())


def brooks_report(g: Graph) -> dict:
    """Structured IC-Brooks verdict for the CLI and the service."""
    if not g.is_connected():
        raise ValidationError("brooks_report expects a connected graph")
    regular = g.is_regular()
    r = g.max_degree()
    doc = {"ic_brooks": False, "regular": regular, "r": r,
           "expanded_gallai_tree": None, "failing_clique_cut": None, "certificate": None}
    if not regular:
        doc["expanded_gallai_tree"] = is_expanded_gallai_tree(g, cap=None)
        return doc
    egt = is_expanded_gallai_tree(g, cap=None)
    doc["expanded_gallai_tree"] = egt
    if not egt:
        return doc
    if g.n == 1:
        doc["ic_brooks"] = True
        return doc
    certificates: dict = {}
    failing: list = []
    ok = _lx_report(g, r, {}, certificates, failing)
    doc["ic_brooks"] = ok
    if ok:
        doc["certificate"] = {"|".join(map(str, sorted(a))): c.to_json() for a, c in certificates.items()}
    elif failing:
        doc["failing_clique_cut"] = sorted(failing[0])
    return doc


def _lx_report(g: Graph, r: int, memo: dict, certificates: dict, failing: list) -> bool:
    """list_existence recursion that records fan certificates / failures."""
    from .graphs import connected_components

    key = frozenset(g.vertices)
    if key in memo:
        return memo[key]
    dec = expanded_blocks(g, cap=None)
    blocks = dec.blocks
    result = True
    if len(blocks) == 1:
        b = blocks[0]
        if b.kind == "complete":
            result = r >= g.n - 1
            if not result:
                failing.append(frozenset(g.vertices))
        else:
            fan = _single_block_fan(b)
            col = multifold_colour(fan, r, r)
            if col is None:
                result = False
                failing.append(frozenset(g.vertices))
            else:
                certificates[frozenset(g.vertices)] = col
    else:
        roots = {}
        for b in blocks:
            if b.kind == "odd_cycle_blowup" and b.root_clique is not None:
                roots.setdefault(b.root_clique, []).append(b)
        cuts = {s for s, _ in dec.clique_cuts} | set(roots)
        fanless = sorted((c for c in cuts if c not in roots), key=sorted)
        if fanless:
            sep = fanless[0]
            rest = g.remove_vertices(sep)
            result = all(
                _lx_report(g.induced_subgraph(set(comp) | sep), r, memo, certificates, failing)
                for comp in connected_components(rest)
            )
        else:
            best = None
            for anchor in roots:
                fan, t_k, q_vertices = extract_H_K(g, anchor)
                if best is None or len(q_vertices) < len(best[2]):
                    best = (anchor, fan, q_vertices, t_k)
            anchor, fan, q_vertices, t_k = best
            col = multifold_colour(fan, r, r - t_k)
            if col is None:
                result = False
                failing.append(anchor)
            else:
                certificates[anchor] = col
                h_interior = set(q_vertices) - set(anchor)
                remainder = g.induced_subgraph(set(g.vertices) - h_interior)
                result = _lx_report(remainder, r, memo, certificates, failing)
    memo[key] = result
    return result


# ---------------------------------------------------------------------------
# clique number


def omega(g: Graph, cap: int = 4096) -> int:
    """Exact clique number by branch and bound with a greedy colouring bound."""
    if g.n == 0:
        raise ValidationError("omega needs a nonempty graph")
    if g.n > cap:
        raise ResourceLimitError(f"omega capped at {cap} vertices, got {g.n}")
    verts = sorted(g.vertices, key=lambda v: -g.degree(v))
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [0] * n
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    best = [1]

    def colour_bound(cand):
        # greedy colour classes over the candidate set; class count bounds the clique
        classes = []
        m = cand
        while m:
            b = m & -m
            i = b.bit_length() - 1
            m ^= b
            for cl in classes:
                if not (cl["mask"] & adj[i]):
                    cl["mask"] |= b
                    break
            else:
                classes.append({"mask": b})
        return len(classes)

    def expand(size, cand):
        if not cand:
            best[0] = max(best[0], size)
            return
        if size + colour_bound(cand) <= best[0]:
            return
        while cand:
            if size + cand.bit_count() <= best[0]:
                return
            b = cand & -cand
            i = b.bit_length() - 1
            cand ^= b
            expand(size + 1, (cand | 0) & adj[i])

    expand(0, (1 << n) - 1)
    return best[0]
