"""Exact decision of indicated list-colouring feasibility.

Two independent deciders:

* ``solve_pair`` — the game recursion (Ann picks a vertex, Ben answers with
  every legal colour) with memoization and theory-based prunings, each
  individually toggleable so the unpruned run stays a theory-free oracle.

* ``decide_pair_fast`` — membership in the closure of (K1, empty list) under
  the duplicate / triple / vertex-sum operations, decided by backtracking
  reverse reduction.  Infeasible pairs are exactly the members.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field, replace

from .errors import BudgetExceededError, NoMoveError, ResourceLimitError, ValidationError
from .graphs import Graph, LabeledPair, ListAssignment, canonical_form, canonical_key

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

DEFAULT_SOLVE_CAP = 14
DEFAULT_CHI_CAP = 12


@dataclass(frozen=True)
class PruningConfig:
    """Feature switches for ``solve_pair``; all on by default."""

    component_split: bool = True
    surplus: bool = True
    isolated_colour: bool = True
    structure: bool = True
    forced_leaf: bool = True
    canonical_memo: bool = True

    @staticmethod
    def none() -> "PruningConfig":
        return PruningConfig(False, False, False, False, False, False)


@dataclass
class Budget:
    """Cooperative cancellation and wall-clock budget shared down a solve."""

    deadline: float | None = None
    cancel: threading.Event | None = None
    nodes: int = 0

    def tick(self):
        self.nodes += 1
        if self.nodes % 2048 == 0:
            if self.cancel is not None and self.cancel.is_set():
                raise BudgetExceededError("cancelled")
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise BudgetExceededError("wall-clock budget exhausted")

    @staticmethod
    def of(seconds: float | None, cancel: threading.Event | None = None) -> "Budget":
        return Budget(None if seconds is None else time.monotonic() + seconds, cancel)


@dataclass(frozen=True)
class Verdict:
    status: str  # FEASIBLE | INFEASIBLE
    strategy: "Strategy | None" = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_json(self) -> dict:
        doc = {"status": self.status}
        if self.strategy is not None:
            doc["strategy"] = self.strategy.to_json()
        return doc


class Strategy:
    """Policy table: canonical position key -> winning move.

    Ann entries map an Ann-to-pick position to a canonical vertex index; Ben
    entries map a (position, picked vertex) state to a canonical colour
    index.  ``vertex_for`` / ``colour_for`` translate back through the
    canonical order of the concrete position being replayed.
    """

    def __init__(self, winner: str):
        self.winner = winner  # "ann" | "ben"
        self.table: dict = {}

    def vertex_for(self, residual: LabeledPair) -> int:
        key, vorder, _ = _canonical(residual)
        idx = self.table.get(key)
        if idx is None:
            raise ValidationError("position not covered by strategy")
        return vorder[idx]

    def colour_for(self, residual: LabeledPair, picked: int) -> int:
        key, _, corder = _canonical(residual, mark=picked)
        idx = self.table.get(key)
        if idx is None:
            raise ValidationError("position not covered by strategy")
        return corder[idx]

    def to_json(self) -> list:
        out = []
        for key, idx in sorted(self.table.items()):
            move = {"vertex": idx} if self.winner == "ann" else {"colour": idx}
            out.append({"position_key": key.hex(), "move": move})
        return out


def _canonical(pair: LabeledPair, mark: int | None = None):
    key, vorder = canonical_form(pair, mark)
    colours = sorted(pair.lists.universe()) if pair.lists is not None else []
    # canonical colour order: sort colours by their membership pattern over
    # the canonical vertex order; equal patterns are interchangeable
    pos = {v: i for i, v in enumerate(vorder)}
    sig = {c: tuple(sorted(pos[v] for v in pair.graph.vertices if c in pair.lists.get(v))) for c in colours}
    corder = tuple(sorted(colours, key=lambda c: (sig[c], c)))
    return key, vorder, corder


# ---------------------------------------------------------------------------
# game-recursion engine


class _Engine:
    def __init__(self, pair: LabeledPair, prunings: PruningConfig, budget: Budget,
                 shared_memo: dict | None = None, canonical_threshold: int = 10):
        if pair.lists is None:
            raise ValidationError("solve_pair needs a list assignment")
        self.pair = pair
        self.prunings = prunings
        self.budget = budget
        g = pair.graph
        self.vertices = list(g.vertices)
        self.n = len(self.vertices)
        self.vid = {v: i for i, v in enumerate(self.vertices)}
        self.colours = sorted(pair.lists.universe())
        self.cid = {c: i for i, c in enumerate(self.colours)}
        self.adj = [0] * self.n
        for u, v in g.edges:
            self.adj[self.vid[u]] |= 1 << self.vid[v]
            self.adj[self.vid[v]] |= 1 << self.vid[u]
        self.lists0 = tuple(
            sum(1 << self.cid[c] for c in pair.lists.get(v)) for v in self.vertices
        )
        self.full = (1 << self.n) - 1
        self.memo: dict = {}
        self.canonical_memo = shared_memo if shared_memo is not None else {}
        self.canonical_threshold = canonical_threshold
        self.graph_egt_cache: dict = {}

    # -- helpers

    def components(self, rem: int) -> list:
        comps = []
        left = rem
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= self.adj[b.bit_length() - 1] & rem & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            left &= ~comp
        return comps

    def residual_pair(self, rem: int, lists: tuple) -> LabeledPair:
        keep = [self.vertices[i] for i in _bits(rem)]
        g = self.pair.graph.induced_subgraph(keep)
        la = ListAssignment({
            self.vertices[i]: frozenset(self.colours[c] for c in _bits(lists[i]))
            for i in _bits(rem)
        })
        return LabeledPair(g, la)

    def _normalise_colours(self, rem: int, lists: tuple) -> tuple:
        """Relabel colour bits by membership signature; exact under colour permutation."""
        sig = {}
        for i in _bits(rem):
            li = lists[i]
            while li:
                b = li & -li
                li ^= b
                sig.setdefault(b, []).append(i)
        cols = sorted(sig, key=lambda b: (sig[b], b.bit_length()))
        newbit = {b: 1 << k for k, b in enumerate(cols)}
        out = []
        for i in _bits(rem):
            li = lists[i]
            acc = 0
            while li:
                b = li & -li
                li ^= b
                acc |= newbit[b]
            out.append(acc)
        return tuple(out)

    def graph_is_egt(self, comp: int) -> bool:
        hit = self.graph_egt_cache.get(comp)
        if hit is None:
            from .recognize import reduce_recognize
            keep = [self.vertices[i] for i in _bits(comp)]
            hit = reduce_recognize(self.pair.graph.induced_subgraph(keep))
            self.graph_egt_cache[comp] = hit
        return hit

    # -- core recursion

    def solve(self, rem: int, lists: tuple) -> bool:
        if rem == 0:
            return True
        for i in _bits(rem):
            if lists[i] == 0:
                return False
        if self.prunings.component_split:
            comps = self.components(rem)
            if len(comps) > 1:
                return all(self.solve_component(c, lists) for c in comps)
            return self.solve_component(comps[0], lists)
        return self.solve_component(rem, lists)

    def solve_component(self, comp: int, lists: tuple) -> bool:
        self.budget.tick()
        key = (comp, self._normalise_colours(comp, lists))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        ckey = None
        use_canon = (
            self.prunings.canonical_memo
            and comp.bit_count() >= self.canonical_threshold
        )
        if use_canon:
            ckey = canonical_key(self.residual_pair(comp, lists))
            hit = self.canonical_memo.get(ckey)
            if hit is not None:
                self.memo[key] = hit
                return hit
        result = self._solve_component_inner(comp, lists)
        self.memo[key] = result
        if ckey is not None:
            self.canonical_memo[ckey] = result
        return result

    def _solve_component_inner(self, comp: int, lists: tuple) -> bool:
        pr = self.prunings
        members = _bits(comp)
        want_rules = pr.surplus or pr.isolated_colour or pr.structure
        if want_rules and not pr.component_split and len(self.components(comp)) > 1:
            want_rules = False  # the rules below assume a connected position
        if want_rules:
            degree_list = True
            strict = False
            for i in members:
                d = (self.adj[i] & comp).bit_count()
                ln = lists[i].bit_count()
                if ln < d:
                    degree_list = False
                    break
                if ln > d:
                    strict = True
            if degree_list:
                if pr.surplus and strict:
                    return True
                if pr.isolated_colour:
                    for i in members:
                        union = 0
                        for j in _bits(self.adj[i] & comp):
                            union |= lists[j]
                        if lists[i] & ~union:
                            return True
                if pr.structure and not self.graph_is_egt(comp):
                    return True
        if pr.forced_leaf:
            for i in members:
                if lists[i].bit_count() == 1:
                    return self.solve(comp ^ (1 << i), self._after(comp, lists, i, lists[i]))
        order = sorted(members, key=lambda i: (lists[i].bit_count(), -(self.adj[i] & comp).bit_count()))
        for i in order:
            li = lists[i]
            ok = True
            rest = comp ^ (1 << i)
            while li:
                c = li & -li
                li ^= c
                if not self.solve(rest, self._after(comp, lists, i, c)):
                    ok = False
                    break
            if ok:
                return True
        return False

    def _after(self, comp: int, lists: tuple, i: int, cbit: int) -> tuple:
        out = list(lists)
        out[i] = 0
        for j in _bits(self.adj[i] & comp):
            out[j] &= ~cbit
        return tuple(out)


def _bits(mask: int):
    out = []
    while mask:
        b = mask & -mask
        mask ^= b
        out.append(b.bit_length() - 1)
    return out


def solve_pair(
    pair: LabeledPair,
    cap: int = DEFAULT_SOLVE_CAP,
    prunings: PruningConfig | None = None,
    budget: Budget | None = None,
    with_strategy: bool = False,
    shared_memo: dict | None = None,
) -> Verdict:
    """Decide whether Ann wins the indicated list-colouring game on ``pair``.

    Empty graphs are feasible.  Exceeding ``cap`` raises a resource error;
    there is no silent approximation.
    """
    if pair.lists is None:
        raise ValidationError("solve_pair needs a list assignment")
    if pair.graph.n > cap:
        raise ResourceLimitError(f"solve_pair capped at {cap} vertices, got {pair.graph.n}")
    prunings = prunings if prunings is not None else PruningConfig()
    budget = budget or Budget()
    eng = _Engine(pair, prunings, budget, shared_memo)
    feasible = eng.solve(eng.full, eng.lists0)
    strategy = None
    if with_strategy:
        strategy = _extract_strategy(eng, feasible)
    return Verdict(FEASIBLE if feasible else INFEASIBLE, strategy)


def _extract_strategy(eng: _Engine, feasible: bool) -> Strategy:
    strat = Strategy("ann" if feasible else "ben")
    seen = set()

    def walk(rem: int, lists: tuple):
        if rem == 0:
            return
        alive = [i for i in _bits(rem) if lists[i]]
        if len(alive) < rem.bit_count() and not feasible:
            return  # dead vertex: Ben has already won
        residual = eng.residual_pair(rem, lists)
        if feasible:
            key, vorder, _ = _canonical(residual)
            if key in seen:
                return
            seen.add(key)
            vpos = {v: k for k, v in enumerate(vorder)}
            winner = None
            for i in sorted(alive, key=lambda i: vpos[eng.vertices[i]]):
                li = lists[i]
                ok = True
                while li:
                    c = li & -li
                    li ^= c
                    if not eng.solve(rem ^ (1 << i), eng._after(rem, lists, i, c)):
                        ok = False
                        break
                if ok:
                    winner = i
                    break
            if winner is None:
                raise AssertionError("feasible position without a winning vertex")
            strat.table[key] = vpos[eng.vertices[winner]]
            li = lists[winner]
            while li:
                c = li & -li
                li ^= c
                walk(rem ^ (1 << winner), eng._after(rem, lists, winner, c))
        else:
            # Ben policy: a refuting colour for every vertex Ann may pick
            for i in alive:
                key, _, corder = _canonical(residual, mark=eng.vertices[i])
                if key in seen:
                    continue
                seen.add(key)
                cpos = {c: k for k, c in enumerate(corder)}
                chosen = None
                for c in sorted(_bits(lists[i]), key=lambda b: cpos[eng.colours[b]]):
                    if not eng.solve(rem ^ (1 << i), eng._after(rem, lists, i, 1 << c)):
                        chosen = c
                        break
                if chosen is None:
                    continue  # Ann picked a losing vertex for Ben only if position was feasible
                strat.table[key] = cpos[eng.colours[chosen]]
                walk(rem ^ (1 << i), eng._after(rem, lists, i, 1 << chosen))

    walk(eng.full, eng.lists0)
    return strat


# ---------------------------------------------------------------------------
# fast decider: membership in the closure of (K1, empty) under the operations


_fast_memo: dict = {}


def reset_fast_memo() -> None:
    _fast_memo.clear()


def decide_pair_fast(pair: LabeledPair, budget: Budget | None = None) -> str:
    """FEASIBLE/INFEASIBLE via reverse reductions; needs a degree-list assignment."""
    if pair.lists is None:
        raise ValidationError("decide_pair_fast needs a list assignment")
    for v in pair.graph.vertices:
        if len(pair.lists.get(v)) < pair.graph.degree(v):
            raise ValidationError(f"vertex {v} has fewer colours than its degree")
    budget = budget or Budget()
    from .graphs import connected_components

    for comp in connected_components(pair.graph):
        sub = pair.induced(comp)
        if any(len(sub.lists.get(v)) > sub.graph.degree(v) for v in comp):
            continue  # surplus component is feasible
        if _w_member(sub, budget):
            return INFEASIBLE
    return FEASIBLE


def _w_member(pair: LabeledPair, budget: Budget) -> bool:
    """Membership of a connected tight pair in the constructible family."""
    budget.tick()
    g, la = pair.graph, pair.lists
    if g.n == 1:
        return len(la.get(g.vertices[0])) == 0
    key = canonical_key(pair)
    hit = _fast_memo.get(key)
    if hit is not None:
        return hit
    result = _w_member_inner(pair, budget)
    _fast_memo[key] = result
    return result


def _w_member_inner(pair: LabeledPair, budget: Budget) -> bool:
    from .graphs import connected_components, cut_vertices, find_adjacent_twins, find_degree2_triples

    g, la = pair.graph, pair.lists
    # neighbour-cover necessary condition: L(v) inside the union of neighbour lists
    for v in g.vertices:
        union = frozenset().union(*(la.get(u) for u in g.adjacency[v])) if g.adjacency[v] else frozenset()
        if la.get(v) - union:
            return False
    twins = find_adjacent_twins(g)
    for u, v in twins:
        if la.get(u) != la.get(v):
            return False  # infeasible pairs give equal lists to adjacent twins
    if twins:
        # any one twin pair of a member is reversible, so commit to the first
        u, v = twins[0]
        shared = frozenset.intersection(*(la.get(x) for x in g.closed_neighbourhood(u)))
        for c in sorted(shared & la.get(u)):
            h = g.remove_vertices([v])
            lists = {x: la.get(x) for x in h.vertices}
            for x in g.closed_neighbourhood(u) - {v}:
                lists[x] = lists[x] - {c}
            if _w_member(LabeledPair.build(h, lists), budget):
                return True
        return False
    for v1, v2, v3 in find_degree2_triples(g):
        if not (la.get(v1) == la.get(v2) == la.get(v3) and len(la.get(v2)) == 2):
            continue
        a = next(iter(g.adjacency[v1] - {v2}))
        b = next(iter(g.adjacency[v3] - {v2}))
        if a == b:
            continue
        # contracting any one triple of a member keeps membership: commit
        w = g.fresh_vertex()
        h = g.remove_vertices([v1, v2, v3]).add_vertex(w, [a, b])
        lists = {x: la.get(x) for x in h.vertices if x != w}
        lists[w] = la.get(v2)
        return _w_member(LabeledPair.build(h, lists), budget)
    # no twins and no contractible triple: a member's last operation is a sum
    for v in sorted(cut_vertices(g)):
        rest = g.remove_vertices([v])
        comps = connected_components(rest)
        first = set(comps[0]) | {v}
        other = (set(g.vertices) - set(comps[0]))
        g1, g2 = g.induced_subgraph(first), g.induced_subgraph(other)
        d1 = g1.degree(v)
        from itertools import combinations

        for a1 in combinations(sorted(la.get(v)), d1):
            a1 = frozenset(a1)
            a2 = la.get(v) - a1
            p1 = LabeledPair.build(g1, {x: (a1 if x == v else la.get(x)) for x in g1.vertices})
            p2 = LabeledPair.build(g2, {x: (a2 if x == v else la.get(x)) for x in g2.vertices})
            if _w_member(p1, budget) and _w_member(p2, budget):
                return True
    return False


# ---------------------------------------------------------------------------
# derived quantities


def indicated_k_colourable(g: Graph, k: int, cap: int = DEFAULT_SOLVE_CAP,
                           budget: Budget | None = None, shared_memo: dict | None = None) -> bool:
    if k < 1:
        raise ValidationError("k must be positive")
    pair = LabeledPair.build(g, ListAssignment.uniform(g, range(1, k + 1)))
    return solve_pair(pair, cap=cap, budget=budget, shared_memo=shared_memo).feasible


def chi_i(g: Graph, cap: int = DEFAULT_CHI_CAP, budget: Budget | None = None) -> int:
    """Least k for which the uniform [k] game is feasible.

    Searches upward from the clique number; the Delta+1 ceiling is returned
    without a final solve because it holds unconditionally.
    """
    if g.n == 0:
        raise ValidationError("chi_i needs a nonempty graph")
    if g.n > cap:
        raise ResourceLimitError(f"chi_i capped at {cap} vertices, got {g.n}")
    from .brooks import omega

    delta = g.max_degree()
    shared: dict = {}
    for k in range(max(1, omega(g)), delta + 1):
        if indicated_k_colourable(g, k, cap=cap, budget=budget, shared_memo=shared):
            return k
    return delta + 1


@dataclass(frozen=True)
class BoundedChoosability:
    value: bool
    k: int
    universe: int
    universe_bounded: bool = True  # a True verdict is one-sided: larger universes untested
    witness: LabeledPair | None = None

    def to_json(self) -> dict:
        from .graphs import pair_to_json

        doc = {"indicated_choosable": self.value, "k": self.k, "universe": self.universe,
               "universe_bounded": True}
        if self.witness is not None:
            doc["witness"] = pair_to_json(self.witness)
        return doc


def ch_i_bounded(g: Graph, k: int, universe: int, cap: int = DEFAULT_SOLVE_CAP,
                 assignment_budget: int = 500000, budget: Budget | None = None) -> BoundedChoosability:
    """True iff every size-k list assignment over [universe] is feasible.

    Enumeration is de-duplicated up to colour permutation via canonical keys.
    The answer is explicitly universe-bounded: a True verdict says nothing
    about larger colour universes.
    """
    from itertools import combinations, product

    if g.n > cap:
        raise ResourceLimitError(f"ch_i_bounded capped at {cap} vertices, got {g.n}")
    if universe < k:
        raise ValidationError("universe smaller than list size")
    choices = list(combinations(range(1, universe + 1), k))
    total = len(choices) ** g.n
    if total > assignment_budget:
        raise ResourceLimitError(
            f"{total} assignments exceed the budget of {assignment_budget}"
        )
    seen = set()
    shared: dict = {}
    for combo in product(choices, repeat=g.n):
        pair = LabeledPair.build(g, {v: frozenset(cs) for v, cs in zip(g.vertices, combo)})
        key = canonical_key(pair)
        if key in seen:
            continue
        seen.add(key)
        if not solve_pair(pair, cap=cap, budget=budget, shared_memo=shared).feasible:
            return BoundedChoosability(False, k, universe, witness=pair)
    return BoundedChoosability(True, k, universe)


# ---------------------------------------------------------------------------
# interactive positions


ANN_TO_PICK = "ann_to_pick"
BEN_TO_COLOUR = "ben_to_colour"


@dataclass(frozen=True)
class GamePosition:
    """A pair plus the partial colouring and turn marker of a live game."""

    pair: LabeledPair
    coloured: tuple = ()  # ((vertex, colour), ...) in play order
    picked: int | None = None  # vertex awaiting Ben's colour, or None

    @property
    def turn(self) -> str:
        return ANN_TO_PICK if self.picked is None else BEN_TO_COLOUR

    def coloured_map(self) -> dict:
        return dict(self.coloured)

    def remaining(self) -> tuple:
        done = {v for v, _ in self.coloured}
        return tuple(v for v in self.pair.graph.vertices if v not in done)

    def effective_list(self, v: int) -> frozenset:
        used = {c for u, c in self.coloured if self.pair.graph.has_edge(u, v)}
        return self.pair.list_of(v) - used

    def residual(self) -> LabeledPair:
        rem = self.remaining()
        g = self.pair.graph.induced_subgraph(rem)
        return LabeledPair(g, ListAssignment({v: self.effective_list(v) for v in rem}))

    def is_over(self) -> str | None:
        """"ann" when everything is coloured, "ben" when a vertex is dead."""
        rem = self.remaining()
        if not rem:
            return "ann"
        if any(not self.effective_list(v) for v in rem):
            return "ben"
        return None

    def pick(self, v: int) -> "GamePosition":
        if self.picked is not None:
            raise ValidationError("a vertex is already picked")
        if v not in self.remaining():
            raise ValidationError(f"vertex {v} is not uncoloured")
        return replace(self, picked=v)

    def colour(self, c: int) -> "GamePosition":
        if self.picked is None:
            raise ValidationError("no vertex picked")
        if c not in self.effective_list(self.picked):
            raise ValidationError(f"colour {c} is not legal on vertex {self.picked}")
        return GamePosition(self.pair, self.coloured + ((self.picked, c),), None)


@dataclass(frozen=True)
class MoveSuggestion:
    kind: str  # "vertex" | "colour"
    value: int
    evaluation: str  # "win" | "loss" (for the side to move)
    plies: int  # distance to game end under the documented optimal-length play


def best_move(pos: GamePosition, cap: int = DEFAULT_SOLVE_CAP, budget: Budget | None = None) -> MoveSuggestion:
    """Optimal move for the side to move.

    Winning side: a winning move, lowest canonical index among winners.
    Losing side: the move maximizing the number of plies the opponent still
    has to search before the forced end (the documented heuristic), computed
    as game length under optimal play with the loser delaying.
    """
    if pos.is_over() is not None:
        raise NoMoveError("position is terminal")
    residual = pos.residual()
    if residual.graph.n > cap:
        raise ResourceLimitError(f"best_move capped at {cap} vertices")
    budget = budget or Budget()
    eng = _Engine(residual, PruningConfig(), budget)
    values: dict = {}

    def value(rem: int, lists: tuple, picked: int | None):
        """(ann_wins, plies to end) with winner shortening and loser stretching."""
        if rem == 0:
            return True, 0
        if picked is None and any(lists[i] == 0 for i in _bits(rem)):
            return False, 0
        key = (rem, lists, picked)
        hit = values.get(key)
        if hit is not None:
            return hit
        budget.tick()
        if picked is None:
            outs = []
            for i in _bits(rem):
                if lists[i] == 0:
                    continue
                outs.append((i, value(rem, lists, i)))
            win = any(w for _, (w, _) in outs)
            if win:
                plies = min(p for _, (w, p) in outs if w) + 1
            else:
                plies = max(p for _, (w, p) in outs) + 1
            res = (win, plies)
        else:
            outs = []
            i = picked
            li = lists[i]
            while li:
                c = li & -li
                li ^= c
                outs.append((c, value(rem ^ (1 << i), eng._after(rem, lists, i, c), None)))
            win = all(w for _, (w, _) in outs)  # Ann wins only if every colour keeps her winning
            if win:
                plies = max(p for _, (w, p) in outs) + 1
            else:
                plies = min(p for _, (w, p) in outs if not w) + 1
            res = (win, plies)
        values[key] = res
        return res

    if pos.turn == ANN_TO_PICK:
        _, vorder, _ = _canonical(residual)
        vpos = {v: k for k, v in enumerate(vorder)}
        cands = []
        for i in _bits(eng.full):
            if eng.lists0[i] == 0:
                continue
            w, p = value(eng.full, eng.lists0, i)
            cands.append((eng.vertices[i], w, p))
        winners = [(v, p) for v, w, p in cands if w]
        if winners:
            v = min(winners, key=lambda t: (vpos[t[0]],))
            return MoveSuggestion("vertex", v[0], "win", v[1])
        v, p = max(((v, p) for v, _, p in cands), key=lambda t: (t[1], -vpos[t[0]]))
        return MoveSuggestion("vertex", v, "loss", p)
    # Ben to colour: Ben wins when Ann does not
    picked = pos.picked
    i = eng.vid[picked]
    _, _, corder = _canonical(residual, mark=picked)
    cpos = {c: k for k, c in enumerate(corder)}
    cands = []
    li = eng.lists0[i]
    while li:
        c = li & -li
        li ^= c
        w, p = value(eng.full ^ (1 << i), eng._after(eng.full, eng.lists0, i, c), None)
        cands.append((eng.colours[(c).bit_length() - 1], w, p))
    ben_wins = [(c, p) for c, w, p in cands if not w]
    if ben_wins:
        c, p = min(ben_wins, key=lambda t: (cpos[t[0]],))
        return MoveSuggestion("colour", c, "win", p)
    c, p = max(((c, p) for c, w, p in cands), key=lambda t: (t[1], -cpos[t[0]]))
    return MoveSuggestion("colour", c, "loss", p)
