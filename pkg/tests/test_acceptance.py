"""Acceptance criteria, one test per criterion.

Each test prints a single [PASS]/[FAIL] line (run pytest with -s to watch).
Tolerances are exact equalities throughout; runtime bounds are asserted
against a monotonic clock.
"""

import math
import random
import time

import pytest

from corpus import (
    complete,
    cycle,
    induced_even_cycle_free,
    path,
    random_tight_lists,
    star,
    theta_graph,
    tight_lists_up_to_colour_perm,
)
from indigame.brooks import is_ic_brooks, omega
from indigame.construct import (
    _embed_gadget_h,
    embed_into_ic_brooks,
    gen_c5_blowup,
    gen_double_chorded_cycle,
    gen_example6,
    gen_fig5_cubic,
    gen_fig14a,
    gen_fig14b,
    gen_near_odd_wheel,
    gen_theta_plus,
    random_trace,
    replay,
    witness_list,
)
from indigame.graphs import (
    BlowupSpec,
    Graph,
    LabeledPair,
    ListAssignment,
    blow_up,
    canonical_key,
    cut_vertices,
    find_pseudo_twins,
)
from indigame.recognize import is_expanded_gallai_tree, reduce_recognize
from indigame.solver import (
    FEASIBLE,
    INFEASIBLE,
    PruningConfig,
    chi_i,
    decide_pair_fast,
    solve_pair,
)


def report(number: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def uniform(g, k):
    return LabeledPair.build(g, ListAssignment.uniform(g, range(1, k + 1)))


def cubic_hh_join() -> Graph:
    h, w = _embed_gadget_h(3)
    off = max(h.vertices) + 1
    verts = list(h.vertices) + [v + off for v in h.vertices]
    edges = list(h.edges) + [(a + off, b + off) for a, b in h.edges] + [(w, w + off)]
    return Graph.build(verts, edges)


def c9_cubic() -> Graph:
    return blow_up(BlowupSpec(cycle(9), {i: (2 if i % 3 == 2 else 1) for i in range(9)}))


def test_criterion_1_oracle_triangle(connected_upto_7):
    start = time.monotonic()
    rng = random.Random(20240801)
    none = PruningConfig.none()
    disagreements = 0
    pairs_checked = 0

    def check(pair):
        nonlocal disagreements, pairs_checked
        pairs_checked += 1
        a = solve_pair(pair, prunings=none).status
        b = solve_pair(pair).status
        c = decide_pair_fast(pair)
        if not (a == b == c):
            disagreements += 1

    for n in range(1, 6):
        for g in connected_upto_7[n]:
            if g.max_degree() > 4:
                continue
            for lists in tight_lists_up_to_colour_perm(g, 4):
                check(LabeledPair.build(g, lists))
    for n in (6, 7):
        for g in connected_upto_7[n]:
            universe = max(4, g.max_degree())
            for _ in range(100):
                check(LabeledPair.build(g, random_tight_lists(rng, g, universe)))
    elapsed = time.monotonic() - start
    report(1, disagreements == 0 and elapsed < 600,
           f"oracle triangle, {pairs_checked} pairs, {disagreements} disagreements, "
           f"{elapsed:.0f}s (< 600s)")


def test_criterion_2_theorem_1_10(connected_upto_8):
    start = time.monotonic()
    rng = random.Random(20240802)
    violations = 0
    egts = 0
    checked = 0
    honest = PruningConfig(structure=False)
    for n, graphs in connected_upto_8.items():
        for g in graphs:
            checked += 1
            reducible = reduce_recognize(g)
            if reducible != is_expanded_gallai_tree(g):
                violations += 1
                continue
            if reducible:
                egts += 1
                out = witness_list(g)
                if out is None:
                    violations += 1
                    continue
                pair = LabeledPair.build(g, {v: out[0].get(v) for v in g.vertices})
                if solve_pair(pair).status != INFEASIBLE:
                    violations += 1
            else:
                universe = max(3, g.max_degree())
                for _ in range(100):
                    lists = random_tight_lists(rng, g, universe)
                    if solve_pair(LabeledPair.build(g, lists), prunings=honest).status != FEASIBLE:
                        violations += 1
                        break
    elapsed = time.monotonic() - start
    report(2, violations == 0 and elapsed < 900,
           f"recognizer equivalence + coherence on {checked} graphs "
           f"({egts} reducible), {violations} violations, {elapsed:.0f}s (< 900s)")


def test_criterion_3_paper_values():
    ok = True
    details = []
    if solve_pair(uniform(cycle(5), 2)).status != INFEASIBLE:
        ok, details = False, details + ["C5 uniform {1,2} must be infeasible"]
    if solve_pair(uniform(cycle(4), 2)).status != FEASIBLE:
        ok, details = False, details + ["C4 uniform {1,2} must be feasible"]
    g = theta_graph([1, 2, 2])
    infeasible_lists = [
        lists for lists in tight_lists_up_to_colour_perm(g, 4)
        if decide_pair_fast(LabeledPair.build(g, lists)) == INFEASIBLE
    ]
    if len(infeasible_lists) != 1:
        ok = False
        details.append(f"theta(1,2,2) admits {len(infeasible_lists)} infeasible tight lists, want 1")
    rng = random.Random(20240803)
    honest = PruningConfig(structure=False)
    families = []
    families += [gen_theta_plus(2, 2, 2), gen_theta_plus(3, 2, 3, [(1, 0)]),
                 gen_theta_plus(4, 2, 4, [(1, 1), (2, 0)]), gen_theta_plus(3, 3, 3),
                 gen_theta_plus(4, 3, 2), gen_theta_plus(2, 4, 4)]
    families += [gen_double_chorded_cycle(5, (0, 2), (2, 4)),
                 gen_double_chorded_cycle(6, (0, 2), (3, 5)),
                 gen_double_chorded_cycle(7, (0, 2), (2, 5)),
                 gen_double_chorded_cycle(8, (0, 3), (4, 6)),
                 gen_double_chorded_cycle(9, (0, 4), (5, 8)),
                 gen_double_chorded_cycle(10, (0, 2), (5, 8))]
    families += [gen_near_odd_wheel(5, [0, 2]), gen_near_odd_wheel(7, [0, 2, 4]),
                 gen_near_odd_wheel(7, [0, 1, 2, 3]), gen_near_odd_wheel(9, [0, 3, 6]),
                 gen_near_odd_wheel(9, [0, 1, 2, 3, 4]), gen_near_odd_wheel(9, [0, 4])]
    feasible_checks = 0
    for g in families:
        assert g.n <= 10
        universe = max(3, g.max_degree())
        for _ in range(200):
            lists = random_tight_lists(rng, g, universe)
            if solve_pair(LabeledPair.build(g, lists), prunings=honest).status != FEASIBLE:
                ok = False
                details.append(f"forbidden structure on {sorted(g.edges)} got an infeasible list")
                break
            feasible_checks += 1
    report(3, ok, "paper-value checks (cycles, theta uniqueness, "
                  f"{feasible_checks} forbidden-structure lists)"
                  + ("; " + "; ".join(details) if details else ""))


def test_criterion_4_brooks_suite():
    start = time.monotonic()
    ok = True
    details = []
    cubic = {
        "K4": complete(4),
        "fig5": gen_fig5_cubic().pair.graph,
        "C9[1,1,2]": c9_cubic(),
        "HH-join": cubic_hh_join(),
    }
    for name, g in cubic.items():
        assert g.n <= 14 and g.is_regular() and g.max_degree() == 3
        if not is_ic_brooks(g):
            ok = False
            details.append(f"cubic {name} must be IC-Brooks")
    if is_ic_brooks(gen_c5_blowup(2).graph):
        ok = False
        details.append("C5[2] must not be IC-Brooks")
    if is_ic_brooks(gen_fig14a(1).graph):
        ok = False
        details.append("fig14a(1) must not be IC-Brooks")
    cross = [complete(n) for n in range(2, 13)]
    cross += [cycle(n) for n in (5, 7, 9, 11)]
    cross += [gen_fig5_cubic().pair.graph, gen_c5_blowup(2).graph, c9_cubic(),
              blow_up(BlowupSpec(cycle(5), {0: 2, 1: 1, 2: 2, 3: 2, 4: 1}))]
    for g in cross:
        if g.n > 12:
            continue
        delta = g.max_degree()
        verdict = solve_pair(uniform(g, delta), cap=12).status == INFEASIBLE
        if is_ic_brooks(g) != verdict:
            ok = False
            details.append(f"game cross-check failed on {sorted(g.edges)}")
    t_chi = time.monotonic()
    value = chi_i(gen_c5_blowup(2).graph, cap=12)
    chi_elapsed = time.monotonic() - t_chi
    if value != 5 or chi_elapsed >= 300:
        ok = False
        details.append(f"chi_i(C5[2]) = {value} in {chi_elapsed:.0f}s, want 5 in < 300s")
    elapsed = time.monotonic() - start
    report(4, ok, f"Brooks suite incl. chi_i(C5[2])={value} in {chi_elapsed:.1f}s, total {elapsed:.0f}s"
                  + ("; " + "; ".join(details) if details else ""))


def regular_egt_samples(rng: random.Random):
    """Around a hundred r-regular expanded Gallai-trees, r in 3..8."""
    out = []

    def blown_cycle(length, pattern):
        p = {i: pattern[i % 3] for i in range(length)}
        return blow_up(BlowupSpec(cycle(length), p))

    def compositions(total):
        return [(a, b, total - a - b)
                for a in range(1, total - 1)
                for b in range(1, total - a)]

    for r in range(3, 9):
        out.append(complete(r + 1))
        for length in (9, 15, 21):
            combos = compositions(r + 1)
            rng.shuffle(combos)
            for pattern in combos[:6]:
                out.append(blown_cycle(length, pattern))
        if (r + 1) % 3 == 0:
            out.append(blow_up(BlowupSpec(cycle(5), {v: (r + 1) // 3 for v in range(5)})))
        if r % 3 == 1:
            out.append(gen_fig14a((r - 1) // 3).graph)
        if r % 3 == 0 and r >= 6:
            out.append(gen_fig14b(r // 3).graph)
        if (r + 1) % 3 == 0:
            out.append(gen_example6(1, (r + 1) // 3).pair.graph)
    out.append(gen_fig5_cubic().pair.graph)
    out.append(cubic_hh_join())
    out.append(embed_into_ic_brooks(path(4))[0])
    out.append(embed_into_ic_brooks(cycle(7))[0])
    out.append(embed_into_ic_brooks(complete(5))[0])
    return out


def test_criterion_5_omega_bound():
    rng = random.Random(20240805)
    samples = regular_egt_samples(rng)
    assert len(samples) >= 100
    ok = True
    details = []
    for g in samples:
        assert g.is_regular()
        r = g.max_degree()
        assert 3 <= r <= 8, f"sample with degree {r}"
        if not reduce_recognize(g):
            ok = False
            details.append("a sample is not an expanded Gallai-tree")
            continue
        if omega(g) < math.ceil(2 * (r + 1) / 3):
            ok = False
            details.append(f"omega bound violated at r={r}")
    e6 = gen_example6(1, 2).pair.graph
    attained = omega(e6) * 3 == 2 * (e6.max_degree() + 1)
    if not attained:
        ok = False
        details.append("example-family instance does not attain the bound")
    report(5, ok, f"omega >= ceil(2(r+1)/3) on {len(samples)} regular expanded "
                  f"Gallai-trees, equality attained" + ("; " + "; ".join(details) if details else ""))


def test_criterion_6_w_soundness():
    rng = random.Random(20240806)
    ok = True
    details = []
    two_connected = 0
    for i in range(500):
        builder = random_trace(rng, max_vertices=12)
        pair = builder.pair
        g = pair.graph
        if canonical_key(replay(builder.trace)) != canonical_key(pair):
            ok = False
            details.append(f"trace {i} does not replay to its pair")
            break
        if solve_pair(pair).status != INFEASIBLE:
            ok = False
            details.append(f"trace {i} result is feasible")
            break
        if g.n >= 3 and g.is_connected() and not cut_vertices(g):
            two_connected += 1
            if not find_pseudo_twins(g):
                ok = False
                details.append(f"2-connected trace {i} lacks adjacent pseudo-twins")
                break
        if not induced_even_cycle_free(g):
            ok = False
            details.append(f"trace {i} contains an induced even cycle")
            break
    report(6, ok, f"500 random traces solver-infeasible, pseudo-twins on "
                  f"{two_connected} 2-connected results, no induced even cycles"
                  + ("; " + "; ".join(details) if details else ""))


def test_criterion_7_embedding():
    inputs = [
        complete(2), complete(3), complete(4), complete(5), complete(6), complete(8),
        path(3), path(4), path(5), path(6), path(8),
        cycle(5), cycle(7),
        star(3), star(2),
        theta_graph([1, 2, 2]), theta_graph([1, 2, 4]),
        Graph.build(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),  # bowtie
        Graph.build(range(4), [(0, 1), (1, 2), (0, 2), (2, 3)]),  # triangle + pendant
        blow_up(BlowupSpec(cycle(5), {0: 2, 1: 1, 2: 1, 3: 1, 4: 1})),
    ]
    assert len(inputs) == 20 and all(g.n <= 8 for g in inputs)
    ok = True
    details = []
    for g in inputs:
        out, emb = embed_into_ic_brooks(g)
        if not out.is_regular():
            ok = False
            details.append("embedding not regular")
            continue
        if not reduce_recognize(out):
            ok = False
            details.append("embedding not an expanded Gallai-tree")
            continue
        sub = out.induced_subgraph([emb[v] for v in g.vertices])
        if canonical_key(LabeledPair(sub, None)) != canonical_key(LabeledPair(g, None)):
            ok = False
            details.append("input not induced in the embedding")
            continue
        if not is_ic_brooks(out):
            ok = False
            details.append(f"embedding of {sorted(g.edges)} fails is_ic_brooks")
    report(7, ok, "20 embeddings are regular expanded Gallai-trees, induced, IC-Brooks"
                  + ("; " + "; ".join(details) if details else ""))
