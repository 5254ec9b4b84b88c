"""Recognizers: reverse reduction, atoms, clique-cuts, expanded blocks."""

import itertools
import random

import pytest

from corpus import complete, cycle, path, petersen, random_connected_graph, theta_graph
from indigame.errors import ValidationError
from indigame.graphs import BlowupSpec, Graph, LabeledPair, blow_up, canonical_key, connected_components
from indigame.recognize import (
    atom_decomposition,
    clique_cuts,
    expanded_blocks,
    is_expanded_gallai_tree,
    reduce_recognize,
)


class TestReduceRecognize:
    @pytest.mark.parametrize("g, want", [
        (complete(4), True),
        (cycle(6), False),
        (cycle(5), True),
        (petersen(), False),
        (theta_graph([1, 2, 2, 4, 4]), True),
    ])
    def test_named_graphs(self, g, want):
        assert reduce_recognize(g) is want

    def test_disconnected_rejected(self):
        with pytest.raises(ValidationError):
            reduce_recognize(Graph.build([0, 1], []))

    def test_order_invariance(self):
        rng = random.Random(0)
        graphs = [theta_graph([1, 2, 4]), cycle(9), petersen(),
                  blow_up(BlowupSpec(cycle(5), {v: 2 for v in range(5)}))]
        for _ in range(12):
            graphs.append(random_connected_graph(rng, rng.randint(3, 9), 0.4))
        for g in graphs:
            base = reduce_recognize(g)
            for seed in range(50):
                assert reduce_recognize(g, rng=random.Random(seed)) is base


def brute_atoms(g):
    vs = list(g.vertices)

    def has_clique_cut(sub):
        subg = g.induced_subgraph(sub)
        members = list(sub)
        for r in range(1, len(members)):
            for k in itertools.combinations(members, r):
                if subg.is_clique(k):
                    rest = set(members) - set(k)
                    if rest and len(connected_components(subg.remove_vertices(k))) > 1:
                        return True
        return False

    cands = []
    for r in range(1, len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            subg = g.induced_subgraph(sub)
            if subg.is_connected() and not has_clique_cut(frozenset(sub)):
                cands.append(frozenset(sub))
    return sorted({c for c in cands if not any(c < d for d in cands)}, key=sorted)


class TestAtoms:
    def test_atoms_match_brute_force(self):
        rng = random.Random(2)
        for _ in range(120):
            g = random_connected_graph(rng, rng.randint(2, 7), rng.uniform(0.25, 0.8))
            mine = sorted(set(atom_decomposition(g)[0]), key=sorted)
            assert mine == brute_atoms(g), sorted(g.edges)

    def test_single_block_graphs(self):
        for g in (complete(5), cycle(7), petersen()):
            atoms, seps = atom_decomposition(g)
            assert atoms == [frozenset(g.vertices)] and seps == []


class TestCliqueCuts:
    def test_two_triangles_sharing_an_edge(self):
        g = Graph.build(range(4), [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
        assert clique_cuts(g) == [((0, 1), True)]

    def test_complete_graph_has_none(self):
        assert clique_cuts(complete(4)) == []

    def test_path_cut_vertex(self):
        assert clique_cuts(path(3)) == [((1,), True)]

    def test_fig13_cuts(self):
        g = fig13_graph()
        cuts = dict(clique_cuts(g))
        assert cuts[(0, 1)] is True       # K = {u, v}
        assert cuts[(7, 9)] is True       # K' = {x, y}


def fig13_graph() -> Graph:
    # u=0 v=1 c=2 d=3 e=4 f=5 g=6 x=7 i=8 y=9 k=10 l=11 m=12
    return Graph.build(range(13), [
        (0, 1), (0, 2), (1, 2),             # triangle on the root clique
        (0, 3), (3, 4), (4, 5), (5, 1),     # 5-cycle through d, e, f
        (0, 6), (6, 7), (7, 8), (8, 1),     # 5-cycle through g, x, i
        (6, 9), (7, 9), (8, 9),             # y doubles x inside the block
        (7, 10), (9, 11), (10, 12), (11, 12),  # pendant 5-cycle at {x, y}
    ])


class TestExpandedBlocks:
    def test_c5_blowup_single_block(self):
        g = blow_up(BlowupSpec(cycle(5), {v: 2 for v in range(5)}))
        dec = expanded_blocks(g)
        assert [b.kind for b in dec.blocks] == ["odd_cycle_blowup"]
        assert dec.blocks[0].multiplicities == (2, 2, 2, 2, 2)

    def test_k5_single_complete_block(self):
        dec = expanded_blocks(complete(5))
        assert [b.kind for b in dec.blocks] == ["complete"]

    def test_fig13_blocks(self):
        g = fig13_graph()
        dec = expanded_blocks(g)
        kinds = sorted(b.kind for b in dec.blocks)
        assert kinds == ["complete", "odd_cycle_blowup", "odd_cycle_blowup", "odd_cycle_blowup"]
        by_size = {len(b.vertices): b for b in dec.blocks}
        doubled = by_size[6]  # the block where x is doubled by y
        assert doubled.root_clique == frozenset({0, 1})
        plain = by_size[5]
        assert plain.vertices in (frozenset({0, 1, 3, 4, 5}), frozenset({7, 9, 10, 11, 12}))

    def test_blowup_block_reconstruction(self):
        rng = random.Random(7)
        for _ in range(20):
            length = rng.choice([5, 7])
            p = {v: rng.randint(1, 3) for v in range(length)}
            g = blow_up(BlowupSpec(cycle(length), p))
            dec = expanded_blocks(g, cap=None)
            (block,) = dec.blocks
            assert block.kind == "odd_cycle_blowup"
            rebuilt = blow_up(BlowupSpec(
                cycle(len(block.base_cycle)),
                {i: len(cls) for i, cls in enumerate(block.base_cycle)},
            ))
            assert canonical_key(LabeledPair(rebuilt, None)) == canonical_key(LabeledPair(g, None))


class TestExpandedGallaiTree:
    def test_blowup_of_gallai_tree(self):
        bow = Graph.build(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        g = blow_up(BlowupSpec(bow, {0: 2, 1: 1, 2: 3, 3: 1, 4: 2}))
        assert is_expanded_gallai_tree(g) and reduce_recognize(g)

    def test_fig5_cubic(self):
        from indigame.construct import gen_fig5_cubic

        assert is_expanded_gallai_tree(gen_fig5_cubic().pair.graph)

    def test_near_odd_wheel_rejected(self):
        from indigame.construct import gen_near_odd_wheel

        g = gen_near_odd_wheel(7, [0, 1, 2, 3])
        assert not is_expanded_gallai_tree(g) and not reduce_recognize(g)

    def test_partial_straddle_rejected(self):
        # C5 with one class doubled plus a vertex adjacent to half of one
        # class and all of the next: reducibility fails, and so must the
        # decomposition route
        g = Graph.build(range(7), [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (5, 0), (5, 1), (5, 4), (6, 0), (6, 1),
        ])
        assert not reduce_recognize(g) and not is_expanded_gallai_tree(g)

    def test_equivalence_random(self, connected_upto_7):
        rng = random.Random(9)
        sample = []
        for n, gs in connected_upto_7.items():
            sample.extend(rng.sample(gs, min(len(gs), 40)))
        for _ in range(40):
            sample.append(random_connected_graph(rng, rng.randint(8, 14), rng.uniform(0.15, 0.5)))
        for g in sample:
            assert reduce_recognize(g) == is_expanded_gallai_tree(g), sorted(g.edges)

    def test_equivalence_on_constructions(self):
        from indigame.construct import random_trace

        rng = random.Random(13)
        for _ in range(60):
            g = random_trace(rng, max_vertices=13).pair.graph
            assert reduce_recognize(g) and is_expanded_gallai_tree(g)
