import numpy as np
import pytest

from pebblekit.engine import Distribution, is_solvable, replay, weak_compositions
from pebblekit.errors import InvalidParameter, PreconditionNotMet
from pebblekit.graphs import (Original, Pair, cartesian_product, cycle_u,
                              middle_cycle, path, path_u, trimmed_middle_path)
from pebblekit.strategies import (PathContext, collect_on_path, cor24_witness,
                                  greedy_solver, mc_pebbling_bound,
                                  middle_cycle_t_strategy,
                                  middle_path_strategy, path_weight,
                                  product_collection_strategy)


# -- path weight and collection ----------------------------------------------

def _path_ctx(n, counts, k):
    g = path(n)
    labels = [Original(i) for i in range(1, n + 1)]
    return PathContext(g, labels, Distribution(counts), k)


def test_path_weight_one_sided():
    # all weight on v_1, target v_n: a pebble there weighs 2^0
    ctx = _path_ctx(4, {Original(1): 5}, 4)
    assert path_weight(ctx) == 5
    ctx = _path_ctx(4, {Original(3): 5}, 4)
    assert path_weight(ctx) == 5 * 4


def test_path_weight_two_sided():
    # both endpoints are at distance 2 from v_3 and weigh 2^0 each
    ctx = _path_ctx(5, {Original(1): 1, Original(5): 1}, 3)
    assert path_weight(ctx) == 2
    # the target's own pebbles never count
    ctx = _path_ctx(5, {Original(3): 9}, 3)
    assert path_weight(ctx) == 0


def test_path_weight_matches_definition():
    n, k = 6, 4
    counts = {Original(1): 2, Original(3): 1, Original(5): 4, Original(6): 1}
    ctx = _path_ctx(n, counts, k)
    expected = 2 * 2 ** 0 + 1 * 2 ** 2 + 4 * 2 ** (6 - 5) + 1 * 2 ** 0
    assert path_weight(ctx) == expected


def test_collect_end_target_single():
    ctx = _path_ctx(3, {Original(1): 4}, 3)
    rep = collect_on_path(ctx, 1)
    assert rep.succeeded and rep.delivered == 1 and len(rep.sequence) == 3
    final = replay(ctx.graph, ctx.distribution, rep.sequence)
    assert final.get(Original(3)) == 1


def test_collect_end_target_double():
    ctx = _path_ctx(3, {Original(1): 8}, 3)
    rep = collect_on_path(ctx, 2)
    assert rep.succeeded and rep.delivered == 2


def test_collect_threshold_sharp_at_end():
    # k=n with exactly t * 2^(n-1) on v_1 delivers exactly t
    for n in (2, 3, 4, 5):
        for t in (1, 2, 3):
            ctx = _path_ctx(n, {Original(1): t << (n - 1)}, n)
            rep = collect_on_path(ctx, t)
            assert rep.delivered == t


def test_collect_below_threshold_raises():
    ctx = _path_ctx(3, {Original(1): 3}, 3)
    with pytest.raises(PreconditionNotMet):
        collect_on_path(ctx, 1)


def test_collect_interior_target_both_cases():
    # case 1: the long side alone pays (v_1 weighs 2^0 toward v_4)
    ctx = _path_ctx(5, {Original(1): 16}, 4)
    rep = collect_on_path(ctx, 1)
    assert rep.succeeded and rep.rationale == "case-1"
    # case 2: the short side must chip in
    ctx = _path_ctx(5, {Original(1): 7, Original(5): 2}, 4)
    rep = collect_on_path(ctx, 1)
    assert rep.succeeded and rep.rationale == "case-2"


def test_collect_exhaustive_small():
    # every distribution meeting the threshold delivers, for every k and t
    n = 4
    g = path(n)
    labels = [Original(i) for i in range(1, n + 1)]
    for t in (1, 2):
        for k in range(1, n + 1):
            for vec in weak_compositions(6, n):
                d = Distribution.from_vector(g, vec)
                ctx = PathContext(g, labels, d, k)
                try:
                    rep = collect_on_path(ctx, t)
                except PreconditionNotMet:
                    continue
                assert rep.delivered >= t
                final = replay(g, d, rep.sequence)
                assert final.get(labels[k - 1]) == rep.delivered


def test_path_context_validation():
    g = path(3)
    labels = [Original(1), Original(2), Original(3)]
    with pytest.raises(InvalidParameter):
        PathContext(g, labels, Distribution(), 4)
    with pytest.raises(InvalidParameter):
        PathContext(g, [Original(1), Original(3)], Distribution(), 1)
    with pytest.raises(InvalidParameter):
        PathContext(g, labels[:2], Distribution({Original(3): 1}), 1)


# -- trimmed middle path -----------------------------------------------------

@pytest.mark.parametrize("n", [3, 4])
def test_middle_path_exhaustive(n):
    g = trimmed_middle_path(n)
    floor = (1 << (n - 2)) + n - 2
    for tgt in g.vertices:
        for vec in weak_compositions(floor, g.n):
            d = Distribution.from_vector(g, vec)
            rep = middle_path_strategy(n, d, tgt)
            assert rep.succeeded, (tgt, d, rep.rationale)
            assert replay(g, d, rep.sequence).get(tgt) >= 1


def test_middle_path_below_floor_raises():
    with pytest.raises(PreconditionNotMet):
        middle_path_strategy(4, Distribution({Original(2): 5}), path_u(1))


def test_middle_path_midpoint_boundary():
    # total exactly at the floor with everything on the far spine vertex:
    # the near spine neighbor of the target cannot be fed, the far one can
    n = 3
    g = trimmed_middle_path(n)
    d = Distribution({path_u(2): 3})
    rep = middle_path_strategy(n, d, Original(2))
    assert rep.succeeded
    assert replay(g, d, rep.sequence).get(Original(2)) >= 1


def test_cor24_witness_unsolvable():
    for n in range(3, 7):
        d, tgt = cor24_witness(n)
        g = trimmed_middle_path(n)
        assert d.total == (1 << (n - 2)) + n - 3
        assert not is_solvable(g, d, tgt).solvable


# -- middle cycle ------------------------------------------------------------

def test_middle_cycle_exhaustive_n2():
    n = 2
    g = middle_cycle(n)
    floor = mc_pebbling_bound(n)
    for tgt in (cycle_u(4, 0), Original(0), cycle_u(4, 2), Original(3)):
        for vec in weak_compositions(floor, g.n):
            d = Distribution.from_vector(g, vec)
            rep = middle_cycle_t_strategy(n, d, tgt, 1)
            assert rep.succeeded, (tgt, d, rep.rationale)
            assert replay(g, d, rep.sequence).get(tgt) >= 1


def test_middle_cycle_t2_replay_sample():
    n, t = 2, 2
    g = middle_cycle(n)
    floor = (t << (n + 1)) + 2 * n - 2
    rng = np.random.default_rng(5)
    for tgt in g.vertices:
        for _ in range(300):
            vec = rng.multinomial(floor, np.full(g.n, 1 / g.n))
            d = Distribution.from_vector(g, vec)
            rep = middle_cycle_t_strategy(n, d, tgt, t)
            assert rep.succeeded, (tgt, d, rep.rationale)
            assert replay(g, d, rep.sequence).get(tgt) >= t


def test_middle_cycle_rotation_covers_all_targets():
    # pile far from each target; the rotated strategy must still land
    n = 3
    g = middle_cycle(n)
    floor = mc_pebbling_bound(n)
    for tgt in g.vertices:
        for src in g.vertices:
            if src == tgt:
                continue
            d = Distribution({src: floor})
            rep = middle_cycle_t_strategy(n, d, tgt, 1)
            assert rep.succeeded, (tgt, src, rep.rationale)
            assert replay(g, d, rep.sequence).get(tgt) >= 1


def test_middle_cycle_below_floor_raises():
    with pytest.raises(PreconditionNotMet):
        middle_cycle_t_strategy(2, Distribution({Original(0): 9}), cycle_u(4, 2), 1)


def test_middle_cycle_rounds_fire_for_large_t():
    n, t = 2, 4
    g = middle_cycle(n)
    floor = (t << (n + 1)) + 2 * n - 2
    d = Distribution({Original(2): floor})
    rep = middle_cycle_t_strategy(n, d, cycle_u(4, 0), t)
    assert rep.succeeded
    assert "rounds" in rep.rationale or "half" in rep.rationale
    assert replay(g, d, rep.sequence).get(cycle_u(4, 0)) >= t


# -- product collection ------------------------------------------------------

def test_product_fiber_direct():
    gl = middle_cycle(2)
    gp = cartesian_product(gl, gl)
    tgt = Pair(Original(0), Original(1))
    # everything already in the target's row fiber
    d = Distribution({Pair(Original(0), lab): 13 for lab in gl.vertices})
    rep = product_collection_strategy(gp, d, tgt)
    assert rep.succeeded and rep.rationale == "fiber-direct:row"
    assert replay(gp, d, rep.sequence).get(tgt) >= 1


def test_product_extraction_path():
    gl = middle_cycle(2)
    gp = cartesian_product(gl, gl)
    tgt = Pair(Original(0), Original(0))
    # two rich foreign rows, nothing in the target's row or column
    others = [lab for lab in gl.vertices if lab != Original(0)]
    counts = {Pair(Original(2), lab): 7 for lab in others}
    counts.update({Pair(cycle_u(4, 1), lab): 8 for lab in others})
    d = Distribution(counts)
    assert d.total == (7 + 8) * 7 >= 100
    rep = product_collection_strategy(gp, d, tgt)
    assert rep.rationale.startswith("extract")
    assert rep.succeeded
    assert replay(gp, d, rep.sequence).get(tgt) >= 1


def test_product_guarantee_void_note():
    gl = middle_cycle(2)
    gp = cartesian_product(gl, gl)
    d = Distribution({Pair(Original(0), Original(0)): 100})
    rep = product_collection_strategy(gp, d, Pair(Original(1), Original(1)))
    assert any("guarantee-void" in note for note in rep.notes)


def test_product_below_floor_raises():
    gl = middle_cycle(2)
    gp = cartesian_product(gl, gl)
    with pytest.raises(PreconditionNotMet):
        product_collection_strategy(
            gp, Distribution({Pair(Original(0), Original(0)): 99}),
            Pair(Original(1), Original(1)))


def test_product_wrong_graph():
    with pytest.raises(InvalidParameter):
        product_collection_strategy(path(4), Distribution(), Original(1))


# -- greedy ------------------------------------------------------------------

def test_greedy_succeeds_on_easy_instance():
    g = path(3)
    d = Distribution({Original(1): 4})
    rep = greedy_solver(g, d, Original(3))
    assert rep.succeeded
    assert replay(g, d, rep.sequence).get(Original(3)) >= 1


def test_greedy_failure_is_inconclusive():
    g = path(3)
    rep = greedy_solver(g, Distribution({Original(1): 1}), Original(3))
    assert not rep.succeeded
    assert rep.rationale == "greedy:stuck"
    assert len(rep.sequence) == 0
