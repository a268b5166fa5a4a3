import random

import pytest
from hypothesis import given, settings, strategies as st

from sextic.braids import FULL_TWIST, Braid3, infinity_package
from sextic.fpgroup import order
from sextic.maps import faces
from sextic.monodromy import (NoTrivalentVertex, TIP_TURNS, fiber_lassos, m_infinity_factorization,
                              reference_corners, spanning_tree, total_monodromy)
from sextic.pipeline import _split_candidates, fiber_data, has_trivalent_vertex
from sextic.skeletons import all_markings


def _with_trivalent(models):
    return [m for m in models if has_trivalent_vertex(m.skeleton)]


def test_segment_has_no_reference_corner(e7_models):
    segment = [m for m in e7_models if not has_trivalent_vertex(m.skeleton)]
    assert len(segment) == 1
    with pytest.raises(NoTrivalentVertex):
        fiber_lassos(segment[0])


def test_total_monodromy_is_a_full_twist_power(e7_models):
    for model in _with_trivalent(e7_models):
        for corner, _ in reference_corners(model):
            fibers = fiber_lassos(model, corner)
            assert total_monodromy(fibers) == FULL_TWIST ** 3


def test_m_infinity_factorization(e7_models):
    for model in _with_trivalent(e7_models):
        for corner, branch in reference_corners(model):
            fibers = fiber_lassos(model, corner)
            assert fibers[0].kind == "F"
            assert m_infinity_factorization(fibers) == infinity_package("E7", branch).m_infinity


def test_fiber_degrees_match_multiplicities(e7_models):
    for model in _with_trivalent(e7_models):
        lassos = sorted(f.multiplicity for f in fiber_lassos(model))
        data = sorted(f.multiplicity for f in fiber_data(model))
        assert lassos == data
        assert sum(lassos) == 18


def test_reducible_and_flagged_models_close_up():
    seen = 0
    for model in _split_candidates():
        if not reference_corners(model):
            continue
        total = sum(f.multiplicity for f in fiber_lassos(model))
        assert total_monodromy(fiber_lassos(model)) == Braid3(total, ())
        seen += 1
    assert seen > 20


def test_spanning_tree_reaches_every_vertex(e7_models):
    for model in _with_trivalent(e7_models):
        m = model.skeleton
        corner = reference_corners(model)[0][0]
        tree = spanning_tree(m, m.vertex_of[corner])
        assert len(tree) == 2 * (m.vertex_count - 1)


def test_tip_table_degrees():
    assert {c: {k: b.degree for k, b in t.items()} for c, t in TIP_TURNS.items()} == {
        "black": {1: 8, 2: 2, 3: 8}, "white": {1: 9, 2: 3, 3: 9}}


def test_each_region_gets_one_lasso(e7_models):
    for model in _with_trivalent(e7_models):
        regions = [f for f in fiber_lassos(model) if f.region is not None]
        assert len(regions) == len(faces(model.skeleton))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_marking_independence(seed):
    from sextic.skeletons import enumerate_e7_models

    rng = random.Random(seed)
    models = _with_trivalent(enumerate_e7_models())
    model = rng.choice(models)
    marking = rng.choice(list(all_markings(model.skeleton)))
    corner, branch = rng.choice(reference_corners(model))
    fibers = fiber_lassos(model, corner, marking)
    assert total_monodromy(fibers) == FULL_TWIST ** 3
    assert m_infinity_factorization(fibers) == infinity_package("E7", branch).m_infinity
