import random

import pytest
from hypothesis import given, settings, strategies as st

from sextic.maps import (BLACK, WHITE, FixedDart, NonPlanar, NotInvolution, SkeletonSyntaxError,
                         automorphisms, build_map, canonical_code, canonical_form, faces,
                         format_skeleton, from_cycles, loop_map, parse_skeleton, segment_map,
                         validate_skeleton)
from sextic.skeletons import enumerate_skeletons


def test_segment_map_structure():
    m = segment_map()
    assert (m.vertex_count, m.edge_count, m.face_count()) == (2, 1, 1)
    assert [r.black_corners for r in faces(m)] == [2]


def test_loop_map_has_two_faces():
    m = loop_map()
    assert m.vertex_count == 1 and m.face_count() == 2


def test_fixed_dart_rejected():
    with pytest.raises(FixedDart):
        build_map(2, (0, 1), (0, 1))


def test_non_involution_rejected():
    with pytest.raises(NotInvolution):
        build_map(4, (1, 2, 3, 0), (0, 1, 2, 3))


def test_torus_rejected():
    # one vertex with two interleaved loops
    with pytest.raises(NonPlanar):
        from_cycles([(0, 1, 2, 3)], [(0, 2), (1, 3)])


def test_bigon_faces():
    m = from_cycles([(0, 1), (2, 3)], [(0, 2), (1, 3)])
    assert sorted(r.black_corners for r in faces(m)) == [2, 2]


def test_loop_at_trivalent_vertex_bounds_one_corner():
    # trivalent vertex with a loop, joined to a monovalent vertex
    m = from_cycles([(0, 1, 2), (3,)], [(0, 1), (2, 3)])
    assert 1 in [r.black_corners for r in faces(m)]


def test_validate_examples():
    rep = validate_skeleton(segment_map())
    assert rep.is_valid and rep.degree == 3 and len(rep.singular_blacks) == 2
    rep = validate_skeleton(loop_map())
    assert rep.is_valid and rep.degree == 3 and rep.black_valencies == (2,)
    star = from_cycles([(0, 1, 2, 3), (4,), (5,), (6,), (7,)], [(0, 4), (1, 5), (2, 6), (3, 7)])
    rep = validate_skeleton(star)
    assert not rep.is_valid
    assert any(r.startswith("ValencyExceeded") for r in rep.reasons)


def test_validate_hand_cases():
    theta = from_cycles([(0, 1, 2), (3, 4, 5)], [(0, 3), (1, 5), (2, 4)])
    assert validate_skeleton(theta).is_valid
    white_leaf = from_cycles([(0, 1, 2), (3,), (4, 5), ], [(0, 3), (1, 4), (2, 5)],
                             colors=[BLACK, WHITE, BLACK])
    assert validate_skeleton(white_leaf).is_valid
    white_white = from_cycles([(0,), (1,)], [(0, 1)], colors=[WHITE, WHITE])
    assert not validate_skeleton(white_white).is_valid
    # with valencies at most 3 the count is always even; a valency-4 star breaks parity
    star = from_cycles([(0, 1, 2, 3), (4,), (5,), (6,), (7,)], [(0, 4), (1, 5), (2, 6), (3, 7)])
    assert any("OddVertexCount" in r for r in validate_skeleton(star).reasons)


def test_segment_automorphisms():
    assert len(automorphisms(segment_map())) == 2
    assert automorphisms(loop_map(), "reversing")


def _relabel(m, rng):
    perm = list(range(m.dart_count))
    rng.shuffle(perm)
    return m.relabeled(perm)


def _corpus():
    out = []
    for deg in (3, 6, 9):
        out += enumerate_skeletons(deg)
    out += enumerate_skeletons(6, max_singular_black=1, min_singular_black=1)
    return out


def test_euler_and_corner_sum():
    for m in _corpus():
        assert m.vertex_count - m.edge_count + m.face_count() == 2
        assert sum(r.black_corners for r in faces(m)) == m.dart_count


def test_canonical_code_is_complete_invariant():
    rng = random.Random(7)
    corpus = _corpus()[:50]
    codes = [canonical_code(m) for m in corpus]
    assert len(set(codes)) == len(codes)
    for m, code in zip(corpus, codes):
        for _ in range(20):
            assert canonical_code(_relabel(m, rng)) == code


def test_segment_and_loop_codes_differ():
    assert canonical_code(segment_map()) != canonical_code(loop_map())


def test_canonical_form_pairs_darts():
    for m in _corpus()[:30]:
        c = canonical_form(m)
        assert all(c.edge_pairing[2 * i] == 2 * i + 1 for i in range(c.edge_count))
        assert canonical_code(c) == canonical_code(m)


def _compose(p, q):
    return tuple(p[q[d]] for d in range(len(q)))


def test_automorphisms_form_a_group():
    for m in _corpus():
        if m.dart_count > 20:
            continue
        auts = set(automorphisms(m))
        ident = tuple(range(m.dart_count))
        assert ident in auts
        for p in auts:
            inv = [0] * len(p)
            for i, x in enumerate(p):
                inv[x] = i
            assert tuple(inv) in auts
            for q in auts:
                assert _compose(p, q) in auts


def test_skeleton_text_round_trip():
    for m in _corpus()[:20]:
        assert canonical_code(parse_skeleton(format_skeleton(m, ["x"]))) == canonical_code(m)


def test_skeleton_syntax_error_names_line():
    with pytest.raises(SkeletonSyntaxError) as err:
        parse_skeleton("skeleton 2\nedge 0 7\n")
    assert err.value.line == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_relabeling_preserves_code(seed):
    corpus = enumerate_skeletons(6)
    rng = random.Random(seed)
    m = rng.choice(corpus)
    assert canonical_code(_relabel(m, rng)) == canonical_code(m)
